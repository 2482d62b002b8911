//! Conjugacy classes of subgroups of small symplectic groups.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use super::{fixed_form_conditions, symplectic_group, PackedMat, SubgroupHandle};
use crate::error::{Error, Result};
use crate::f2core::{standard_symplectic, F2Matrix};
use crate::quadforms::standard_base_form;

/// Largest group the multiplication table is built for.
const MAX_TABLED: usize = 5040;

/// Set of element indices.
type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

#[inline]
fn bit(b: &Bits, i: usize) -> bool {
    (b[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn members(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let t = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + t)
        })
    })
}

/// A finite group with indexed elements and full multiplication table.
#[derive(Clone, Debug)]
pub struct TabledGroup {
    m: usize,
    elements: Vec<PackedMat>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: u16,
}

impl TabledGroup {
    pub fn new(group: &SubgroupHandle) -> Result<Self> {
        let n = group.order();
        if n > MAX_TABLED {
            return Err(Error::CapExceeded(MAX_TABLED));
        }
        let elements = group.elements().to_vec();
        let idx = |g: &PackedMat| group.index_of(g).map(|i| i as u16);
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(idx(&a.mul(b)).ok_or_else(|| Error::Internal("product outside group".into()))?);
            }
        }
        let identity = idx(&PackedMat::identity(group.dim())).ok_or_else(|| Error::Internal("no identity".into()))?;
        let mut inv = vec![0u16; n];
        for a in 0..n {
            inv[a] = (0..n as u16)
                .find(|&b| mul[a * n + b as usize] == identity)
                .ok_or_else(|| Error::Internal("no inverse".into()))?;
        }
        Ok(Self { m: group.m(), elements, mul, inv, identity })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &PackedMat {
        &self.elements[i]
    }

    #[inline]
    fn prod(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    fn conj(&self, x: usize, h: usize) -> usize {
        self.prod(self.prod(x, h), self.inv[x] as usize)
    }

    /// Subgroup generated by `gens`, as an index set.
    fn closure(&self, gens: &[usize]) -> Bits {
        let n = self.order();
        let mut set = bits_new(n);
        set_bit(&mut set, self.identity as usize);
        let mut stack = vec![self.identity as usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.prod(x, g);
                if !bit(&set, y) {
                    set_bit(&mut set, y);
                    stack.push(y);
                }
            }
        }
        set
    }

    fn conjugate_set(&self, x: usize, s: &Bits) -> Bits {
        let mut out = bits_new(self.order());
        for h in members(s) {
            set_bit(&mut out, self.conj(x, h));
        }
        out
    }

    /// Lexicographically smallest conjugate, used as a class key.
    fn canonical_key(&self, s: &Bits) -> Bits {
        (0..self.order())
            .map(|x| self.conjugate_set(x, s))
            .min()
            .expect("group is nonempty")
    }

    fn normalizer_order(&self, s: &Bits) -> usize {
        (0..self.order()).filter(|&x| members(s).all(|h| bit(s, self.conj(x, h)))).count()
    }

    fn handle(&self, gens: &[usize], set: &Bits) -> SubgroupHandle {
        let mut elements: Vec<PackedMat> = members(set).map(|i| self.elements[i]).collect();
        elements.sort_unstable();
        SubgroupHandle {
            m: self.m,
            generators: gens.iter().map(|&i| self.elements[i]).collect(),
            elements,
        }
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub order: usize,
    pub class_size: usize,
    pub generators: Vec<F2Matrix>,
    pub satisfies_conditions: bool,
}

/// Conjugacy classes of subgroups of `Sp_{2m}(F2)`, with the count of
/// classes satisfying both conditions on Arf-0 forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCensus {
    pub m: usize,
    pub ambient_order: usize,
    pub total_subgroups: usize,
    pub classes: Vec<ClassRecord>,
    pub satisfying: usize,
}

/// Enumerates subgroup classes by extending each class representative by
/// every ambient element and deduplicating up to conjugacy.
pub fn classify_subgroups(group: &TabledGroup) -> Vec<(Vec<usize>, Bits, usize)> {
    let n = group.order();
    let trivial = group.closure(&[]);
    let mut seen: FxHashSet<Bits> = FxHashSet::default();
    let mut keys: FxHashMap<Bits, usize> = FxHashMap::default();
    seen.insert(trivial.clone());
    keys.insert(group.canonical_key(&trivial), 0);
    let mut reps: Vec<(Vec<usize>, Bits)> = vec![(Vec::new(), trivial)];
    let mut i = 0;
    while i < reps.len() {
        let (gens, set) = reps[i].clone();
        for g in 0..n {
            if bit(&set, g) {
                continue;
            }
            let mut ext = gens.clone();
            ext.push(g);
            let k = group.closure(&ext);
            if !seen.insert(k.clone()) {
                continue;
            }
            let key = group.canonical_key(&k);
            if keys.contains_key(&key) {
                continue;
            }
            keys.insert(key, reps.len());
            reps.push((ext, k));
        }
        i += 1;
    }
    reps.into_iter()
        .map(|(gens, set)| {
            let size = n / group.normalizer_order(&set);
            (gens, set, size)
        })
        .collect()
}

/// Number of distinct subgroups, found by closing every known subgroup with
/// one more element until nothing new appears. No conjugacy bookkeeping is
/// involved, so this serves as a check on [`classify_subgroups`].
pub fn brute_force_subgroup_count(group: &TabledGroup) -> usize {
    let n = group.order();
    let id = group.identity as usize;
    let close = |gens: &[usize]| -> Vec<bool> {
        let mut inside = vec![false; n];
        inside[id] = true;
        let mut queue = std::collections::VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = group.prod(g, x);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    };
    // one generator per cyclic subgroup suffices
    let cyclic_rep: Vec<bool> = (0..n)
        .map(|g| {
            let c = close(&[g]);
            (0..g).filter(|&h| c[h]).all(|h| close(&[h]) != c)
        })
        .collect();
    let mut all: FxHashSet<Vec<bool>> = FxHashSet::default();
    let trivial = close(&[]);
    all.insert(trivial.clone());
    let mut queue = vec![(Vec::<usize>::new(), trivial)];
    while let Some((gens, s)) = queue.pop() {
        for g in (0..n).filter(|&g| cyclic_rep[g] && !s[g]) {
            let mut ext = gens.clone();
            ext.push(g);
            let k = close(&ext);
            if all.insert(k.clone()) {
                queue.push((ext, k));
            }
        }
    }
    all.len()
}

/// Full subgroup census of `Sp_{2m}(F2)` for `m` in `{1, 2}`.
pub fn subgroup_census(m: usize) -> Result<GroupCensus> {
    if !(1..=2).contains(&m) {
        return Err(Error::Unsupported(format!("subgroup census is available for m = 1, 2 (got {m})")));
    }
    let space = standard_symplectic(m)?;
    let base = standard_base_form(&space)?;
    let ambient = symplectic_group(&space)?;
    let table = TabledGroup::new(&ambient)?;
    let mut classes = Vec::new();
    let mut total = 0;
    let mut satisfying = 0;
    for (gens, set, size) in classify_subgroups(&table) {
        let h = table.handle(&gens, &set);
        let ok = fixed_form_conditions(&h, &base)?.both();
        satisfying += ok as usize;
        total += size;
        classes.push(ClassRecord {
            order: count(&set),
            class_size: size,
            generators: h.generators(),
            satisfies_conditions: ok,
        });
    }
    Ok(GroupCensus { m, ambient_order: table.order(), total_subgroups: total, classes, satisfying })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp2_census() {
        let c = subgroup_census(1).unwrap();
        assert_eq!(c.classes.len(), 4);
        assert_eq!(c.satisfying, 0);
        let mut orders: Vec<usize> = c.classes.iter().map(|r| r.order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(c.total_subgroups, 6);
    }

    #[test]
    fn sp2_brute_force_matches() {
        let sp = standard_symplectic(1).unwrap();
        let t = TabledGroup::new(&symplectic_group(&sp).unwrap()).unwrap();
        assert_eq!(brute_force_subgroup_count(&t), 6);
    }

    #[test]
    fn sp4_census_matches_brute_force() {
        let c = subgroup_census(2).unwrap();
        let sp = standard_symplectic(2).unwrap();
        let t = TabledGroup::new(&symplectic_group(&sp).unwrap()).unwrap();
        assert_eq!(c.total_subgroups, brute_force_subgroup_count(&t));
        assert_eq!(c.classes.iter().map(|r| r.class_size).sum::<usize>(), c.total_subgroups);
        for r in &c.classes {
            assert_eq!(720 % r.order, 0);
        }
        println!("classes {} satisfying {} total {}", c.classes.len(), c.satisfying, c.total_subgroups);
    }

    #[test]
    fn census_out_of_range() {
        assert!(matches!(subgroup_census(3), Err(Error::Unsupported(_))));
    }
}
