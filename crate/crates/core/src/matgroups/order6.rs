//! Conjugacy classes of order-6 subgroups inside a large materialized group.

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::{fixed_form_conditions, PackedMat, SubgroupHandle};
use crate::error::Result;
use crate::f2core::F2Matrix;
use crate::quadforms::BaseForm;

/// One class of order-6 subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order6Class {
    /// `"C6"` or `"S3"`.
    pub kind: String,
    pub generators: Vec<F2Matrix>,
    pub satisfies_conditions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order6Report {
    pub m: usize,
    pub order3_classes: usize,
    pub classes: Vec<Order6Class>,
    pub satisfying: usize,
}

fn sorted6(c: PackedMat, t: PackedMat) -> Vec<PackedMat> {
    let c2 = c.mul(&c);
    let mut v = vec![c.mul(&c2), c, c2, t, t.mul(&c), t.mul(&c2)];
    v.sort_unstable();
    v
}

/// Orbits of `items` under conjugation by `gens`, returning one
/// representative per orbit (its first-seen member).
fn conjugation_orbit_reps<T, F>(items: &[T], gens: &[PackedMat], m: usize, act: F) -> Vec<T>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&PackedMat, &PackedMat, &T) -> T,
{
    let inverses: Vec<PackedMat> = gens.iter().map(|g| g.symplectic_inverse(m)).collect();
    let mut seen: FxHashSet<T> = FxHashSet::default();
    let mut reps = Vec::new();
    for item in items {
        if seen.contains(item) {
            continue;
        }
        reps.push(item.clone());
        seen.insert(item.clone());
        let mut stack = vec![item.clone()];
        while let Some(x) = stack.pop() {
            for (g, gi) in gens.iter().zip(&inverses) {
                let y = act(g, gi, &x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// Classifies order-6 subgroups of `group` up to conjugacy and evaluates both
/// conditions on Arf-0 forms for each class.
///
/// Every order-6 group has a unique subgroup of order 3, so classes are found
/// by fixing a representative `<c>` of each class of order-3 subgroups and
/// taking involutions in its normalizer that either commute with `c` (cyclic)
/// or invert it (dihedral), modulo the normalizer.
pub fn order6_scan(group: &SubgroupHandle, base: &BaseForm) -> Result<Order6Report> {
    let m = group.m();
    let dim = group.dim();
    let id = PackedMat::identity(dim);
    let elements = group.elements();
    let order3: Vec<PackedMat> =
        elements.par_iter().copied().filter(|g| *g != id && g.mul(g).mul(g) == id).collect();
    // classes of <c>: conjugation orbits on order-3 elements, merging c with c^-1
    let subgroups: Vec<(PackedMat, PackedMat)> = order3
        .iter()
        .filter_map(|&c| {
            let c2 = c.mul(&c);
            (c < c2).then_some((c, c2))
        })
        .collect();
    let reps = conjugation_orbit_reps(&subgroups, group.packed_generators(), m, |g, gi, &(a, b)| {
        let x = g.mul(&a).mul(gi);
        let y = g.mul(&b).mul(gi);
        if x < y {
            (x, y)
        } else {
            (y, x)
        }
    });

    let mut classes = Vec::new();
    for &(c, c2) in &reps {
        let normalizer: Vec<PackedMat> = elements
            .par_iter()
            .copied()
            .filter(|x| {
                let y = x.mul(&c).mul(&x.symplectic_inverse(m));
                y == c || y == c2
            })
            .collect();
        let n_handle = SubgroupHandle::from_elements(m, normalizer.clone())?;
        let mut cyclic = Vec::new();
        let mut dihedral = Vec::new();
        for &t in &normalizer {
            if t == id || t.mul(&t) != id {
                continue;
            }
            if t.mul(&c) == c.mul(&t) {
                cyclic.push(sorted6(c, t));
            } else if t.mul(&c).mul(&t) == c2 {
                dihedral.push(sorted6(c, t));
            }
        }
        for (kind, mut found) in [("C6", cyclic), ("S3", dihedral)] {
            found.sort_unstable();
            found.dedup();
            let conj = |g: &PackedMat, gi: &PackedMat, s: &Vec<PackedMat>| {
                let mut v: Vec<PackedMat> = s.iter().map(|h| g.mul(h).mul(gi)).collect();
                v.sort_unstable();
                v
            };
            for k in conjugation_orbit_reps(&found, n_handle.packed_generators(), m, conj) {
                let h = SubgroupHandle::from_elements(m, k)?;
                let ok = fixed_form_conditions(&h, base)?.both();
                classes.push(Order6Class { kind: kind.into(), generators: h.generators(), satisfies_conditions: ok });
            }
        }
    }
    let satisfying = classes.iter().filter(|c| c.satisfies_conditions).count();
    Ok(Order6Report { m, order3_classes: reps.len(), classes, satisfying })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::standard_symplectic;
    use crate::matgroups::symplectic_group;
    use crate::quadforms::standard_base_form;

    #[test]
    fn sp4_order6_classes() {
        let sp = standard_symplectic(2).unwrap();
        let g = symplectic_group(&sp).unwrap();
        let base = standard_base_form(&sp).unwrap();
        let r = order6_scan(&g, &base).unwrap();
        // Sp4(F2) = S6 has two classes of subgroups of order 3
        assert_eq!(r.order3_classes, 2);
        // matches the order-6 classes in the full census
        let census = crate::matgroups::subgroup_census(2).unwrap();
        let from_census = census.classes.iter().filter(|c| c.order == 6).count();
        assert_eq!(r.classes.len(), from_census);
        let sat = census.classes.iter().filter(|c| c.order == 6 && c.satisfies_conditions).count();
        assert_eq!(r.satisfying, sat);
    }
}
