//! Materialized subgroups of `Sp_{2m}(F2)`.
//!
//! Groups are stored as a sorted list of [`PackedMat`] elements together with
//! the generators they were built from. Everything here works in the standard
//! symplectic basis.

mod census;
mod order6;
mod packed;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::{is_symplectic, F2Matrix, F2Vector, SymplecticSpace};
use crate::quadforms::{eval_standard, swap_halves, BaseForm, FormValues, QuadraticForm};

pub use census::{
    brute_force_subgroup_count, subgroup_census, ClassRecord, GroupCensus, TabledGroup,
};
pub use order6::{order6_scan, Order6Class, Order6Report};
pub use packed::{PackedMat, PACKED_MAX_DIM};

/// Default element cap for closures.
pub const DEFAULT_CAP: usize = 2_000_000;

const CHUNK: usize = 4096;

/// `T_v(x) = x + <x, v> v`.
pub fn transvection(v: &F2Vector, space: &SymplecticSpace) -> Result<F2Matrix> {
    if v.dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: v.dim() });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let dim = space.dim();
    let vb = v.bits();
    let cols: Vec<u64> = (0..dim)
        .map(|j| {
            let x = 1u64 << j;
            if space.pairing(x, vb) {
                x ^ vb
            } else {
                x
            }
        })
        .collect();
    F2Matrix::from_columns(dim, &cols)
}

/// All `2^{2m} - 1` transvections, ordered by `v`.
pub fn all_transvections(space: &SymplecticSpace) -> Result<Vec<F2Matrix>> {
    let dim = space.dim();
    if dim > PACKED_MAX_DIM {
        return Err(Error::DimensionOutOfRange(dim));
    }
    (1u64..(1u64 << dim))
        .map(|v| transvection(&F2Vector::new(dim, v)?, space))
        .collect()
}

/// A materialized subgroup of `Sp_{2m}(F2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    m: usize,
    generators: Vec<PackedMat>,
    elements: Vec<PackedMat>,
}

impl SubgroupHandle {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[PackedMat] {
        &self.elements
    }

    pub fn packed_generators(&self) -> &[PackedMat] {
        &self.generators
    }

    pub fn generators(&self) -> Vec<F2Matrix> {
        self.generators.iter().map(|g| g.to_matrix(self.dim())).collect()
    }

    pub fn contains(&self, g: &PackedMat) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &PackedMat) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.m == other.m && self.elements.iter().all(|g| other.contains(g))
    }

    /// Builds a handle from an element list that is already a group, picking
    /// a small generating set greedily in element order.
    pub fn from_elements(m: usize, mut elements: Vec<PackedMat>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let set: FxHashSet<PackedMat> = elements.iter().copied().collect();
        let dim = 2 * m;
        if !set.contains(&PackedMat::identity(dim)) {
            return Err(Error::Precondition("element list lacks the identity".into()));
        }
        let mut gens: Vec<PackedMat> = Vec::new();
        let mut current: FxHashSet<PackedMat> = [PackedMat::identity(dim)].into_iter().collect();
        for g in &elements {
            if current.contains(g) {
                continue;
            }
            gens.push(*g);
            current = bfs_closure(&gens, dim, usize::MAX)?;
            if current.iter().any(|x| !set.contains(x)) {
                return Err(Error::Precondition("element list is not closed under products".into()));
            }
        }
        if current.len() != elements.len() {
            return Err(Error::Internal("greedy generating set mismatch".into()));
        }
        Ok(Self { m, generators: gens, elements })
    }

    /// The cyclic subgroup generated by one element.
    pub fn cyclic(m: usize, g: PackedMat) -> Self {
        let dim = 2 * m;
        let id = PackedMat::identity(dim);
        let mut elements = vec![id];
        let mut x = g;
        while x != id {
            elements.push(x);
            x = x.mul(&g);
        }
        elements.sort_unstable();
        let generators = if g == id { Vec::new() } else { vec![g] };
        Self { m, generators, elements }
    }

    /// All cyclic subgroups, each listed once, ordered by smallest generator.
    pub fn cyclic_subgroups(&self) -> Vec<SubgroupHandle> {
        let mut seen: FxHashSet<Vec<PackedMat>> = FxHashSet::default();
        let mut out = Vec::new();
        for &g in &self.elements {
            let c = Self::cyclic(self.m, g);
            if seen.insert(c.elements.clone()) {
                out.push(c);
            }
        }
        out
    }

    pub fn conjugate_by(&self, x: &PackedMat) -> Self {
        let x_inv = x.symplectic_inverse(self.m);
        let conj = |g: &PackedMat| x.mul(g).mul(&x_inv);
        let mut elements: Vec<PackedMat> = self.elements.iter().map(conj).collect();
        elements.sort_unstable();
        Self { m: self.m, generators: self.generators.iter().map(conj).collect(), elements }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.mul(b) == b.mul(a)))
    }
}

fn bfs_closure(gens: &[PackedMat], dim: usize, cap: usize) -> Result<FxHashSet<PackedMat>> {
    let id = PackedMat::identity(dim);
    let mut seen: FxHashSet<PackedMat> = FxHashSet::default();
    seen.insert(id);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            let candidates: Vec<PackedMat> = chunk
                .par_iter()
                .flat_map_iter(|x| gens.iter().map(move |g| x.mul(g)))
                .filter(|y| !seen.contains(y))
                .collect();
            for y in candidates {
                if seen.insert(y) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// Breadth-first closure of symplectic generators, failing once more than
/// `cap` elements have been found.
pub fn close(generators: &[F2Matrix], space: &SymplecticSpace, cap: usize) -> Result<SubgroupHandle> {
    let dim = space.dim();
    if dim > PACKED_MAX_DIM || !space.is_standard() {
        return Err(Error::DimensionOutOfRange(dim));
    }
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
        }
        if !is_symplectic(g, space) {
            return Err(Error::NotSymplectic);
        }
        gens.push(PackedMat::from_matrix(g)?);
    }
    let seen = bfs_closure(&gens, dim, cap)?;
    let mut elements: Vec<PackedMat> = seen.into_iter().collect();
    elements.par_sort_unstable();
    Ok(SubgroupHandle { m: space.m(), generators: gens, elements })
}

/// `Sp_{2m}(F2)` as the closure of all transvections.
pub fn symplectic_group(space: &SymplecticSpace) -> Result<SubgroupHandle> {
    close(&all_transvections(space)?, space, DEFAULT_CAP)
}

/// `2^{m^2} prod_{i=1}^m (2^{2i} - 1)`.
pub fn symplectic_group_order(m: u32) -> u128 {
    (1..=m).fold(1u128 << (m * m), |acc, i| acc * ((1u128 << (2 * i)) - 1))
}

/// True iff `g` preserves `q`. For symplectic `g` it suffices to compare on a basis.
pub fn preserves_form(g: &PackedMat, q: &BaseForm) -> bool {
    (0..q.space().dim()).all(|i| {
        let x = 1u64 << i;
        q.value(g.apply(x)) == q.value(x)
    })
}

/// `O(Q0)` as a subgroup of the materialized ambient group.
pub fn orthogonal_group(base: &BaseForm, ambient: &SubgroupHandle) -> Result<SubgroupHandle> {
    if base.arf() != 1 {
        return Err(Error::BaseFormNotArfOne);
    }
    if base.m() != ambient.m() {
        return Err(Error::DimensionMismatch { expected: ambient.m(), got: base.m() });
    }
    let elements: Vec<PackedMat> =
        ambient.elements.par_iter().copied().filter(|g| preserves_form(g, base)).collect();
    SubgroupHandle::from_elements(ambient.m(), elements)
}

/// A nonzero vector fixed by `g`, if one exists (`ker(g + I) != 0`).
pub fn has_nonzero_fixed_vector(g: &F2Matrix) -> Option<F2Vector> {
    let shifted = g.add(&F2Matrix::identity(g.dim()).ok()?).ok()?;
    shifted.kernel().into_iter().next().map(|v| F2Vector::new(g.dim(), v).expect("kernel vector fits"))
}

/// Affine action of a group element on form labels: `g . Q_v = Q_{g v + w}`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct FormAction {
    g: PackedMat,
    w: u64,
}

impl FormAction {
    pub(crate) fn new(g: &PackedMat, m: usize, base_q: u64) -> Self {
        let g_inv = g.symplectic_inverse(m);
        let new_q = (0..2 * m).fold(0u64, |acc, i| {
            acc | ((eval_standard(m, base_q, g_inv.column(i, 2 * m)) as u64) << i)
        });
        Self { g: *g, w: swap_halves(m, new_q ^ base_q) }
    }

    #[inline]
    pub(crate) fn apply(&self, v: u64) -> u64 {
        self.g.apply(v) ^ self.w
    }

    #[inline]
    pub(crate) fn fixes(&self, v: u64) -> bool {
        self.apply(v) == v
    }
}

/// Forms fixed by every element of `h` (checked on generators).
pub fn fixed_forms(h: &SubgroupHandle, forms: &[QuadraticForm], base: &BaseForm) -> Vec<QuadraticForm> {
    let actions: Vec<FormAction> =
        h.generators.iter().map(|g| FormAction::new(g, h.m, base.basis_values())).collect();
    forms.iter().filter(|f| actions.iter().all(|a| a.fixes(f.v_bits()))).cloned().collect()
}

/// Labels `v` of Arf-0 forms fixed by all of `gens`, in increasing order.
pub(crate) fn common_fixed_arf0(gens: &[PackedMat], m: usize, base: &BaseForm) -> Vec<u64> {
    let actions: Vec<FormAction> = gens.iter().map(|g| FormAction::new(g, m, base.basis_values())).collect();
    (0..1u64 << (2 * m))
        .filter(|&v| base.value(v) && actions.iter().all(|a| a.fixes(v)))
        .collect()
}

/// Smallest label of an Arf-0 form fixed by `g`.
pub(crate) fn first_fixed_arf0(g: &PackedMat, m: usize, base: &BaseForm) -> Option<u64> {
    let a = FormAction::new(g, m, base.basis_values());
    (0..1u64 << (2 * m)).find(|&v| base.value(v) && a.fixes(v))
}

/// Outcome of the two subgroup conditions on Arf-0 forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedFormConditions {
    /// No Arf-0 form is fixed by the whole group.
    pub cond1: bool,
    /// Every element fixes some Arf-0 form.
    pub cond2: bool,
    /// Arf-0 forms fixed by the whole group (empty iff `cond1`).
    pub common_fixed_arf0: Vec<F2Vector>,
    /// Per element (in element order): smallest fixed Arf-0 form, if any.
    pub element_witnesses: Vec<Option<F2Vector>>,
}

impl FixedFormConditions {
    pub fn both(&self) -> bool {
        self.cond1 && self.cond2
    }
}

/// Evaluates both conditions for `h` relative to an Arf-1 base form.
pub fn fixed_form_conditions(h: &SubgroupHandle, base: &BaseForm) -> Result<FixedFormConditions> {
    if base.arf() != 1 {
        return Err(Error::BaseFormNotArfOne);
    }
    let m = h.m;
    let dim = 2 * m;
    let vec = |v: u64| F2Vector::new(dim, v).expect("label fits");
    let common: Vec<F2Vector> = common_fixed_arf0(&h.generators, m, base).into_iter().map(vec).collect();
    let element_witnesses: Vec<Option<F2Vector>> = h
        .elements
        .par_iter()
        .map(|g| first_fixed_arf0(g, m, base).map(vec))
        .collect();
    Ok(FixedFormConditions {
        cond1: common.is_empty(),
        cond2: element_witnesses.iter().all(Option::is_some),
        common_fixed_arf0: common,
        element_witnesses,
    })
}

/// A nonzero vector fixed by every element of `h` inside `GL_2(F2)`, given
/// that each element fixes some nonzero vector.
pub fn gl22_common_fixed_vector(h: &SubgroupHandle) -> Result<Option<F2Vector>> {
    if h.m != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: h.m });
    }
    for g in &h.elements {
        if has_nonzero_fixed_vector(&g.to_matrix(2)).is_none() {
            return Err(Error::Precondition("an element has no nonzero fixed vector".into()));
        }
    }
    Ok((1u64..4)
        .find(|&v| h.elements.iter().all(|g| g.apply(v) == v))
        .map(|v| F2Vector::new(2, v).expect("fits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::standard_symplectic;
    use crate::quadforms::{act, all_forms, standard_base_form};

    #[test]
    fn transvection_basics() {
        let sp = standard_symplectic(2).unwrap();
        for t in all_transvections(&sp).unwrap() {
            assert!(is_symplectic(&t, &sp));
            assert!(t.mul(&t).unwrap().is_identity());
        }
        assert_eq!(transvection(&F2Vector::zero(4).unwrap(), &sp), Err(Error::ZeroVector));
    }

    #[test]
    fn transvection_fixes_v() {
        let sp = standard_symplectic(3).unwrap();
        for v in 1..64 {
            let v = F2Vector::new(6, v).unwrap();
            let t = transvection(&v, &sp).unwrap();
            assert_eq!(t.mul_vec(&v).unwrap(), v);
        }
    }

    #[test]
    fn sp2_and_sp4_orders() {
        assert_eq!(symplectic_group(&standard_symplectic(1).unwrap()).unwrap().order(), 6);
        assert_eq!(symplectic_group(&standard_symplectic(2).unwrap()).unwrap().order(), 720);
        assert_eq!(symplectic_group_order(2), 720);
        assert_eq!(symplectic_group_order(3), 1_451_520);
    }

    #[test]
    fn cap_exceeded() {
        let sp = standard_symplectic(2).unwrap();
        let gens = all_transvections(&sp).unwrap();
        assert_eq!(close(&gens, &sp, 100), Err(Error::CapExceeded(100)));
    }

    #[test]
    fn close_rejects_non_symplectic() {
        let sp = standard_symplectic(2).unwrap();
        let swap: F2Matrix = "0100;1000;0010;0001".parse().unwrap();
        assert_eq!(close(&[swap], &sp, 10), Err(Error::NotSymplectic));
    }

    #[test]
    fn close_is_idempotent() {
        let sp = standard_symplectic(2).unwrap();
        let g = symplectic_group(&sp).unwrap();
        let mats: Vec<F2Matrix> = g.elements().iter().map(|e| e.to_matrix(4)).collect();
        let again = close(&mats, &sp, DEFAULT_CAP).unwrap();
        assert_eq!(again.elements(), g.elements());
    }

    #[test]
    fn orthogonal_m1() {
        let sp = standard_symplectic(1).unwrap();
        let ambient = symplectic_group(&sp).unwrap();
        let base = standard_base_form(&sp).unwrap();
        let o = orthogonal_group(&base, &ambient).unwrap();
        // the anisotropic plane form is preserved by all of Sp_2(F2)
        assert_eq!(o.order(), 6);
        let forms = all_forms(&sp, &base).unwrap();
        let q0 = &forms[0];
        for g in o.elements() {
            assert_eq!(&act(&g.to_matrix(2), q0, &sp).unwrap(), q0);
        }
    }

    #[test]
    fn fixed_vectors() {
        assert!(has_nonzero_fixed_vector(&F2Matrix::identity(4).unwrap()).is_some());
        let c3: F2Matrix = "01;11".parse().unwrap();
        assert!(has_nonzero_fixed_vector(&c3).is_none());
        let sp = standard_symplectic(2).unwrap();
        for t in all_transvections(&sp).unwrap() {
            let w = has_nonzero_fixed_vector(&t).unwrap();
            assert_eq!(t.mul_vec(&w).unwrap(), w);
        }
    }

    #[test]
    fn fixed_forms_trivial_and_full() {
        for m in 1..=2 {
            let sp = standard_symplectic(m).unwrap();
            let base = standard_base_form(&sp).unwrap();
            let forms = all_forms(&sp, &base).unwrap();
            let id = close(&[], &sp, 10).unwrap();
            assert_eq!(fixed_forms(&id, &forms, &base).len(), forms.len());
            // the full group fixes only a unique Arf-1 form, which exists for m = 1 only
            let full = symplectic_group(&sp).unwrap();
            assert_eq!(fixed_forms(&full, &forms, &base).len(), usize::from(m == 1));
        }
    }

    #[test]
    fn form_action_matches_act() {
        let sp = standard_symplectic(2).unwrap();
        let base = standard_base_form(&sp).unwrap();
        let forms = all_forms(&sp, &base).unwrap();
        let g = symplectic_group(&sp).unwrap();
        for e in g.elements().iter().step_by(7) {
            let a = FormAction::new(e, 2, base.basis_values());
            for f in &forms {
                let acted = act(&e.to_matrix(4), f, &sp).unwrap();
                assert_eq!(acted.v_bits(), a.apply(f.v_bits()));
            }
        }
    }

    #[test]
    fn trivial_group_conditions() {
        let sp = standard_symplectic(2).unwrap();
        let base = standard_base_form(&sp).unwrap();
        let id = close(&[], &sp, 10).unwrap();
        let c = fixed_form_conditions(&id, &base).unwrap();
        assert!(!c.cond1);
        assert!(c.cond2);
    }

    #[test]
    fn gl22_witnesses() {
        let sp = standard_symplectic(1).unwrap();
        let id = close(&[], &sp, 10).unwrap();
        assert!(gl22_common_fixed_vector(&id).unwrap().is_some());
        let v = F2Vector::new(2, 0b01).unwrap();
        let t = transvection(&v, &sp).unwrap();
        let h = close(&[t], &sp, 10).unwrap();
        assert_eq!(gl22_common_fixed_vector(&h).unwrap(), Some(v));
        let c3: F2Matrix = "01;11".parse().unwrap();
        let h = close(&[c3], &sp, 10).unwrap();
        assert!(gl22_common_fixed_vector(&h).is_err());
    }
}
