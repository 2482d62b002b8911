//! Quadratic forms on `F2^{2m}` whose polar form is the standard alternating
//! form, the Arf invariant, and the action of the symplectic group.
//!
//! A form with polar form `<,>` is determined by its values on a basis, so in
//! standard coordinates
//!
//! ```text
//! Q(x) = sum_i x_i q_i + sum_{i <= m} x_{e_i} x_{f_i}
//! ```
//!
//! for a bit vector `q` of basis values. Every form is `Q_v = Q0 + <., v>` for
//! a unique `v`; that `v` is the canonical key of a [`QuadraticForm`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::{is_symplectic, low_mask, parity, standard_pairing, F2Matrix, F2Vector, SymplecticSpace};

/// Largest `2m` for which forms are enumerated exhaustively.
pub const MAX_ENUM_DIM: usize = 12;

const BASE_NAME: &str = "standard-arf1";

/// `Q(x)` from basis values `q` in standard coordinates.
#[inline]
pub fn eval_standard(m: usize, q: u64, x: u64) -> bool {
    let lo = low_mask(m);
    parity(x & q) ^ parity((x & lo) & (x >> m))
}

/// Swaps the `e` and `f` halves; this is the standard Gram matrix applied to `v`.
#[inline]
pub fn swap_halves(m: usize, v: u64) -> u64 {
    let lo = low_mask(m);
    ((v & lo) << m) | (v >> m)
}

fn table_of(dim: usize, f: impl Fn(u64) -> bool) -> Option<Vec<u64>> {
    if dim > MAX_ENUM_DIM {
        return None;
    }
    let n = 1usize << dim;
    let mut t = vec![0u64; n.div_ceil(64)];
    for x in 0..n {
        if f(x as u64) {
            t[x / 64] |= 1 << (x % 64);
        }
    }
    Some(t)
}

/// Anything that evaluates like a quadratic form on `F2^{2m}`.
pub trait FormValues {
    fn m(&self) -> usize;
    fn value(&self, x: u64) -> bool;
}

/// The designated base form `Q0` on a standard symplectic space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseForm {
    space: SymplecticSpace,
    q: u64,
    table: Option<Vec<u64>>,
}

impl BaseForm {
    /// Base form with prescribed basis values on a standard space.
    pub fn from_basis_values(space: SymplecticSpace, q: u64) -> Result<Self> {
        if !space.is_standard() {
            return Err(Error::Precondition("base forms live on the standard space".into()));
        }
        let m = space.m();
        if q & !low_mask(2 * m) != 0 {
            return Err(Error::Precondition("basis values exceed dimension".into()));
        }
        let table = table_of(2 * m, |x| eval_standard(m, q, x));
        Ok(Self { space, q, table })
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    pub fn basis_values(&self) -> u64 {
        self.q
    }

    pub fn value_table(&self) -> Option<&[u64]> {
        self.table.as_deref()
    }

    pub fn arf(&self) -> u8 {
        arf_from_basis_values(self.m(), self.q)
    }
}

impl FormValues for BaseForm {
    fn m(&self) -> usize {
        self.space.m()
    }

    #[inline]
    fn value(&self, x: u64) -> bool {
        eval_standard(self.space.m(), self.q, x)
    }
}

/// `Q0 = (a^2 + ab + b^2)` on the first hyperbolic plane plus `ab` on the others; Arf 1.
pub fn standard_base_form(space: &SymplecticSpace) -> Result<BaseForm> {
    let m = space.m();
    BaseForm::from_basis_values(space.clone(), 1 | (1 << m))
}

/// Arf invariant `sum Q(e_i) Q(f_i)` in the standard basis.
pub fn arf_from_basis_values(m: usize, q: u64) -> u8 {
    parity((q & low_mask(m)) & (q >> m)) as u8
}

/// The form `Q_v(x) = Q0(x) + <x, v>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    m: usize,
    base_q: u64,
    v: u64,
    table: Option<Vec<u64>>,
}

impl QuadraticForm {
    pub fn new(base: &BaseForm, v: &F2Vector) -> Result<Self> {
        let m = base.m();
        if v.dim() != 2 * m {
            return Err(Error::DimensionMismatch { expected: 2 * m, got: v.dim() });
        }
        Ok(Self::from_parts(m, base.q, v.bits()))
    }

    pub(crate) fn from_parts(m: usize, base_q: u64, v: u64) -> Self {
        let q = base_q ^ swap_halves(m, v);
        let table = table_of(2 * m, |x| eval_standard(m, q, x));
        Self { m, base_q, v, table }
    }

    pub fn v(&self) -> F2Vector {
        F2Vector::new(2 * self.m, self.v).expect("v fits the space")
    }

    pub fn v_bits(&self) -> u64 {
        self.v
    }

    /// Basis values of this form.
    pub fn basis_values(&self) -> u64 {
        self.base_q ^ swap_halves(self.m, self.v)
    }

    pub fn value_table(&self) -> Option<&[u64]> {
        self.table.as_deref()
    }

    pub fn repr(&self) -> FormRepr {
        FormRepr { m: self.m, base: BASE_NAME.to_string(), v: self.v() }
    }
}

impl FormValues for QuadraticForm {
    fn m(&self) -> usize {
        self.m
    }

    #[inline]
    fn value(&self, x: u64) -> bool {
        eval_standard(self.m, self.basis_values(), x)
    }
}

/// An arbitrary function `F2^{2m} -> F2` given by its value table. Used to
/// feed `arf_by_count` values that need not come from a quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTable {
    m: usize,
    values: Vec<bool>,
}

impl FormTable {
    pub fn new(m: usize, values: Vec<bool>) -> Result<Self> {
        if values.len() != 1 << (2 * m) {
            return Err(Error::DimensionMismatch { expected: 1 << (2 * m), got: values.len() });
        }
        Ok(Self { m, values })
    }

    pub fn from_fn(m: usize, f: impl Fn(u64) -> bool) -> Self {
        Self { m, values: (0..1u64 << (2 * m)).map(f).collect() }
    }
}

impl FormValues for FormTable {
    fn m(&self) -> usize {
        self.m
    }

    fn value(&self, x: u64) -> bool {
        self.values[x as usize]
    }
}

/// Serialized form `{m, base, v}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRepr {
    pub m: usize,
    pub base: String,
    pub v: F2Vector,
}

impl FormRepr {
    pub fn to_form(&self, base: &BaseForm) -> Result<QuadraticForm> {
        if self.base != BASE_NAME {
            return Err(Error::Parse(format!("unknown base form {:?}", self.base)));
        }
        if self.m != base.m() {
            return Err(Error::DimensionMismatch { expected: base.m(), got: self.m });
        }
        QuadraticForm::new(base, &self.v)
    }
}

/// All `2^{2m}` forms `Q_v`, ordered by `v`.
pub fn all_forms(space: &SymplecticSpace, base: &BaseForm) -> Result<Vec<QuadraticForm>> {
    let m = space.m();
    if 2 * m > MAX_ENUM_DIM {
        return Err(Error::DimensionOutOfRange(2 * m));
    }
    if base.m() != m {
        return Err(Error::DimensionMismatch { expected: m, got: base.m() });
    }
    Ok((0..1u64 << (2 * m)).map(|v| QuadraticForm::from_parts(m, base.q, v)).collect())
}

/// Number of vectors on which an Arf-`a` form takes the value `a`.
pub fn majority_count(m: usize) -> u64 {
    (1u64 << (m - 1)) * ((1u64 << m) + 1)
}

/// Arf invariant by counting values: it is `a` iff `Q` takes value `a`
/// exactly `2^{m-1}(2^m + 1)` times.
pub fn arf_by_count<Q: FormValues + ?Sized>(q: &Q) -> Result<u8> {
    let m = q.m();
    if 2 * m > MAX_ENUM_DIM + 8 {
        return Err(Error::DimensionOutOfRange(2 * m));
    }
    let ones = (0..1u64 << (2 * m)).filter(|&x| q.value(x)).count() as u64;
    let zeros = (1u64 << (2 * m)) - ones;
    let target = majority_count(m);
    if ones == target {
        Ok(1)
    } else if zeros == target {
        Ok(0)
    } else {
        Err(Error::PolarFormViolation)
    }
}

/// Arf invariant `sum_i Q(e_i) Q(f_i)` over the symplectic basis given by the
/// columns of `basis`.
pub fn arf_by_basis<Q: FormValues + ?Sized>(q: &Q, basis: &F2Matrix, space: &SymplecticSpace) -> Result<u8> {
    let m = q.m();
    if basis.dim() != 2 * m || space.m() != m {
        return Err(Error::DimensionMismatch { expected: 2 * m, got: basis.dim() });
    }
    if !is_symplectic(basis, space) {
        return Err(Error::NotSymplectic);
    }
    let s = (0..m).fold(false, |acc, i| acc ^ (q.value(basis.column(i)) & q.value(basis.column(m + i))));
    Ok(s as u8)
}

/// Arf invariant of `Q_v` relative to an Arf-1 base: 0 iff `Q0(v) = 1`.
pub fn arf_of_qv(base: &BaseForm, v: &F2Vector) -> Result<u8> {
    if base.arf() != 1 {
        return Err(Error::BaseFormNotArfOne);
    }
    if v.dim() != 2 * base.m() {
        return Err(Error::DimensionMismatch { expected: 2 * base.m(), got: v.dim() });
    }
    Ok(if base.value(v.bits()) { 0 } else { 1 })
}

/// Inverse of a symplectic matrix in standard coordinates: `J g^T J`.
pub fn symplectic_inverse(g: &F2Matrix) -> F2Matrix {
    let m = g.dim() / 2;
    let gt = g.transpose();
    let rows = (0..g.dim())
        .map(|i| {
            let src = if i < m { i + m } else { i - m };
            swap_halves(m, gt.rows()[src])
        })
        .collect();
    F2Matrix::from_rows(g.dim(), rows).expect("same shape")
}

/// `v'` with `g . Q_v = Q_{v'}`, where `(g . Q)(x) = Q(g^{-1} x)`.
pub(crate) fn act_on_v(m: usize, base_q: u64, g_inv: &F2Matrix, v: u64) -> u64 {
    let q = base_q ^ swap_halves(m, v);
    let new_q = (0..2 * m).fold(0u64, |acc, i| {
        acc | ((eval_standard(m, q, g_inv.column(i)) as u64) << i)
    });
    swap_halves(m, new_q ^ base_q)
}

/// `(g . Q)(x) = Q(g^{-1} x)` for symplectic `g`.
pub fn act(g: &F2Matrix, q: &QuadraticForm, space: &SymplecticSpace) -> Result<QuadraticForm> {
    if g.dim() != 2 * q.m || !space.is_standard() || space.m() != q.m {
        return Err(Error::DimensionMismatch { expected: 2 * q.m, got: g.dim() });
    }
    if !is_symplectic(g, space) {
        return Err(Error::NotSymplectic);
    }
    let g_inv = symplectic_inverse(g);
    Ok(QuadraticForm::from_parts(q.m, q.base_q, act_on_v(q.m, q.base_q, &g_inv, q.v)))
}

/// Orbit partition of `forms` under the group generated by `generators`.
///
/// Returns index lists into `forms`, each sorted, ordered by smallest member.
/// `forms` must be closed under the action.
pub fn orbits(generators: &[F2Matrix], forms: &[QuadraticForm], space: &SymplecticSpace) -> Result<Vec<Vec<usize>>> {
    let Some(first) = forms.first() else {
        return Ok(Vec::new());
    };
    let m = first.m;
    let index: rustc_hash::FxHashMap<u64, usize> = forms.iter().enumerate().map(|(i, f)| (f.v, i)).collect();
    let inverses = generators
        .iter()
        .map(|g| {
            if !is_symplectic(g, space) {
                return Err(Error::NotSymplectic);
            }
            Ok(symplectic_inverse(g))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut label = vec![usize::MAX; forms.len()];
    let mut out = Vec::new();
    for start in 0..forms.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orbit = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g_inv in &inverses {
                let w = act_on_v(m, forms[i].base_q, g_inv, forms[i].v);
                let &j = index
                    .get(&w)
                    .ok_or_else(|| Error::Precondition("form list is not closed under the group".into()))?;
                if label[j] == usize::MAX {
                    label[j] = id;
                    orbit.push(j);
                    stack.push(j);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

/// A symplectic basis adapted to a quadratic form.
///
/// Given a nondegenerate alternating `gram` and a quadratic form `q` with that
/// polar form, returns `T` (columns `e_1..e_m, f_1..f_m`) with
/// `T^T gram T = J` and `q(T x)` equal to the standard base form when the
/// Arf invariant is 1, or to `sum x_{e_i} x_{f_i}` when it is 0. The Arf
/// invariant is returned alongside.
pub fn adapted_symplectic_basis(gram: &F2Matrix, q: impl Fn(u64) -> bool) -> Result<(F2Matrix, u8)> {
    let dim = gram.dim();
    if !dim.is_multiple_of(2) || dim > MAX_ENUM_DIM + 8 {
        return Err(Error::DimensionOutOfRange(dim));
    }
    let b = |x: u64, y: u64| gram.bilinear(x, y);
    let m = dim / 2;
    // basis of the not-yet-split orthogonal complement
    let mut pool: Vec<u64> = (0..dim).map(|i| 1u64 << i).collect();
    let mut hyperbolic: Vec<(u64, u64)> = Vec::new();
    let mut anisotropic: Option<(u64, u64)> = None;
    while !pool.is_empty() {
        let span = |mask: u64| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .fold(0u64, |acc, (_, &w)| acc ^ w)
        };
        let singular = (1u64..(1u64 << pool.len())).map(span).find(|&w| !q(w));
        let e = match singular {
            Some(e) => e,
            None if pool.len() == 2 => {
                if !b(pool[0], pool[1]) {
                    return Err(Error::Degenerate);
                }
                anisotropic = Some((pool[0], pool[1]));
                break;
            }
            None => return Err(Error::Internal("anisotropic subspace of dimension > 2".into())),
        };
        let f = (1u64..(1u64 << pool.len())).map(span).find(|&w| b(e, w)).ok_or(Error::Degenerate)?;
        let f = if q(f) { f ^ e } else { f };
        hyperbolic.push((e, f));
        // project the pool onto the complement of span(e, f) and re-extract a basis
        let projected: Vec<u64> = pool
            .iter()
            .map(|&w| {
                let mut nw = w;
                if b(w, f) {
                    nw ^= e;
                }
                if b(w, e) {
                    nw ^= f;
                }
                nw
            })
            .collect();
        pool = independent_subset(&projected);
    }
    let mut pairs: Vec<(u64, u64)> = Vec::with_capacity(m);
    let arf = if let Some(p) = anisotropic {
        pairs.push(p);
        1
    } else {
        0
    };
    pairs.extend(hyperbolic);
    if pairs.len() != m {
        return Err(Error::Degenerate);
    }
    let cols: Vec<u64> = pairs.iter().map(|p| p.0).chain(pairs.iter().map(|p| p.1)).collect();
    Ok((F2Matrix::from_columns(dim, &cols)?, arf))
}

fn independent_subset(vs: &[u64]) -> Vec<u64> {
    let mut reduced: Vec<u64> = Vec::new();
    let mut kept = Vec::new();
    for &v in vs {
        let mut r = v;
        for &b in &reduced {
            r = r.min(r ^ b);
        }
        if r != 0 {
            reduced.push(r);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            kept.push(v);
        }
    }
    kept
}

/// Summary of the forms on `F2^{2m}` under the full symplectic group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormsCensus {
    pub schema: String,
    pub m: usize,
    pub total: usize,
    pub arf0: usize,
    pub arf1: usize,
    pub orbit_sizes: Vec<usize>,
}

/// Counts forms by Arf invariant and computes the orbits of the full
/// symplectic group (generated by all transvections).
pub fn forms_census(m: usize) -> Result<FormsCensus> {
    let space = crate::f2core::standard_symplectic(m)?;
    let base = standard_base_form(&space)?;
    let forms = all_forms(&space, &base)?;
    let mut arf0 = 0;
    for f in &forms {
        if arf_by_count(f)? == 0 {
            arf0 += 1;
        }
    }
    let gens = crate::matgroups::all_transvections(&space)?;
    let mut orbit_sizes: Vec<usize> = orbits(&gens, &forms, &space)?.iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(FormsCensus {
        schema: "symdet.forms-census.v1".into(),
        m,
        total: forms.len(),
        arf0,
        arf1: forms.len() - arf0,
        orbit_sizes,
    })
}

/// Pairing helper re-exported for callers that only hold `m`.
pub fn pairing(m: usize, x: u64, y: u64) -> bool {
    standard_pairing(m, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::standard_symplectic;

    fn setup(m: usize) -> (SymplecticSpace, BaseForm) {
        let sp = standard_symplectic(m).unwrap();
        let base = standard_base_form(&sp).unwrap();
        (sp, base)
    }

    #[test]
    fn base_form_m1_values() {
        let (_, base) = setup(1);
        let vals: Vec<bool> = [0b00u64, 0b10, 0b01, 0b11].iter().map(|&x| base.value(x)).collect();
        // (a, b) written as a e + b f; bit 0 is e
        assert_eq!(vals, vec![false, true, true, true]);
        assert_eq!(base.arf(), 1);
        assert_eq!(arf_by_count(&base).unwrap(), 1);
    }

    #[test]
    fn base_form_m3_count() {
        let (_, base) = setup(3);
        assert_eq!((0..64).filter(|&x| base.value(x)).count(), 36);
    }

    #[test]
    fn polar_identity_all_forms_m2() {
        let (sp, base) = setup(2);
        for f in all_forms(&sp, &base).unwrap() {
            for x in 0..16 {
                for y in 0..16 {
                    assert_eq!(f.value(x ^ y) ^ f.value(x) ^ f.value(y), sp.pairing(x, y));
                }
            }
        }
    }

    #[test]
    fn split_form_m1_arf0() {
        let split = FormTable::from_fn(1, |x| x == 0b11);
        assert_eq!(arf_by_count(&split).unwrap(), 0);
    }

    #[test]
    fn split_form_arf0_under_all_bases() {
        let sp = standard_symplectic(1).unwrap();
        let split = FormTable::from_fn(1, |x| x == 0b11);
        let mut bases = 0;
        for c0 in 1..4u64 {
            for c1 in 1..4u64 {
                let t = F2Matrix::from_columns(2, &[c0, c1]).unwrap();
                if is_symplectic(&t, &sp) {
                    bases += 1;
                    assert_eq!(arf_by_basis(&split, &t, &sp).unwrap(), 0);
                }
            }
        }
        assert_eq!(bases, 6);
    }

    #[test]
    fn non_quadratic_count_rejected() {
        let bogus = FormTable::from_fn(2, |x| x == 1);
        assert_eq!(arf_by_count(&bogus), Err(Error::PolarFormViolation));
    }

    #[test]
    fn arf_by_basis_rejects_non_symplectic() {
        let (sp, base) = setup(2);
        let swap: F2Matrix = "0100;1000;0010;0001".parse().unwrap();
        assert_eq!(arf_by_basis(&base, &swap, &sp), Err(Error::NotSymplectic));
    }

    #[test]
    fn arf_of_qv_zero_vector() {
        let (_, base) = setup(3);
        assert_eq!(arf_of_qv(&base, &F2Vector::zero(6).unwrap()).unwrap(), 1);
    }

    #[test]
    fn arf_of_qv_needs_arf1_base() {
        let sp = standard_symplectic(2).unwrap();
        let split = BaseForm::from_basis_values(sp, 0).unwrap();
        assert_eq!(arf_of_qv(&split, &F2Vector::zero(4).unwrap()), Err(Error::BaseFormNotArfOne));
    }

    #[test]
    fn arf_of_qv_count_m3() {
        let (_, base) = setup(3);
        let n = (0..64u64).filter(|&v| arf_of_qv(&base, &F2Vector::new(6, v).unwrap()).unwrap() == 0).count();
        assert_eq!(n, 36);
    }

    #[test]
    fn act_identity() {
        let (sp, base) = setup(2);
        let i = F2Matrix::identity(4).unwrap();
        for f in all_forms(&sp, &base).unwrap() {
            assert_eq!(act(&i, &f, &sp).unwrap(), f);
        }
    }

    #[test]
    fn symplectic_inverse_matches_gauss() {
        let sp = standard_symplectic(2).unwrap();
        for g in crate::matgroups::all_transvections(&sp).unwrap() {
            let g2 = g.mul(&crate::matgroups::all_transvections(&sp).unwrap()[3]).unwrap();
            assert_eq!(symplectic_inverse(&g2), g2.inverse().unwrap());
        }
    }

    #[test]
    fn adapted_basis_for_split_and_base() {
        let sp = standard_symplectic(3).unwrap();
        let (_, base) = setup(3);
        let (t, arf) = adapted_symplectic_basis(sp.gram(), |x| base.value(x)).unwrap();
        assert_eq!(arf, 1);
        assert!(is_symplectic(&t, &sp));
        for x in 0..64 {
            assert_eq!(base.value(t.apply(x)), base.value(x));
        }
        let split = |x: u64| eval_standard(3, 0, x);
        let (t, arf) = adapted_symplectic_basis(sp.gram(), split).unwrap();
        assert_eq!(arf, 0);
        for x in 0..64 {
            assert_eq!(split(t.apply(x)), split(x));
        }
    }

    #[test]
    fn form_repr_json() {
        let (_, base) = setup(1);
        let f = QuadraticForm::new(&base, &"10".parse().unwrap()).unwrap();
        let json = serde_json::to_string(&f.repr()).unwrap();
        assert_eq!(json, r#"{"m":1,"base":"standard-arf1","v":"10"}"#);
        let back: FormRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_form(&base).unwrap(), f);
    }
}
