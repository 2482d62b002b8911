//! Bit-packed linear algebra over F2 and the standard symplectic structure.
//!
//! Vectors of dimension `dim <= 64` are a single `u64`; bit `i` is coordinate
//! `i`. A matrix stores one `u64` per row, bit `j` of row `i` being entry
//! `(i, j)`. Matrices act on column vectors, so `(M x)_i = <row_i, x>`.
//!
//! Basis order for symplectic spaces is `e_1..e_m, f_1..f_m`: coordinate `i`
//! is `e_{i+1}` for `i < m` and `f_{i-m+1}` otherwise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

#[inline]
pub(crate) fn low_mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

#[inline]
pub(crate) fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::DimensionOutOfRange(dim))
    } else {
        Ok(())
    }
}

/// A vector in `F2^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    dim: usize,
    bits: u64,
}

impl F2Vector {
    pub fn new(dim: usize, bits: u64) -> Result<Self> {
        check_dim(dim)?;
        if bits & !low_mask(dim) != 0 {
            return Err(Error::Precondition(format!(
                "bits {bits:#x} exceed dimension {dim}"
            )));
        }
        Ok(Self { dim, bits })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, 0)
    }

    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::DimensionMismatch { expected: dim, got: i });
        }
        Self::new(dim, 1 << i)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(Self { dim: self.dim, bits: self.bits ^ other.bits })
    }

    pub fn dot(&self, other: &Self) -> bool {
        parity(self.bits & other.bits)
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for F2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("invalid bit string {s:?}"))),
            }
        }
        Self::new(s.len(), bits)
    }
}

impl Serialize for F2Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for F2Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A square matrix over F2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    dim: usize,
    rows: Vec<u64>,
}

impl F2Matrix {
    pub fn from_rows(dim: usize, rows: Vec<u64>) -> Result<Self> {
        check_dim(dim)?;
        if rows.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: rows.len() });
        }
        if rows.iter().any(|r| r & !low_mask(dim) != 0) {
            return Err(Error::Precondition("row has bits beyond dimension".into()));
        }
        Ok(Self { dim, rows })
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(dim: usize, cols: &[u64]) -> Result<Self> {
        if cols.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: cols.len() });
        }
        Ok(Self::from_rows(dim, cols.to_vec())?.transpose())
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, rows: (0..dim).map(|i| 1u64 << i).collect() })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, rows: vec![0; dim] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.dim).map(|j| self.column(j)).collect();
        Self { dim: self.dim, rows }
    }

    /// Applies the matrix to a packed column vector.
    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((parity(r & x) as u64) << i))
    }

    pub fn mul_vec(&self, x: &F2Vector) -> Result<F2Vector> {
        if x.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim });
        }
        Ok(F2Vector { dim: self.dim, bits: self.apply(x.bits) })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect();
        Ok(Self { dim: self.dim, rows })
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch { expected: self.dim, got: other.dim })
        } else {
            Ok(())
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut bits = r;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc ^= other.rows[j];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim).expect("dim already validated");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, if the matrix is invertible and the order is at most `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul_unchecked(self);
        }
        None
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.dim {
            let bit = 1u64 << col;
            let Some(p) = (rank..self.dim).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & bit != 0 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse with lowest-index pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for col in 0..n {
            let bit = 1u64 << col;
            let p = (col..n).find(|&i| a[i] & bit != 0).ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let (pa, pi) = (a[col], inv[col]);
            for i in 0..n {
                if i != col && a[i] & bit != 0 {
                    a[i] ^= pa;
                    inv[i] ^= pi;
                }
            }
        }
        Ok(Self { dim: n, rows: inv })
    }

    /// Basis of the null space `{x : M x = 0}`, in reduced form.
    pub fn kernel(&self) -> Vec<u64> {
        let n = self.dim;
        let mut rows = self.rows.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let bit = 1u64 << col;
            let Some(p) = (rank..n).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & bit != 0 {
                    *r ^= pivot;
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let pivot_cols: u64 = pivots.iter().fold(0, |acc, &(_, c)| acc | (1 << c));
        (0..n)
            .filter(|c| pivot_cols & (1 << c) == 0)
            .map(|free| {
                let mut v = 1u64 << free;
                for &(r, c) in &pivots {
                    if rows[r] & (1 << free) != 0 {
                        v |= 1 << c;
                    }
                }
                v
            })
            .collect()
    }

    /// Bilinear form `x^T M y`.
    #[inline]
    pub fn bilinear(&self, x: u64, y: u64) -> bool {
        parity(x & self.apply(y))
    }

    pub fn to_text(&self) -> String {
        self.row_strings().join(";")
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&r| (0..self.dim).map(|j| if (r >> j) & 1 == 1 { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let dim = rows.len();
        let parsed = rows
            .iter()
            .map(|r| {
                let v: F2Vector = r.as_ref().parse()?;
                if v.dim != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: v.dim });
                }
                Ok(v.bits)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(dim, parsed)
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for F2Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.trim().split(';').map(str::trim).collect();
        Self::from_row_strings(&rows)
    }
}

impl Serialize for F2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for F2Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(d)?;
        Self::from_row_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// `F2^{2m}` with a nondegenerate alternating form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    m: usize,
    gram: F2Matrix,
}

impl SymplecticSpace {
    /// Wraps an arbitrary Gram matrix after checking it is alternating and nondegenerate.
    pub fn from_gram(gram: F2Matrix) -> Result<Self> {
        let dim = gram.dim();
        if !dim.is_multiple_of(2) {
            return Err(Error::Degenerate);
        }
        if gram != gram.transpose() || (0..dim).any(|i| gram.get(i, i)) {
            return Err(Error::Precondition("gram matrix is not alternating".into()));
        }
        if gram.rank() != dim {
            return Err(Error::Degenerate);
        }
        Ok(Self { m: dim / 2, gram })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn gram(&self) -> &F2Matrix {
        &self.gram
    }

    #[inline]
    pub fn pairing(&self, x: u64, y: u64) -> bool {
        self.gram.bilinear(x, y)
    }

    pub fn is_standard(&self) -> bool {
        self.gram == standard_gram(self.m)
    }
}

fn standard_gram(m: usize) -> F2Matrix {
    let dim = 2 * m;
    let rows = (0..dim).map(|i| if i < m { 1u64 << (i + m) } else { 1u64 << (i - m) }).collect();
    F2Matrix { dim, rows }
}

/// Standard pairing `<x, y>` with `<e_i, f_i> = 1`, computed without a Gram matrix.
#[inline]
pub fn standard_pairing(m: usize, x: u64, y: u64) -> bool {
    let lo = low_mask(m);
    parity(((x & lo) & (y >> m)) ^ ((x >> m) & (y & lo)))
}

/// The standard symplectic space of dimension `2m`.
pub fn standard_symplectic(m: usize) -> Result<SymplecticSpace> {
    if m == 0 || 2 * m > MAX_DIM {
        return Err(Error::DimensionOutOfRange(2 * m));
    }
    Ok(SymplecticSpace { m, gram: standard_gram(m) })
}

/// True iff `g` preserves the form on every pair of basis vectors.
pub fn is_symplectic(g: &F2Matrix, sp: &SymplecticSpace) -> bool {
    if g.dim() != sp.dim() {
        return false;
    }
    let gt = g.transpose();
    gt.mul_unchecked(sp.gram()).mul_unchecked(g) == *sp.gram()
}

/// Finds `T` with `T^T * gram * T` equal to the standard Gram matrix.
///
/// The columns of `T` are a symplectic basis `e_1..e_m, f_1..f_m` of the
/// space carrying `gram`.
pub fn symplectic_basis(gram: &F2Matrix) -> Result<F2Matrix> {
    let dim = gram.dim();
    if !dim.is_multiple_of(2) || gram != &gram.transpose() || (0..dim).any(|i| gram.get(i, i)) {
        return Err(Error::Degenerate);
    }
    let m = dim / 2;
    let b = |x: u64, y: u64| gram.bilinear(x, y);
    let mut pool: Vec<u64> = (0..dim).map(|i| 1u64 << i).collect();
    let mut es = Vec::with_capacity(m);
    let mut fs = Vec::with_capacity(m);
    while let Some(pos) = pool.iter().position(|&v| v != 0) {
        let e = pool.swap_remove(pos);
        let fpos = pool.iter().position(|&w| b(e, w)).ok_or(Error::Degenerate)?;
        let f = pool.swap_remove(fpos);
        for w in pool.iter_mut() {
            let mut nw = *w;
            if b(*w, f) {
                nw ^= e;
            }
            if b(*w, e) {
                nw ^= f;
            }
            *w = nw;
        }
        es.push(e);
        fs.push(f);
    }
    if es.len() != m {
        return Err(Error::Degenerate);
    }
    let cols: Vec<u64> = es.into_iter().chain(fs).collect();
    F2Matrix::from_columns(dim, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> F2Matrix {
        s.parse().unwrap()
    }

    #[test]
    fn identity_squared() {
        let i = F2Matrix::identity(5).unwrap();
        assert_eq!(i.mul(&i).unwrap(), i);
    }

    #[test]
    fn two_by_two_square() {
        let a = m("01;11");
        assert_eq!(a.mul(&a).unwrap(), m("11;10"));
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = F2Matrix::identity(2).unwrap();
        let b = F2Matrix::identity(3).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn standard_gram_m1() {
        let sp = standard_symplectic(1).unwrap();
        assert_eq!(sp.gram(), &m("01;10"));
    }

    #[test]
    fn standard_gram_m3_full_rank() {
        let sp = standard_symplectic(3).unwrap();
        assert_eq!(sp.gram().rank(), 6);
        assert!(SymplecticSpace::from_gram(sp.gram().clone()).is_ok());
    }

    #[test]
    fn standard_pairing_matches_gram() {
        let sp = standard_symplectic(3).unwrap();
        for x in 0..64 {
            for y in 0..64 {
                assert_eq!(standard_pairing(3, x, y), sp.pairing(x, y));
            }
        }
    }

    #[test]
    fn swap_e1_e2_not_symplectic() {
        // basis e1,e2,f1,f2: swap coordinates 0 and 1 only
        let sp = standard_symplectic(2).unwrap();
        let g = m("0100;1000;0010;0001");
        assert!(!is_symplectic(&g, &sp));
        assert!(is_symplectic(&F2Matrix::identity(4).unwrap(), &sp));
    }

    #[test]
    fn inverse_and_singular() {
        let a = m("110;011;001");
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(m("110;110;001").inverse(), Err(Error::Singular));
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m("1100;0110;1010;0000");
        let ker = a.kernel();
        assert_eq!(ker.len(), 4 - a.rank());
        for v in ker {
            assert_eq!(a.apply(v), 0);
        }
    }

    #[test]
    fn symplectic_basis_of_standard() {
        let sp = standard_symplectic(3).unwrap();
        let t = symplectic_basis(sp.gram()).unwrap();
        let lhs = t.transpose().mul(sp.gram()).unwrap().mul(&t).unwrap();
        assert_eq!(&lhs, sp.gram());
    }

    #[test]
    fn symplectic_basis_rejects_degenerate() {
        assert_eq!(symplectic_basis(&m("0000;0001;0000;0100")), Err(Error::Degenerate));
    }

    #[test]
    fn text_round_trip() {
        let a = m("0110;1001;0011;1100");
        assert_eq!(a.to_text(), "0110;1001;0011;1100");
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"["0110","1001","0011","1100"]"#);
        let back: F2Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn bad_text() {
        assert!("01;1".parse::<F2Matrix>().is_err());
        assert!("0x;10".parse::<F2Matrix>().is_err());
    }
}
