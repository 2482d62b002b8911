use crate::error::{Error, Result};
use crate::f2core::F2Matrix;

/// Largest dimension a [`PackedMat`] can hold.
pub const PACKED_MAX_DIM: usize = 16;

/// Compact copyable matrix of dimension `<= 16`, used for group elements.
///
/// Rows beyond the group's dimension are zero. The derived ordering compares
/// rows lexicographically, i.e. the rows concatenated as one integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedMat {
    rows: [u16; PACKED_MAX_DIM],
}

impl PackedMat {
    pub fn identity(dim: usize) -> Self {
        let mut rows = [0u16; PACKED_MAX_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(dim) {
            *r = 1 << i;
        }
        Self { rows }
    }

    pub fn from_matrix(m: &F2Matrix) -> Result<Self> {
        if m.dim() > PACKED_MAX_DIM {
            return Err(Error::DimensionOutOfRange(m.dim()));
        }
        let mut rows = [0u16; PACKED_MAX_DIM];
        for (dst, &src) in rows.iter_mut().zip(m.rows()) {
            *dst = src as u16;
        }
        Ok(Self { rows })
    }

    pub fn to_matrix(&self, dim: usize) -> F2Matrix {
        F2Matrix::from_rows(dim, self.rows[..dim].iter().map(|&r| r as u64).collect())
            .expect("packed rows fit the dimension")
    }

    pub fn rows(&self) -> &[u16; PACKED_MAX_DIM] {
        &self.rows
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut rows = [0u16; PACKED_MAX_DIM];
        for (dst, &r) in rows.iter_mut().zip(&self.rows) {
            let mut bits = r;
            let mut acc = 0u16;
            while bits != 0 {
                acc ^= other.rows[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            *dst = acc;
        }
        Self { rows }
    }

    /// Applies to a column vector.
    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        let x = x as u16;
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | ((((r & x).count_ones() & 1) as u64) << i))
    }

    pub fn column(&self, j: usize, dim: usize) -> u64 {
        (0..dim).fold(0u64, |acc, i| acc | ((((self.rows[i] >> j) & 1) as u64) << i))
    }

    pub fn is_identity(&self, dim: usize) -> bool {
        *self == Self::identity(dim)
    }

    /// Inverse of a symplectic element in standard coordinates, `J g^T J`.
    pub fn symplectic_inverse(&self, m: usize) -> Self {
        let dim = 2 * m;
        let swap = |v: u64| -> u64 {
            let lo = (1u64 << m) - 1;
            ((v & lo) << m) | (v >> m)
        };
        let mut rows = [0u16; PACKED_MAX_DIM];
        for (i, dst) in rows.iter_mut().enumerate().take(dim) {
            let src = if i < m { i + m } else { i - m };
            *dst = swap(self.column(src, dim)) as u16;
        }
        Self { rows }
    }

    pub fn pow(&self, mut e: u64, dim: usize) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Order of the element, searching up to `limit`.
    pub fn order(&self, dim: usize, limit: u64) -> Option<u64> {
        let id = Self::identity(dim);
        let mut acc = *self;
        for k in 1..=limit {
            if acc == id {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}
