//! Arithmetic in binary fields `F_{2^k}`, `1 <= k <= 32`.
//!
//! Elements are polynomials over F2 of degree `< k` packed into a `u64`
//! (bit `i` is the coefficient of `x^i`), reduced modulo the context's
//! irreducible modulus. The polynomial basis `1, x, x^2, ...` is the F2-basis
//! used by [`BinaryFieldCtx::as_f2_linear`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::F2Matrix;

pub const MAX_DEGREE: u32 = 32;

/// A field element; only meaningful together with its [`BinaryFieldCtx`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinaryFieldElement(pub u64);

impl BinaryFieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn coeffs(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serialized element: coefficient bitmask in hex plus the degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRepr {
    pub k: u32,
    pub hex: String,
}

/// Serialized context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRepr {
    pub k: u32,
    pub modulus: String,
    pub gamma: String,
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility over F2 by trial division by every polynomial of degree `<= deg/2`.
pub fn is_irreducible(p: u64) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    for q in 2u64..(1u64 << (d / 2 + 1)) {
        if poly_mod(p, q) == 0 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `F_{2^k}` with a fixed modulus and primitive element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFieldCtx {
    k: u32,
    modulus: u64,
    gamma: BinaryFieldElement,
    group_order_factors: Vec<u64>,
}

/// Builds `F_{2^k}` with the smallest-encoding irreducible modulus and the
/// smallest primitive element.
pub fn make_field(k: u32) -> Result<BinaryFieldCtx> {
    if !(1..=MAX_DEGREE).contains(&k) {
        return Err(Error::DimensionOutOfRange(k as usize));
    }
    let modulus = ((1u64 << k)..(1u64 << (k + 1)))
        .find(|&p| is_irreducible(p))
        .expect("an irreducible polynomial exists in every degree");
    let order = (1u64 << k) - 1;
    let mut ctx = BinaryFieldCtx {
        k,
        modulus,
        gamma: BinaryFieldElement::ONE,
        group_order_factors: prime_factors(order),
    };
    ctx.gamma = (1..=order)
        .map(BinaryFieldElement)
        .find(|&g| ctx.is_primitive(g))
        .expect("the multiplicative group is cyclic");
    Ok(ctx)
}

impl BinaryFieldCtx {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Modulus bitmask including the leading `x^k` bit.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn gamma(&self) -> BinaryFieldElement {
        self.gamma
    }

    pub fn size(&self) -> u64 {
        1u64 << self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = BinaryFieldElement> {
        (0..self.size()).map(BinaryFieldElement)
    }

    pub fn element(&self, coeffs: u64) -> Result<BinaryFieldElement> {
        if coeffs >= self.size() {
            return Err(Error::Precondition(format!("{coeffs:#x} is not reduced for k={}", self.k)));
        }
        Ok(BinaryFieldElement(coeffs))
    }

    #[inline]
    pub fn add(&self, a: BinaryFieldElement, b: BinaryFieldElement) -> BinaryFieldElement {
        BinaryFieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: BinaryFieldElement, b: BinaryFieldElement) -> BinaryFieldElement {
        let (mut x, mut y) = (a.0, b.0);
        let mut prod = 0u64;
        while y != 0 {
            if y & 1 == 1 {
                prod ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        let k = self.k as i32;
        while prod != 0 && poly_degree(prod) >= k {
            prod ^= self.modulus << (poly_degree(prod) - k);
        }
        BinaryFieldElement(prod)
    }

    pub fn square(&self, a: BinaryFieldElement) -> BinaryFieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: BinaryFieldElement, mut e: u64) -> BinaryFieldElement {
        let mut base = a;
        let mut acc = BinaryFieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: BinaryFieldElement) -> Result<BinaryFieldElement> {
        if a.is_zero() {
            return Err(Error::Precondition("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.size() - 2))
    }

    /// `x -> x^{2^d}`.
    pub fn frobenius(&self, mut a: BinaryFieldElement, d: u32) -> BinaryFieldElement {
        for _ in 0..d {
            a = self.square(a);
        }
        a
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: BinaryFieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::Precondition("zero has no multiplicative order".into()));
        }
        let mut ord = self.size() - 1;
        for &q in &self.group_order_factors {
            while ord.is_multiple_of(q) && self.pow(a, ord / q) == BinaryFieldElement::ONE {
                ord /= q;
            }
        }
        Ok(ord)
    }

    pub fn is_primitive(&self, a: BinaryFieldElement) -> bool {
        self.order(a).map(|o| o == self.size() - 1).unwrap_or(false)
    }

    /// True iff `a` lies in the subfield `F_{2^d}`.
    pub fn in_subfield(&self, a: BinaryFieldElement, d: u32) -> bool {
        self.frobenius(a, d) == a
    }

    /// `Tr_{F(k)/F(d)}(x) = sum_{i < k/d} x^{2^{d i}}`.
    pub fn trace(&self, x: BinaryFieldElement, d: u32) -> Result<BinaryFieldElement> {
        self.subfield_trace(x, self.k, d)
    }

    /// Trace from the subfield `F(e)` down to `F(d)`, for `x` in `F(e)`.
    pub fn subfield_trace(&self, x: BinaryFieldElement, e: u32, d: u32) -> Result<BinaryFieldElement> {
        if d == 0 || !e.is_multiple_of(d) {
            return Err(Error::NotDivisor(d, e));
        }
        if !self.k.is_multiple_of(e) {
            return Err(Error::NotDivisor(e, self.k));
        }
        if !self.in_subfield(x, e) {
            return Err(Error::Precondition(format!("element is not in F(2^{e})")));
        }
        let mut acc = BinaryFieldElement::ZERO;
        let mut term = x;
        for _ in 0..(e / d) {
            acc = self.add(acc, term);
            term = self.frobenius(term, d);
        }
        Ok(acc)
    }

    /// Absolute trace as a bit.
    pub fn abs_trace(&self, x: BinaryFieldElement) -> bool {
        self.subfield_trace(x, self.k, 1).expect("1 divides k") == BinaryFieldElement::ONE
    }

    fn half(&self) -> Result<u32> {
        if !self.k.is_multiple_of(2) {
            return Err(Error::Precondition(format!("F(2^{}) is not a quadratic extension", self.k)));
        }
        Ok(self.k / 2)
    }

    /// Conjugate over the index-2 subfield: `x^{2^{k/2}}`.
    pub fn conjugate(&self, x: BinaryFieldElement) -> Result<BinaryFieldElement> {
        Ok(self.frobenius(x, self.half()?))
    }

    /// `N_{F(2m)/F(m)}(x) = x * conj(x)`.
    pub fn norm(&self, x: BinaryFieldElement) -> Result<BinaryFieldElement> {
        Ok(self.mul(x, self.conjugate(x)?))
    }

    /// The generator `gamma^{2^m - 1}` of the kernel of the norm to `F(m)`.
    pub fn norm_one_generator(&self) -> Result<BinaryFieldElement> {
        let m = self.half()?;
        Ok(self.pow(self.gamma, (1u64 << m) - 1))
    }

    /// Alternating trace form `<x, y> = Tr_{F(2m)/F(1)}(x * conj(y))`.
    pub fn trace_pairing(&self, x: BinaryFieldElement, y: BinaryFieldElement) -> Result<bool> {
        Ok(self.abs_trace(self.mul(x, self.conjugate(y)?)))
    }

    /// Quadratic form `Q(x) = Tr_{F(m)/F(1)}(N(x))`.
    pub fn norm_trace_form(&self, x: BinaryFieldElement) -> Result<bool> {
        let m = self.half()?;
        let n = self.norm(x)?;
        Ok(self.subfield_trace(n, m, 1)? == BinaryFieldElement::ONE)
    }

    /// Gram matrix of the trace form in the polynomial basis.
    pub fn trace_form_gram(&self) -> Result<F2Matrix> {
        let k = self.k as usize;
        let mut g = F2Matrix::zero(k)?;
        for i in 0..k {
            for j in 0..k {
                let v = self.trace_pairing(BinaryFieldElement(1 << i), BinaryFieldElement(1 << j))?;
                g.set(i, j, v);
            }
        }
        Ok(g)
    }

    /// Matrix of an F2-linear map in the polynomial basis.
    ///
    /// For `k <= 12` the matrix is checked against `map` on every element and
    /// an error is returned if `map` is not linear; above that only the basis
    /// images are used.
    pub fn as_f2_linear<F>(&self, map: F) -> Result<F2Matrix>
    where
        F: Fn(BinaryFieldElement) -> BinaryFieldElement,
    {
        let k = self.k as usize;
        let cols: Vec<u64> = (0..k).map(|j| map(BinaryFieldElement(1 << j)).0).collect();
        let mat = F2Matrix::from_columns(k, &cols)?;
        if k <= 12 {
            for x in self.elements() {
                if mat.apply(x.0) != map(x).0 {
                    return Err(Error::Internal(format!(
                        "map is not F2-linear at {:#x}",
                        x.0
                    )));
                }
            }
        }
        Ok(mat)
    }

    pub fn element_repr(&self, x: BinaryFieldElement) -> ElementRepr {
        ElementRepr { k: self.k, hex: format!("{:x}", x.0) }
    }

    pub fn parse_element(&self, repr: &ElementRepr) -> Result<BinaryFieldElement> {
        if repr.k != self.k {
            return Err(Error::DimensionMismatch { expected: self.k as usize, got: repr.k as usize });
        }
        let v = u64::from_str_radix(&repr.hex, 16).map_err(|e| Error::Parse(e.to_string()))?;
        self.element(v)
    }

    pub fn repr(&self) -> FieldRepr {
        FieldRepr {
            k: self.k,
            modulus: format!("{:x}", self.modulus),
            gamma: format!("{:x}", self.gamma.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_moduli() {
        assert_eq!(make_field(1).unwrap().modulus(), 0b10);
        assert_eq!(make_field(2).unwrap().modulus(), 0b111);
        assert_eq!(make_field(4).unwrap().modulus(), 0b10011);
        assert_eq!(make_field(8).unwrap().modulus(), 0x11b);
    }

    #[test]
    fn out_of_range_degree() {
        assert!(make_field(0).is_err());
        assert!(make_field(33).is_err());
    }

    #[test]
    fn gamma_k6_order_63() {
        let f = make_field(6).unwrap();
        assert_eq!(f.order(f.gamma()).unwrap(), 63);
    }

    #[test]
    fn trace_of_zero() {
        let f = make_field(4).unwrap();
        assert_eq!(f.trace(BinaryFieldElement::ZERO, 2).unwrap(), BinaryFieldElement::ZERO);
        assert_eq!(f.trace(BinaryFieldElement::ONE, 3), Err(Error::NotDivisor(3, 4)));
    }

    #[test]
    fn f4_half_have_trace_one() {
        let f = make_field(2).unwrap();
        assert_eq!(f.elements().filter(|&x| f.abs_trace(x)).count(), 2);
    }

    #[test]
    fn norm_requires_even_degree() {
        let f = make_field(3).unwrap();
        assert!(f.norm(BinaryFieldElement::ONE).is_err());
        let f = make_field(4).unwrap();
        assert_eq!(f.norm(BinaryFieldElement::ONE).unwrap(), BinaryFieldElement::ONE);
    }

    #[test]
    fn norm_one_generator_orders() {
        assert_eq!(make_field(2).map(|f| f.order(f.norm_one_generator().unwrap()).unwrap()).unwrap(), 3);
        assert_eq!(make_field(6).map(|f| f.order(f.norm_one_generator().unwrap()).unwrap()).unwrap(), 9);
    }

    #[test]
    fn identity_map_linearizes_to_identity() {
        let f = make_field(6).unwrap();
        assert!(f.as_f2_linear(|x| x).unwrap().is_identity());
    }

    #[test]
    fn nonlinear_map_rejected() {
        let f = make_field(4).unwrap();
        assert!(f.as_f2_linear(|x| f.mul(f.mul(x, x), x)).is_err());
    }

    #[test]
    fn element_repr_round_trip() {
        let f = make_field(8).unwrap();
        let x = BinaryFieldElement(0xa7);
        let r = f.element_repr(x);
        assert_eq!(r.hex, "a7");
        assert_eq!(f.parse_element(&r).unwrap(), x);
        assert!(f.parse_element(&ElementRepr { k: 8, hex: "1ff".into() }).is_err());
    }
}
