//! Hilbert symbols over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::rational::{factor, legendre, mod_u64, split_valuation, square_class_integer, Place};
use crate::error::{Error, Result};

/// `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial solution over
/// the completion of Q at `v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("Hilbert symbol arguments must be nonzero".into()));
    }
    let a = square_class_integer(a);
    let b = square_class_integer(b);
    Ok(hilbert_symbol_int(&a, &b, place))
}

/// Hilbert symbol for nonzero integers.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, place: Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let u = mod_u64(&u, 8);
            let v = mod_u64(&v, 8);
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(v) + alpha as u64 * omega(v) + beta as u64 * omega(u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let u = mod_u64(&u, p);
            let v = mod_u64(&v, p);
            let mut s: i8 = if (alpha as u64 * beta as u64 * ((p - 1) / 2)).is_multiple_of(2) { 1 } else { -1 };
            if beta % 2 == 1 {
                s *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(v, p);
            }
            s
        }
    }
}

/// Places where `(a, b)_v` can be `-1`: infinity, 2, and odd primes
/// dividing `a` or `b`.
pub fn candidate_places(a: &BigRational, b: &BigRational) -> Result<Vec<Place>> {
    let mut primes = vec![2u64];
    for x in [a, b] {
        for n in [x.numer(), x.denom()] {
            primes.extend(factor(n)?.into_iter().map(|(p, _)| p));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    Ok(out)
}

/// Places where the symbol is `-1`.
pub fn nontrivial_places(a: &BigRational, b: &BigRational) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for v in candidate_places(a, b)? {
        if hilbert_symbol(a, b, v)? == -1 {
            out.push(v);
        }
    }
    Ok(out)
}

/// Local solvability by exhaustive search, for cross-checking the closed
/// forms on small integers.
///
/// Valuations are first reduced to 0 or 1 by removing squares. At an odd
/// prime a primitive solution modulo `p^2` then decides solvability, and at
/// 2 a primitive solution modulo `2^6` does.
pub fn hilbert_symbol_by_search(a: i64, b: i64, place: Place) -> i8 {
    assert!(a != 0 && b != 0);
    let p = match place {
        Place::Infinity => return if a < 0 && b < 0 { -1 } else { 1 },
        Place::Prime(p) => p as i64,
    };
    let reduce = |mut x: i64| {
        while x % (p * p) == 0 {
            x /= p * p;
        }
        x
    };
    let (a, b) = (reduce(a), reduce(b));
    let modulus = if p == 2 { 64 } else { p * p };
    let r = |x: i64| x.rem_euclid(modulus);
    let mut is_square = vec![false; modulus as usize];
    for z in 0..modulus {
        is_square[r(z * z) as usize] = true;
    }
    let primitive = |x: i64, y: i64, z: i64| x % p != 0 || y % p != 0 || z % p != 0;
    for x in 0..modulus {
        for y in 0..modulus {
            let rhs = r(r(a) * r(x * x) + r(b) * r(y * y));
            if !is_square[rhs as usize] {
                continue;
            }
            if x % p != 0 || y % p != 0 {
                return 1;
            }
            for z in 0..modulus {
                if r(z * z) == rhs && primitive(x, y, z) {
                    return 1;
                }
            }
        }
    }
    -1
}
