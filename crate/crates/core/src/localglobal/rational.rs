//! Rational parsing/formatting, places of Q and small-integer number theory.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Trial division bound used by [`factor`].
const TRIAL_LIMIT: u64 = 10_000_000;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Always `"num/den"`, also for integers.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "oo" | "real" => Ok(Place::Infinity),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Parse(format!("invalid place {s:?}")))?;
                if !is_prime(p) {
                    return Err(Error::Parse(format!("{p} is not prime")));
                }
                Ok(Place::Prime(p))
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Prime factorization of a nonzero integer's absolute value.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let mut m: BigUint = n.magnitude().clone();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        if BigUint::from(d) * BigUint::from(d) > m {
            break;
        }
        let mut e = 0;
        while (&m % d).is_zero() {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let limit = BigUint::from(TRIAL_LIMIT);
        if m > &limit * &limit {
            return Err(Error::Unsupported("integer too large to factor by trial division".into()));
        }
        let p = m.to_u64().ok_or_else(|| Error::Unsupported("prime factor exceeds 64 bits".into()))?;
        out.push((p, 1));
    }
    Ok(out)
}

/// `(v_p(n), n / p^{v_p(n)})` for nonzero `n`.
pub fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Integer with the same square class as a nonzero rational (`n/d ~ n d`).
pub fn square_class_integer(x: &BigRational) -> BigInt {
    x.numer() * x.denom()
}

/// Squarefree part and square root of the square part: `n = s^2 * t`.
pub fn squarefree_decomposition(n: &BigInt) -> Result<(BigInt, BigInt)> {
    let mut s = BigInt::one();
    let mut t = n.signum();
    for (p, e) in factor(n)? {
        s *= BigInt::from(p).pow(e / 2);
        if e % 2 == 1 {
            t *= BigInt::from(p);
        }
    }
    Ok((s, t))
}

pub fn is_square_integer(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Exact rational square root if it exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    if is_square_integer(n) && is_square_integer(d) {
        Some(BigRational::new(n.sqrt(), d.sqrt()))
    } else {
        None
    }
}

pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Legendre symbol `(a / p)` for odd prime `p`, as `-1`, `0` or `1`.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least common multiple of denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn places() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinity);
        assert_eq!("7".parse::<Place>().unwrap(), Place::Prime(7));
        assert!("9".parse::<Place>().is_err());
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(&BigInt::from(-360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        let (s, t) = squarefree_decomposition(&BigInt::from(-72)).unwrap();
        assert_eq!((s, t), (BigInt::from(6), BigInt::from(-2)));
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn legendre_small() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(14, 7), 0);
    }

    #[test]
    fn sqrt() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }
}
