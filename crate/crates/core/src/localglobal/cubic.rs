//! Two-torsion of Weierstrass cubics over Q and its local behaviour.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rational::{common_denominator, factor, format_rational, mod_u64, primes_up_to, rational_sqrt};
use crate::error::{Error, Result};

/// `y^2 z = x^3 + a x z^2 + b z^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCubic {
    pub a: BigRational,
    pub b: BigRational,
}

/// Image of Galois acting on the three roots of `x^3 + a x + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaloisImage {
    #[serde(rename = "trivial")]
    Trivial,
    C2,
    C3,
    S3,
}

impl WeierstrassCubic {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        let c = Self { a, b };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// `-4 a^3 - 27 b^2`, the discriminant of `x^3 + a x + b`.
    pub fn discriminant(&self) -> BigRational {
        let four = BigRational::from_integer(4.into());
        let tws = BigRational::from_integer(27.into());
        -(four * &self.a * &self.a * &self.a) - tws * &self.b * &self.b
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        x * x * x + &self.a * x + &self.b
    }

    /// Rational roots of `x^3 + a x + b`, ascending.
    pub fn rational_roots(&self) -> Result<Vec<BigRational>> {
        // x = y / D turns the cubic into the monic integer y^3 + a D^2 y + b D^3
        let d = common_denominator([&self.a, &self.b]);
        let dr = BigRational::from_integer(d.clone());
        let c0 = (&self.b * &dr * &dr * &dr).to_integer();
        let mut first = None;
        if c0.is_zero() {
            first = Some(BigRational::zero());
        } else {
            for y in divisors(&c0)? {
                for cand in [y.clone(), -y] {
                    let x = BigRational::new(cand, d.clone());
                    if self.eval(&x).is_zero() {
                        first = Some(x);
                        break;
                    }
                }
                if first.is_some() {
                    break;
                }
            }
        }
        let Some(r) = first else { return Ok(Vec::new()) };
        // x^3 + a x + b = (x - r)(x^2 + r x + (r^2 + a))
        let disc = &r * &r - BigRational::from_integer(4.into()) * (&r * &r + &self.a);
        let mut roots = vec![r.clone()];
        if let Some(s) = rational_sqrt(&disc) {
            let two = BigRational::from_integer(2.into());
            roots.push((-&r + &s) / &two);
            roots.push((-&r - &s) / &two);
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    pub fn galois_image(&self) -> Result<GaloisImage> {
        Ok(match self.rational_roots()?.len() {
            3 => GaloisImage::Trivial,
            1 => GaloisImage::C2,
            _ if rational_sqrt(&self.discriminant()).is_some() => GaloisImage::C3,
            _ => GaloisImage::S3,
        })
    }

    /// Primes that must be skipped when sampling: divisors of 6, of the
    /// discriminant, and of the coefficient denominators.
    fn bad_primes(&self) -> Result<Vec<u64>> {
        let disc = self.discriminant();
        let mut bad = vec![2, 3];
        for n in [disc.numer(), disc.denom(), self.a.denom(), self.b.denom()] {
            bad.extend(factor(n)?.into_iter().map(|(p, _)| p));
        }
        bad.sort_unstable();
        bad.dedup();
        Ok(bad)
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n)? {
        let p = BigInt::from(p);
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Polynomials of degree < 3 modulo `x^3 + a x + b` over `F_p`.
fn mulmod(u: [u64; 3], v: [u64; 3], a: u64, b: u64, p: u64) -> [u64; 3] {
    let p128 = p as u128;
    let mut t = [0u128; 5];
    for i in 0..3 {
        for j in 0..3 {
            t[i + j] = (t[i + j] + u[i] as u128 * v[j] as u128) % p128;
        }
    }
    // x^3 = -a x - b
    let (na, nb) = ((p - a) % p, (p - b) % p);
    for k in (3..5).rev() {
        let c = t[k];
        t[k] = 0;
        t[k - 2] = (t[k - 2] + c * na as u128) % p128;
        t[k - 3] = (t[k - 3] + c * nb as u128) % p128;
    }
    [t[0] as u64, t[1] as u64, t[2] as u64]
}

fn poly_gcd_degree(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        let inv = super::rational::pow_mod(*g.last().expect("nonempty"), p - 2, p);
        while f.len() >= g.len() {
            let c = (*f.last().expect("nonempty") as u128 * inv as u128 % p as u128) as u64;
            let shift = f.len() - g.len();
            for (i, &gi) in g.iter().enumerate() {
                let sub = (c as u128 * gi as u128 % p as u128) as u64;
                f[i + shift] = (f[i + shift] + p - sub) % p;
            }
            trim(&mut f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

/// True iff `x^3 + a x + b` has a root modulo the prime `p > 3`.
pub fn has_root_mod_p(a: u64, b: u64, p: u64) -> bool {
    // gcd(x^p - x, f) is nontrivial iff f has a root in F_p
    let mut acc = [1u64, 0, 0];
    let mut base = [0u64, 1, 0];
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, a, b, p);
        }
        base = mulmod(base, base, a, b, p);
        e >>= 1;
    }
    acc[1] = (acc[1] + p - 1) % p;
    let f = vec![b % p, a % p, 0, 1];
    poly_gcd_degree(f, acc.to_vec(), p) >= 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDensity {
    pub prime_bound: u64,
    pub samples: usize,
    pub with_root: usize,
    pub density: f64,
    /// Sampled primes with no root, smallest first (at most 10).
    pub rootless_primes: Vec<u64>,
}

/// Fraction of good primes `p <= bound` at which the cubic has a root mod `p`.
pub fn cubic_local_root_density(e: &WeierstrassCubic, bound: u64) -> Result<RootDensity> {
    let bad = e.bad_primes()?;
    let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|p| bad.binary_search(p).is_err()).collect();
    let outcomes: Vec<bool> = primes
        .par_iter()
        .map(|&p| {
            let inv = |x: &BigRational| -> u64 {
                let d = mod_u64(x.denom(), p);
                let n = mod_u64(x.numer(), p);
                (n as u128 * super::rational::pow_mod(d, p - 2, p) as u128 % p as u128) as u64
            };
            has_root_mod_p(inv(&e.a), inv(&e.b), p)
        })
        .collect();
    let with_root = outcomes.iter().filter(|&&x| x).count();
    let rootless_primes = primes.iter().zip(&outcomes).filter(|(_, &r)| !r).map(|(&p, _)| p).take(10).collect();
    let samples = primes.len();
    Ok(RootDensity {
        prime_bound: bound,
        samples,
        with_root,
        density: if samples == 0 { 0.0 } else { with_root as f64 / samples as f64 },
        rootless_primes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicVerdict {
    pub schema: String,
    pub a: String,
    pub b: String,
    pub discriminant: String,
    pub rational_roots: Vec<String>,
    pub galois_image: GaloisImage,
    /// A rational two-torsion point exists, hence a symmetric determinantal
    /// representation over Q.
    pub global_sdr: bool,
    pub density: RootDensity,
    pub everywhere_local_sample: bool,
    /// `everywhere_local_sample` implies `global_sdr`.
    pub implication_holds: bool,
}

pub fn cubic_local_global_verdict(e: &WeierstrassCubic, bound: u64) -> Result<CubicVerdict> {
    let roots = e.rational_roots()?;
    let density = cubic_local_root_density(e, bound)?;
    let everywhere = density.with_root == density.samples;
    let global = !roots.is_empty();
    Ok(CubicVerdict {
        schema: "symdet.cubic.v1".into(),
        a: format_rational(&e.a),
        b: format_rational(&e.b),
        discriminant: format_rational(&e.discriminant()),
        rational_roots: roots.iter().map(format_rational).collect(),
        galois_image: e.galois_image()?,
        global_sdr: global,
        everywhere_local_sample: everywhere,
        implication_holds: !everywhere || global,
        density,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localglobal::rational::int;

    #[test]
    fn split_cubic() {
        let e = WeierstrassCubic::from_ints(-1, 0).unwrap();
        assert_eq!(e.rational_roots().unwrap(), vec![int(-1), int(0), int(1)]);
        assert_eq!(e.galois_image().unwrap(), GaloisImage::Trivial);
        let v = cubic_local_global_verdict(&e, 1000).unwrap();
        assert!(v.global_sdr && v.everywhere_local_sample);
        assert_eq!(v.density.density, 1.0);
    }

    #[test]
    fn cube_root_of_two() {
        let e = WeierstrassCubic::from_ints(0, -2).unwrap();
        assert!(e.rational_roots().unwrap().is_empty());
        assert_eq!(e.discriminant(), int(-108));
        assert_eq!(e.galois_image().unwrap(), GaloisImage::S3);
        let v = cubic_local_global_verdict(&e, 1000).unwrap();
        assert!(!v.global_sdr);
        assert_eq!(v.density.rootless_primes[0], 7);
    }

    #[test]
    fn cyclic_cubic() {
        let e = WeierstrassCubic::from_ints(-3, 1).unwrap();
        assert_eq!(e.discriminant(), int(81));
        assert_eq!(e.galois_image().unwrap(), GaloisImage::C3);
    }

    #[test]
    fn one_rational_root() {
        // x^3 - 2x + 1 = (x - 1)(x^2 + x - 1)
        let e = WeierstrassCubic::from_ints(-2, 1).unwrap();
        assert_eq!(e.rational_roots().unwrap(), vec![int(1)]);
        assert_eq!(e.galois_image().unwrap(), GaloisImage::C2);
    }

    #[test]
    fn rational_coefficients() {
        // roots 1/2, -1/2 and 0: x^3 - x/4
        let e = WeierstrassCubic::new(BigRational::new((-1).into(), 4.into()), int(0)).unwrap();
        assert_eq!(e.rational_roots().unwrap().len(), 3);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(WeierstrassCubic::from_ints(-3, 2), Err(Error::SingularCurve));
    }

    #[test]
    fn root_mod_p_matches_table() {
        for p in [5u64, 7, 11, 13, 31] {
            for a in 0..p {
                for b in 0..p {
                    let brute = (0..p).any(|x| (x * x * x + a * x + b) % p == 0);
                    assert_eq!(has_root_mod_p(a, b, p), brute, "a={a} b={b} p={p}");
                }
            }
        }
    }
}
