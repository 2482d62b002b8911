//! Exact polynomials in `X0, X1, X2` over Q.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// Sparse polynomial in three variables, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly3 {
    terms: BTreeMap<[u32; 3], BigRational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: BigRational, exp: [u32; 3]) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// The variable `X_i`.
    pub fn var(i: usize) -> Self {
        let mut exp = [0; 3];
        exp[i] = 1;
        Self::monomial(BigRational::one(), exp)
    }

    /// `c0 X0 + c1 X1 + c2 X2`.
    pub fn linear(c: &[BigRational; 3]) -> Self {
        (0..3).fold(Self::zero(), |acc, i| acc + Self::var(i).scale(&c[i]))
    }

    pub fn add_term(&mut self, exp: [u32; 3], c: BigRational) {
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: [u32; 3]) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| &acc * self)
    }

    /// Total degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, x: &[BigRational; 3]) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t *= &x[i];
                }
            }
            acc + t
        })
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { coeff: format_rational(c), exp: *e })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let mut p = Self::zero();
        for t in &j.terms {
            p.add_term(t.exp, parse_rational(&t.coeff)?);
        }
        Ok(p)
    }

    /// Reads either the JSON term list or a polynomial expression.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let j: PolyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            Self::from_json(&j)
        } else {
            text.parse()
        }
    }
}

impl Add for Poly3 {
    type Output = Poly3;
    fn add(mut self, rhs: Poly3) -> Poly3 {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: Poly3) -> Poly3 {
        self + (-rhs)
    }
}

impl Neg for Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: Poly3) -> Poly3 {
        &self * &rhs
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let vars: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { format!("X{i}") } else { format!("X{i}^{}", e[i]) })
                .collect();
            let coeff = if mag.is_integer() { mag.numer().to_string() } else { format!("({})", format_rational(&mag)) };
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&vars.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: [u32; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

/// Expression grammar: sums and differences of products of factors, where a
/// factor is an integer, a variable (`X0`..`X2`, also `x`, `y`, `z`), or a
/// parenthesized expression, optionally raised to `^n`. Juxtaposition
/// multiplies; `/` divides by an integer.
struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly3> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly3> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&BigRational::new(BigInt::one(), d));
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly3> {
        let base = self.factor()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn factor(&mut self) -> Result<Poly3> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly3::constant(BigRational::from_integer(self.integer()?))),
            Some('X') | Some('x') if self.chars.get(self.pos + 1).is_some_and(|d| d.is_ascii_digit()) => {
                self.pos += 1;
                let i = self.integer()?;
                let i: usize = i.try_into().map_err(|_| self.err("bad variable index"))?;
                if i > 2 {
                    return Err(self.err("variable index must be 0, 1 or 2"));
                }
                Ok(Poly3::var(i))
            }
            Some('x') => {
                self.pos += 1;
                Ok(Poly3::var(0))
            }
            Some('y') => {
                self.pos += 1;
                Ok(Poly3::var(1))
            }
            Some('z') => {
                self.pos += 1;
                Ok(Poly3::var(2))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

impl std::str::FromStr for Poly3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { chars: s.chars().collect(), pos: 0, src: s };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn det(m: &[Vec<Poly3>]) -> Result<Poly3> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: m.first().map_or(0, Vec::len) });
    }
    Ok(match n {
        0 => Poly3::constant(BigRational::one()),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly3::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly3>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det(&minor)?;
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localglobal::rational::int;

    #[test]
    fn parse_expressions() {
        let p: Poly3 = "X0*X2^3 + X2*(X0^3+X0^2*X1+X1^3)".parse().unwrap();
        assert_eq!(p.homogeneous_degree(), Some(4));
        assert_eq!(p.coeff([1, 0, 3]), int(1));
        assert_eq!(p.coeff([0, 3, 1]), int(1));
        let q: Poly3 = "2x^2 - 3/2 y z".parse().unwrap();
        assert_eq!(q.coeff([2, 0, 0]), int(2));
        assert_eq!(q.coeff([0, 1, 1]), BigRational::new((-3).into(), 2.into()));
        assert!("X3".parse::<Poly3>().is_err());
        assert!("X0 +".parse::<Poly3>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let p: Poly3 = "X0^2 - 5X1X2 + X2^2".parse().unwrap();
        let j = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(Poly3::parse_any(&j).unwrap(), p);
        assert_eq!(Poly3::parse_any(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn det_2x2() {
        let m = vec![vec![Poly3::var(0), Poly3::var(1)], vec![Poly3::var(1), Poly3::var(2)]];
        let expected: Poly3 = "X0 X2 - X1^2".parse().unwrap();
        assert_eq!(det(&m).unwrap(), expected);
    }

    #[test]
    fn eval_point() {
        let p: Poly3 = "x^2 + y^2 - z^2".parse().unwrap();
        assert!(p.eval(&[int(3), int(4), int(5)]).is_zero());
    }
}
