//! Plane conics over Q: local obstructions, rational points and 2x2
//! symmetric determinantal representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::hilbert::{hilbert_symbol_int, nontrivial_places};
use super::poly::{det, Poly3};
use super::rational::{common_denominator, factor, format_rational, squarefree_decomposition, Place};
use crate::error::{Error, Result};

type Vec3 = [BigRational; 3];
type Mat3 = [[BigRational; 3]; 3];

fn zero3() -> Vec3 {
    [BigRational::zero(), BigRational::zero(), BigRational::zero()]
}

fn unit(i: usize) -> Vec3 {
    let mut v = zero3();
    v[i] = BigRational::one();
    v
}

fn axpy(a: &BigRational, x: &Vec3, y: &Vec3) -> Vec3 {
    [a * &x[0] + &y[0], a * &x[1] + &y[1], a * &x[2] + &y[2]]
}

fn scale(a: &BigRational, x: &Vec3) -> Vec3 {
    [a * &x[0], a * &x[1], a * &x[2]]
}

fn det3(m: &Mat3) -> BigRational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn inverse3(m: &Mat3) -> Result<Mat3> {
    let d = det3(m);
    if d.is_zero() {
        return Err(Error::Singular);
    }
    let c = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let s: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let minor = &m[r[0]][s[0]] * &m[r[1]][s[1]] - &m[r[0]][s[1]] * &m[r[1]][s[0]];
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    let mut out: Mat3 = [zero3(), zero3(), zero3()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = c(j, i) / &d;
        }
    }
    Ok(out)
}

/// `a X0^2 + b X1^2 + c X2^2 + d X0X1 + e X0X2 + f X1X2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryQuadraticForm {
    pub coeffs: [BigRational; 6],
}

impl TernaryQuadraticForm {
    pub fn new(coeffs: [BigRational; 6]) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Precondition("quadratic form is zero".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_slice(c: &[BigRational]) -> Result<Self> {
        let coeffs: [BigRational; 6] = c
            .to_vec()
            .try_into()
            .map_err(|_| Error::Parse(format!("expected 6 coefficients, got {}", c.len())))?;
        Self::new(coeffs)
    }

    pub fn diagonal(a: &BigRational, b: &BigRational, c: &BigRational) -> Result<Self> {
        let z = BigRational::zero();
        Self::new([a.clone(), b.clone(), c.clone(), z.clone(), z.clone(), z])
    }

    /// Symmetric Gram matrix `G` with `F(x) = x^T G x`.
    pub fn gram(&self) -> Mat3 {
        let [a, b, c, d, e, f] = &self.coeffs;
        let h = BigRational::new(BigInt::one(), BigInt::from(2));
        [
            [a.clone(), d * &h, e * &h],
            [d * &h, b.clone(), f * &h],
            [e * &h, f * &h, c.clone()],
        ]
    }

    pub fn is_smooth(&self) -> bool {
        !det3(&self.gram()).is_zero()
    }

    pub fn bilinear(&self, x: &Vec3, y: &Vec3) -> BigRational {
        let g = self.gram();
        let mut acc = BigRational::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += &x[i] * &g[i][j] * &y[j];
            }
        }
        acc
    }

    pub fn eval(&self, x: &Vec3) -> BigRational {
        self.bilinear(x, x)
    }

    pub fn to_poly(&self) -> Poly3 {
        let exps = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
        let mut p = Poly3::zero();
        for (e, c) in exps.iter().zip(&self.coeffs) {
            p.add_term(*e, c.clone());
        }
        p
    }

    /// Basis `b_0, b_1, b_2` (columns of `P`) orthogonal for the form, with
    /// `F(P y) = sum d_i y_i^2`.
    pub fn diagonalize(&self) -> (Vec3, Mat3) {
        let mut basis: Vec<Vec3> = (0..3).map(unit).collect();
        for k in 0..3 {
            if let Some(j) = (k..3).find(|&j| !self.eval(&basis[j]).is_zero()) {
                basis.swap(k, j);
            } else if let Some(j) = (k + 1..3).find(|&j| !self.bilinear(&basis[k], &basis[j]).is_zero()) {
                basis[k] = axpy(&BigRational::one(), &basis[j], &basis[k]);
            } else {
                continue;
            }
            let pivot = self.eval(&basis[k]);
            for i in k + 1..3 {
                let factor = self.bilinear(&basis[i], &basis[k]) / &pivot;
                basis[i] = axpy(&-factor, &basis[k].clone(), &basis[i]);
            }
        }
        let d = [self.eval(&basis[0]), self.eval(&basis[1]), self.eval(&basis[2])];
        let mut p: Mat3 = [zero3(), zero3(), zero3()];
        for (j, b) in basis.iter().enumerate() {
            for i in 0..3 {
                p[i][j] = b[i].clone();
            }
        }
        (d, p)
    }
}

/// Diagonal integer form `A w0^2 + B w1^2 + C w2^2` with squarefree, pairwise
/// coprime coefficients, together with the coordinate change back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDiagonal {
    pub coeffs: [BigInt; 3],
    /// `x = transform * w` recovers original coordinates (up to scaling).
    pub transform: Mat3,
}

/// Diagonalizes and reduces a smooth conic.
pub fn reduce_conic(form: &TernaryQuadraticForm) -> Result<ReducedDiagonal> {
    if !form.is_smooth() {
        return Err(Error::SingularCurve);
    }
    let (d, p) = form.diagonalize();
    // y_i = m_i w_i turns n_i/m_i into n_i m_i
    let mut k: Vec<BigInt> = d.iter().map(|x| x.numer() * x.denom()).collect();
    let mut s: Vec<BigRational> = d.iter().map(|x| BigRational::from_integer(x.denom().clone())).collect();
    loop {
        for i in 0..3 {
            let (sq, free) = squarefree_decomposition(&k[i])?;
            s[i] = &s[i] / BigRational::from_integer(sq);
            k[i] = free;
        }
        let g = k[0].gcd(&k[1]).gcd(&k[2]);
        if !g.is_one() {
            for x in &mut k {
                *x /= &g;
            }
            continue;
        }
        let mut changed = false;
        'pairs: for i in 0..3 {
            for j in i + 1..3 {
                let g = k[i].gcd(&k[j]);
                if g.is_one() {
                    continue;
                }
                let l = 3 - i - j;
                let p = BigInt::from(factor(&g)?[0].0);
                k[i] /= &p;
                k[j] /= &p;
                k[l] *= &p;
                s[l] = &s[l] * BigRational::from_integer(p);
                changed = true;
                break 'pairs;
            }
        }
        if !changed {
            break;
        }
    }
    let mut transform: Mat3 = [zero3(), zero3(), zero3()];
    for i in 0..3 {
        for j in 0..3 {
            transform[i][j] = &p[i][j] * &s[j];
        }
    }
    Ok(ReducedDiagonal { coeffs: [k[0].clone(), k[1].clone(), k[2].clone()], transform })
}

/// Places where the conic has no local point.
pub fn conic_local_invariants(form: &TernaryQuadraticForm) -> Result<Vec<Place>> {
    let r = reduce_conic(form)?;
    let [a, b, c] = &r.coeffs;
    // A w0^2 + B w1^2 + C w2^2 = 0  <=>  w2^2 = (-A/C) w0^2 + (-B/C) w1^2 ~ (-AC, -BC)
    let x = -(a * c);
    let y = -(b * c);
    let places = nontrivial_places(&BigRational::from_integer(x.clone()), &BigRational::from_integer(y.clone()))?;
    debug_assert!(places.iter().all(|v| hilbert_symbol_int(&x, &y, *v) == -1));
    if places.len() % 2 != 0 {
        return Err(Error::Internal("odd number of obstructed places".into()));
    }
    Ok(places)
}

/// Primitive integer representative of a projective point.
pub fn normalize_point(x: &Vec3) -> Result<[BigInt; 3]> {
    if x.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let den = common_denominator(x.iter());
    let ints: Vec<BigInt> = x.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let mut out: Vec<BigInt> = ints.into_iter().map(|v| v / &g).collect();
    if let Some(first) = out.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            out = out.into_iter().map(|v| -v).collect();
        }
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

fn to_rat3(p: &[BigInt; 3]) -> Vec3 {
    [
        BigRational::from_integer(p[0].clone()),
        BigRational::from_integer(p[1].clone()),
        BigRational::from_integer(p[2].clone()),
    ]
}

/// First solution of `A x^2 + B y^2 + C z^2 = 0` with `0 <= x <= sqrt|BC|`,
/// `0 <= y <= sqrt|AC|`, in lexicographic order of `(x, y)`.
pub fn holzer_search(coeffs: &[BigInt; 3]) -> Option<[BigInt; 3]> {
    let [a, b, c] = coeffs;
    let bx = (b * c).abs().sqrt();
    let by = (a * c).abs().sqrt();
    let bz = (a * b).abs().sqrt();
    let bx = bx.to_u64()?;
    let by = by.to_u64()?;
    for x in 0..=bx {
        for y in 0..=by {
            if x == 0 && y == 0 {
                continue;
            }
            let (xb, yb) = (BigInt::from(x), BigInt::from(y));
            let lhs = a * &xb * &xb + b * &yb * &yb;
            let (q, rem) = (-lhs).div_rem(c);
            if !rem.is_zero() || q.is_negative() {
                continue;
            }
            let z = q.sqrt();
            if &z * &z == q && z <= bz {
                return Some([xb, yb, z]);
            }
        }
    }
    None
}

/// A rational point if one exists.
///
/// Coordinate points are tried first; otherwise the reduced diagonal form is
/// searched within its Holzer bounds, which is complete once no place
/// obstructs. A failed search without obstructions is reported as an
/// internal error.
pub fn conic_rational_point(form: &TernaryQuadraticForm) -> Result<Option<[BigInt; 3]>> {
    if !form.is_smooth() {
        return Err(Error::SingularCurve);
    }
    for i in 0..3 {
        if form.eval(&unit(i)).is_zero() {
            return normalize_point(&unit(i)).map(Some);
        }
    }
    if !conic_local_invariants(form)?.is_empty() {
        return Ok(None);
    }
    let r = reduce_conic(form)?;
    let w = holzer_search(&r.coeffs)
        .ok_or_else(|| Error::Internal("no point within Holzer bounds although no place obstructs".into()))?;
    let w = to_rat3(&w);
    let mut x = zero3();
    for (i, xi) in x.iter_mut().enumerate() {
        for j in 0..3 {
            *xi += &r.transform[i][j] * &w[j];
        }
    }
    let point = normalize_point(&x)?;
    if !form.eval(&to_rat3(&point)).is_zero() {
        return Err(Error::Internal("recovered point is not on the conic".into()));
    }
    Ok(Some(point))
}

/// `n x n` symmetric matrices with `det(X0 M0 + X1 M1 + X2 M2) = lambda * F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPencil {
    pub n: usize,
    pub m: [Vec<Vec<BigRational>>; 3],
    pub lambda: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilJson {
    pub n: usize,
    pub m0: Vec<Vec<String>>,
    pub m1: Vec<Vec<String>>,
    pub m2: Vec<Vec<String>>,
    pub lambda: String,
}

impl MatrixPencil {
    pub fn determinant(&self) -> Result<Poly3> {
        let entries: Vec<Vec<Poly3>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| Poly3::linear(&[self.m[0][i][j].clone(), self.m[1][i][j].clone(), self.m[2][i][j].clone()]))
                    .collect()
            })
            .collect();
        det(&entries)
    }

    pub fn is_symmetric(&self) -> bool {
        self.m.iter().all(|m| (0..self.n).all(|i| (0..self.n).all(|j| m[i][j] == m[j][i])))
    }

    /// Exact check of the determinant identity against `f`.
    pub fn verify(&self, f: &Poly3) -> Result<bool> {
        Ok(self.is_symmetric() && !self.lambda.is_zero() && self.determinant()? == f.scale(&self.lambda))
    }

    pub fn to_json(&self) -> PencilJson {
        let fmt = |m: &Vec<Vec<BigRational>>| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(format_rational).collect()).collect()
        };
        PencilJson {
            n: self.n,
            m0: fmt(&self.m[0]),
            m1: fmt(&self.m[1]),
            m2: fmt(&self.m[2]),
            lambda: format_rational(&self.lambda),
        }
    }
}

/// 1x1 representation of a nonzero linear form.
pub fn line_sdr(c: &[BigRational; 3]) -> Result<MatrixPencil> {
    if c.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("linear form is zero".into()));
    }
    Ok(MatrixPencil {
        n: 1,
        m: [vec![vec![c[0].clone()]], vec![vec![c[1].clone()]], vec![vec![c[2].clone()]]],
        lambda: BigRational::one(),
    })
}

/// 2x2 representation from a rational point.
///
/// With `p` the point, `r` a second vector on the tangent line and `q` a
/// completing vector adjusted so that `F(Y0 p + Y1 r + Y2 q) = mu (Y0 Y2 -
/// Y1^2)`, the pencil is `[[Y0, Y1], [Y1, Y2]]` written in the original
/// coordinates, with `lambda = 1 / mu`.
pub fn conic_sdr(form: &TernaryQuadraticForm, point: &[BigInt; 3]) -> Result<MatrixPencil> {
    if !form.is_smooth() {
        return Err(Error::SingularCurve);
    }
    let p = to_rat3(point);
    if p.iter().all(Zero::is_zero) || !form.eval(&p).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let w: Vec<BigRational> = (0..3).map(|i| form.bilinear(&p, &unit(i))).collect();
    let k = w.iter().position(|x| !x.is_zero()).ok_or(Error::SingularCurve)?;
    let r = (0..3)
        .filter(|&i| i != k)
        .map(|i| axpy(&-(&w[i] / &w[k]), &unit(k), &unit(i)))
        .find(|r| !form.eval(r).is_zero())
        .ok_or_else(|| Error::Internal("tangent line is degenerate".into()))?;
    let q = unit(k);
    let fr = form.eval(&r);
    let bpq = form.bilinear(&p, &q);
    let q1 = axpy(&-(form.bilinear(&r, &q) / &fr), &r, &q);
    let two = BigRational::from_integer(BigInt::from(2));
    let q2 = axpy(&-(form.eval(&q1) / (&two * form.bilinear(&p, &q1))), &p, &q1);
    let c = -(&two * &bpq) / &fr;
    let q3 = scale(&(BigRational::one() / &c), &q2);
    let mu = -fr;
    let mut t: Mat3 = [zero3(), zero3(), zero3()];
    for (j, col) in [&p, &r, &q3].iter().enumerate() {
        for i in 0..3 {
            t[i][j] = col[i].clone();
        }
    }
    let ti = inverse3(&t)?;
    let m = |j: usize| vec![vec![ti[0][j].clone(), ti[1][j].clone()], vec![ti[1][j].clone(), ti[2][j].clone()]];
    let pencil = MatrixPencil { n: 2, m: [m(0), m(1), m(2)], lambda: BigRational::one() / mu };
    if !pencil.verify(&form.to_poly())? {
        return Err(Error::Internal("pencil determinant does not match the conic".into()));
    }
    Ok(pencil)
}

/// Full analysis of a conic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicReport {
    pub schema: String,
    pub coeffs: Vec<String>,
    pub smooth: bool,
    pub obstructed_places: Vec<Place>,
    pub point: Option<Vec<String>>,
    pub pencil: Option<PencilJson>,
}

pub fn analyze_conic(form: &TernaryQuadraticForm) -> Result<ConicReport> {
    let obstructed_places = conic_local_invariants(form)?;
    let point = conic_rational_point(form)?;
    let pencil = point.as_ref().map(|p| conic_sdr(form, p)).transpose()?;
    if point.is_some() != obstructed_places.is_empty() {
        return Err(Error::Internal("local invariants disagree with the point search".into()));
    }
    Ok(ConicReport {
        schema: "symdet.conic.v1".into(),
        coeffs: form.coeffs.iter().map(format_rational).collect(),
        smooth: true,
        obstructed_places,
        point: point.map(|p| p.iter().map(|x| x.to_string()).collect()),
        pencil: pencil.map(|p| p.to_json()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localglobal::rational::int;

    fn diag(a: i64, b: i64, c: i64) -> TernaryQuadraticForm {
        TernaryQuadraticForm::diagonal(&int(a), &int(b), &int(c)).unwrap()
    }

    #[test]
    fn sum_of_three_squares_obstructed() {
        let f = diag(1, 1, 1);
        assert_eq!(conic_local_invariants(&f).unwrap(), vec![Place::Prime(2), Place::Infinity]);
        assert_eq!(conic_rational_point(&f).unwrap(), None);
    }

    #[test]
    fn pythagorean() {
        let f = diag(1, 1, -1);
        assert!(conic_local_invariants(&f).unwrap().is_empty());
        let p = conic_rational_point(&f).unwrap().unwrap();
        let pencil = conic_sdr(&f, &p).unwrap();
        assert!(pencil.verify(&f.to_poly()).unwrap());
    }

    #[test]
    fn standard_conic_gives_identity_pencil() {
        let z = int(0);
        let f = TernaryQuadraticForm::new([z.clone(), int(-1), z.clone(), z.clone(), int(1), z]).unwrap();
        let p = conic_rational_point(&f).unwrap().unwrap();
        assert_eq!(p, [BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
        let pencil = conic_sdr(&f, &p).unwrap();
        assert_eq!(pencil.lambda, int(1));
        assert_eq!(pencil.m[0], vec![vec![int(1), int(0)], vec![int(0), int(0)]]);
        assert_eq!(pencil.m[1], vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(pencil.m[2], vec![vec![int(0), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn singular_rejected() {
        let f = diag(1, 1, 0);
        assert_eq!(conic_local_invariants(&f), Err(Error::SingularCurve));
    }

    #[test]
    fn point_not_on_curve() {
        let f = diag(1, 1, -1);
        let p = [BigInt::from(1), BigInt::from(1), BigInt::from(1)];
        assert_eq!(conic_sdr(&f, &p), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn reduction_keeps_conic() {
        let f = TernaryQuadraticForm::new([int(12), int(18), int(-50), int(4), int(0), int(6)]).unwrap();
        let r = reduce_conic(&f).unwrap();
        for (i, a) in r.coeffs.iter().enumerate() {
            for b in &r.coeffs[i + 1..] {
                assert!(a.gcd(b).is_one());
            }
        }
        assert_eq!(analyze_conic(&f).unwrap().point.is_some(), conic_local_invariants(&f).unwrap().is_empty());
    }

    #[test]
    fn line_pencils() {
        let p = line_sdr(&[int(2), int(0), int(-3)]).unwrap();
        assert_eq!(p.m[2], vec![vec![int(-3)]]);
        assert!(p.verify(&"2X0 - 3X2".parse().unwrap()).unwrap());
        assert!(line_sdr(&[int(0), int(0), int(0)]).is_err());
    }
}
