//! Exact point checks on plane quartics.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly3;
use super::rational::format_rational;
use crate::error::{Error, Result};

/// Two plane quartics over Q with the rational point `(0:0:1)`; both are
/// known to violate the local-global principle for symmetric determinantal
/// representations.
pub const SAMPLE_QUARTICS: [&str; 2] = [
    "X0*X2^3 + X2*(X0^3 + X0^2*X1 + X1^3) + X0^4 + X0^3*X1 + X0^2*X1^2 + X1^4",
    "X0^2*X1^2 - X0*X1^3 - X0^3*X2 - 2*X0^2*X2^2 + X1^2*X2^2 - X0*X2^3 + X1*X2^3",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticCheck {
    pub schema: String,
    pub polynomial: String,
    pub point: Vec<String>,
    pub value: String,
    pub on_curve: bool,
}

/// Evaluates a homogeneous quartic exactly at a projective point.
pub fn quartic_point_check(poly: &Poly3, point: &[BigRational; 3]) -> Result<QuarticCheck> {
    match poly.homogeneous_degree() {
        Some(4) => {}
        _ => return Err(Error::Precondition("polynomial is not a homogeneous quartic".into())),
    }
    if point.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let value = poly.eval(point);
    Ok(QuarticCheck {
        schema: "symdet.quartic-check.v1".into(),
        polynomial: poly.to_string(),
        point: point.iter().map(format_rational).collect(),
        on_curve: value.is_zero(),
        value: format_rational(&value),
    })
}
