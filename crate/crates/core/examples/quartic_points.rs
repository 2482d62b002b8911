//! Exact evaluation of plane quartics at rational points.

use num_bigint::BigInt;
use num_rational::BigRational;
use symdet::localglobal::{quartic_point_check, Poly3, SAMPLE_QUARTICS};

fn main() -> symdet::Result<()> {
    let pt = |x: i64, y: i64, z: i64| [x, y, z].map(|c| BigRational::from_integer(BigInt::from(c)));
    for text in SAMPLE_QUARTICS {
        let poly: Poly3 = text.parse()?;
        for point in [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)] {
            let check = quartic_point_check(&poly, &point)?;
            println!("{poly} at {:?}: value {} on curve {}", check.point, check.value, check.on_curve);
        }
    }
    Ok(())
}
