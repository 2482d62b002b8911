//! Local obstructions and rational points of conics, with a symmetric 2x2
//! linear determinantal representation when a point exists.

use symdet::localglobal::{analyze_conic, rational::parse_rational_list, TernaryQuadraticForm};

fn main() -> symdet::Result<()> {
    for coeffs in ["1,1,-1,0,0,0", "1,1,1,0,0,0", "1,1,-3,0,0,0", "3,5,-7,0,0,0", "0,-1,0,0,1,0", "1,2,-5,1,1,1"] {
        let form = TernaryQuadraticForm::from_slice(&parse_rational_list(coeffs)?)?;
        let report = analyze_conic(&form)?;
        let places: Vec<String> = report.obstructed_places.iter().map(ToString::to_string).collect();
        println!(
            "[{coeffs}] obstructed at {{{}}} point {:?} pencil {}",
            places.join(", "),
            report.point,
            if report.pencil.is_some() { "found" } else { "none" }
        );
    }
    Ok(())
}
