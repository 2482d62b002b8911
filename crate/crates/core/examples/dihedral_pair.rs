//! Builds the dihedral pair from multiplication by a norm-one element and the
//! field involution of F(2^{2m}), then checks all its conditions.

use symdet::constructions::{build_dihedral_pair, verify_pair};

fn main() -> symdet::Result<()> {
    for m in 1..=5 {
        let pair = build_dihedral_pair(m)?;
        let report = verify_pair(&pair)?;
        println!(
            "m = {m}: ord(sigma) = {}, |<sigma, tau>| = {}, all conditions hold: {}",
            report.order_sigma,
            report.group_order,
            report.all_pass()
        );
    }
    let pair = build_dihedral_pair(2)?;
    println!("sigma = {}", pair.sigma.to_text());
    println!("tau   = {}", pair.tau.to_text());
    Ok(())
}
