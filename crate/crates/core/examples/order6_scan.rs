//! Scans every conjugacy class of order-6 subgroups of Sp_6(F2) and reports
//! which satisfy both conditions on Arf-0 forms. Takes tens of seconds.

use symdet::f2core::standard_symplectic;
use symdet::matgroups::{order6_scan, symplectic_group};
use symdet::quadforms::standard_base_form;

fn main() -> symdet::Result<()> {
    let space = standard_symplectic(3)?;
    let base = standard_base_form(&space)?;
    let group = symplectic_group(&space)?;
    let report = order6_scan(&group, &base)?;
    println!("{} classes of order-3 subgroups", report.order3_classes);
    for c in &report.classes {
        println!("{} satisfies both conditions: {}", c.kind, c.satisfies_conditions);
    }
    println!("satisfying classes: {}", report.satisfying);
    Ok(())
}
