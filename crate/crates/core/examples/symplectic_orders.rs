//! Orders of Sp_{2m}(F2) by closing the transvections, and the orthogonal
//! group of the standard Arf-1 form inside Sp_6(F2).

use std::time::Instant;

use symdet::f2core::standard_symplectic;
use symdet::matgroups::{orthogonal_group, symplectic_group, symplectic_group_order};
use symdet::quadforms::standard_base_form;

fn main() -> symdet::Result<()> {
    for m in 1..=3 {
        let space = standard_symplectic(m)?;
        let start = Instant::now();
        let group = symplectic_group(&space)?;
        println!(
            "Sp_{}(F2): {} elements (formula {}) in {:.2?}",
            2 * m,
            group.order(),
            symplectic_group_order(m as u32),
            start.elapsed()
        );
        if m == 3 {
            let base = standard_base_form(&space)?;
            let start = Instant::now();
            let o = orthogonal_group(&base, &group)?;
            println!(
                "O(Q0): {} elements, index {}, {} generators, in {:.2?}",
                o.order(),
                group.order() / o.order(),
                o.packed_generators().len(),
                start.elapsed()
            );
        }
    }
    Ok(())
}
