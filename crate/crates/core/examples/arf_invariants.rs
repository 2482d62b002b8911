//! Every quadratic form polarizing to the standard symplectic form, with its
//! Arf invariant computed by value counting and by a symplectic basis, and
//! the orbits of Sp_{2m}(F2) on forms.

use symdet::f2core::{standard_symplectic, F2Matrix};
use symdet::quadforms::{arf_by_basis, arf_by_count, forms_census, standard_base_form, all_forms};

fn main() -> symdet::Result<()> {
    let space = standard_symplectic(2)?;
    let base = standard_base_form(&space)?;
    let id = F2Matrix::identity(4)?;
    for q in all_forms(&space, &base)? {
        println!(
            "v = {}  Arf by count {}  Arf by basis {}",
            q.v(),
            arf_by_count(&q)?,
            arf_by_basis(&q, &id, &space)?
        );
    }
    for m in 1..=3 {
        let c = forms_census(m)?;
        println!("m = {m}: {} forms, {} with Arf 0, {} with Arf 1, orbits {:?}", c.total, c.arf0, c.arf1, c.orbit_sizes);
    }
    Ok(())
}
