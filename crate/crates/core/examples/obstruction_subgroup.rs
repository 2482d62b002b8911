//! The subgroup of Sp_{2m}(F2) that fixes no Arf-0 form while each of its
//! elements fixes one, for m = 3..6.

use symdet::constructions::obstruction_report;

fn main() -> symdet::Result<()> {
    for m in 3..=6 {
        let r = obstruction_report(m)?;
        println!(
            "m = {m}: order {}, abelian {}, no common fixed Arf-0 form {}, every element fixes one {}",
            r.order, r.abelian, r.conditions.cond1, r.conditions.cond2
        );
    }
    Ok(())
}
