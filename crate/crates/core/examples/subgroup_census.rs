//! Conjugacy classes of subgroups of Sp_2(F2) and Sp_4(F2) and the classes
//! where no Arf-0 form is fixed by the whole group yet every element fixes one.

use symdet::matgroups::subgroup_census;

fn main() -> symdet::Result<()> {
    for m in 1..=2 {
        let c = subgroup_census(m)?;
        println!(
            "Sp_{}(F2): order {}, {} subgroups in {} classes, {} classes satisfy both conditions",
            2 * m,
            c.ambient_order,
            c.total_subgroups,
            c.classes.len(),
            c.satisfying
        );
        for class in c.classes.iter().filter(|c| c.satisfies_conditions) {
            println!("  order {:>3}  class size {:>3}", class.order, class.class_size);
        }
    }
    Ok(())
}
