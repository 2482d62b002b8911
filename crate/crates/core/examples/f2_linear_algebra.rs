//! Rank, inverse, kernel and the symplectic check on small F2 matrices.

use symdet::f2core::{is_symplectic, standard_symplectic, F2Matrix};

fn main() -> symdet::Result<()> {
    let a = F2Matrix::from_row_strings(&["1100", "0110", "0011", "0001"])?;
    println!("A = {}", a.to_text());
    println!("rank {}", a.rank());
    let inv = a.inverse()?;
    println!("A^-1 = {}", inv.to_text());
    println!("A * A^-1 is identity: {}", a.mul(&inv)?.is_identity());
    println!("order of A: {:?}", a.order(64));

    let singular = F2Matrix::from_row_strings(&["110", "011", "101"])?;
    println!("singular rank {}, kernel {:?}", singular.rank(), singular.kernel());

    let space = standard_symplectic(2)?;
    println!("J = {}", space.gram().to_text());
    println!("A symplectic: {}", is_symplectic(&a, &space));
    let swap = F2Matrix::from_row_strings(&["0010", "0001", "1000", "0100"])?;
    println!("swap of halves symplectic: {}", is_symplectic(&swap, &space));
    Ok(())
}
