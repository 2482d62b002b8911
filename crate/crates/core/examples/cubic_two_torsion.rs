//! Two-torsion field of y^2 = x^3 + a x + b and how often x^3 + a x + b has a
//! root modulo p, compared with the density predicted by its Galois group.

use symdet::localglobal::{cubic_local_global_verdict, WeierstrassCubic};

fn main() -> symdet::Result<()> {
    for (a, b) in [(0, -2), (-7, 6), (-3, 1), (0, 1), (-1, 0)] {
        let e = WeierstrassCubic::from_ints(a, b)?;
        let v = cubic_local_global_verdict(&e, 100_000)?;
        println!(
            "a = {a:>3}, b = {b:>3}: image {:?}, rational roots {}, root density {:.4}, first rootless primes {:?}",
            v.galois_image,
            v.rational_roots.len(),
            v.density.density,
            v.density.rootless_primes
        );
    }
    Ok(())
}
