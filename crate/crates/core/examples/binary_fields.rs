//! Arithmetic in F(2^k): moduli, trace, norm, the conjugation of
//! F(2^{2m}) over F(2^m) and an element of norm one generating its group.

use symdet::gf2k::make_field;

fn main() -> symdet::Result<()> {
    for k in [1u32, 2, 4, 6, 8] {
        let f = make_field(k)?;
        println!("F(2^{k}): modulus {:#b}, gamma primitive: {}", f.modulus(), f.is_primitive(f.gamma()));
    }
    let f = make_field(6)?;
    let g = f.gamma();
    let x = f.pow(g, 11);
    println!("x = gamma^11 = {:#08b}", x.coeffs());
    println!("Tr(x) = {}", u8::from(f.abs_trace(x)));
    println!("conj(x) = {:#08b}, N(x) = {:#b}", f.conjugate(x)?.coeffs(), f.norm(x)?.coeffs());
    let s = f.norm_one_generator()?;
    println!("norm-one generator {:#08b} of order {}", s.coeffs(), f.order(s)?);
    println!("trace form Gram:\n{}", f.trace_form_gram()?.row_strings().join("\n"));
    Ok(())
}
