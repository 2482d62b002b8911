//! Writes an obstruction certificate for a plane quartic, reads it back and
//! evaluates it.

use symdet::constructions::{build_obstruction_group, certify_counterexample, CertificateFile, ObstructionCertificate};

fn main() -> symdet::Result<()> {
    let og = build_obstruction_group(3)?;
    let cert = ObstructionCertificate::with_cyclic_locals(og.group, 4, true);
    let text = serde_json::to_string_pretty(&cert.to_file()).expect("serializable");
    println!("{text}");
    let file: CertificateFile = serde_json::from_str(&text).expect("round trip");
    let verdict = certify_counterexample(&file.materialize()?)?;
    println!("certified: {}", verdict.certified);
    for l in &verdict.locals {
        println!("  {} order {} fixes an Arf-0 form: {}", l.label, l.order, l.fixes_arf0_form);
    }
    Ok(())
}
