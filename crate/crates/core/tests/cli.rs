use std::io::Write;

use serde_json::Value;
use symdet::cli::run;
use symdet::constructions::{build_obstruction_group, ObstructionCertificate};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("symdet").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: stdout {out:?} stderr {err:?}"));
    (code, v)
}

#[test]
fn order_and_forms_census() {
    let (code, v) = json(&["order", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 720);
    assert_eq!(v["schema"], "symdet.order.v1");
    let (code, v) = json(&["forms-census", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!((v["total"].as_u64(), v["arf0"].as_u64(), v["arf1"].as_u64()), (Some(64), Some(36), Some(28)));
}

#[test]
fn census_m2_and_unsupported_m3() {
    let (code, v) = json(&["census", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"], 56);
    assert_eq!(v["satisfying"], 12);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 56);
    let (code, _, err) = call(&["census", "--m", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("not implemented"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["order", "--m", "9"]).0, 2);
    assert_eq!(call(&["order", "--bogus"]).0, 2);
    assert_eq!(call(&["hilbert", "--a", "0", "--b", "3", "--place", "3"]).0, 2);
    assert_eq!(call(&["cubic", "--a", "0", "--b", "0"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("quartic-check"));
}

#[test]
fn dihedral_and_obstruction_subcommands() {
    let (code, v) = json(&["lemma51", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["group_order"], 18);
    let (code, v) = json(&["lemma52", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 6);
    assert_eq!(v["conditions"]["cond1"], true);
    assert_eq!(v["conditions"]["cond2"], true);
    assert_eq!(call(&["lemma52", "--m", "2"]).0, 2);
}

#[test]
fn orbits_with_generator_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gens.json");
    std::fs::write(&path, r#"{"generators": [["0010", "0001", "1000", "0100"]]}"#).unwrap();
    let (code, v) = json(&["orbits", "--m", "2", "--generators", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let sizes: usize = v["orbits"].as_array().unwrap().iter().map(|o| o["size"].as_u64().unwrap() as usize).sum();
    assert_eq!(sizes, 16);
    let (code, v) = json(&["orbits", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["orbit_count"], 2);
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let og = build_obstruction_group(3).unwrap();
    let cert = ObstructionCertificate::with_cyclic_locals(og.group, 4, true);
    let good = dir.path().join("good.json");
    std::fs::write(&good, serde_json::to_string(&cert.to_file()).unwrap()).unwrap();
    let (code, v) = json(&["certify", "--cert", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["certified"], true);

    let mut file = cert.to_file();
    file.group.generators.clear();
    file.local_images.clear();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, v) = json(&["certify", "--cert", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["certified"], false);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_eq!(call(&["certify", "--cert", garbage.to_str().unwrap()]).0, 2);
}

#[test]
fn conic_hilbert_cubic() {
    let (code, v) = json(&["conic", "--coeffs", "1,1,-3,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["obstructed_places"], serde_json::json!(["2", "3"]));
    assert!(v["point"].is_null());
    let (_, v) = json(&["conic", "--coeffs", "1,1,-2,0,0,0"]);
    assert!(v["pencil"].is_object());

    let (code, v) = json(&["hilbert", "--a", "-1", "--b", "-1", "--place", "inf"]);
    assert_eq!(code, 0);
    assert_eq!(v["symbol"], -1);
    let (_, v) = json(&["hilbert", "--a", "-1", "--b", "-1"]);
    assert_eq!(v["nontrivial_places"], serde_json::json!(["2", "inf"]));

    let (code, v) = json(&["cubic", "--a", "-7", "--b", "6", "--primes", "2000"]);
    assert_eq!(code, 0);
    assert_eq!(v["galois_image"], "trivial");
    assert_eq!(v["global_sdr"], true);
}

#[test]
fn quartic_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "{}", symdet::localglobal::SAMPLE_QUARTICS[0]).unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["quartic-check", "--poly", p, "--point", "0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["on_curve"], true);
    assert_eq!(call(&["quartic-check", "--poly", p, "--point", "1,1,1"]).0, 1);
    assert_eq!(call(&["quartic-check", "--poly", p, "--point", "1,1"]).0, 2);
}

#[test]
fn text_format_and_determinism() {
    let (code, out, _) = call(&["--format", "text", "lemma52", "--m", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("order: 10"));
    assert_eq!(call(&["lemma51", "--m", "4"]).1, call(&["lemma51", "--m", "4"]).1);
}
