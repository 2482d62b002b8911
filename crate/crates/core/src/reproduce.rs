//! The reproduction suite: one check per headline claim, each compared
//! against an independent oracle where one exists.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_dihedral_pair, build_obstruction_group, certify_counterexample, verify_pair, ObstructionCertificate,
};
use crate::error::Result;
use crate::f2core::{standard_symplectic, F2Matrix, F2Vector};
use crate::localglobal::{
    self, conic_local_invariants, conic_rational_point, conic_sdr, cubic_local_global_verdict, cubic_local_root_density,
    hilbert_symbol, hilbert_symbol_by_search, hilbert_symbol_int, holzer_search, quartic_point_check,
    GaloisImage, Place, Poly3, TernaryQuadraticForm, WeierstrassCubic, SAMPLE_QUARTICS,
};
use crate::matgroups::{
    brute_force_subgroup_count, close, gl22_common_fixed_vector, order6_scan, orthogonal_group,
    fixed_form_conditions, subgroup_census, symplectic_group, transvection, SubgroupHandle, TabledGroup,
};
use crate::quadforms::{all_forms, arf_by_basis, arf_by_count, arf_of_qv, forms_census, orbits, standard_base_form};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceReport {
    pub schema: String,
    pub seed: u64,
    pub extended: bool,
    pub criteria: Vec<CriterionOutcome>,
    pub all_passed: bool,
}

pub const CRITERIA: u32 = 13;

pub(crate) fn sp6() -> Result<&'static SubgroupHandle> {
    static SP6: OnceLock<SubgroupHandle> = OnceLock::new();
    if let Some(g) = SP6.get() {
        return Ok(g);
    }
    let g = symplectic_group(&standard_symplectic(3)?)?;
    Ok(SP6.get_or_init(|| g))
}

fn outcome(id: u32, claim: &str, start: Instant, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionOutcome {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome {
        id,
        claim: claim.into(),
        passed,
        detail,
        seconds: format!("{:.2}", start.elapsed().as_secs_f64()),
    }
}

/// Runs criterion `id` (1..=13).
pub fn run_criterion(id: u32, seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    match id {
        1 => outcome(1, "|Sp_2|, |Sp_4|, |Sp_6| = 6, 720, 1451520 by closing transvections", start, group_orders),
        2 => outcome(2, "forms census 4/16/64 with Arf-0 counts 3/10/36; two orbits", start, forms_counts),
        3 => outcome(3, "Arf by count, by symplectic basis and by Q0(v) agree", start, || arf_coherence(seed)),
        4 => outcome(4, "dihedral pair conditions (a)-(e) hold for m = 1..5", start, dihedral_pairs),
        5 => outcome(5, "obstruction group: order 6, nonabelian, both conditions (m=3); m=4 too", start, obstruction_groups),
        6 => outcome(6, "no subgroup of Sp_2(F2) satisfies both conditions; common fixed vectors", start, m1_impossibility),
        7 => outcome(7, "Sp_4(F2): 56 subgroup classes, 12 satisfying both conditions", start, m2_census),
        8 => outcome(8, "|O(Q0)| = 51840 in Sp_6(F2), index 28", start, orthogonal_order),
        9 => outcome(9, "Hilbert reciprocity and closed forms vs exhaustive search", start, || hilbert_checks(seed)),
        10 => outcome(10, "conic Hasse principle sweep with exact pencils", start, conic_sweep),
        11 => outcome(11, "cubic root densities 2/3 and 1/3; local-everywhere implies global", start, || cubic_checks(seed)),
        12 => outcome(12, "certifier: obstruction group certifies, Sp_6 local image fails", start, certifier_checks),
        13 => outcome(13, "both sample quartics vanish at (0:0:1)", start, quartic_checks),
        _ => outcome(id, "unknown criterion", start, || Ok((false, "no such criterion".into()))),
    }
}

/// The opt-in scan of order-6 subgroup classes in `Sp_6(F2)`.
pub fn run_extended() -> CriterionOutcome {
    let start = Instant::now();
    outcome(14, "order-6 subgroups of Sp_6(F2): exactly one class satisfies both conditions", start, || {
        let space = standard_symplectic(3)?;
        let base = standard_base_form(&space)?;
        let report = order6_scan(sp6()?, &base)?;
        let og = build_obstruction_group(3)?;
        let ok_kinds: Vec<&str> =
            report.classes.iter().filter(|c| c.satisfies_conditions).map(|c| c.kind.as_str()).collect();
        Ok((
            report.satisfying == 1 && ok_kinds == ["S3"] && og.group.order() == 6,
            format!(
                "{} classes of order-3 subgroups, {} classes of order 6, {} satisfying ({:?})",
                report.order3_classes,
                report.classes.len(),
                report.satisfying,
                ok_kinds
            ),
        ))
    })
}

pub fn reproduce(seed: u64, extended: bool) -> ReproduceReport {
    let mut criteria: Vec<CriterionOutcome> = (1..=CRITERIA).map(|id| run_criterion(id, seed)).collect();
    if extended {
        criteria.push(run_extended());
    }
    ReproduceReport {
        schema: "symdet.reproduce.v1".into(),
        seed,
        extended,
        all_passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

fn group_orders() -> Result<(bool, String)> {
    let mut orders = Vec::new();
    for m in 1..=2 {
        orders.push(symplectic_group(&standard_symplectic(m)?)?.order());
    }
    let start = Instant::now();
    orders.push(sp6()?.order());
    let t = start.elapsed();
    let ok = orders == [6, 720, 1_451_520] && t < Duration::from_secs(60);
    Ok((ok, format!("orders {orders:?}; Sp_6 closure {:.1}s", t.as_secs_f64())))
}

fn forms_counts() -> Result<(bool, String)> {
    let expected = [(4, 3, 1), (16, 10, 6), (64, 36, 28)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, &(total, arf0, arf1)) in (1..=3).zip(&expected) {
        let c = forms_census(m)?;
        let mut sizes = vec![arf0, arf1];
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        ok &= c.total == total && c.arf0 == arf0 && c.arf1 == arf1 && c.orbit_sizes == sizes;
        // orbits coincide with Arf classes
        let space = standard_symplectic(m)?;
        let base = standard_base_form(&space)?;
        let forms = all_forms(&space, &base)?;
        let gens = crate::matgroups::all_transvections(&space)?;
        for orbit in orbits(&gens, &forms, &space)? {
            let first = arf_by_count(&forms[orbit[0]])?;
            for &i in &orbit {
                ok &= arf_by_count(&forms[i])? == first;
            }
        }
        parts.push(format!("m={m}: {}/{}/{} orbits {:?}", c.total, c.arf0, c.arf1, c.orbit_sizes));
    }
    Ok((ok, parts.join("; ")))
}

/// A random element of `Sp_{2m}(F2)` as a product of random transvections.
pub fn random_symplectic(m: usize, rng: &mut impl Rng) -> Result<F2Matrix> {
    let space = standard_symplectic(m)?;
    let dim = 2 * m;
    let mut g = F2Matrix::identity(dim)?;
    for _ in 0..4 * dim {
        let v = rng.gen_range(1..1u64 << dim);
        g = g.mul(&transvection(&F2Vector::new(dim, v)?, &space)?)?;
    }
    Ok(g)
}

fn arf_coherence(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut discrepancies = 0usize;
    let mut checks = 0usize;
    for m in 1..=3 {
        let space = standard_symplectic(m)?;
        let base = standard_base_form(&space)?;
        let forms = all_forms(&space, &base)?;
        for _ in 0..100 {
            let basis = random_symplectic(m, &mut rng)?;
            for f in &forms {
                let a = arf_by_count(f)?;
                let b = arf_by_basis(f, &basis, &space)?;
                let c = arf_of_qv(&base, &f.v())?;
                checks += 1;
                if a != b || a != c {
                    discrepancies += 1;
                }
            }
        }
    }
    Ok((discrepancies == 0, format!("{checks} comparisons over 300 random symplectic bases, {discrepancies} discrepancies")))
}

fn dihedral_pairs() -> Result<(bool, String)> {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for m in 1..=5 {
        let pair = build_dihedral_pair(m)?;
        let report = verify_pair(&pair)?;
        ok &= report.all_pass() && report.group_order as u64 == 2 * ((1 << m) + 1);
        parts.push(format!("m={m}: |<s,t>|={}", report.group_order));
    }
    let t = start.elapsed();
    ok &= t < Duration::from_secs(10);
    Ok((ok, format!("{} in {:.2}s", parts.join(", "), t.as_secs_f64())))
}

fn obstruction_groups() -> Result<(bool, String)> {
    let og3 = build_obstruction_group(3)?;
    let c3 = fixed_form_conditions(&og3.group, &og3.base)?;
    let og4 = build_obstruction_group(4)?;
    let c4 = fixed_form_conditions(&og4.group, &og4.base)?;
    let ok = og3.group.order() == 6 && !og3.group.is_abelian() && c3.both() && c4.both();
    Ok((
        ok,
        format!(
            "m=3: order {}, abelian {}, cond1 {}, cond2 {}; m=4: order {}, cond1 {}, cond2 {}",
            og3.group.order(),
            og3.group.is_abelian(),
            c3.cond1,
            c3.cond2,
            og4.group.order(),
            c4.cond1,
            c4.cond2
        ),
    ))
}

/// Every subgroup of a small group, as the closures of all element subsets.
fn all_subgroups(group: &SubgroupHandle) -> Result<Vec<SubgroupHandle>> {
    let space = standard_symplectic(group.m())?;
    let elems: Vec<F2Matrix> = group.elements().iter().map(|g| g.to_matrix(group.dim())).collect();
    let mut out: Vec<SubgroupHandle> = Vec::new();
    for mask in 0u32..(1 << elems.len()) {
        let gens: Vec<F2Matrix> = (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
        let h = close(&gens, &space, group.order())?;
        if !out.iter().any(|k| k.elements() == h.elements()) {
            out.push(h);
        }
    }
    Ok(out)
}

fn m1_impossibility() -> Result<(bool, String)> {
    let census = subgroup_census(1)?;
    let space = standard_symplectic(1)?;
    let base = standard_base_form(&space)?;
    let sp2 = symplectic_group(&space)?;
    let subgroups = all_subgroups(&sp2)?;
    let mut ok = census.classes.len() == 4 && census.satisfying == 0;
    let mut qualifying = 0;
    for h in &subgroups {
        ok &= !fixed_form_conditions(h, &base)?.both();
        let every_element_fixes = h
            .elements()
            .iter()
            .all(|g| crate::matgroups::has_nonzero_fixed_vector(&g.to_matrix(2)).is_some());
        if every_element_fixes {
            qualifying += 1;
            ok &= gl22_common_fixed_vector(h)?.is_some();
        }
    }
    Ok((
        ok,
        format!(
            "{} classes, {} satisfying; {} subgroups in all, {} with fixed vectors per element, each with a common one",
            census.classes.len(),
            census.satisfying,
            subgroups.len(),
            qualifying
        ),
    ))
}

fn m2_census() -> Result<(bool, String)> {
    let start = Instant::now();
    let census = subgroup_census(2)?;
    let table = TabledGroup::new(&symplectic_group(&standard_symplectic(2)?)?)?;
    let brute = brute_force_subgroup_count(&table);
    let t = start.elapsed();
    let ok = census.classes.len() == 56
        && census.satisfying == 12
        && census.total_subgroups == brute
        && t < Duration::from_secs(600);
    Ok((
        ok,
        format!(
            "{} classes, {} satisfying, {} subgroups (brute force {brute}) in {:.1}s",
            census.classes.len(),
            census.satisfying,
            census.total_subgroups,
            t.as_secs_f64()
        ),
    ))
}

fn orthogonal_order() -> Result<(bool, String)> {
    let space = standard_symplectic(3)?;
    let base = standard_base_form(&space)?;
    let g = sp6()?;
    let o = orthogonal_group(&base, g)?;
    let index = g.order() / o.order();
    Ok((o.order() == 51_840 && index == 28 && g.order() % o.order() == 0, format!("|O(Q0)| = {}, index {index}", o.order())))
}

fn random_nonzero_rational(rng: &mut impl Rng) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-2000..=2000);
        let d: i64 = rng.gen_range(1..=500);
        if n != 0 {
            return BigRational::new(n.into(), d.into());
        }
    }
}

fn hilbert_checks(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reciprocity_failures = 0;
    for _ in 0..1000 {
        let a = random_nonzero_rational(&mut rng);
        let b = random_nonzero_rational(&mut rng);
        let mut product = 1i8;
        for v in localglobal::candidate_places(&a, &b)? {
            product *= hilbert_symbol(&a, &b, v)?;
        }
        if product != 1 {
            reciprocity_failures += 1;
        }
    }
    let primes: Vec<u64> = localglobal::rational::primes_up_to(31);
    let mut mismatches = 0;
    let mut compared = 0;
    for a in -30i64..=30 {
        for b in -30i64..=30 {
            if a == 0 || b == 0 {
                continue;
            }
            for v in primes.iter().map(|&p| Place::Prime(p)).chain([Place::Infinity]) {
                compared += 1;
                if hilbert_symbol_by_search(a, b, v) != hilbert_symbol_int(&BigInt::from(a), &BigInt::from(b), v) {
                    mismatches += 1;
                }
            }
        }
    }
    Ok((
        reciprocity_failures == 0 && mismatches == 0,
        format!(
            "1000 random pairs: {reciprocity_failures} reciprocity failures; {compared} symbols vs search: {mismatches} mismatches"
        ),
    ))
}

/// Nonzero squarefree integers of absolute value at most `bound`.
fn squarefree_range(bound: i64) -> Vec<i64> {
    (1..=bound)
        .filter(|&n| (2..=n).all(|d| d * d > n || n % (d * d) != 0))
        .flat_map(|n| [n, -n])
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn conic_sweep() -> Result<(bool, String)> {
    let values = squarefree_range(20);
    let mut tested = 0;
    let mut solvable = 0;
    let mut disagreements = 0;
    let mut bad_pencils = 0;
    for &a in &values {
        for &b in &values {
            for &c in &values {
                if gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1 {
                    continue;
                }
                tested += 1;
                let int = |x: i64| BigRational::from_integer(x.into());
                let form = TernaryQuadraticForm::diagonal(&int(a), &int(b), &int(c))?;
                let local_ok = conic_local_invariants(&form)?.is_empty();
                let searched = holzer_search(&[a.into(), b.into(), c.into()]).is_some();
                if local_ok != searched {
                    disagreements += 1;
                }
                if let Some(p) = conic_rational_point(&form)? {
                    solvable += 1;
                    let pencil = conic_sdr(&form, &p)?;
                    if !pencil.verify(&form.to_poly())? {
                        bad_pencils += 1;
                    }
                } else if local_ok {
                    disagreements += 1;
                }
            }
        }
    }
    Ok((
        disagreements == 0 && bad_pencils == 0,
        format!("{tested} conics, {solvable} with points, {disagreements} disagreements, {bad_pencils} bad pencils"),
    ))
}

fn cubic_checks(seed: u64) -> Result<(bool, String)> {
    let d2 = cubic_local_root_density(&WeierstrassCubic::from_ints(0, -2)?, 1_000_000)?;
    let d3 = cubic_local_root_density(&WeierstrassCubic::from_ints(-3, 1)?, 1_000_000)?;
    let mut ok = (d2.density - 2.0 / 3.0).abs() <= 0.03 && (d3.density - 1.0 / 3.0).abs() <= 0.03;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut violations = 0;
    let mut roots_but_not_dense = 0;
    while tested < 200 {
        let a: i64 = rng.gen_range(-50..=50);
        let b: i64 = rng.gen_range(-50..=50);
        let Ok(e) = WeierstrassCubic::from_ints(a, b) else { continue };
        tested += 1;
        let v = cubic_local_global_verdict(&e, 10_000)?;
        if !v.implication_holds {
            violations += 1;
        }
        if v.global_sdr && !v.everywhere_local_sample {
            roots_but_not_dense += 1;
        }
        if v.galois_image == GaloisImage::Trivial && v.rational_roots.len() != 3 {
            violations += 1;
        }
    }
    ok &= violations == 0 && roots_but_not_dense == 0;
    Ok((
        ok,
        format!(
            "x^3-2: {:.4} over {} primes; x^3-3x+1: {:.4}; 200 random cubics: {violations} violations",
            d2.density, d2.samples, d3.density
        ),
    ))
}

fn certifier_checks() -> Result<(bool, String)> {
    let og = build_obstruction_group(3)?;
    let cert = ObstructionCertificate::with_cyclic_locals(og.group, 4, true);
    let good = certify_counterexample(&cert)?;
    let full = sp6()?.clone();
    let full_cert = ObstructionCertificate {
        m: 3,
        group: full.clone(),
        local_images: vec![("full".into(), full)],
        degree_n: 4,
        has_local_points_everywhere: true,
        theta_noneffective: None,
    };
    let bad = certify_counterexample(&full_cert)?;
    let ok = good.certified && good.global_obstruction && good.local_ok && !bad.local_ok && !bad.certified;
    Ok((
        ok,
        format!(
            "obstruction group: certified {} ({} cyclic local images); Sp_6 as local image: local_ok {}",
            good.certified,
            good.locals.len(),
            bad.local_ok
        ),
    ))
}

fn quartic_checks() -> Result<(bool, String)> {
    let point = [BigRational::zero(), BigRational::zero(), BigRational::from_integer(1.into())];
    let mut ok = true;
    for s in SAMPLE_QUARTICS {
        let p: Poly3 = s.parse()?;
        ok &= quartic_point_check(&p, &point)?.on_curve;
    }
    Ok((ok, "both vanish exactly at (0:0:1)".into()))
}
