use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symdet::f2core::{is_symplectic, standard_symplectic, F2Matrix, F2Vector};
use symdet::gf2k::{make_field, BinaryFieldElement};
use symdet::localglobal::{
    candidate_places, conic_rational_point, conic_sdr, hilbert_symbol, Place, Poly3, TernaryQuadraticForm,
};
use symdet::quadforms::{act, all_forms, arf_by_count, standard_base_form, symplectic_inverse, FormValues};
use symdet::reproduce::random_symplectic;

fn matrix(dim: usize) -> impl Strategy<Value = F2Matrix> {
    prop::collection::vec(0u64..(1 << dim), dim).prop_map(move |rows| F2Matrix::from_rows(dim, rows).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-300i64..=300, 1i64..=60)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn places_of(a: &BigRational, b: &BigRational, c: &BigRational) -> Vec<Place> {
    let mut v = candidate_places(a, b).unwrap();
    v.extend(candidate_places(a, c).unwrap());
    v.sort();
    v.dedup();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_product_is_associative(a in matrix(6), b in matrix(6), c in matrix(6)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn rank_plus_nullity(a in matrix(7)) {
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.len(), 7);
        for v in kernel {
            prop_assert_eq!(a.apply(v), 0);
        }
    }

    #[test]
    fn inverse_when_full_rank(a in matrix(5)) {
        match a.inverse() {
            Ok(inv) => {
                prop_assert_eq!(a.rank(), 5);
                prop_assert!(a.mul(&inv).unwrap().is_identity());
            }
            Err(_) => prop_assert!(a.rank() < 5),
        }
    }

    #[test]
    fn transvection_products_are_symplectic(m in 1usize..=4, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_symplectic(m, &mut rng).unwrap();
        prop_assert!(is_symplectic(&g, &standard_symplectic(m).unwrap()));
        prop_assert!(symplectic_inverse(&g).mul(&g).unwrap().is_identity());
    }

    #[test]
    fn form_action_matches_precomposition(m in 1usize..=3, seed: u64, v in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = standard_symplectic(m).unwrap();
        let base = standard_base_form(&space).unwrap();
        let g = random_symplectic(m, &mut rng).unwrap();
        let q = all_forms(&space, &base).unwrap()[(v % (1 << (2 * m))) as usize].clone();
        let moved = act(&g, &q, &space).unwrap();
        let g_inv = g.inverse().unwrap();
        for x in 0..1u64 << (2 * m) {
            prop_assert_eq!(moved.value(x), q.value(g_inv.apply(x)));
        }
        prop_assert_eq!(arf_by_count(&moved).unwrap(), arf_by_count(&q).unwrap());
    }

    #[test]
    fn form_action_composes(m in 1usize..=3, s1: u64, s2: u64, v in any::<u64>()) {
        let space = standard_symplectic(m).unwrap();
        let base = standard_base_form(&space).unwrap();
        let g = random_symplectic(m, &mut ChaCha8Rng::seed_from_u64(s1)).unwrap();
        let h = random_symplectic(m, &mut ChaCha8Rng::seed_from_u64(s2)).unwrap();
        let q = all_forms(&space, &base).unwrap()[(v % (1 << (2 * m))) as usize].clone();
        let gh = act(&g.mul(&h).unwrap(), &q, &space).unwrap();
        let g_of_h = act(&g, &act(&h, &q, &space).unwrap(), &space).unwrap();
        prop_assert_eq!(gh, g_of_h);
    }

    #[test]
    fn field_axioms(k in 1u32..=12, a: u64, b: u64, c: u64) {
        let f = make_field(k).unwrap();
        let mask = f.size() - 1;
        let (a, b, c) = (BinaryFieldElement(a & mask), BinaryFieldElement(b & mask), BinaryFieldElement(c & mask));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.abs_trace(f.add(a, b)), f.abs_trace(a) ^ f.abs_trace(b));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), BinaryFieldElement::ONE);
        }
    }

    #[test]
    fn norm_is_multiplicative(k in 1u32..=6, a: u64, b: u64) {
        let f = make_field(2 * k).unwrap();
        let mask = f.size() - 1;
        let (a, b) = (BinaryFieldElement(a & mask), BinaryFieldElement(b & mask));
        prop_assert_eq!(f.norm(f.mul(a, b)).unwrap(), f.mul(f.norm(a).unwrap(), f.norm(b).unwrap()));
        prop_assert!(f.in_subfield(f.norm(a).unwrap(), k));
    }

    #[test]
    fn hilbert_symbol_identities(a in rational(), b in rational(), c in rational()) {
        let one = BigRational::one();
        for v in places_of(&a, &b, &c) {
            let ab = hilbert_symbol(&a, &b, v).unwrap();
            prop_assert_eq!(ab, hilbert_symbol(&b, &a, v).unwrap());
            prop_assert_eq!(
                hilbert_symbol(&a, &(&b * &c), v).unwrap(),
                ab * hilbert_symbol(&a, &c, v).unwrap()
            );
            prop_assert_eq!(hilbert_symbol(&a, &-&a, v).unwrap(), 1);
            if a != one {
                prop_assert_eq!(hilbert_symbol(&a, &(&one - &a), v).unwrap(), 1);
            }
            prop_assert_eq!(hilbert_symbol(&a, &(&b * &b), v).unwrap(), 1);
        }
        let product: i8 = candidate_places(&a, &b).unwrap().into_iter().map(|v| hilbert_symbol(&a, &b, v).unwrap()).product();
        prop_assert_eq!(product, 1);
    }

    #[test]
    fn conic_points_and_pencils(coeffs in prop::collection::vec(-12i64..=12, 6)) {
        let coeffs: Vec<BigRational> = coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect();
        let Ok(form) = TernaryQuadraticForm::from_slice(&coeffs) else { return Ok(()) };
        if !form.is_smooth() {
            return Ok(());
        }
        if let Some(p) = conic_rational_point(&form).unwrap() {
            let pr = p.clone().map(BigRational::from_integer);
            prop_assert!(form.eval(&pr).is_zero());
            let pencil = conic_sdr(&form, &p).unwrap();
            prop_assert!(pencil.is_symmetric());
            prop_assert!(pencil.verify(&form.to_poly()).unwrap());
        }
    }

    #[test]
    fn polynomial_text_round_trip(terms in prop::collection::vec(((0u32..=4, 0u32..=4), -9i64..=9), 0..8)) {
        let mut p = Poly3::zero();
        for ((i, j), c) in terms {
            let k = 4u32.saturating_sub(i + j);
            p.add_term([i, j, k], BigRational::from_integer(BigInt::from(c)));
        }
        let back: Poly3 = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn vector_text_round_trip() {
    for bits in 0..64 {
        let v = F2Vector::new(6, bits).unwrap();
        assert_eq!(v.to_string().parse::<F2Vector>().unwrap(), v);
    }
}
