use compat_linf::homotopy::check_compatibility;
use compat_linf::testkit::criteria::{classification_round_trips, lie2_correspondence};
use compat_linf::testkit::{catalogue, Gen};
use compat_linf::twoterm::{
    check_morphism, check_two_term, check_two_term_half, compose_morphisms, direct_sum, embed, from_pair, phi, psi, remark_sum,
    transport, TwoTermMorphism, TwoTermStructure,
};
use proptest::prelude::*;

#[test]
fn round_trips_small() {
    let r = classification_round_trips(41, 5);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn lie2_small() {
    let r = lie2_correspondence(42, 3);
    assert!(r.is_ok(), "{r:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identities_match_the_linfty_check(seed in 0u64..10_000) {
        let mut g = Gen::new(seed);
        let valid = g.two_term();
        let s = if g.coin(0.5) { g.perturb_two_term(&valid) } else { valid };
        let p = embed(&s).unwrap();
        prop_assert_eq!(from_pair(&p).unwrap(), s.clone());
        let linf = match check_compatibility(&p, 3) {
            Ok(r) => r.passed,
            Err(_) => false,
        };
        prop_assert_eq!(check_two_term(&s).passed, linf);
    }

    #[test]
    fn transport_along_isomorphisms(seed in 0u64..10_000) {
        let mut g = Gen::new(seed);
        let s = g.two_term();
        let f = g.isomorphism(s.dim_m1, s.dim_0, true);
        let t = transport(&s, &f).unwrap();
        prop_assert!(check_two_term(&t).passed);
        prop_assert!(check_morphism(&f, &s, &t).unwrap().passed);
        let h = g.isomorphism(s.dim_m1, s.dim_0, true);
        let u = transport(&t, &h).unwrap();
        let hf = compose_morphisms(&h, &f).unwrap();
        prop_assert!(check_morphism(&hf, &s, &u).unwrap().passed);
        prop_assert!(check_morphism(&TwoTermMorphism::identity(&s), &s, &s).unwrap().passed);
    }
}

#[test]
fn direct_sums_stay_valid() {
    let mut g = Gen::new(43);
    for _ in 0..5 {
        let (a, b) = (g.two_term(), g.skeletal());
        let s = direct_sum(&a, &b);
        assert_eq!((s.dim_m1, s.dim_0), (a.dim_m1 + b.dim_m1, a.dim_0 + b.dim_0));
        assert!(check_two_term(&s).passed);
    }
}

#[test]
fn sum_of_halves_with_a_shared_differential() {
    let mut g = Gen::new(44);
    for (name, alg) in catalogue() {
        let s = Gen::identity_type(&alg);
        assert!(check_two_term(&s).passed, "{name}");
        let h = remark_sum(&s).unwrap();
        assert!(check_two_term_half(&h).passed, "{name}");
    }
    for _ in 0..8 {
        let s = g.strict();
        if s.first.l1 == s.second.l1 {
            assert!(check_two_term_half(&remark_sum(&s).unwrap()).passed);
        } else {
            assert!(remark_sum(&s).is_err());
        }
    }
}

#[test]
fn zero_structure_and_shapes() {
    let z = TwoTermStructure::zero(2, 3);
    assert!(z.is_strict() && z.is_skeletal());
    assert!(check_two_term(&z).passed);
    let d = phi(&z).unwrap();
    assert!(d.validate().passed);
    assert_eq!(psi(&d).unwrap(), z);
    let mut g = Gen::new(45);
    let f = g.isomorphism(1, 3, false);
    assert!(check_morphism(&f, &z, &z).is_err());
}
