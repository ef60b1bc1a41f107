use compat_linf::cohomology::{CompatibleLieAlgebra, CompatibleRep, Which};
use compat_linf::multilinear::tensor::unit;
use compat_linf::multilinear::Tensor;
use compat_linf::rotabaxter::{build_lifted, build_lifted_unchecked, check_lifted, check_rota_baxter, derived_bracket, rr_closed_form, RbCandidate};
use compat_linf::testkit::criteria::rota_baxter_search;
use compat_linf::testkit::{catalogue, Gen};

#[test]
fn exhaustive_search_on_a_small_pencil() {
    let r = rota_baxter_search();
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn random_operators_agree_with_the_defining_identities() {
    let mut g = Gen::new(51);
    let (mut rb, mut not) = (0, 0);
    for _ in 0..30 {
        let alg = g.compatible_lie(3);
        let rep = g.rep(&alg, 2);
        let lp = build_lifted(&alg, &rep).unwrap();
        assert!(check_lifted(&lp).unwrap().passed);
        let (dg, dv) = (lp.dim_g(), lp.dim_v());
        let r = if g.coin(0.3) { Tensor::zeros(&[dv], dg) } else { g.tensor(&[dv], dg) };
        let rep = check_rota_baxter(&lp, &RbCandidate { r: r.clone() }).unwrap();
        assert!(rep.agree(), "verdicts differ for R = {r:?}");
        if rep.is_rota_baxter() {
            rb += 1;
        } else {
            not += 1;
        }
        let rm = lp.embed(&r).unwrap();
        for which in [Which::First, Which::Second] {
            let t = lp.restrict(&derived_bracket(&lp, &rm, &rm, which).unwrap()).unwrap();
            for a in 0..dv {
                for b in 0..dv {
                    assert_eq!(t.at(&[a, b]), rr_closed_form(&lp, &r, &unit(dv, a), &unit(dv, b), which).as_slice());
                }
            }
        }
    }
    assert!(rb > 0 && not > 0, "{rb} Rota-Baxter, {not} not");
}

#[test]
fn corrupt_second_action_is_rejected() {
    let (_, alg) = catalogue().into_iter().find(|(n, _)| *n == "a1").unwrap();
    let ad = CompatibleRep::adjoint(&alg);
    let mut bad2 = ad.action_of(Which::Second).clone();
    // ρ'(e0) e0 = e0 breaks ρ'([x,y]') = [ρ'(x), ρ'(y)]
    let mut v = bad2.at(&[0, 0]).to_vec();
    v[0] += compat_linf::exactla::int(1);
    for (k, c) in v.into_iter().enumerate() {
        bad2.set(&[0, 0], k, c);
    }
    assert!(CompatibleRep::new(&alg, 2, ad.action_of(Which::First).clone(), bad2.clone()).is_err());
    let rep = CompatibleRep::unchecked(&alg, 2, ad.action_of(Which::First).clone(), bad2).unwrap();
    assert!(!rep.validate(&alg).passed);
    assert!(build_lifted(&alg, &rep).is_err());
    assert!(build_lifted_unchecked(&alg, &rep).is_err());
}

#[test]
fn embed_rejects_non_skew_and_wrong_shapes() {
    let alg = CompatibleLieAlgebra::abelian(2);
    let lp = build_lifted(&alg, &CompatibleRep::trivial(&alg, 2)).unwrap();
    let mut t = Tensor::zeros(&[2, 2], 2);
    t.set(&[0, 1], 0, compat_linf::exactla::int(1));
    assert!(lp.embed(&t).is_err());
    assert!(lp.embed(&Tensor::zeros(&[3], 2)).is_err());
    // with zero brackets and actions every R is Rota-Baxter
    let mut g = Gen::new(52);
    let r = g.tensor(&[2], 2);
    assert!(check_rota_baxter(&lp, &RbCandidate { r }).unwrap().is_rota_baxter());
}
