use compat_linf::cohomology::{
    c0_basis, ce_differential, cohomology_dims, delta_c, induced_cocycle, linfty_cohomology_dims, CochainTuple,
    CompatibleLieAlgebra, CompatibleRep, Which,
};
use compat_linf::exactla::{kernel_basis, Matrix};
use compat_linf::multilinear::tensor::unit;
use compat_linf::testkit::criteria::{ce_complex, cohomology_regression, exact_cap, h3_zero_fixture};
use compat_linf::testkit::oracle::binomial;
use compat_linf::testkit::{bracket, catalogue, Gen};
use compat_linf::{BasisElement, MultiMap, Symmetry, Vector};
use proptest::prelude::*;

#[test]
fn complex_squares_to_zero() {
    let r = ce_complex(21, 4);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn abelian_regression() {
    let r = cohomology_regression();
    assert!(r.is_ok(), "{r:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// With zero brackets and trivial actions every cochain is a cocycle and
    /// nothing is a coboundary, so `H^n = C^n = n·C(d,n)·m`.
    #[test]
    fn abelian_trivial_counts(d in 1usize..4, m in 1usize..3) {
        let g = CompatibleLieAlgebra::abelian(d);
        let h = cohomology_dims(&g, &CompatibleRep::trivial(&g, m), d + 1).unwrap();
        let expected: Vec<usize> = (0..=d + 1).map(|n| if n == 0 { m } else { n * binomial(d, n) * m }).collect();
        prop_assert_eq!(h, expected);
    }

    #[test]
    fn h0_is_the_joint_invariants(seed in 0u64..1000) {
        let mut gen = Gen::new(seed);
        let g = gen.compatible_lie(3);
        let rep = gen.rep(&g, 3);
        // v with ρ(x)v = ρ'(x)v = 0 for every basis x
        let mut rows = Vec::new();
        for x in 0..g.dim() {
            for w in [Which::First, Which::Second] {
                rows.extend(rep.matrix(w, &unit(g.dim(), x)));
            }
        }
        let h0 = if rows.is_empty() { rep.dim() } else { kernel_basis(&Matrix::from_rows(&rows)).len() };
        prop_assert_eq!(cohomology_dims(&g, &rep, 0).unwrap()[0], h0);
    }

    /// Euler characteristic of the full complex: `Σ (−1)^n dim C^n = Σ (−1)^n dim H^n`.
    #[test]
    fn euler_characteristic(seed in 0u64..1000) {
        let mut gen = Gen::new(seed);
        let g = gen.compatible_lie(3);
        let rep = gen.rep(&g, 2);
        let (d, m) = (g.dim() as i64, rep.dim() as i64);
        let h = cohomology_dims(&g, &rep, g.dim() + 1).unwrap();
        let c0 = c0_basis(&g, &rep).len() as i64;
        let chi_c: i64 = c0 + (1..=d).map(|n| (-1i64).pow(n as u32) * n * binomial(d as usize, n as usize) as i64 * m).sum::<i64>();
        let chi_h: i64 = h.iter().enumerate().map(|(n, &x)| (-1i64).pow(n as u32) * x as i64).sum();
        prop_assert_eq!(chi_c, chi_h);
    }
}

#[test]
fn c0_needs_equal_actions() {
    let (_, g) = catalogue().into_iter().find(|(n, _)| *n == "a1").unwrap();
    let ad = CompatibleRep::adjoint(&g);
    assert!(ad.validate(&g).passed);
    // ad_x = ad'_x only on elements with [x,v] = [x,v]' for all x
    let c0 = c0_basis(&g, &ad);
    for v in &c0 {
        for x in g.space.basis() {
            assert_eq!(ad.act(Which::First, x, v), ad.act(Which::Second, x, v));
        }
    }
    let outside = Vector::basis(BasisElement::new(0, 0));
    if !c0.contains(&outside) {
        assert!(delta_c(&g, &ad, &CochainTuple::Zero(outside)).is_err());
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let bad = bracket(3, &[(0, 1, 0, 1), (1, 2, 1, 1)]);
    assert!(CompatibleLieAlgebra::new(bad.clone(), bracket(3, &[])).is_err());
    // each bracket is Lie but their sum is not
    assert!(CompatibleLieAlgebra::new(bracket(3, &[(0, 1, 1, 1)]), bracket(3, &[(1, 2, 2, 1)])).is_err());
    let g = CompatibleLieAlgebra::abelian(2);
    let rep = CompatibleRep::trivial(&g, 1);
    let wrong = MultiMap::new(g.space.clone(), g.space.clone(), 1, 0, Symmetry::Skew);
    assert!(ce_differential(&g, &rep, &wrong, Which::First).is_err());
    let f = MultiMap::new(g.space.clone(), rep.space.clone(), 1, 0, Symmetry::Skew);
    assert!(delta_c(&g, &rep, &CochainTuple::Maps(vec![f.clone(), f])).is_err());
}

#[test]
fn induced_cocycles_are_cocycles() {
    let mut gen = Gen::new(22);
    let mut nonzero = 0;
    for _ in 0..6 {
        let g = gen.compatible_lie(3);
        let rep = gen.rep(&g, 2);
        let (t, t2) = gen.cocycle_pair(&g, &rep);
        let c = induced_cocycle(&g, &rep, &t, &t2).unwrap();
        assert_eq!(c.level(), 3);
        nonzero += usize::from(!c.is_zero());
        assert!(delta_c(&g, &rep, &c).unwrap().is_zero());
    }
    assert!(nonzero > 0);
    // a 2-cochain that is not a ∂-cocycle
    let (_, g) = catalogue().into_iter().find(|(n, _)| *n == "so3").unwrap();
    let rep = CompatibleRep::adjoint(&g);
    let e = |i| BasisElement::new(0, i);
    let mut f = MultiMap::new(g.space.clone(), rep.space.clone(), 2, 0, Symmetry::Skew);
    f.add_entry(&[e(0), e(1)], &Vector::basis(e(0))).unwrap();
    assert!(!ce_differential(&g, &rep, &f, Which::First).unwrap().is_zero());
    let zero = MultiMap::new(g.space.clone(), rep.space.clone(), 2, 0, Symmetry::Skew);
    assert!(induced_cocycle(&g, &rep, &f, &zero).is_err());
    assert!(induced_cocycle(&g, &rep, &zero, &zero).unwrap().is_zero());
}

#[test]
fn linfty_levels_of_fixtures() {
    let p = h3_zero_fixture();
    let v = p.space().desuspend();
    let h = linfty_cohomology_dims(&p, 3, exact_cap(&v)).unwrap();
    assert!(h.exact);
    assert_eq!(h.dims, vec![1, 1, 0]);
}
