use compat_linf::cohomology::as_linfty;
use compat_linf::exactla::int;
use compat_linf::homotopy::{
    check_ainfty, check_compatibility, check_compatible_dgla, check_compatible_mc, check_higher_jacobi, check_mc,
    check_mixed_jacobi, check_nijenhuis, deform_by_nijenhuis, from_coder, identity_nijenhuis, skew_symmetrize, sum_structure,
    to_coder, vacuity_bound, CompatiblePair, Flavor, HomotopyStructure, NrComplex, SkewSign,
};
use compat_linf::testkit::criteria::{formulation_equivalence, nijenhuis, skew_symmetrization};
use compat_linf::testkit::{bracket, catalogue, Gen};
use compat_linf::{BasisElement, CoderRep, GradedSpace, MultiMap, Symmetry, Vector};

fn lie(dim: usize, table: &[(usize, usize, usize, i64)]) -> HomotopyStructure {
    HomotopyStructure::from_ops(&GradedSpace::ungraded(dim), Flavor::Linfty, [bracket(dim, table)]).unwrap()
}

/// `[e0,e1] = e1` and `[e1,e2] = e2`: each is Lie, the sum is not.
fn incompatible() -> CompatiblePair {
    CompatiblePair::new(lie(3, &[(0, 1, 1, 1)]), lie(3, &[(1, 2, 2, 1)])).unwrap()
}

#[test]
fn lie_brackets_are_linfty() {
    let so3 = lie(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]);
    let r = check_higher_jacobi(&so3, 5).unwrap();
    assert!(r.passed && r.complete(), "{}", r.summary());
    assert_eq!(r.vacuity_bound, Some(3));
    let bad = lie(3, &[(0, 1, 0, 1), (1, 2, 1, 1)]);
    let r = check_higher_jacobi(&bad, 3).unwrap();
    assert!(!r.passed);
    assert_eq!(r.first_failure.unwrap().n, 3);
}

#[test]
fn catalogue_pencils_are_compatible() {
    for (name, g) in catalogue() {
        let p = as_linfty(&g).unwrap();
        let r = check_compatibility(&p, 3).unwrap();
        assert!(r.passed, "{name}: {}", r.summary());
        assert!(check_higher_jacobi(&sum_structure(&p).unwrap(), 3).unwrap().passed, "{name}");
    }
}

#[test]
fn incompatible_pair_is_caught() {
    let p = incompatible();
    assert!(check_higher_jacobi(&p.first, 3).unwrap().passed);
    assert!(check_higher_jacobi(&p.second, 3).unwrap().passed);
    let m = check_mixed_jacobi(&p, 3);
    assert!(!m.passed);
    assert_eq!(m.first_failure.as_ref().unwrap().n, 3);
    assert!(!check_compatibility(&p, 3).unwrap().passed);
    let d = to_coder(&p.first).unwrap();
    let d2 = to_coder(&p.second).unwrap();
    assert!(check_mc(&d, None).unwrap().passed);
    assert!(!check_compatible_mc(&d, &d2, None).unwrap().passed);
}

#[test]
fn compatibility_needs_both_structures() {
    let bad = lie(3, &[(0, 1, 0, 1), (1, 2, 1, 1)]);
    let p = CompatiblePair::new(bad, lie(3, &[])).unwrap();
    assert!(check_compatibility(&p, 3).is_err());
    let other = lie(2, &[]);
    assert!(CompatiblePair::new(lie(3, &[]), other).is_err());
}

#[test]
fn vacuity_bounds() {
    let v = GradedSpace::ungraded(2);
    assert_eq!(vacuity_bound(&v, 2), Some(3));
    // operations of arity k on a space concentrated in degrees -1, 0 vanish for k > 3
    let two = GradedSpace::new([(-1, 1), (0, 1)]);
    assert!(vacuity_bound(&two, 10).unwrap() <= 5);
    assert_eq!(vacuity_bound(&GradedSpace::new([(0, 1), (1, 1)]), 3), Some(5));
}

#[test]
fn coder_round_trip() {
    let mut g = Gen::new(11);
    for _ in 0..10 {
        let s = g.two_term();
        let p = g.pair_from(&s);
        let d = to_coder(&p.first).unwrap();
        assert_eq!(d.degree(), 1);
        assert_eq!(from_coder(&d).unwrap().ops(), p.first.ops());
    }
}

#[test]
fn associative_pairs() {
    let mut g = Gen::new(12);
    for _ in 0..5 {
        let (m, m2) = g.compatible_associative(3);
        assert!(check_ainfty(&m, 3).unwrap().passed);
        assert!(check_ainfty(&m2, 3).unwrap().passed);
        assert!(check_ainfty(&m.sum(&m2).unwrap(), 3).unwrap().passed);
        let l = skew_symmetrize(&m, SkewSign::Koszul).unwrap();
        assert!(check_higher_jacobi(&l, 3).unwrap().passed);
        assert_eq!(skew_symmetrize(&m, SkewSign::Plain).unwrap(), l);
    }
    // x·y = y on a 2-dimensional space, is associative, but x·y = x + y is not
    let v = GradedSpace::ungraded(2);
    let e = |i| BasisElement::new(0, i);
    let mut mu = MultiMap::endo(&v, 2, 0, Symmetry::None);
    for a in 0..2 {
        for b in 0..2 {
            let mut out = Vector::basis(e(a));
            out.add(&Vector::basis(e(b)));
            mu.add_entry(&[e(a), e(b)], &out).unwrap();
        }
    }
    let s = HomotopyStructure::from_ops(&v, Flavor::Ainfty, [mu]).unwrap();
    assert!(!check_ainfty(&s, 3).unwrap().passed);
    assert!(skew_symmetrize(&lie(2, &[]), SkewSign::Koszul).is_err());
}

#[test]
fn nr_dgla_of_a_pencil() {
    let (_, g) = catalogue().into_iter().find(|(n, _)| *n == "a1").unwrap();
    let nr = NrComplex::new(&g.space, 2);
    let p = nr.dgla_pair(&g.bracket, &g.bracket2).unwrap();
    let r = check_compatible_dgla(&p).unwrap();
    assert!(r.passed, "{}", r.summary());
    assert!(check_compatibility(&p, 3).unwrap().passed);
    let v = GradedSpace::new([(-1, 1), (0, 3)]);
    let mut gen = Gen::new(13);
    let with_l3 = loop {
        let s = gen.structure(&v, 3, 1.0);
        if s.max_arity() == 3 {
            break s;
        }
    };
    let too_long = CompatiblePair::new(HomotopyStructure::zero(&v, Flavor::Linfty), with_l3).unwrap();
    assert!(check_compatible_dgla(&too_long).is_err());
}

#[test]
fn identity_nijenhuis_in_low_arity() {
    let so3 = lie(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]);
    let d = to_coder(&so3).unwrap();
    let (n, p) = identity_nijenhuis(d.space());
    assert!(check_nijenhuis(&d, &n, &p).unwrap().passed);
    let (dn, r) = deform_by_nijenhuis(&d, &n).unwrap();
    assert!(r.passed);
    // [id, ρ_2] = -ρ_2
    assert_eq!(dn, d.scaled(&int(-1)));
    // an arity 3 component breaks the identity with P = -id
    let v = GradedSpace::new([(-1, 1), (0, 1)]);
    let mut g = Gen::new(14);
    let rho = loop {
        let m = g.multimap(&v, &v, 3, 1, Symmetry::Symmetric);
        if !m.is_zero() {
            break m;
        }
    };
    let d3 = CoderRep::from_components(&v, 1, [rho]).unwrap();
    let (n, p) = identity_nijenhuis(&v);
    assert!(!check_nijenhuis(&d3, &n, &p).unwrap().passed);
}

#[test]
fn formulations_agree_small() {
    let r = formulation_equivalence(15, 8);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn nijenhuis_fixtures_small() {
    let r = nijenhuis(16, 2);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn skew_symmetrization_small() {
    let r = skew_symmetrization(17, 5);
    assert!(r.is_ok(), "{r:?}");
}
