use compat_linf::cohomology::as_linfty;
use compat_linf::deformation::{
    apply_equivalence, check_deformation, check_deformation_full, check_equivalence, delta_c, extend, infinitesimal,
    is_extensible, obstruction, trivialize, EquivalenceSeries, Extension, Infinitesimal, OrderNDeformation,
};
use compat_linf::exactla::int;
use compat_linf::homotopy::{to_coder, CoderTuple, CompatiblePair};
use compat_linf::testkit::criteria::{deformation_theory, exact_cap, h3_zero_fixture};
use compat_linf::testkit::{catalogue, Gen};

fn pencil(name: &str) -> CompatiblePair {
    let (_, g) = catalogue().into_iter().find(|(n, _)| *n == name).unwrap();
    as_linfty(&g).unwrap()
}

fn base_tuple(p: &CompatiblePair) -> CoderTuple {
    CoderTuple::pair(&to_coder(&p.first).unwrap(), &to_coder(&p.second).unwrap()).unwrap()
}

#[test]
fn deformation_theory_small() {
    let r = deformation_theory(31, 6, 2);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn zero_deformation() {
    let p = pencil("so3");
    let cap = exact_cap(&p.space().desuspend());
    let d = OrderNDeformation::zero(p, 2, Some(cap));
    assert!(check_deformation(&d).unwrap().passed);
    assert_eq!(infinitesimal(&d).unwrap(), Infinitesimal::Trivial);
    assert!(obstruction(&d).unwrap().is_zero());
    assert!(matches!(is_extensible(&d).unwrap().outcome, Extension::Extensible { .. }));
    let t = trivialize(&d, 3).unwrap();
    assert!(t.trivial && t.steps.is_empty());
}

#[test]
fn rescaling_the_base() {
    // (1 + t)(D, D') solves every equation
    for name in ["a1", "heisenberg", "so3", "r3"] {
        let p = pencil(name);
        let t0 = base_tuple(&p);
        let zero = CoderTuple::zero(&p.space().desuspend(), 1, 2);
        let d = OrderNDeformation::new(p.clone(), vec![t0.clone(), zero], None).unwrap();
        assert!(check_deformation_full(&d, 3).unwrap().passed, "{name}");
        // with T_1 = T_0 the obstruction is -½⟦T_0,T_0⟧ = 0
        let one = OrderNDeformation::new(p, vec![t0], None).unwrap();
        assert!(obstruction(&one).unwrap().is_zero(), "{name}");
        let r = is_extensible(&one).unwrap();
        assert!(matches!(r.outcome, Extension::Extensible { .. }), "{name}");
    }
}

#[test]
fn coboundaries_are_trivial() {
    let mut gen = Gen::new(32);
    let mut nontrivial = 0;
    for name in ["a1", "heisenberg", "so3", "r3", "sl2-zero"] {
        let p = pencil(name);
        let v = p.space().desuspend();
        let cap = exact_cap(&v);
        let x = CoderTuple::new(vec![gen.coder(&v, 0, cap)]).unwrap();
        let probe = OrderNDeformation::zero(p.clone(), 1, Some(cap));
        let t1 = delta_c(&probe, &x).unwrap();
        nontrivial += usize::from(!t1.is_zero());
        let d = OrderNDeformation::new(p, vec![t1.clone()], Some(cap)).unwrap();
        assert!(check_deformation(&d).unwrap().passed, "{name}");
        match infinitesimal(&d).unwrap() {
            Infinitesimal::Term { index, cocycle, .. } => assert!(index == 1 && cocycle.passed),
            Infinitesimal::Trivial => assert!(t1.is_zero()),
        }
        let t = trivialize(&d, 1).unwrap();
        assert!(t.trivial, "{name}: stuck at {:?}", t.stuck_at);
    }
    assert!(nontrivial > 0);
}

#[test]
fn equivalence_shifts_by_a_coboundary() {
    let mut gen = Gen::new(33);
    for name in ["a1", "so3", "r3"] {
        let p = pencil(name);
        let v = p.space().desuspend();
        let cap = exact_cap(&v);
        let probe = OrderNDeformation::zero(p.clone(), 1, Some(cap));
        let t1 = delta_c(&probe, &CoderTuple::new(vec![gen.coder(&v, 0, cap)]).unwrap()).unwrap();
        let d = OrderNDeformation::new(p.clone(), vec![t1.clone()], Some(cap)).unwrap();
        let phi = gen.coder(&v, 0, cap);
        let series = EquivalenceSeries::new(vec![phi.clone()]).unwrap();
        let dbar = apply_equivalence(&d, &series).unwrap();
        assert!(check_equivalence(&d, &dbar, &series).unwrap().passed);
        assert!(check_deformation(&dbar).unwrap().passed);
        let shift = delta_c(&probe, &CoderTuple::new(vec![phi]).unwrap()).unwrap();
        assert_eq!(dbar.terms[0], t1.sum(&shift.scaled(&int(-1))).unwrap(), "{name}");
        assert!(!check_equivalence(&d, &d, &series).unwrap().passed || shift.is_zero());
    }
    assert!(EquivalenceSeries::new(vec![Gen::new(1).coder(&pencil("a1").space().desuspend(), 1, 2)]).is_err());
}

#[test]
fn h3_fixture_extends() {
    let p = h3_zero_fixture();
    let cap = exact_cap(&p.space().desuspend());
    let mut gen = Gen::new(34);
    let t1 = compat_linf::testkit::criteria::random_cocycle(&mut gen, &p, cap).unwrap().unwrap();
    let mut d = OrderNDeformation::new(p, vec![t1], Some(cap)).unwrap();
    for _ in 0..2 {
        let r = is_extensible(&d).unwrap();
        assert!(r.exact);
        let Extension::Extensible { witness } = r.outcome else { panic!("obstructed") };
        d = extend(&d, &witness).unwrap();
        assert!(check_deformation(&d).unwrap().passed);
    }
}

#[test]
fn malformed_terms_are_rejected() {
    let p = pencil("a1");
    let v = p.space().desuspend();
    assert!(OrderNDeformation::new(p.clone(), vec![CoderTuple::zero(&v, 1, 3)], None).is_err());
    assert!(OrderNDeformation::new(p, vec![CoderTuple::zero(&v, 0, 2)], None).is_err());
}
