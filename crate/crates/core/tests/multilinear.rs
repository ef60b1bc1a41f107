use compat_linf::exactla::int;
use compat_linf::multilinear::{
    canonical_tuples, chi_sign, coder_bracket, coder_compose, desuspend_map, koszul_sign, normalize, nr_bracket, shuffles,
    suspend_map,
};
use compat_linf::testkit::criteria::{bracket_axioms, coderivation_oracle, signs_and_shuffles};
use compat_linf::testkit::oracle::{corestrict, koszul_by_sorting, lift_apply, monomials, to_monomial};
use compat_linf::testkit::{bracket, Gen};
use compat_linf::{BasisElement, GradedSpace, MultiMap, Permutation, Symmetry, Vector};
use proptest::prelude::*;

fn b(d: i64, i: usize) -> BasisElement {
    BasisElement::new(d, i)
}

fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

#[test]
fn koszul_examples() {
    // swapping two odd elements
    assert_eq!(koszul_sign(&perm(&[1, 0]), &[1, 1]).unwrap(), int(-1));
    assert_eq!(koszul_sign(&perm(&[1, 0]), &[1, 2]).unwrap(), int(1));
    assert_eq!(chi_sign(&perm(&[1, 0]), &[0, 0]).unwrap(), int(-1));
    assert_eq!(chi_sign(&perm(&[1, 0]), &[1, 1]).unwrap(), int(1));
    // the 3-cycle is even; all odd degrees give (-1)^2
    assert_eq!(koszul_sign(&perm(&[1, 2, 0]), &[1, 1, 1]).unwrap(), int(1));
    assert!(koszul_sign(&perm(&[1, 0]), &[1]).is_err());
    assert!(Permutation::new(vec![0, 0]).is_err());
}

#[test]
fn compose_and_permute() {
    let s = perm(&[1, 2, 0]);
    let t = perm(&[0, 2, 1]);
    let w = ['a', 'b', 'c'];
    // the σ∘τ-permuted word is τ applied to the σ-permuted word
    assert_eq!(s.compose(&t).permute(&w), t.permute(&s.permute(&w)));
    assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
    assert_eq!(Permutation::all(4).len(), 24);
}

#[test]
fn small_shuffles() {
    let sh: Vec<Vec<usize>> = shuffles(1, 2).iter().map(|p| p.images().to_vec()).collect();
    assert_eq!(sh, vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 0, 1]]);
    assert_eq!(shuffles(0, 3).len(), 1);
    assert_eq!(shuffles(4, 4).len(), 70);
}

#[test]
fn sign_kernel_against_sorting() {
    let r = signs_and_shuffles(101, 2);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn normalize_vanishing_rules() {
    assert!(normalize(&[b(0, 0), b(0, 0)], Symmetry::Skew).is_none());
    assert!(normalize(&[b(1, 0), b(1, 0)], Symmetry::Skew).is_some());
    assert!(normalize(&[b(1, 0), b(1, 0)], Symmetry::Symmetric).is_none());
    assert!(normalize(&[b(0, 0), b(0, 0)], Symmetry::Symmetric).is_some());
    let (s, key) = normalize(&[b(0, 1), b(0, 0)], Symmetry::None).unwrap();
    assert_eq!((s, key), (int(1), vec![b(0, 1), b(0, 0)]));
    // one even, one odd generator
    let v = GradedSpace::new([(0, 1), (1, 1)]);
    assert_eq!(canonical_tuples(&v, 3, Symmetry::Symmetric).len(), 2);
    assert_eq!(canonical_tuples(&v, 3, Symmetry::Skew).len(), 2);
    assert_eq!(canonical_tuples(&v, 2, Symmetry::None).len(), 4);
}

#[test]
fn map_rejects_bad_entries() {
    let v = GradedSpace::new([(0, 1), (1, 1)]);
    let mut m = MultiMap::endo(&v, 2, 0, Symmetry::Skew);
    // output degree 1 from inputs of total degree 0 has the wrong degree
    assert!(m.add_entry(&[b(0, 0), b(1, 0)], &Vector::basis(b(0, 0))).is_err());
    assert!(m.add_entry(&[b(0, 0), b(1, 0)], &Vector::basis(b(1, 0))).is_ok());
    assert_eq!(m.eval_basis(&[b(1, 0), b(0, 0)]), Vector::term(b(1, 0), int(-1)));
    assert!(m.evaluate(&[b(0, 0)]).is_err());
}

#[test]
fn nr_bracket_detects_jacobi() {
    let so3 = bracket(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]);
    assert!(nr_bracket(&so3, &so3).unwrap().is_zero());
    // [e0,e1] = e0, [e1,e2] = e1 is not Lie
    let bad = bracket(3, &[(0, 1, 0, 1), (1, 2, 1, 1)]);
    assert!(!nr_bracket(&bad, &bad).unwrap().is_zero());
    let graded = MultiMap::endo(&GradedSpace::new([(1, 1)]), 2, 0, Symmetry::Skew);
    assert!(nr_bracket(&graded, &graded).is_err());
}

#[test]
fn bracket_axioms_small() {
    let r = bracket_axioms(102, 15);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn coderivation_oracle_small() {
    let r = coderivation_oracle(103, 10);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn compose_matches_lift_composition() {
    let mut g = Gen::new(104);
    let v = GradedSpace::new([(-1, 2), (0, 1)]);
    for _ in 0..10 {
        let (p, q) = (1 + g.below(2), 1 + g.below(2));
        let r = g.multimap(&v, &v, p, 1, Symmetry::Symmetric);
        let t = g.multimap(&v, &v, q, 0, Symmetry::Symmetric);
        let c = coder_compose(&r, &t).unwrap();
        for m in monomials(&v, p + q - 1) {
            let x = [(m.clone(), int(1))].into_iter().collect();
            assert_eq!(c.eval_basis(&m), corestrict(&lift_apply(&r, &lift_apply(&t, &x))));
        }
    }
}

#[test]
fn coder_bracket_needs_symmetric_maps() {
    let l = bracket(2, &[(0, 1, 0, 1)]);
    assert!(coder_bracket(&l, &l).is_err());
    let rho = desuspend_map(&l).unwrap();
    assert_eq!(rho.symmetry(), Symmetry::Symmetric);
    assert_eq!(rho.degree(), 1);
    // a Lie bracket squares to zero after desuspension
    assert!(coder_bracket(&rho, &rho).unwrap().is_zero());
}

#[test]
fn monomial_sign_of_odd_swap() {
    let (x, y) = (b(-1, 0), b(-1, 1));
    assert_eq!(to_monomial(&[y, x]).unwrap(), (int(-1), vec![x, y]));
    assert_eq!(koszul_by_sorting(&perm(&[1, 0]), &[-1, -1]), int(-1));
}

fn any_perm(k: usize) -> impl Strategy<Value = Permutation> {
    Just((0..k).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn koszul_cocycle((s, t, d) in (1usize..7).prop_flat_map(|k| (any_perm(k), any_perm(k), prop::collection::vec(-3i64..=3, k)))) {
        let lhs = koszul_sign(&s.compose(&t), &d).unwrap();
        let rhs = koszul_sign(&s, &d).unwrap() * koszul_sign(&t, &s.permute(&d)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(koszul_sign(&s, &d).unwrap(), koszul_by_sorting(&s, &d));
    }

    #[test]
    fn normalize_sign_is_the_koszul_sign((s, d) in (1usize..6).prop_flat_map(|k| (any_perm(k), prop::collection::vec(-2i64..=2, k)))) {
        // distinct elements x_i with degrees d_i, in the word x_σ(0) .. x_σ(k-1)
        let x: Vec<BasisElement> = d.iter().enumerate().map(|(i, &deg)| b(deg, i)).collect();
        let mut sorted = x.clone();
        sorted.sort();
        let word = s.permute(&sorted);
        let degs: Vec<i64> = sorted.iter().map(|e| e.degree).collect();
        let (sym, key) = normalize(&word, Symmetry::Symmetric).unwrap();
        prop_assert_eq!(&key, &sorted);
        prop_assert_eq!(sym, koszul_by_sorting(&s, &degs));
        let (skew, _) = normalize(&word, Symmetry::Skew).unwrap();
        prop_assert_eq!(skew, chi_sign(&s, &degs).unwrap());
    }

    #[test]
    fn suspension_round_trip(seed in 0u64..500) {
        let mut g = Gen::new(seed);
        let l = GradedSpace::new([(-1, 1 + g.below(2)), (0, 1 + g.below(2))]);
        let k = 1 + g.below(3);
        let m = g.multimap(&l, &l, k, 2 - k as i64, Symmetry::Skew);
        let rho = desuspend_map(&m).unwrap();
        prop_assert_eq!(rho.degree(), 1);
        prop_assert_eq!(suspend_map(&rho).unwrap(), m);
    }
}
