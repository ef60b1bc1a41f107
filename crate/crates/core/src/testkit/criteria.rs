//! Randomized checks shared by the integration tests and the acceptance
//! runner. Each returns a one-line summary, or a description of the first
//! counterexample.

use num_traits::Zero;

use super::oracle::{binomial, corestrict, is_shuffle, koszul_by_sorting, lift_commutator, lift_on_monomial, monomials, sign_by_sorting};
use super::{catalogue, Gen};
use crate::cohomology::{
    as_linfty, c0_basis, ce_differential, cohomology_dims, delta_c, linfty_cochain_from, linfty_cohomology_dims,
    linfty_delta_matrix, max_coder_arity, CochainTuple, CompatibleLieAlgebra, CompatibleRep, Which,
};
use crate::deformation::{self, check_deformation, extend, infinitesimal, is_extensible, obstruction, Extension, Infinitesimal, OrderNDeformation};
use crate::error::Error;
use crate::exactla::{int, kernel_basis, Scalar};
use crate::graded::{GradedSpace, Vector};
use crate::homotopy::{
    check_ainfty, check_compatibility, check_compatible_mc, check_higher_jacobi, check_mc, check_nijenhuis, deform_by_nijenhuis,
    from_coder, identity_nijenhuis, skew_symmetrize, sum_structure, to_coder, tuple_bracket, vacuity_bound, CompatiblePair,
    CoderTuple, HomotopyStructure, NrComplex, SkewSign,
};
use crate::multilinear::{chi_sign, coder_bracket, koszul_sign, nr_bracket, shuffles, CoderRep, MultiMap, Permutation, Symmetry};
use crate::rotabaxter::{build_lifted, derived_bracket, rr_closed_form, search_rota_baxter};
use crate::twoterm::{
    beta, check_beta, check_two_term, crossed_to_strict, embed, phi, psi, skeletal_to_triple, strict_to_crossed,
    triple_to_skeletal, TwoTermStructure,
};

pub type Verdict = Result<String, String>;

fn lib<T>(r: crate::error::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn degree_word(g: &mut Gen, k: usize) -> Vec<i64> {
    (0..k).map(|_| g.range(-3, 3)).collect()
}

/// Koszul and `χ` signs against sorting, their cocycle property, and shuffle counts.
pub fn signs_and_shuffles(seed: u64, words_per_perm: usize) -> Verdict {
    let mut g = Gen::new(seed);
    let mut checked = 0;
    for k in 0..=5 {
        let perms = Permutation::all(k);
        for s in &perms {
            for _ in 0..words_per_perm {
                let d = degree_word(&mut g, k);
                let eps = lib(koszul_sign(s, &d), "koszul_sign")?;
                ensure!(eps == koszul_by_sorting(s, &d), "koszul_sign({:?}; {d:?}) disagrees with sorting", s.images());
                ensure!(s.sign() == sign_by_sorting(s), "sign({:?}) disagrees with sorting", s.images());
                let chi = lib(chi_sign(s, &d), "chi_sign")?;
                ensure!(chi == s.sign() * &eps, "chi({:?}; {d:?}) is not sign times Koszul sign", s.images());
                checked += 1;
            }
        }
        // ε(σ∘τ; d) = ε(σ; d) ε(τ; d∘σ)
        for s in &perms {
            for t in &perms {
                let d = degree_word(&mut g, k);
                let ds = s.permute(&d);
                let st = s.compose(t);
                let lhs = lib(koszul_sign(&st, &d), "koszul_sign")?;
                let rhs = lib(koszul_sign(s, &d), "koszul_sign")? * lib(koszul_sign(t, &ds), "koszul_sign")?;
                ensure!(lhs == rhs, "Koszul sign not multiplicative at σ={:?}, τ={:?}, d={d:?}", s.images(), t.images());
                let lhs = lib(chi_sign(&st, &d), "chi_sign")?;
                let rhs = lib(chi_sign(s, &d), "chi_sign")? * lib(chi_sign(t, &ds), "chi_sign")?;
                ensure!(lhs == rhs, "χ not multiplicative at σ={:?}, τ={:?}, d={d:?}", s.images(), t.images());
                checked += 1;
            }
        }
    }
    let mut pairs = 0;
    for n in 0..=8 {
        for i in 0..=n {
            let sh = shuffles(i, n - i);
            ensure!(sh.len() == binomial(n, i), "|Sh({i},{})| = {} but C({n},{i}) = {}", n - i, sh.len(), binomial(n, i));
            ensure!(sh.iter().all(|s| s.len() == n && is_shuffle(s, i)), "Sh({i},{}) contains a non-shuffle", n - i);
            let mut dedup = sh.clone();
            dedup.sort();
            dedup.dedup();
            ensure!(dedup.len() == sh.len(), "Sh({i},{}) repeats a permutation", n - i);
            pairs += 1;
        }
    }
    Ok(format!("{checked} sign checks on permutations of size <= 5, {pairs} shuffle counts with i+j <= 8"))
}

fn random_graded_space(g: &mut Gen) -> GradedSpace {
    let lo = g.range(-2, 0);
    GradedSpace::new([(lo, 1 + g.below(2)), (lo + 1, 1 + g.below(2))])
}

/// A degree for which some input word of length `k` lands in the space.
fn hitting_degree(g: &mut Gen, v: &GradedSpace, k: usize) -> i64 {
    let degs: Vec<i64> = v.degrees().collect();
    let input: i64 = (0..k).map(|_| degs[g.below(degs.len())]).sum();
    degs[g.below(degs.len())] - input
}

fn random_symmetric(g: &mut Gen, v: &GradedSpace, max_arity: usize) -> MultiMap {
    let k = 1 + g.below(max_arity);
    let d = hitting_degree(g, v, k);
    g.multimap_density(v, v, k, d, Symmetry::Symmetric, 0.6)
}

fn random_tuple(g: &mut Gen, v: &GradedSpace, degree: i64) -> CoderTuple {
    let len = 1 + g.below(2);
    let slots = (0..len)
        .map(|_| {
            let k = 1 + g.below(3);
            let m = g.multimap_density(v, v, k, degree, Symmetry::Symmetric, 0.5);
            CoderRep::from_components(v, degree, [m]).expect("degree matches")
        })
        .collect();
    CoderTuple::new(slots).expect("uniform slots")
}

fn parity(a: i64, b: i64) -> Scalar {
    if (a * b).rem_euclid(2) == 1 {
        int(-1)
    } else {
        int(1)
    }
}

/// `x + s·y = 0` for multimaps of equal shape.
fn vanishes(x: &MultiMap, y: &MultiMap, s: &Scalar) -> Result<bool, String> {
    let mut r = x.clone();
    lib(r.add_scaled_assign(y, s), "add")?;
    Ok(r.is_zero())
}

fn tuples_equal(a: &CoderTuple, b: &CoderTuple) -> bool {
    a.len() == b.len() && a.slots.iter().zip(&b.slots).all(|(x, y)| x.difference(y).is_ok_and(|d| d.is_zero()))
}

/// Run `f` on fresh samples until `wanted` of them were nontrivial; every
/// sample is checked. Returns the number of samples drawn.
fn until_nontrivial<F>(wanted: usize, what: &str, mut f: F) -> Result<usize, String>
where
    F: FnMut(usize) -> Result<bool, String>,
{
    let (mut hits, mut drawn) = (0, 0);
    while hits < wanted {
        ensure!(drawn < 40 * wanted + 40, "{what}: only {hits} nontrivial samples in {drawn}");
        hits += usize::from(f(drawn)?);
        drawn += 1;
    }
    Ok(drawn)
}

/// Graded skew-symmetry and Jacobi for the three brackets, on samples with a
/// nonzero Jacobi term.
pub fn bracket_axioms(seed: u64, instances: usize) -> Verdict {
    let mut g = Gen::new(seed);
    // NR: ungraded skew maps, graded by arity − 1
    let nr = until_nontrivial(instances, "NR", |i| {
        let sp = GradedSpace::ungraded(2);
        let pick = |g: &mut Gen| {
            let k = [1, 1, 2, 2, 3][g.below(5)];
            g.multimap(&sp, &sp, k, 0, Symmetry::Skew)
        };
        let (f, h, k) = (pick(&mut g), pick(&mut g), pick(&mut g));
        let (m, n) = (f.arity() as i64 - 1, h.arity() as i64 - 1);
        let fh = lib(nr_bracket(&f, &h), "nr_bracket")?;
        let hf = lib(nr_bracket(&h, &f), "nr_bracket")?;
        ensure!(vanishes(&fh, &hf, &parity(m, n))?, "NR sample {i}: [f,g] ≠ −(−1)^(mn) [g,f]");
        let lhs = lib(nr_bracket(&f, &lib(nr_bracket(&h, &k), "nr_bracket")?), "nr_bracket")?;
        let mut rhs = lib(nr_bracket(&fh, &k), "nr_bracket")?;
        let other = lib(nr_bracket(&h, &lib(nr_bracket(&f, &k), "nr_bracket")?), "nr_bracket")?;
        lib(rhs.add_scaled_assign(&other, &parity(m, n)), "add")?;
        ensure!(vanishes(&lhs, &rhs, &int(-1))?, "NR sample {i}: graded Jacobi fails");
        Ok(!lhs.is_zero())
    })?;
    // corestricted coderivation bracket
    let coder = until_nontrivial(instances, "coder", |i| {
        let v = random_graded_space(&mut g);
        let (a, b, c) = (random_symmetric(&mut g, &v, 3), random_symmetric(&mut g, &v, 3), random_symmetric(&mut g, &v, 3));
        let (da, db) = (a.degree(), b.degree());
        let ab = lib(coder_bracket(&a, &b), "coder_bracket")?;
        let ba = lib(coder_bracket(&b, &a), "coder_bracket")?;
        ensure!(vanishes(&ab, &ba, &parity(da, db))?, "coder sample {i}: skew-symmetry fails on {v:?}");
        let lhs = lib(coder_bracket(&a, &lib(coder_bracket(&b, &c), "coder_bracket")?), "coder_bracket")?;
        let mut rhs = lib(coder_bracket(&ab, &c), "coder_bracket")?;
        let other = lib(coder_bracket(&b, &lib(coder_bracket(&a, &c), "coder_bracket")?), "coder_bracket")?;
        lib(rhs.add_scaled_assign(&other, &parity(da, db)), "add")?;
        ensure!(vanishes(&lhs, &rhs, &int(-1))?, "coder sample {i}: graded Jacobi fails on {v:?}");
        // the same through whole coderivations
        let wrap = |m: &MultiMap| CoderRep::from_components(&v, m.degree(), [m.clone()]).expect("degree matches");
        let (ca, cb) = (wrap(&a), wrap(&b));
        let via = lib(ca.bracket_via_compose(&cb, None), "bracket_via_compose")?;
        ensure!(lib(ca.bracket(&cb, None), "bracket")? == via, "coder sample {i}: bracket and compose commutator differ");
        Ok(!lhs.is_zero())
    })?;
    let tuple = until_nontrivial(instances, "tuple", |i| {
        let v = random_graded_space(&mut g);
        let (da, db, dc) = (hitting_degree(&mut g, &v, 1), hitting_degree(&mut g, &v, 2), hitting_degree(&mut g, &v, 1));
        let (a, b, c) = (random_tuple(&mut g, &v, da), random_tuple(&mut g, &v, db), random_tuple(&mut g, &v, dc));
        let ab = lib(tuple_bracket(&a, &b, None), "tuple_bracket")?;
        let ba = lib(tuple_bracket(&b, &a, None), "tuple_bracket")?;
        ensure!(tuples_equal(&ab, &ba.scaled(&-parity(da, db))), "tuple sample {i}: skew-symmetry fails");
        let lhs = lib(tuple_bracket(&a, &lib(tuple_bracket(&b, &c, None), "tuple_bracket")?, None), "tuple_bracket")?;
        let first = lib(tuple_bracket(&ab, &c, None), "tuple_bracket")?;
        let second = lib(tuple_bracket(&b, &lib(tuple_bracket(&a, &c, None), "tuple_bracket")?, None), "tuple_bracket")?;
        let rhs = lib(first.sum(&second.scaled(&parity(da, db))), "sum")?;
        ensure!(tuples_equal(&lhs, &rhs), "tuple sample {i}: graded Jacobi fails");
        Ok(!lhs.is_zero())
    })?;
    Ok(format!("{instances} instances with nonzero Jacobi terms each (samples drawn: NR {nr}, coder {coder}, tuple {tuple})"))
}

/// `coder_bracket` against the explicit commutator of lifts on `S^{≤5} V`,
/// on samples with a nonzero bracket.
pub fn coderivation_oracle(seed: u64, instances: usize) -> Verdict {
    let mut g = Gen::new(seed);
    let mut monos = 0;
    let drawn = until_nontrivial(instances, "oracle", |i| {
        let v = random_graded_space(&mut g);
        let (r, t) = (random_symmetric(&mut g, &v, 3), random_symmetric(&mut g, &v, 3));
        let br = lib(coder_bracket(&r, &t), "coder_bracket")?;
        let k = br.arity();
        for m in monomials(&v, k) {
            let want = corestrict(&lift_commutator(&r, &t, &m));
            let got = br.eval_basis(&m);
            ensure!(got == want, "sample {i} on {v:?}: coder_bracket at {m:?} is {got:?}, lift commutator gives {want:?}");
            monos += 1;
        }
        // the commutator is itself the lift of the bracket, up to S^5
        for n in k..=5 {
            for m in monomials(&v, n) {
                let lifted = lift_on_monomial(&br, &m);
                let comm = lift_commutator(&r, &t, &m);
                ensure!(lifted == comm, "sample {i} on {v:?}: the commutator is not the lift of the bracket at {m:?}");
                monos += 1;
            }
        }
        Ok(!br.is_zero())
    })?;
    Ok(format!("{instances} nonzero brackets ({drawn} samples), {monos} monomials compared"))
}

/// Verdicts of the four characterizations of compatibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Formulations {
    pub hji: [bool; 2],
    pub mc: [bool; 2],
    pub compat: bool,
    pub compat_mc: bool,
    pub tuple: bool,
    pub sum: bool,
}

pub fn formulations(p: &CompatiblePair) -> Result<Formulations, String> {
    let n = vacuity_bound(p.space(), p.max_arity()).expect("always bounded");
    let hji = |s: &HomotopyStructure| lib(check_higher_jacobi(s, n), "check_higher_jacobi").map(|r| r.passed);
    let (d, d2) = (lib(to_coder(&p.first), "to_coder")?, lib(to_coder(&p.second), "to_coder")?);
    let compat = match check_compatibility(p, n) {
        Ok(r) => r.passed,
        Err(Error::Precondition(_)) => false,
        Err(e) => return Err(format!("check_compatibility: {e}")),
    };
    let dd = lib(CoderTuple::pair(&d, &d2), "pair")?;
    let sum = lib(sum_structure(p), "sum_structure")?;
    let sum_n = vacuity_bound(p.space(), sum.max_arity()).expect("always bounded");
    let h = [hji(&p.first)?, hji(&p.second)?];
    Ok(Formulations {
        hji: h,
        mc: [lib(check_mc(&d, None), "check_mc")?.passed, lib(check_mc(&d2, None), "check_mc")?.passed],
        compat,
        compat_mc: lib(check_compatible_mc(&d, &d2, None), "check_compatible_mc")?.passed,
        tuple: lib(tuple_bracket(&dd, &dd, None), "tuple_bracket")?.is_zero(),
        sum: h[0] && h[1] && lib(check_higher_jacobi(&sum, sum_n), "check_higher_jacobi")?.passed,
    })
}

fn two_term_pair(g: &mut Gen, k: usize) -> (String, CompatiblePair) {
    match k % 4 {
        0 => {
            let s = g.two_term();
            ("valid".into(), g.pair_from(&s))
        }
        1 => {
            let s = g.two_term();
            let t = g.perturb_two_term(&s);
            ("perturbed".into(), embed(&t).expect("embedding"))
        }
        2 => {
            // both halves L∞, taken from two structures on the same spaces
            let s = g.two_term();
            let iso = g.isomorphism(s.dim_m1, s.dim_0, true);
            let t = crate::twoterm::transport(&s, &iso).expect("invertible");
            let mixed = TwoTermStructure::new(s.dim_m1, s.dim_0, s.first.clone(), t.first.clone()).expect("shapes");
            ("mixed".into(), embed(&mixed).expect("embedding"))
        }
        _ => {
            let v = g.space_two_term();
            let density = [0.15, 0.3, 0.6][g.below(3)];
            let a = g.structure(&v, 3, density);
            let b = g.structure(&v, 3, density);
            ("random".into(), CompatiblePair::new(a, b).expect("same space"))
        }
    }
}

/// `check_higher_jacobi ⟺ check_mc` and the four compatibility verdicts agree.
pub fn formulation_equivalence(seed: u64, instances: usize) -> Verdict {
    let mut g = Gen::new(seed);
    let (mut yes, mut no, mut linf_only) = (0, 0, 0);
    for i in 0..instances {
        let (kind, p) = two_term_pair(&mut g, i);
        let f = formulations(&p)?;
        ensure!(f.hji == f.mc, "instance {i} ({kind}): higher Jacobi {:?} but Maurer-Cartan {:?}", f.hji, f.mc);
        let all = [f.compat, f.compat_mc, f.tuple, f.sum];
        ensure!(all.iter().all(|b| *b == f.compat), "instance {i} ({kind}): verdicts disagree: {f:?}");
        if f.compat {
            yes += 1;
        } else if f.hji[0] && f.hji[1] {
            linf_only += 1;
        } else {
            no += 1;
        }
    }
    ensure!(yes > 0 && no + linf_only > 0, "degenerate sample: {yes} compatible, {} not", no + linf_only);
    Ok(format!("{instances} pairs: {yes} compatible, {linf_only} L∞ but incompatible, {no} not L∞; all verdicts agree"))
}

fn random_cochain(g: &mut Gen, alg: &CompatibleLieAlgebra, rep: &CompatibleRep, n: usize) -> MultiMap {
    g.multimap(&alg.space, &rep.space, n, 0, Symmetry::Skew)
}

/// `∂² = ∂'² = ∂∂' + ∂'∂ = 0` and `δ_c² = 0` on random cochains.
pub fn ce_complex(seed: u64, fixtures: usize) -> Verdict {
    let mut g = Gen::new(seed);
    let mut nonzero = 0;
    for i in 0..fixtures {
        let alg = g.compatible_lie(3);
        let rep = g.rep(&alg, 3);
        ensure!(lib(alg.validate(), "validate")?.passed && rep.validate(&alg).passed, "fixture {i} is not valid");
        let v0: Vector = c0_basis(&alg, &rep).iter().fold(Vector::zero(), |mut acc, b| {
            acc.add_scaled(b, &g.small());
            acc
        });
        let d0 = lib(delta_c(&alg, &rep, &CochainTuple::Zero(v0)), "delta_c")?;
        ensure!(lib(delta_c(&alg, &rep, &d0), "delta_c")?.is_zero(), "fixture {i}: δ_c² ≠ 0 on C⁰");
        for n in 1..=4 {
            let f = random_cochain(&mut g, &alg, &rep, n);
            let d = |f: &MultiMap, w| lib(ce_differential(&alg, &rep, f, w), "ce_differential");
            ensure!(d(&d(&f, Which::First)?, Which::First)?.is_zero(), "fixture {i}, level {n}: ∂² ≠ 0");
            ensure!(d(&d(&f, Which::Second)?, Which::Second)?.is_zero(), "fixture {i}, level {n}: ∂'² ≠ 0");
            let mixed = lib(d(&d(&f, Which::Second)?, Which::First)?.sum(&d(&d(&f, Which::First)?, Which::Second)?), "sum")?;
            ensure!(mixed.is_zero(), "fixture {i}, level {n}: ∂∂' + ∂'∂ ≠ 0");
            let t = CochainTuple::Maps((0..n).map(|_| random_cochain(&mut g, &alg, &rep, n)).collect());
            let dt = lib(delta_c(&alg, &rep, &t), "delta_c")?;
            nonzero += usize::from(!dt.is_zero());
            ensure!(lib(delta_c(&alg, &rep, &dt), "delta_c")?.is_zero(), "fixture {i}, level {n}: δ_c² ≠ 0");
        }
    }
    Ok(format!("{fixtures} fixtures, levels 0..4, {nonzero} nonzero δ_c images"))
}

/// Abelian fixtures with trivial representations.
pub fn cohomology_regression() -> Verdict {
    let g2 = CompatibleLieAlgebra::abelian(2);
    let h2 = lib(cohomology_dims(&g2, &CompatibleRep::trivial(&g2, 1), 3), "cohomology_dims")?;
    ensure!(h2 == vec![1, 2, 2, 0], "abelian dim 2: H = {h2:?}, expected [1, 2, 2, 0]");
    let g1 = CompatibleLieAlgebra::abelian(1);
    let h1 = lib(cohomology_dims(&g1, &CompatibleRep::trivial(&g1, 1), 1), "cohomology_dims")?;
    ensure!(h1 == vec![1, 1], "abelian dim 1: H = {h1:?}, expected [1, 1]");
    Ok(format!("abelian dim 2: {h2:?}; abelian dim 1: {h1:?}"))
}

/// Cap that loses nothing up to coderivation degree 3.
pub fn exact_cap(v: &GradedSpace) -> usize {
    (0..=3).filter_map(|d| max_coder_arity(v, d)).max().unwrap_or(1)
}

/// A random level-2 cocycle of the truncated complex, if there is a nonzero one.
pub fn random_cocycle(g: &mut Gen, base: &CompatiblePair, cap: usize) -> Result<Option<CoderTuple>, String> {
    let v = base.space().desuspend();
    let ker = kernel_basis(&lib(linfty_delta_matrix(base, 2, cap), "linfty_delta_matrix")?);
    if ker.is_empty() {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); ker[0].len()];
    while x.iter().all(Zero::is_zero) {
        for k in &ker {
            let c = g.small();
            for (a, b) in x.iter_mut().zip(k) {
                *a += &c * b;
            }
        }
    }
    Ok(Some(linfty_cochain_from(&v, 2, cap, &x)))
}

fn deformation_base(g: &mut Gen, i: usize) -> CompatiblePair {
    if i.is_multiple_of(2) {
        as_linfty(&g.compatible_lie(3)).expect("Lie pair")
    } else {
        loop {
            let s = g.two_term();
            if s.dim_m1 <= 2 && s.dim_0 <= 2 {
                return g.pair_from(&s);
            }
        }
    }
}

/// The compatible Lie pencil `[e0,e1] = e1`, `[e0,e1]' = −e0` on a 3-dimensional
/// space (`e2` central), whose third compatible L∞ cohomology vanishes.
pub fn h3_zero_fixture() -> CompatiblePair {
    let a = super::bracket(3, &[(0, 1, 1, 1)]);
    let b = super::bracket(3, &[(0, 1, 0, -1)]);
    as_linfty(&CompatibleLieAlgebra::new(a, b).expect("compatible")).expect("Lie pair")
}

/// Checks on one finite-order deformation: the infinitesimal and the
/// obstruction are cocycles, and any witness solves the next equation.
/// Returns the extension if there is one.
fn deformation_checks(d: &OrderNDeformation, label: &str) -> Result<Option<OrderNDeformation>, String> {
    ensure!(lib(check_deformation(d), "check_deformation")?.passed, "{label}: not a deformation");
    match lib(infinitesimal(d), "infinitesimal")? {
        Infinitesimal::Term { cocycle, .. } => ensure!(cocycle.passed, "{label}: infinitesimal is not a cocycle"),
        Infinitesimal::Trivial => {}
    }
    let ob = lib(obstruction(d), "obstruction")?;
    ensure!(lib(deformation::delta_c(d, &ob), "delta_c")?.is_zero(), "{label}: obstruction is not a cocycle");
    let ext = lib(is_extensible(d), "is_extensible")?;
    ensure!(ext.exact, "{label}: truncation at arity {} is not exact", ext.arity_cap);
    match ext.outcome {
        Extension::Extensible { witness } => {
            let next = lib(extend(d, &witness), "extend")?;
            ensure!(lib(check_deformation(&next), "check_deformation")?.passed, "{label}: witness does not solve the next equation");
            Ok(Some(next))
        }
        Extension::Obstructed { .. } => Ok(None),
    }
}

pub fn deformation_theory(seed: u64, instances: usize, h3_instances: usize) -> Verdict {
    let mut g = Gen::new(seed);
    let (mut done, mut extended, mut obstructed, mut tries) = (0, 0, 0, 0);
    while done < instances {
        tries += 1;
        ensure!(tries < 20 * instances + 20, "could not find {instances} bases with nonzero cocycles");
        let base = deformation_base(&mut g, tries);
        let cap = exact_cap(&base.space().desuspend());
        let Some(t1) = random_cocycle(&mut g, &base, cap)? else { continue };
        let d = lib(OrderNDeformation::new(base, vec![t1], Some(cap)), "deformation")?;
        match deformation_checks(&d, &format!("deformation {done}"))? {
            Some(next) => {
                extended += 1;
                deformation_checks(&next, &format!("deformation {done}, order 2"))?;
            }
            None => obstructed += 1,
        }
        done += 1;
    }
    // no obstructions when H³ = 0
    let base = h3_zero_fixture();
    let v = base.space().desuspend();
    let cap = exact_cap(&v);
    let h = lib(linfty_cohomology_dims(&base, 3, cap), "linfty_cohomology_dims")?;
    ensure!(h.exact && h.dims[2] == 0, "fixture has H = {:?} ({})", h.dims, h.truncation());
    let c3 = crate::cohomology::linfty_cochain_basis(&v, 3, cap).len();
    for i in 0..h3_instances {
        let Some(t1) = random_cocycle(&mut g, &base, cap)? else { return Err("H³ fixture has no 2-cocycles".into()) };
        let mut d = lib(OrderNDeformation::new(base.clone(), vec![t1], Some(cap)), "deformation")?;
        for order in 1..=3 {
            match deformation_checks(&d, &format!("H³=0 deformation {i}, order {order}"))? {
                Some(next) => d = next,
                None => return Err(format!("H³=0 deformation {i} is obstructed at order {order}")),
            }
        }
    }
    Ok(format!(
        "{instances} order-1 deformations ({extended} extensible, {obstructed} obstructed); H³=0 fixture (C³ = {c3}, H = {:?}, {}): {h3_instances} deformations extended to order 4",
        h.dims,
        h.truncation()
    ))
}

/// Every fixture whose operations sit in arities ≤ 2.
pub fn low_arity_fixtures(g: &mut Gen, random: usize) -> Vec<(String, HomotopyStructure)> {
    let mut out = Vec::new();
    for (name, alg) in catalogue() {
        let p = as_linfty(&alg).expect("Lie pair");
        out.push((name.to_string(), p.first));
        out.push((format!("{name}'"), p.second));
    }
    let a1 = catalogue().into_iter().find(|(n, _)| *n == "a1").expect("a1").1;
    let nr = NrComplex::new(&a1.space, 2).dgla_pair(&a1.bracket, &a1.bracket2).expect("dgLa");
    out.push(("nr-dgla".into(), nr.first));
    out.push(("nr-dgla'".into(), nr.second));
    for k in 0..random {
        let s = g.strict();
        let p = g.pair_from(&s);
        out.push((format!("strict-{k}"), p.first));
        out.push((format!("strict-{k}'"), p.second));
    }
    out
}

pub fn nijenhuis(seed: u64, random: usize) -> Verdict {
    let mut g = Gen::new(seed);
    let fixtures = low_arity_fixtures(&mut g, random);
    for (name, s) in &fixtures {
        ensure!(s.max_arity() <= 2, "{name}: has arity {} operations", s.max_arity());
        let d = lib(to_coder(s), "to_coder")?;
        let (n, p) = identity_nijenhuis(&d.space().clone());
        ensure!(lib(check_nijenhuis(&d, &n, &p), "check_nijenhuis")?.passed, "{name}: N = id, P = −id is not Nijenhuis");
        let (dn, rep) = lib(deform_by_nijenhuis(&d, &n), "deform_by_nijenhuis")?;
        ensure!(rep.passed, "{name}: [D_N, D_N] or [D, D_N] is nonzero");
        let ln = lib(from_coder(&dn), "from_coder")?;
        let ln = if dn.is_zero() { HomotopyStructure::zero(s.space(), crate::homotopy::Flavor::Linfty) } else { ln };
        let pair = lib(CompatiblePair::new(s.clone(), ln), "pair")?;
        let bound = vacuity_bound(pair.space(), pair.max_arity()).expect("bounded");
        ensure!(lib(check_compatibility(&pair, bound), "check_compatibility")?.passed, "{name}: (l, l^N) is not compatible");
    }
    Ok(format!("{} fixtures with operations in arities <= 2", fixtures.len()))
}

pub fn skew_symmetrization(seed: u64, instances: usize) -> Verdict {
    let mut g = Gen::new(seed);
    for i in 0..instances {
        let (a, b) = g.compatible_associative(3);
        let n = 3;
        for (what, s) in [("μ", &a), ("μ'", &b), ("μ + μ'", &lib(a.sum(&b), "sum")?)] {
            ensure!(lib(check_ainfty(s, n), "check_ainfty")?.passed, "instance {i}: {what} is not associative");
        }
        let la = lib(skew_symmetrize(&a, SkewSign::Koszul), "skew_symmetrize")?;
        let lb = lib(skew_symmetrize(&b, SkewSign::Koszul), "skew_symmetrize")?;
        ensure!(la == lib(skew_symmetrize(&a, SkewSign::Plain), "skew_symmetrize")?, "instance {i}: sign conventions differ on ungraded input");
        let p = lib(CompatiblePair::new(la, lb), "pair")?;
        let r = check_compatibility(&p, 3).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(r.passed, "instance {i}: skew-symmetrized pair is not compatible: {}", r.summary());
    }
    Ok(format!("{instances} compatible associative pairs on dim <= 3"))
}

pub fn classification_round_trips(seed: u64, instances: usize) -> Verdict {
    let mut g = Gen::new(seed);
    for i in 0..instances {
        let s = g.strict();
        ensure!(check_two_term(&s).passed, "strict instance {i} is not valid");
        let c = lib(strict_to_crossed(&s), "strict_to_crossed")?;
        ensure!(c.validate().passed, "strict instance {i}: crossed module fails its axioms");
        let back = lib(crossed_to_strict(&c), "crossed_to_strict")?;
        ensure!(back == s, "strict instance {i}: strict → crossed → strict changes the structure");
        ensure!(lib(strict_to_crossed(&back), "strict_to_crossed")? == c, "strict instance {i}: crossed → strict → crossed changes the data");
    }
    for i in 0..instances {
        let s = g.skeletal();
        ensure!(check_two_term(&s).passed, "skeletal instance {i} is not valid");
        let t = lib(skeletal_to_triple(&s), "skeletal_to_triple")?;
        let r = lib(t.validate(), "validate")?;
        ensure!(r.passed, "skeletal instance {i}: extracted triple fails a cocycle condition: {}", r.summary());
        let back = lib(triple_to_skeletal(&t), "triple_to_skeletal")?;
        ensure!(back == s, "skeletal instance {i}: skeletal → triple → skeletal changes the structure");
        ensure!(lib(skeletal_to_triple(&back), "skeletal_to_triple")? == t, "skeletal instance {i}: triple → skeletal → triple changes the data");
    }
    Ok(format!("{instances} strict and {instances} skeletal structures"))
}

pub fn lie2_correspondence(seed: u64, instances: usize) -> Verdict {
    let mut g = Gen::new(seed);
    for i in 0..instances {
        let s = g.two_term();
        let d = lib(phi(&s), "phi")?;
        ensure!(d.validate().passed, "instance {i}: φ output is not valid Lie 2-algebra data");
        let back = lib(psi(&d), "psi")?;
        ensure!(back == s, "instance {i}: ψ∘φ is not the identity");
        ensure!(check_two_term(&back).passed, "instance {i}: ψ output fails the 2-term identities");
    }
    for i in 0..instances {
        let d = g.lie2();
        let s = lib(psi(&d), "psi")?;
        ensure!(check_two_term(&s).passed, "data {i}: ψ output fails the 2-term identities");
        let dot = lib(phi(&s), "phi")?;
        let r = check_beta(&d, &dot, &beta(&d));
        ensure!(r.passed, "data {i}: β does not identify φ∘ψ with the input: {}", r.summary());
    }
    Ok(format!("{instances} structures through ψ∘φ, {instances} data through φ∘ψ"))
}

pub fn rota_baxter_search() -> Verdict {
    let a1 = catalogue().into_iter().find(|(n, _)| *n == "a1").expect("a1").1;
    let lp = lib(build_lifted(&a1, &CompatibleRep::adjoint(&a1)), "build_lifted")?;
    let entries = [int(-1), int(0), int(1)];
    let found = lib(search_rota_baxter(&lp, &entries), "search_rota_baxter")?;
    ensure!(found.len() == 81, "{} candidates, expected 81", found.len());
    let agree = found.iter().filter(|(_, r)| r.agree()).count();
    let rb = found.iter().filter(|(_, r)| r.is_rota_baxter()).count();
    let dv = lp.dim_v();
    for (c, _) in &found {
        let rm = lib(lp.embed(&c.r), "embed")?;
        for which in [Which::First, Which::Second] {
            let rr = lib(derived_bracket(&lp, &rm, &rm, which), "derived_bracket")?;
            let t = lib(lp.restrict(&rr), "restrict")?;
            for a in 0..dv {
                for b in 0..dv {
                    let (v, w) = (crate::multilinear::tensor::unit(dv, a), crate::multilinear::tensor::unit(dv, b));
                    let closed = rr_closed_form(&lp, &c.r, &v, &w, which);
                    ensure!(t.at(&[a, b]) == closed.as_slice(), "R = {:?}: derived bracket differs from its closed form", c.r);
                }
            }
        }
    }
    ensure!(agree == 81, "verdicts disagree on {} candidates", 81 - agree);
    Ok(format!("81 candidates, {rb} Rota-Baxter, {agree} agree; derived bracket matches its closed form on all"))
}
