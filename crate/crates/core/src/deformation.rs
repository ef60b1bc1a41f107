//! Finite-order deformations of compatible L∞-algebras: deformation
//! equations, infinitesimals, obstructions, extension, equivalence and the
//! rigidity loop.

use num_traits::{One, Zero};

use crate::cohomology::{linfty_cochain_from, linfty_delta_matrix, linfty_flatten, linfty_truncation_exact};
use crate::error::{Error, Result};
use crate::exactla::{frac, int, solve, Scalar};
use crate::graded::GradedSpace;
use crate::homotopy::{check_compatibility, to_coder, tuple_bracket, zero_report, CompatiblePair, CoderTuple};
use crate::multilinear::CoderRep;
use crate::report::Report;

/// `(D,D')_t = (D,D') + t (D_1,D'_1) + .. + t^N (D_N,D'_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderNDeformation {
    pub base: CompatiblePair,
    /// `terms[i]` is the coefficient of `t^{i+1}`.
    pub terms: Vec<CoderTuple>,
    pub arity_cap: Option<usize>,
}

fn check_term(v: &GradedSpace, t: &CoderTuple) -> Result<()> {
    if t.len() != 2 {
        return Err(Error::Arity { expected: 2, got: t.len() });
    }
    if t.slots.iter().any(|s| s.space() != v) {
        return Err(Error::Space("deformation term on a different space".into()));
    }
    if t.degree() != 1 {
        return Err(Error::Degree("deformation terms are degree 1 coderivations".into()));
    }
    Ok(())
}

fn pair_coords(pair: &CompatiblePair) -> Result<CoderTuple> {
    CoderTuple::pair(&to_coder(&pair.first)?, &to_coder(&pair.second)?)
}

impl OrderNDeformation {
    pub fn new(base: CompatiblePair, terms: Vec<CoderTuple>, arity_cap: Option<usize>) -> Result<Self> {
        let v = base.space().desuspend();
        for t in &terms {
            check_term(&v, t)?;
        }
        Ok(OrderNDeformation { base, terms, arity_cap })
    }

    pub fn zero(base: CompatiblePair, order: usize, arity_cap: Option<usize>) -> Self {
        let v = base.space().desuspend();
        OrderNDeformation { base, terms: vec![CoderTuple::zero(&v, 1, 2); order], arity_cap }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn v_space(&self) -> GradedSpace {
        self.base.space().desuspend()
    }

    /// `T_0, T_1, .., T_N`.
    pub fn all_terms(&self) -> Result<Vec<CoderTuple>> {
        let mut out = vec![pair_coords(&self.base)?];
        out.extend(self.terms.iter().cloned());
        Ok(out)
    }
}

/// `Σ_{i+j=n, i,j ≥ lo} ⟦T_i, T_j⟧`.
fn convolution(terms: &[CoderTuple], n: usize, lo: usize, cap: Option<usize>) -> Result<CoderTuple> {
    let v = terms[0].slots[0].space().clone();
    let mut acc = CoderTuple::zero(&v, 2, 3);
    for i in 0..=n {
        let j = n - i;
        if i < lo || j < lo || i >= terms.len() || j >= terms.len() {
            continue;
        }
        acc.add_scaled_assign(&tuple_bracket(&terms[i], &terms[j], cap)?, &Scalar::one())?;
    }
    Ok(acc)
}

fn tuple_report(identity: &str, n: usize, t: &CoderTuple) -> Report {
    for (k, slot) in t.slots.iter().enumerate() {
        let r = zero_report(identity, slot);
        if !r.passed {
            let mut f = r.first_failure.expect("failed");
            f.detail = Some(format!("order {n}, slot {k}, arity {}", f.n));
            f.n = n;
            return Report::fail(identity, f, n, None);
        }
    }
    Report::pass(identity, n, None)
}

/// Deformation equations `Σ_{i+j=n} ⟦T_i,T_j⟧ = 0` for `n = 0..=N`.
pub fn check_deformation(d: &OrderNDeformation) -> Result<Report> {
    let terms = d.all_terms()?;
    for n in 0..=d.order() {
        let r = tuple_report("deformation", n, &convolution(&terms, n, 0, d.arity_cap)?);
        if !r.passed {
            return Ok(r);
        }
    }
    Ok(Report::pass("deformation", d.order(), None))
}

/// Base compatibility, then the deformation equations.
pub fn check_deformation_full(d: &OrderNDeformation, n_max: usize) -> Result<Report> {
    let base = check_compatibility(&d.base, n_max)?;
    if !base.passed {
        return Err(Error::Precondition(format!("base is not compatible: {}", base.summary())));
    }
    check_deformation(d)
}

/// `⟦(D,D'), t⟧` under the deformation's cap.
pub fn delta_c(d: &OrderNDeformation, t: &CoderTuple) -> Result<CoderTuple> {
    tuple_bracket(&pair_coords(&d.base)?, t, d.arity_cap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infinitesimal {
    Trivial,
    Term { index: usize, term: CoderTuple, cocycle: Report },
}

/// First nonzero term and the check that it is a 2-cocycle.
pub fn infinitesimal(d: &OrderNDeformation) -> Result<Infinitesimal> {
    let Some(p) = d.terms.iter().position(|t| !t.truncated(d.arity_cap).is_zero()) else { return Ok(Infinitesimal::Trivial) };
    let term = d.terms[p].truncated(d.arity_cap);
    let cocycle = tuple_report("cocycle", 2, &delta_c(d, &term)?);
    Ok(Infinitesimal::Term { index: p + 1, term, cocycle })
}

/// `−½ Σ_{i+j=N+1, i,j≥1} ⟦T_i,T_j⟧`.
pub fn obstruction(d: &OrderNDeformation) -> Result<CoderTuple> {
    let terms = d.all_terms()?;
    Ok(convolution(&terms, d.order() + 1, 1, d.arity_cap)?.scaled(&frac(-1, 2)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extensible { witness: CoderTuple },
    Obstructed { obstruction: CoderTuple },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    pub outcome: Extension,
    /// The cap used and whether it loses nothing at levels 2 and 3.
    pub arity_cap: usize,
    pub exact: bool,
}

fn require_cap(d: &OrderNDeformation) -> Result<usize> {
    let v = d.v_space();
    match d.arity_cap {
        Some(c) => Ok(c),
        None => crate::cohomology::max_coder_arity(&v, 2)
            .map(|k| k.max(crate::cohomology::max_coder_arity(&v, 1).unwrap_or(k)))
            .ok_or_else(|| Error::Precondition("this degree window needs an explicit arity cap".into())),
    }
}

/// Solve `δ_c X = obstruction` over the truncated 2-cochains.
pub fn is_extensible(d: &OrderNDeformation) -> Result<ExtensionResult> {
    let cap = require_cap(d)?;
    let mut d = d.clone();
    d.arity_cap = Some(cap);
    let ob = obstruction(&d)?;
    let exact = linfty_truncation_exact(&d.v_space(), 3, cap);
    let outcome = if ob.is_zero() {
        Extension::Extensible { witness: CoderTuple::zero(&d.v_space(), 1, 2) }
    } else {
        let m = linfty_delta_matrix(&d.base, 2, cap)?;
        let col = linfty_flatten(&ob, cap);
        let mut b = vec![Scalar::zero(); m.rows()];
        for (i, c) in col {
            b[i] = c;
        }
        match solve(&m, &b) {
            Some(x) => Extension::Extensible { witness: linfty_cochain_from(&d.v_space(), 2, cap, &x) },
            None => Extension::Obstructed { obstruction: ob },
        }
    };
    Ok(ExtensionResult { outcome, arity_cap: cap, exact })
}

pub fn extend(d: &OrderNDeformation, witness: &CoderTuple) -> Result<OrderNDeformation> {
    let mut terms = d.terms.clone();
    terms.push(witness.clone());
    OrderNDeformation::new(d.base.clone(), terms, d.arity_cap)
}

/// `Φ_t = id + t Φ_1 + .. + t^N Φ_N`; `terms[i]` is `Φ_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceSeries {
    pub terms: Vec<CoderRep>,
}

impl EquivalenceSeries {
    pub fn identity(v: &GradedSpace, order: usize) -> Self {
        EquivalenceSeries { terms: vec![CoderRep::zero(v, 0); order] }
    }

    pub fn new(terms: Vec<CoderRep>) -> Result<Self> {
        if terms.iter().any(|t| t.degree() != 0) {
            return Err(Error::Degree("equivalence terms have degree 0".into()));
        }
        Ok(EquivalenceSeries { terms })
    }
}

fn compose_tuple(phi: &CoderRep, t: &CoderTuple, cap: Option<usize>) -> Result<CoderTuple> {
    CoderTuple::new(t.slots.iter().map(|s| phi.compose(s, cap)).collect::<Result<Vec<_>>>()?)
}

fn tuple_compose(t: &CoderTuple, phi: &CoderRep, cap: Option<usize>) -> Result<CoderTuple> {
    CoderTuple::new(t.slots.iter().map(|s| s.compose(phi, cap)).collect::<Result<Vec<_>>>()?)
}

/// `Σ_{i+j=n} Φ_i ∘ T_j − Σ_{j ≥ 1} T̄_{n−j} ∘ Φ_j`, with `Φ_0` neutral.
fn equivalence_rhs(terms: &[CoderTuple], bar: &[CoderTuple], phi: &EquivalenceSeries, n: usize, cap: Option<usize>) -> Result<CoderTuple> {
    let mut acc = terms[n].truncated(cap);
    for i in 1..=n.min(phi.terms.len()) {
        acc.add_scaled_assign(&compose_tuple(&phi.terms[i - 1], &terms[n - i], cap)?, &Scalar::one())?;
        acc.add_scaled_assign(&tuple_compose(&bar[n - i], &phi.terms[i - 1], cap)?, &int(-1))?;
    }
    Ok(acc)
}

/// Solves `Σ_{i+j=n} T̄_i ∘ Φ_j = Σ_{i+j=n} Φ_i ∘ T_j` order by order.
/// The base is transformed too, so `T̄_0 = T_0` and only higher terms change;
/// the result is a valid deformation to first order.
pub fn apply_equivalence(d: &OrderNDeformation, phi: &EquivalenceSeries) -> Result<OrderNDeformation> {
    if phi.terms.len() < d.order() {
        return Err(Error::Precondition("equivalence series is shorter than the deformation".into()));
    }
    let terms = d.all_terms()?;
    let mut bar = vec![terms[0].truncated(d.arity_cap)];
    for n in 1..=d.order() {
        let next = equivalence_rhs(&terms, &bar, phi, n, d.arity_cap)?;
        bar.push(next);
    }
    OrderNDeformation::new(d.base.clone(), bar[1..].to_vec(), d.arity_cap)
}

/// The relation between `d`, `dbar` and `Φ` for orders `≤ N`.
pub fn check_equivalence(d: &OrderNDeformation, dbar: &OrderNDeformation, phi: &EquivalenceSeries) -> Result<Report> {
    if d.order() != dbar.order() || d.base != dbar.base {
        return Err(Error::Precondition("deformations of different order or base".into()));
    }
    let terms = d.all_terms()?;
    let bar = dbar.all_terms()?;
    for n in 0..=d.order() {
        let mut r = equivalence_rhs(&terms, &bar, phi, n, d.arity_cap)?;
        r.add_scaled_assign(&bar[n].truncated(d.arity_cap), &int(-1))?;
        let rep = tuple_report("equivalence", n, &r);
        if !rep.passed {
            return Ok(rep);
        }
    }
    Ok(Report::pass("equivalence", d.order(), None))
}

/// `e^{ad X}` applied to every term, with `X` of degree 0 and `t`-order `p ≥ 1`.
fn gauge(d: &OrderNDeformation, x: &CoderRep, p: usize) -> Result<OrderNDeformation> {
    let xt = CoderTuple::new(vec![x.clone()])?;
    let terms = d.all_terms()?;
    let mut out = terms.clone();
    // ad_X^k T_j lands in order j + k p
    for (j, t) in terms.iter().enumerate() {
        let mut cur = t.clone();
        let mut coeff = Scalar::one();
        let mut k = 1;
        while j + k * p <= d.order() {
            cur = tuple_bracket(&xt, &cur, d.arity_cap)?;
            coeff /= int(k as i64);
            out[j + k * p].add_scaled_assign(&cur, &coeff)?;
            k += 1;
        }
    }
    let mut res = d.clone();
    res.terms = out[1..].to_vec();
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    pub result: OrderNDeformation,
    /// `(p, Φ_p)` for each round.
    pub steps: Vec<(usize, CoderRep)>,
    pub trivial: bool,
    /// The first nonzero term could not be removed (its class is nonzero).
    pub stuck_at: Option<usize>,
}

/// Kill the first nonzero term `t^p T_p` by solving `δ_c Φ = −T_p` and
/// applying the gauge transformation `e^{ad(−t^p Φ)}`; repeat.
pub fn trivialize(d: &OrderNDeformation, max_rounds: usize) -> Result<Trivialization> {
    let cap = require_cap(d)?;
    let mut cur = d.clone();
    cur.arity_cap = Some(cap);
    let v = d.v_space();
    let m = linfty_delta_matrix(&d.base, 1, cap)?;
    let mut steps = Vec::new();
    for _ in 0..max_rounds {
        let Some(idx) = cur.terms.iter().position(|t| !t.truncated(Some(cap)).is_zero()) else { break };
        let p = idx + 1;
        let col = linfty_flatten(&cur.terms[idx].scaled(&int(-1)), cap);
        let mut b = vec![Scalar::zero(); m.rows()];
        for (i, c) in col {
            b[i] = c;
        }
        let Some(x) = solve(&m, &b) else {
            return Ok(Trivialization { result: cur, steps, trivial: false, stuck_at: Some(p) });
        };
        let phi = linfty_cochain_from(&v, 1, cap, &x).slots.remove(0);
        cur = gauge(&cur, &phi.scaled(&int(-1)), p)?;
        steps.push((p, phi));
    }
    let trivial = cur.terms.iter().all(|t| t.truncated(Some(cap)).is_zero());
    Ok(Trivialization { result: cur, steps, trivial, stuck_at: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{as_linfty, CompatibleLieAlgebra};
    use crate::graded::{BasisElement, Vector};
    use crate::multilinear::{MultiMap, Symmetry};

    fn a1_pair() -> CompatiblePair {
        let g = GradedSpace::ungraded(2);
        let mk = |c| {
            let mut m = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
            m.add_entry(&[BasisElement::new(0, 0), BasisElement::new(0, 1)], &Vector::basis(BasisElement::new(0, c))).unwrap();
            m
        };
        as_linfty(&CompatibleLieAlgebra::new(mk(0), mk(1)).unwrap()).unwrap()
    }

    #[test]
    fn zero_deformation() {
        let d = OrderNDeformation::zero(a1_pair(), 2, None);
        assert!(check_deformation(&d).unwrap().passed);
        assert_eq!(infinitesimal(&d).unwrap(), Infinitesimal::Trivial);
        assert!(obstruction(&d).unwrap().is_zero());
        assert!(matches!(is_extensible(&d).unwrap().outcome, Extension::Extensible { .. }));
    }

    #[test]
    fn scaled_base_is_a_deformation() {
        // (D,D')_t = (1+t)(D,D')
        let p = a1_pair();
        let t1 = pair_coords(&p).unwrap();
        let d = OrderNDeformation::new(p, vec![t1.clone(), CoderTuple::zero(t1.slots[0].space(), 1, 2)], None).unwrap();
        assert!(check_deformation(&d).unwrap().passed);
        let tr = trivialize(&d, 4).unwrap();
        assert!(tr.trivial, "{tr:?}");
    }
}
