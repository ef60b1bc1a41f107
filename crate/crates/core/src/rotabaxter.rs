//! Lifted brackets on `g ⊕ V`, derived brackets on `Hom(∧V, g)` and relative
//! Rota–Baxter operators.

use num_traits::Zero;
use rayon::prelude::*;

use crate::cohomology::{CompatibleLieAlgebra, CompatibleRep, Which};
use crate::error::{Error, Result};
use crate::exactla::{int, sign_pow, Scalar};
use crate::graded::{BasisElement, GradedSpace, Vector};
use crate::multilinear::tensor::{unit, vsub, Dense};
use crate::multilinear::{nr_bracket, MultiMap, Symmetry, Tensor};
use crate::report::{Failure, Report};

fn el(i: usize) -> BasisElement {
    BasisElement::new(0, i)
}

/// `(g, V, ρ, ρ')` together with `Δ, Δ'` on `g ⊕ V`; `g` takes the first
/// `dim g` basis slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPair {
    pub g: CompatibleLieAlgebra,
    pub rep: CompatibleRep,
    pub space: GradedSpace,
    pub delta: MultiMap,
    pub delta2: MultiMap,
}

fn lift(g: &CompatibleLieAlgebra, rep: &CompatibleRep, which: Which, space: &GradedSpace) -> Result<MultiMap> {
    let dg = g.dim();
    let br = g.bracket_of(which);
    let act = rep.action_of(which);
    MultiMap::from_fn(space, space, 2, 0, Symmetry::Skew, |x| {
        let (a, b) = (x[0].index, x[1].index);
        match (a < dg, b < dg) {
            (true, true) => br.eval_basis(&[el(a), el(b)]),
            (true, false) => {
                let v = act.at(&[a, b - dg]);
                Vector::from_pairs(v.iter().enumerate().map(|(k, c)| (el(dg + k), c.clone())))
            }
            // canonical order puts g before V, so (V, g) never occurs
            _ => Vector::zero(),
        }
    })
}

/// Vanishing of `[Δ,Δ]`, `[Δ',Δ']` and `[Δ,Δ']`.
pub fn check_lifted(lp: &LiftedPair) -> Result<Report> {
    let parts = [("[Δ,Δ]", &lp.delta, &lp.delta), ("[Δ',Δ']", &lp.delta2, &lp.delta2), ("[Δ,Δ']", &lp.delta, &lp.delta2)];
    for (name, a, b) in parts {
        let m = nr_bracket(a, b)?;
        if let Some((t, v)) = m.entries().iter().next() {
            return Ok(Report::fail("lifted", Failure { n: 3, tuple: t.clone(), residual: v.clone(), detail: Some(name.into()) }, 3, Some(3)));
        }
    }
    Ok(Report::pass("lifted", 3, Some(3)))
}

pub fn build_lifted(g: &CompatibleLieAlgebra, rep: &CompatibleRep) -> Result<LiftedPair> {
    let r = rep.validate(g);
    if !r.passed {
        return Err(Error::Precondition(format!("invalid representation: {}", r.summary())));
    }
    Ok(build_lifted_unchecked(g, rep)?.0)
}

/// Builds `Δ, Δ'` without validating the representation and reports on the
/// three NR brackets.
pub fn build_lifted_unchecked(g: &CompatibleLieAlgebra, rep: &CompatibleRep) -> Result<(LiftedPair, Report)> {
    let space = GradedSpace::ungraded(g.dim() + rep.dim());
    let delta = lift(g, rep, Which::First, &space)?;
    let delta2 = lift(g, rep, Which::Second, &space)?;
    let lp = LiftedPair { g: g.clone(), rep: rep.clone(), space, delta, delta2 };
    let r = check_lifted(&lp)?;
    if !r.passed {
        return Err(Error::Precondition(format!("lifted brackets do not square to zero: {}", r.summary())));
    }
    Ok((lp, r))
}

impl LiftedPair {
    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim()
    }

    fn delta_of(&self, which: Which) -> &MultiMap {
        match which {
            Which::First => &self.delta,
            Which::Second => &self.delta2,
        }
    }

    /// `Hom(∧^m V, g)` element from a tensor `V^m → g`.
    pub fn embed(&self, t: &Tensor) -> Result<MultiMap> {
        let (dg, dv) = (self.dim_g(), self.dim_v());
        let m = t.arity();
        if t.in_dims().iter().any(|&d| d != dv) || t.out_dim() != dg || m == 0 {
            return Err(Error::Space(format!("expected a map V^m -> g with m >= 1, V of dim {dv}, g of dim {dg}")));
        }
        if !t.is_skew() {
            return Err(Error::Symmetry("elements of Hom(∧V, g) must be skew".into()));
        }
        MultiMap::from_fn(&self.space, &self.space, m, 0, Symmetry::Skew, |x| {
            if x.iter().any(|b| b.index < dg) {
                return Vector::zero();
            }
            let idx: Vec<usize> = x.iter().map(|b| b.index - dg).collect();
            Vector::from_pairs(t.at(&idx).iter().enumerate().map(|(k, c)| (el(k), c.clone())))
        })
    }

    /// The `V^m → g` tensor of a map supported on `∧V` with values in `g`.
    pub fn restrict(&self, p: &MultiMap) -> Result<Tensor> {
        self.check_support(p)?;
        Ok(self.project(p))
    }

    fn check_support(&self, p: &MultiMap) -> Result<()> {
        let dg = self.dim_g();
        for (t, v) in p.entries() {
            if t.iter().any(|b| b.index < dg) || v.iter().any(|(b, _)| b.index >= dg) {
                return Err(Error::Space(format!("map is not supported on ∧V with values in g (entry {t:?})")));
            }
        }
        Ok(())
    }

    fn project(&self, p: &MultiMap) -> Tensor {
        let (dg, dv) = (self.dim_g(), self.dim_v());
        Tensor::from_fn(&vec![dv; p.arity()], dg, |idx| {
            let args: Vec<BasisElement> = idx.iter().map(|i| el(dg + i)).collect();
            let v = p.eval_basis(&args);
            (0..dg).map(|k| v.coeff(el(k))).collect()
        })
    }
}

/// `{[P, Q]} = (−1)^m [[Δ, P]_NR, Q]_NR`, projected to `Hom(∧^{m+n} V, g)`.
pub fn derived_bracket(lp: &LiftedPair, p: &MultiMap, q: &MultiMap, which: Which) -> Result<MultiMap> {
    lp.check_support(p)?;
    lp.check_support(q)?;
    let m = p.arity() as i64;
    let inner = nr_bracket(lp.delta_of(which), p)?;
    let full = nr_bracket(&inner, q)?.scaled(&sign_pow(m));
    lp.embed(&lp.project(&full))
}

/// `P[[[Δ, a_1], a_2], .., a_k]` for `k ≥ 3`; vanishes for degree reasons.
pub fn higher_derived(lp: &LiftedPair, args: &[MultiMap], which: Which) -> Result<MultiMap> {
    let mut cur = lp.delta_of(which).clone();
    for a in args {
        lp.check_support(a)?;
        cur = nr_bracket(&cur, a)?;
    }
    lp.embed(&lp.project(&cur))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbCandidate {
    pub r: Tensor,
}

#[derive(Clone, Debug)]
pub struct RotaBaxterReport {
    /// `{[R,R]} = {[R,R]}' = 0`.
    pub derived: Report,
    /// The two defining identities on basis pairs.
    pub defining: Report,
}

impl RotaBaxterReport {
    pub fn agree(&self) -> bool {
        self.derived.passed == self.defining.passed
    }

    pub fn is_rota_baxter(&self) -> bool {
        self.derived.passed && self.defining.passed
    }
}

fn defining_identities(lp: &LiftedPair, r: &Tensor) -> Report {
    let (dg, dv) = (lp.dim_g(), lp.dim_v());
    let rv = |v: &[Scalar]| r.apply(&[v]);
    for which in [Which::First, Which::Second] {
        let br = crate::twoterm::map_to_tensor(lp.g.bracket_of(which));
        let act = lp.rep.action_of(which);
        for a in 0..dv {
            for b in a + 1..dv {
                let (v, w) = (unit(dv, a), unit(dv, b));
                let (ra, rb) = (rv(&v), rv(&w));
                let lhs = br.apply(&[&ra, &rb]);
                let inner: Dense = vsub(&act.apply(&[&ra, &w]), &act.apply(&[&rb, &v]));
                let res = vsub(&lhs, &rv(&inner));
                if res.iter().any(|c| !c.is_zero()) {
                    let name = if which == Which::First { "[Rv,Rw] = R(ρ(Rv)w − ρ(Rw)v)" } else { "[Rv,Rw]' = R(ρ'(Rv)w − ρ'(Rw)v)" };
                    let residual = Vector::from_pairs(res.into_iter().enumerate().map(|(k, c)| (el(k), c)));
                    return Report::fail(
                        "rota-baxter",
                        Failure { n: 2, tuple: vec![el(dg + a), el(dg + b)], residual, detail: Some(name.into()) },
                        2,
                        Some(2),
                    );
                }
            }
        }
    }
    Report::pass("rota-baxter", 2, Some(2))
}

pub fn check_rota_baxter(lp: &LiftedPair, c: &RbCandidate) -> Result<RotaBaxterReport> {
    let rm = lp.embed(&c.r)?;
    let mut derived = Report::pass("derived-mc", 2, Some(2));
    for (which, name) in [(Which::First, "{[R,R]}"), (Which::Second, "{[R,R]}'")] {
        let rr = derived_bracket(lp, &rm, &rm, which)?;
        if let Some((t, v)) = rr.entries().iter().next() {
            derived = Report::fail("derived-mc", Failure { n: 2, tuple: t.clone(), residual: v.clone(), detail: Some(name.into()) }, 2, Some(2));
            break;
        }
    }
    Ok(RotaBaxterReport { derived, defining: defining_identities(lp, &c.r) })
}

/// Every `R : V → g` with entries in `entries`, with both verdicts.
pub fn search_rota_baxter(lp: &LiftedPair, entries: &[Scalar]) -> Result<Vec<(RbCandidate, RotaBaxterReport)>> {
    let (dg, dv) = (lp.dim_g(), lp.dim_v());
    let slots = dg * dv;
    let k = entries.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let total = k.checked_pow(slots as u32).ok_or_else(|| Error::Precondition("search space too large".into()))?;
    (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut r = Tensor::zeros(&[dv], dg);
            for j in 0..dv {
                for i in 0..dg {
                    r.set(&[j], i, entries[code % k].clone());
                    code /= k;
                }
            }
            let c = RbCandidate { r };
            let rep = check_rota_baxter(lp, &c)?;
            Ok((c, rep))
        })
        .collect()
}

/// `2(R(ρ(Rv)w) − R(ρ(Rw)v) − [Rv, Rw])`, the closed form of `{[R,R]}(v,w)`.
pub fn rr_closed_form(lp: &LiftedPair, r: &Tensor, v: &[Scalar], w: &[Scalar], which: Which) -> Dense {
    let br = crate::twoterm::map_to_tensor(lp.g.bracket_of(which));
    let act = lp.rep.action_of(which);
    let (rv, rw) = (r.apply(&[v]), r.apply(&[w]));
    let a = r.apply(&[&act.apply(&[&rv, w])]);
    let b = r.apply(&[&act.apply(&[&rw, v])]);
    let c = br.apply(&[&rv, &rw]);
    vsub(&vsub(&a, &b), &c).into_iter().map(|x| x * int(2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> CompatibleLieAlgebra {
        let g = GradedSpace::ungraded(2);
        let mut b = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        b.add_entry(&[el(0), el(1)], &Vector::basis(el(0))).unwrap();
        let mut b2 = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        b2.add_entry(&[el(0), el(1)], &Vector::basis(el(1))).unwrap();
        CompatibleLieAlgebra::new(b, b2).unwrap()
    }

    #[test]
    fn zero_is_rota_baxter() {
        let g = a1();
        let lp = build_lifted(&g, &CompatibleRep::adjoint(&g)).unwrap();
        let r = check_rota_baxter(&lp, &RbCandidate { r: Tensor::zeros(&[2], 2) }).unwrap();
        assert!(r.is_rota_baxter() && r.agree());
    }

    #[test]
    fn identity_on_adjoint() {
        // R = id: [x,y] = [x,y] − [y,x] = 2[x,y] fails unless abelian
        let g = a1();
        let lp = build_lifted(&g, &CompatibleRep::adjoint(&g)).unwrap();
        let r = check_rota_baxter(&lp, &RbCandidate { r: Tensor::identity(2) }).unwrap();
        assert!(!r.derived.passed && !r.defining.passed);
    }
}
