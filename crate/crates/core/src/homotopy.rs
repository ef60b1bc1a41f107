//! L∞ and A∞ structures, their compatible versions, and the Maurer–Cartan
//! reformulations in coderivations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{int, sign_pow, Scalar};
use crate::graded::{BasisElement, GradedSpace, Vector};
use crate::multilinear::perm::{signed_shuffles, Permutation};
use crate::multilinear::{canonical_tuples, desuspend_map, nr_bracket, suspend_map, CoderRep, MultiMap, Symmetry};
use crate::report::{Failure, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Linfty,
    Ainfty,
}

impl Flavor {
    pub fn symmetry(self) -> Symmetry {
        match self {
            Flavor::Linfty => Symmetry::Skew,
            Flavor::Ainfty => Symmetry::None,
        }
    }
}

/// Operations `l_k` (or `μ_k`) of degree `2 − k`; absent arities are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyStructure {
    space: GradedSpace,
    flavor: Flavor,
    ops: BTreeMap<usize, MultiMap>,
    arity_bound: usize,
}

impl HomotopyStructure {
    pub fn new(space: &GradedSpace, flavor: Flavor, arity_bound: usize) -> Self {
        HomotopyStructure { space: space.clone(), flavor, ops: BTreeMap::new(), arity_bound }
    }

    pub fn from_ops<I: IntoIterator<Item = MultiMap>>(space: &GradedSpace, flavor: Flavor, ops: I) -> Result<Self> {
        let ops: Vec<MultiMap> = ops.into_iter().collect();
        let bound = ops.iter().map(MultiMap::arity).max().unwrap_or(0);
        let mut s = HomotopyStructure::new(space, flavor, bound);
        for op in ops {
            s.set_op(op)?;
        }
        Ok(s)
    }

    /// An empty Lie bracket viewed as a structure on an ungraded space.
    pub fn zero(space: &GradedSpace, flavor: Flavor) -> Self {
        HomotopyStructure::new(space, flavor, 0)
    }

    pub fn set_op(&mut self, op: MultiMap) -> Result<()> {
        let k = op.arity();
        if k == 0 {
            return Err(Error::Arity { expected: 1, got: 0 });
        }
        if op.symmetry() != self.flavor.symmetry() {
            return Err(Error::Symmetry(format!("arity {k} operation must be {}", self.flavor.symmetry().name())));
        }
        if op.domain() != &self.space || op.codomain() != &self.space {
            return Err(Error::Space(format!("arity {k} operation lives on a different space")));
        }
        if op.degree() != 2 - k as i64 {
            return Err(Error::Degree(format!("arity {k} operation has degree {}, expected {}", op.degree(), 2 - k as i64)));
        }
        self.arity_bound = self.arity_bound.max(k);
        if op.is_zero() {
            self.ops.remove(&k);
        } else {
            self.ops.insert(k, op);
        }
        Ok(())
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn ops(&self) -> &BTreeMap<usize, MultiMap> {
        &self.ops
    }

    pub fn op(&self, k: usize) -> Option<&MultiMap> {
        self.ops.get(&k)
    }

    /// The operation of arity `k`, zero if absent.
    pub fn op_or_zero(&self, k: usize) -> MultiMap {
        self.ops
            .get(&k)
            .cloned()
            .unwrap_or_else(|| MultiMap::endo(&self.space, k, 2 - k as i64, self.flavor.symmetry()))
    }

    pub fn max_arity(&self) -> usize {
        self.ops.keys().next_back().copied().unwrap_or(0)
    }

    pub fn scaled(&self, c: &Scalar) -> HomotopyStructure {
        let mut s = HomotopyStructure::new(&self.space, self.flavor, self.arity_bound);
        for op in self.ops.values() {
            s.set_op(op.scaled(c)).expect("same shape");
        }
        s
    }

    pub fn sum(&self, other: &HomotopyStructure) -> Result<HomotopyStructure> {
        if self.space != other.space || self.flavor != other.flavor {
            return Err(Error::Space("structures on different spaces or of different flavors".into()));
        }
        let mut s = HomotopyStructure::new(&self.space, self.flavor, self.arity_bound.max(other.arity_bound));
        for k in self.ops.keys().chain(other.ops.keys()) {
            if s.ops.contains_key(k) {
                continue;
            }
            s.set_op(self.op_or_zero(*k).sum(&other.op_or_zero(*k))?)?;
        }
        Ok(s)
    }
}

/// `(L, {l_k}, {l'_k})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    pub first: HomotopyStructure,
    pub second: HomotopyStructure,
}

impl CompatiblePair {
    pub fn new(first: HomotopyStructure, second: HomotopyStructure) -> Result<Self> {
        if first.space != second.space {
            return Err(Error::Space("the two structures live on different spaces".into()));
        }
        if first.flavor != second.flavor {
            return Err(Error::Precondition("the two structures have different flavors".into()));
        }
        Ok(CompatiblePair { first, second })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.first.space
    }

    pub fn max_arity(&self) -> usize {
        self.first.max_arity().max(self.second.max_arity())
    }
}

/// Largest `n` for which a nonempty degree window can make an arity `n`
/// operation of degree `2 − n + shift` land in the space; `None` if unbounded.
fn window_bound(space: &GradedSpace, shift: i64) -> Option<usize> {
    let (Some(a), Some(b)) = (space.degrees().next(), space.degrees().next_back()) else { return Some(0) };
    // need Σ (x_i − 1) + 2 + shift ∈ [a, b] with x_i ∈ [a, b]
    if b <= 0 {
        Some((2 + shift - a).max(0) as usize)
    } else if a >= 2 {
        Some((b - 2 - shift).max(0) as usize)
    } else {
        None
    }
}

/// Arity above which the higher Jacobi identities are vacuous, from the
/// degree window and from the highest nonzero operation.
pub fn vacuity_bound(space: &GradedSpace, max_arity: usize) -> Option<usize> {
    let from_ops = (2 * max_arity).saturating_sub(1);
    let from_window = window_bound(space, 1);
    let from_op_window = window_bound(space, 0).map(|k| (2 * k).saturating_sub(1));
    [Some(from_ops), from_window, from_op_window].into_iter().flatten().min()
}

/// `Σ_{i+j=n+1} Σ_{Sh(i,n−i)} χ(σ)(−1)^{i(j−1)} outer_j(inner_i(x_σ..), x_σ..)`.
pub fn jacobi_term(outer: &HomotopyStructure, inner: &HomotopyStructure, x: &[BasisElement]) -> Vector {
    let n = x.len();
    let degs: Vec<i64> = x.iter().map(|b| b.degree).collect();
    let mut out = Vector::zero();
    for (&i, li) in inner.ops.range(1..=n) {
        let j = n + 1 - i;
        let Some(lj) = outer.ops.get(&j) else { continue };
        let pre = sign_pow((i * (j - 1)) as i64);
        for sh in signed_shuffles(i, n - i, &degs) {
            let w = sh.perm.permute(x);
            let v = li.eval_basis(&w[..i]);
            if v.is_zero() {
                continue;
            }
            let c = &pre * &sh.sign * &sh.koszul;
            out.add_scaled(&lj.eval_first(&v, &w[i..]), &c);
        }
    }
    out
}

fn first_failure<F>(tuples: Vec<Vec<BasisElement>>, n: usize, f: F) -> Option<Failure>
where
    F: Fn(&[BasisElement]) -> Vector + Sync,
{
    tuples.par_iter().find_map_first(|t| {
        let r = f(t);
        (!r.is_zero()).then(|| Failure { n, tuple: t.clone(), residual: r, detail: None })
    })
}

fn check_identity<F>(identity: &str, space: &GradedSpace, bound: Option<usize>, n_max: usize, f: F) -> Report
where
    F: Fn(&[BasisElement]) -> Vector + Sync,
{
    for n in 1..=n_max {
        if bound.is_some_and(|b| n > b) {
            break;
        }
        let tuples: Vec<Vec<BasisElement>> = canonical_tuples(space, n, Symmetry::Skew)
            .into_iter()
            .filter(|t| space.dim(t.iter().map(|b| b.degree).sum::<i64>() + 3 - n as i64) > 0)
            .collect();
        if let Some(fail) = first_failure(tuples, n, &f) {
            return Report::fail(identity, fail, n, bound);
        }
    }
    let r = Report::pass(identity, n_max, bound);
    if bound.is_some_and(|b| n_max < b) || bound.is_none() {
        r.with_note(format!("identities of arity > {n_max} were not checked"))
    } else {
        r
    }
}

/// Higher Jacobi identities for `n ≤ n_max`.
pub fn check_higher_jacobi(s: &HomotopyStructure, n_max: usize) -> Result<Report> {
    if s.flavor != Flavor::Linfty {
        return Err(Error::Precondition("higher Jacobi identities need an L-infinity structure".into()));
    }
    let bound = vacuity_bound(&s.space, s.max_arity());
    Ok(check_identity("hji", &s.space, bound, n_max, |x| jacobi_term(s, s, x)))
}

/// The mixed identity with terms `l_j ∘ l'_i + l'_j ∘ l_i`.
pub fn check_mixed_jacobi(p: &CompatiblePair, n_max: usize) -> Report {
    let bound = vacuity_bound(p.space(), p.max_arity());
    check_identity("hji-comp", p.space(), bound, n_max, |x| {
        let mut r = jacobi_term(&p.first, &p.second, x);
        r.add(&jacobi_term(&p.second, &p.first, x));
        r
    })
}

/// Compatibility check; both structures must be L∞ first.
pub fn check_compatibility(p: &CompatiblePair, n_max: usize) -> Result<Report> {
    for (name, s) in [("first", &p.first), ("second", &p.second)] {
        let r = check_higher_jacobi(s, n_max)?;
        if !r.passed {
            return Err(Error::Precondition(format!("{name} structure is not L-infinity: {}", r.summary())));
        }
    }
    Ok(check_mixed_jacobi(p, n_max))
}

pub fn sum_structure(p: &CompatiblePair) -> Result<HomotopyStructure> {
    p.first.sum(&p.second)
}

/// `D = Σ ρ̃_k` with `ρ_k` the desuspensions of `l_k`.
pub fn to_coder(s: &HomotopyStructure) -> Result<CoderRep> {
    if s.flavor != Flavor::Linfty {
        return Err(Error::Precondition("only L-infinity structures give coderivations of SV".into()));
    }
    let v = s.space.desuspend();
    let comps = s.ops.values().map(desuspend_map).collect::<Result<Vec<_>>>()?;
    CoderRep::from_components(&v, 1, comps)
}

pub fn from_coder(d: &CoderRep) -> Result<HomotopyStructure> {
    if d.degree() != 1 {
        return Err(Error::Degree("an L-infinity structure corresponds to a degree 1 coderivation".into()));
    }
    let l = d.space().suspend();
    let ops = d.components().values().map(suspend_map).collect::<Result<Vec<_>>>()?;
    let mut s = HomotopyStructure::from_ops(&l, Flavor::Linfty, ops)?;
    s.arity_bound = s.arity_bound.max(d.max_arity());
    Ok(s)
}

/// First nonzero component of a coderivation, as a report.
pub fn zero_report(identity: &str, c: &CoderRep) -> Report {
    let checked = c.max_arity();
    for (k, m) in c.components() {
        if let Some((t, v)) = m.entries().iter().next() {
            return Report::fail(identity, Failure { n: *k, tuple: t.clone(), residual: v.clone(), detail: None }, checked, None);
        }
    }
    Report::pass(identity, checked, None)
}

/// `[D, D]_C = 0`, truncated at `cap` when given.
pub fn check_mc(d: &CoderRep, cap: Option<usize>) -> Result<Report> {
    if d.degree() != 1 {
        return Err(Error::Degree("Maurer-Cartan elements have degree 1".into()));
    }
    Ok(zero_report("mc", &d.bracket(d, cap)?))
}

/// `[D,D] = [D',D'] = [D,D'] = 0`.
pub fn check_compatible_mc(d: &CoderRep, d2: &CoderRep, cap: Option<usize>) -> Result<Report> {
    let parts = vec![
        check_mc(d, cap)?,
        check_mc(d2, cap)?,
        zero_report("mc-mixed", &d.bracket(d2, cap)?),
    ];
    Ok(Report::all("mc-comp", parts))
}

/// An element of `Coder_c`: a tuple of coderivations of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoderTuple {
    pub slots: Vec<CoderRep>,
}

impl CoderTuple {
    pub fn new(slots: Vec<CoderRep>) -> Result<Self> {
        if let Some(first) = slots.first() {
            if slots.iter().any(|s| s.space() != first.space()) {
                return Err(Error::Space("tuple slots on different spaces".into()));
            }
            if slots.iter().any(|s| s.degree() != first.degree()) {
                return Err(Error::Degree("tuple slots of different degrees".into()));
            }
        }
        Ok(CoderTuple { slots })
    }

    pub fn pair(d: &CoderRep, d2: &CoderRep) -> Result<Self> {
        CoderTuple::new(vec![d.clone(), d2.clone()])
    }

    pub fn zero(space: &GradedSpace, degree: i64, len: usize) -> Self {
        CoderTuple { slots: vec![CoderRep::zero(space, degree); len] }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.slots.first().map_or(0, CoderRep::degree)
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(CoderRep::is_zero)
    }

    pub fn add_scaled_assign(&mut self, other: &CoderTuple, c: &Scalar) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Arity { expected: self.len(), got: other.len() });
        }
        for (a, b) in self.slots.iter_mut().zip(&other.slots) {
            a.add_scaled_assign(b, c)?;
        }
        Ok(())
    }

    pub fn sum(&self, other: &CoderTuple) -> Result<CoderTuple> {
        let mut t = self.clone();
        t.add_scaled_assign(other, &Scalar::one())?;
        Ok(t)
    }

    pub fn scaled(&self, c: &Scalar) -> CoderTuple {
        CoderTuple { slots: self.slots.iter().map(|s| s.scaled(c)).collect() }
    }

    pub fn truncated(&self, cap: Option<usize>) -> CoderTuple {
        CoderTuple { slots: self.slots.iter().map(|s| s.truncated(cap)).collect() }
    }
}

/// `⟦a, b⟧` with `i`-th slot `Σ_{p+q=i+1} [a_p, b_q]_C`.
pub fn tuple_bracket(a: &CoderTuple, b: &CoderTuple, cap: Option<usize>) -> Result<CoderTuple> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Arity { expected: 1, got: 0 });
    }
    let space = a.slots[0].space();
    if b.slots[0].space() != space {
        return Err(Error::Space("tuples on different spaces".into()));
    }
    let len = a.len() + b.len() - 1;
    let mut slots = vec![CoderRep::zero(space, a.degree() + b.degree()); len];
    for (p, x) in a.slots.iter().enumerate() {
        for (q, y) in b.slots.iter().enumerate() {
            let br = x.bracket(y, cap)?;
            slots[p + q].add_scaled_assign(&br, &Scalar::one())?;
        }
    }
    CoderTuple::new(slots)
}

fn l_eval(m: Option<&MultiMap>, args: &[Vector]) -> Vector {
    m.map_or_else(Vector::zero, |m| m.eval(args))
}

/// The three criteria for two dgLa structures to be compatible.
pub fn check_compatible_dgla(p: &CompatiblePair) -> Result<Report> {
    if p.max_arity() > 2 {
        return Err(Error::Precondition("a dgLa has operations in arities 1 and 2 only".into()));
    }
    let space = p.space();
    let (d, d2) = (p.first.op(1), p.second.op(1));
    let (b, b2) = (p.first.op(2), p.second.op(2));
    let basis: Vec<Vector> = space.basis().into_iter().map(Vector::basis).collect();
    let elems = space.basis();
    let fail = |n: usize, t: Vec<BasisElement>, r: Vector, what: &str| {
        Report::fail("dgla-comp", Failure { n, tuple: t, residual: r, detail: Some(what.into()) }, n, Some(3))
    };
    for (x, bx) in elems.iter().zip(&basis) {
        let mut r = l_eval(d, &[l_eval(d2, std::slice::from_ref(bx))]);
        r.add(&l_eval(d2, &[l_eval(d, std::slice::from_ref(bx))]));
        if !r.is_zero() {
            return Ok(fail(1, vec![*x], r, "differentials anticommute"));
        }
    }
    // mixed Leibniz rule
    for (x, bx) in elems.iter().zip(&basis) {
        for (y, by) in elems.iter().zip(&basis) {
            let mixed = |outer: Option<&MultiMap>, inner: Option<&MultiMap>| -> Vector {
                let mut r = l_eval(outer, &[l_eval(inner, &[bx.clone(), by.clone()])]);
                r.add(&l_eval(inner, &[l_eval(outer, std::slice::from_ref(bx)), by.clone()]).neg());
                let t = l_eval(inner, &[bx.clone(), l_eval(outer, std::slice::from_ref(by))]);
                r.add_scaled(&t, &-sign_pow(x.degree));
                r
            };
            let mut r = mixed(d, b2);
            r.add(&mixed(d2, b));
            if !r.is_zero() {
                return Ok(fail(2, vec![*x, *y], r, "mixed Leibniz rule"));
            }
        }
    }
    // mixed Jacobi identity
    for (x, bx) in elems.iter().zip(&basis) {
        for (y, by) in elems.iter().zip(&basis) {
            for (z, bz) in elems.iter().zip(&basis) {
                let jac = |outer: Option<&MultiMap>, inner: Option<&MultiMap>| -> Vector {
                    let mut r = l_eval(outer, &[l_eval(inner, &[bx.clone(), by.clone()]), bz.clone()]);
                    let t = l_eval(outer, &[l_eval(inner, &[bx.clone(), bz.clone()]), by.clone()]);
                    r.add_scaled(&t, &-sign_pow(y.degree * z.degree));
                    r.add(&l_eval(outer, &[bx.clone(), l_eval(inner, &[by.clone(), bz.clone()])]).neg());
                    r
                };
                let mut r = jac(b2, b);
                r.add(&jac(b, b2));
                if !r.is_zero() {
                    return Ok(fail(3, vec![*x, *y, *z], r, "mixed Jacobi identity"));
                }
            }
        }
    }
    Ok(Report::pass("dgla-comp", 3, Some(3)))
}

/// Coordinates of `Hom(∧^{n+1} g, g)` inside the graded space
/// `L = ⊕_{n < max_wedge} Hom(∧^{n+1} g, g)`: degree `n`, index over
/// (canonical wedge tuple, output basis element).
#[derive(Clone, Debug)]
pub struct NrComplex {
    pub g: GradedSpace,
    pub space: GradedSpace,
    wedges: BTreeMap<i64, Vec<Vec<BasisElement>>>,
}

impl NrComplex {
    pub fn new(g: &GradedSpace, max_wedge: usize) -> Self {
        let dim = g.total_dim();
        let mut wedges = BTreeMap::new();
        let mut dims = Vec::new();
        for n in 0..max_wedge {
            let t = canonical_tuples(g, n + 1, Symmetry::Skew);
            dims.push((n as i64, t.len() * dim));
            wedges.insert(n as i64, t);
        }
        NrComplex { g: g.clone(), space: GradedSpace::new(dims), wedges }
    }

    pub fn to_map(&self, b: BasisElement) -> MultiMap {
        let dim = self.g.total_dim();
        let t = &self.wedges[&b.degree][b.index / dim];
        let out = self.g.basis()[b.index % dim];
        let mut m = MultiMap::endo(&self.g, t.len(), 0, Symmetry::Skew);
        m.add_entry(t, &Vector::basis(out)).expect("well formed");
        m
    }

    /// Coordinates of a skew map; zero if its wedge degree is truncated away.
    pub fn to_vector(&self, m: &MultiMap) -> Vector {
        let n = m.arity() as i64 - 1;
        let Some(tuples) = self.wedges.get(&n) else { return Vector::zero() };
        let dim = self.g.total_dim();
        let basis = self.g.basis();
        let mut v = Vector::zero();
        for (ti, t) in tuples.iter().enumerate() {
            for (oi, o) in basis.iter().enumerate() {
                v.add_term(BasisElement::new(n, ti * dim + oi), m.eval_basis(t).coeff(*o));
            }
        }
        v
    }

    fn differential(&self, mu: &MultiMap) -> Result<MultiMap> {
        MultiMap::from_fn(&self.space, &self.space, 1, 1, Symmetry::Skew, |x| {
            self.to_vector(&nr_bracket(mu, &self.to_map(x[0])).expect("NR bracket"))
        })
    }

    fn bracket(&self) -> Result<MultiMap> {
        MultiMap::from_fn(&self.space, &self.space, 2, 0, Symmetry::Skew, |x| {
            self.to_vector(&nr_bracket(&self.to_map(x[0]), &self.to_map(x[1])).expect("NR bracket"))
        })
    }

    /// `(L, {∂_μ, [,]_NR}, {∂_μ', [,]_NR})`, truncated to wedge degree `≤ max_wedge`.
    pub fn dgla_pair(&self, mu: &MultiMap, mu2: &MultiMap) -> Result<CompatiblePair> {
        let br = self.bracket()?;
        let first = HomotopyStructure::from_ops(&self.space, Flavor::Linfty, [self.differential(mu)?, br.clone()])?;
        let second = HomotopyStructure::from_ops(&self.space, Flavor::Linfty, [self.differential(mu2)?, br])?;
        CompatiblePair::new(first, second)
    }
}

/// `Σ_{i+j=n+1} Σ_λ (−1)^{λ(i+1)+i(|a_1|+..+|a_{λ−1}|)} μ_j(a_1..μ_i(a_λ..)..a_n)`.
pub fn ainfty_term(outer: &HomotopyStructure, inner: &HomotopyStructure, a: &[BasisElement]) -> Vector {
    let n = a.len();
    let mut out = Vector::zero();
    for (&i, mi) in inner.ops.range(1..=n) {
        let j = n + 1 - i;
        let Some(mj) = outer.ops.get(&j) else { continue };
        for lam in 1..=j {
            let pos = lam - 1;
            let v = mi.eval_basis(&a[pos..pos + i]);
            if v.is_zero() {
                continue;
            }
            let before: i64 = a[..pos].iter().map(|b| b.degree).sum();
            let sign = sign_pow(lam as i64 * (i as i64 + 1) + i as i64 * before);
            let mut args: Vec<Vector> = a[..pos].iter().map(|b| Vector::basis(*b)).collect();
            args.push(v);
            args.extend(a[pos + i..].iter().map(|b| Vector::basis(*b)));
            out.add_scaled(&mj.eval(&args), &sign);
        }
    }
    out
}

pub fn check_ainfty(s: &HomotopyStructure, n_max: usize) -> Result<Report> {
    if s.flavor != Flavor::Ainfty {
        return Err(Error::Precondition("the A-infinity identity needs an A-infinity structure".into()));
    }
    let bound = vacuity_bound(&s.space, s.max_arity());
    for n in 1..=n_max {
        if bound.is_some_and(|b| n > b) {
            break;
        }
        let tuples: Vec<Vec<BasisElement>> = canonical_tuples(&s.space, n, Symmetry::None)
            .into_iter()
            .filter(|t| s.space.dim(t.iter().map(|b| b.degree).sum::<i64>() + 3 - n as i64) > 0)
            .collect();
        if let Some(f) = first_failure(tuples, n, |t| ainfty_term(s, s, t)) {
            return Ok(Report::fail("ainfty", f, n, bound));
        }
    }
    Ok(Report::pass("ainfty", n_max, bound))
}

/// Which sign the skew-symmetrization uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SkewSign {
    /// `χ(σ) = sgn(σ) ε(σ)`.
    #[default]
    Koszul,
    /// `sgn(σ)` alone.
    Plain,
}

/// `l_k(a_1..a_k) = Σ_{σ ∈ S_k} sign(σ) μ_k(a_σ(1)..a_σ(k))`.
pub fn skew_symmetrize(s: &HomotopyStructure, sign: SkewSign) -> Result<HomotopyStructure> {
    if s.flavor != Flavor::Ainfty {
        return Err(Error::Precondition("skew-symmetrization takes an A-infinity structure".into()));
    }
    let mut out = HomotopyStructure::new(&s.space, Flavor::Linfty, s.arity_bound);
    for (&k, mu) in &s.ops {
        let perms = Permutation::all(k);
        let value = |a: &[BasisElement]| {
            let degs: Vec<i64> = a.iter().map(|b| b.degree).collect();
            let mut v = Vector::zero();
            for p in &perms {
                let c = match sign {
                    SkewSign::Koszul => crate::multilinear::chi_sign(p, &degs).expect("sizes agree"),
                    SkewSign::Plain => p.sign(),
                };
                v.add_scaled(&mu.eval_basis(&p.permute(a)), &c);
            }
            v
        };
        if sign == SkewSign::Plain {
            // the plain sign is only graded skew when it agrees with the Koszul one
            for a in canonical_tuples(&s.space, k, Symmetry::None) {
                let (c, key) = crate::multilinear::normalize(&a, Symmetry::Skew)
                    .map_or((Scalar::zero(), a.clone()), |(c, key)| (c, key));
                if value(&a) != value(&key).scaled(&c) {
                    return Err(Error::Symmetry(format!("plain skew-symmetrization of arity {k} is not graded skew")));
                }
            }
        }
        out.set_op(MultiMap::from_fn(&s.space, &s.space, k, 2 - k as i64, Symmetry::Skew, value)?)?;
    }
    Ok(out)
}

/// `[N,[N,D]] = [P,D]` and `[N,P] = 0`.
pub fn check_nijenhuis(d: &CoderRep, n: &CoderRep, p: &CoderRep) -> Result<Report> {
    if d.degree() != 1 || n.degree() != 0 || p.degree() != 0 {
        return Err(Error::Degree("Nijenhuis data needs D of degree 1 and N, P of degree 0".into()));
    }
    let lhs = n.bracket(&n.bracket(d, None)?, None)?;
    let rhs = p.bracket(d, None)?;
    let parts = vec![zero_report("nijenhuis-square", &lhs.difference(&rhs)?), zero_report("nijenhuis-commute", &n.bracket(p, None)?)];
    Ok(Report::all("nijenhuis", parts))
}

/// `D_N = [N, D]` together with the report on `[D_N, D_N] = 0` and `[D, D_N] = 0`.
pub fn deform_by_nijenhuis(d: &CoderRep, n: &CoderRep) -> Result<(CoderRep, Report)> {
    let dn = n.bracket(d, None)?;
    let parts = vec![zero_report("mc", &dn.bracket(&dn, None)?), zero_report("mc-mixed", &d.bracket(&dn, None)?)];
    Ok((dn, Report::all("nijenhuis-deformation", parts)))
}

/// `N = id`, `P = −id` as coderivations on `V`.
pub fn identity_nijenhuis(v: &GradedSpace) -> (CoderRep, CoderRep) {
    let n = CoderRep::identity(v);
    let p = n.scaled(&int(-1));
    (n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> BasisElement {
        BasisElement::new(0, i)
    }

    fn lie(dim: usize, table: &[((usize, usize), usize)]) -> HomotopyStructure {
        let g = GradedSpace::ungraded(dim);
        let mut m = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        for ((a, b), c) in table {
            m.add_entry(&[e(*a), e(*b)], &Vector::basis(e(*c))).unwrap();
        }
        HomotopyStructure::from_ops(&g, Flavor::Linfty, [m]).unwrap()
    }

    #[test]
    fn lie_brackets_pass() {
        let zero = HomotopyStructure::zero(&GradedSpace::ungraded(2), Flavor::Linfty);
        assert!(check_higher_jacobi(&zero, 5).unwrap().passed);
        assert!(check_higher_jacobi(&lie(2, &[((0, 1), 0)]), 5).unwrap().passed);
        assert!(check_higher_jacobi(&lie(3, &[((0, 1), 2)]), 3).unwrap().passed);
        let bad = lie(3, &[((0, 1), 0), ((1, 2), 1)]);
        let r = check_higher_jacobi(&bad, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failure.unwrap().n, 3);
    }

    #[test]
    fn a1_pair_is_compatible() {
        let p = CompatiblePair::new(lie(2, &[((0, 1), 0)]), lie(2, &[((0, 1), 1)])).unwrap();
        assert!(check_compatibility(&p, 4).unwrap().passed);
        let d = to_coder(&p.first).unwrap();
        let d2 = to_coder(&p.second).unwrap();
        assert!(check_compatible_mc(&d, &d2, None).unwrap().passed);
        let s = sum_structure(&p).unwrap();
        assert_eq!(s.op(2).unwrap().eval_basis(&[e(0), e(1)]), Vector::from_pairs([(e(0), int(1)), (e(1), int(1))]));
    }

    #[test]
    fn vacuity_bounds() {
        assert_eq!(vacuity_bound(&GradedSpace::ungraded(2), 2), Some(3));
        assert_eq!(vacuity_bound(&GradedSpace::new([(-1, 1), (0, 1)]), 3), Some(4));
        assert_eq!(vacuity_bound(&GradedSpace::new([(0, 1), (1, 1)]), 9), Some(17));
    }

    #[test]
    fn associative_commutator() {
        let a = GradedSpace::ungraded(2);
        let mut mu = MultiMap::endo(&a, 2, 0, Symmetry::None);
        mu.add_entry(&[e(0), e(1)], &Vector::basis(e(0))).unwrap();
        let s = HomotopyStructure::from_ops(&a, Flavor::Ainfty, [mu]).unwrap();
        let l = skew_symmetrize(&s, SkewSign::Koszul).unwrap();
        assert_eq!(l.op(2).unwrap().eval_basis(&[e(0), e(1)]), Vector::basis(e(0)));
        assert_eq!(skew_symmetrize(&s, SkewSign::Plain).unwrap(), l);
    }
}
