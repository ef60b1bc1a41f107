//! Chevalley–Eilenberg complexes of compatible Lie algebras, the compatible
//! complex `C•_c(g, V)`, and the coderivation complex of a compatible L∞-algebra.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, sign_pow, Matrix, Scalar};
use crate::graded::{BasisElement, GradedSpace, Vector};
use crate::homotopy::{to_coder, CompatiblePair, CoderTuple};
use crate::multilinear::{canonical_tuples, nr_bracket, CoderRep, MultiMap, Symmetry, Tensor};
use crate::report::{Failure, Report};

fn e(i: usize) -> BasisElement {
    BasisElement::new(0, i)
}

fn ungraded(space: &GradedSpace) -> Result<()> {
    if space.degrees().any(|d| d != 0) {
        return Err(Error::Degree("space must be concentrated in degree 0".into()));
    }
    Ok(())
}

/// `(g, [,], [,]')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleLieAlgebra {
    pub space: GradedSpace,
    pub bracket: MultiMap,
    pub bracket2: MultiMap,
}

impl CompatibleLieAlgebra {
    /// Validates both Jacobi identities and the compatibility.
    pub fn new(bracket: MultiMap, bracket2: MultiMap) -> Result<Self> {
        let g = CompatibleLieAlgebra::unchecked(bracket, bracket2)?;
        let r = g.validate()?;
        if !r.passed {
            return Err(Error::Precondition(format!("not a compatible Lie algebra: {}", r.summary())));
        }
        Ok(g)
    }

    /// Shape checks only.
    pub fn unchecked(bracket: MultiMap, bracket2: MultiMap) -> Result<Self> {
        let space = bracket.domain().clone();
        ungraded(&space)?;
        for b in [&bracket, &bracket2] {
            if b.arity() != 2 || b.symmetry() != Symmetry::Skew || b.degree() != 0 {
                return Err(Error::Symmetry("a Lie bracket is a skew degree 0 map of arity 2".into()));
            }
            if b.domain() != &space || b.codomain() != &space {
                return Err(Error::Space("brackets live on different spaces".into()));
            }
        }
        Ok(CompatibleLieAlgebra { space, bracket, bracket2 })
    }

    pub fn abelian(dim: usize) -> Self {
        let g = GradedSpace::ungraded(dim);
        let z = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        CompatibleLieAlgebra { space: g, bracket: z.clone(), bracket2: z }
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    /// `[μ,μ]_NR = [μ',μ']_NR = [μ,μ']_NR = 0`.
    pub fn validate(&self) -> Result<Report> {
        let parts = [("jacobi", &self.bracket, &self.bracket), ("jacobi'", &self.bracket2, &self.bracket2), ("compatibility", &self.bracket, &self.bracket2)]
            .into_iter()
            .map(|(name, a, b)| {
                let r = nr_bracket(a, b)?;
                Ok(match r.entries().iter().next() {
                    Some((t, v)) => Report::fail(name, Failure { n: 3, tuple: t.clone(), residual: v.clone(), detail: None }, 3, Some(3)),
                    None => Report::pass(name, 3, Some(3)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Report::all("compatible-lie", parts))
    }

    pub fn bracket_of(&self, which: Which) -> &MultiMap {
        match which {
            Which::First => &self.bracket,
            Which::Second => &self.bracket2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

/// `(V, ρ, ρ')` with actions stored as tensors `g × V → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleRep {
    pub space: GradedSpace,
    pub action: Tensor,
    pub action2: Tensor,
}

fn commutator(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mul = |x: &[Vec<Scalar>], y: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
    };
    let (ab, ba) = (mul(a, b), mul(b, a));
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

impl CompatibleRep {
    pub fn new(g: &CompatibleLieAlgebra, dim: usize, action: Tensor, action2: Tensor) -> Result<Self> {
        let rep = CompatibleRep::unchecked(g, dim, action, action2)?;
        let r = rep.validate(g);
        if !r.passed {
            return Err(Error::Precondition(format!("not a representation: {}", r.summary())));
        }
        Ok(rep)
    }

    pub fn unchecked(g: &CompatibleLieAlgebra, dim: usize, action: Tensor, action2: Tensor) -> Result<Self> {
        for a in [&action, &action2] {
            if a.in_dims() != [g.dim(), dim] || a.out_dim() != dim {
                return Err(Error::Space(format!("an action must be a tensor {} x {dim} -> {dim}", g.dim())));
            }
        }
        Ok(CompatibleRep { space: GradedSpace::ungraded(dim), action, action2 })
    }

    pub fn trivial(g: &CompatibleLieAlgebra, dim: usize) -> Self {
        let z = Tensor::zeros(&[g.dim(), dim], dim);
        CompatibleRep { space: GradedSpace::ungraded(dim), action: z.clone(), action2: z }
    }

    pub fn adjoint(g: &CompatibleLieAlgebra) -> Self {
        let n = g.dim();
        let ad = |b: &MultiMap| Tensor::from_fn(&[n, n], n, |idx| b.eval_basis(&[e(idx[0]), e(idx[1])]).to_dense(&g.space));
        CompatibleRep { space: g.space.clone(), action: ad(&g.bracket), action2: ad(&g.bracket2) }
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn action_of(&self, which: Which) -> &Tensor {
        match which {
            Which::First => &self.action,
            Which::Second => &self.action2,
        }
    }

    /// `ρ(x)` as a matrix.
    pub fn matrix(&self, which: Which, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let a = self.action_of(which);
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| a.apply(&[x, &crate::multilinear::tensor::unit(n, j)])).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn act(&self, which: Which, x: BasisElement, v: &Vector) -> Vector {
        let a = self.action_of(which);
        let out = a.apply(&[&crate::multilinear::tensor::unit(a.in_dims()[0], x.index), &v.to_dense(&self.space)]);
        Vector::from_dense(&self.space, &out)
    }

    /// Both representation identities and the mixed one, on basis pairs.
    pub fn validate(&self, g: &CompatibleLieAlgebra) -> Report {
        let n = g.dim();
        let unit = |i| crate::multilinear::tensor::unit(n, i);
        let mat = |which, i: usize| self.matrix(which, &unit(i));
        let dense = |which: Which, i: usize, j: usize| g.bracket_of(which).eval_basis(&[e(i), e(j)]).to_dense(&g.space);
        let diff = |a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>| -> Vector {
            let mut v = Vector::zero();
            for (r, (x, y)) in a.iter().zip(&b).enumerate() {
                for (c, (p, q)) in x.iter().zip(y).enumerate() {
                    v.add_term(BasisElement::new(0, r * self.dim() + c), p - q);
                }
            }
            v
        };
        let add = |a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
            a.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
        };
        for i in 0..n {
            for j in 0..n {
                let checks = [
                    ("rho", self.matrix(Which::First, &dense(Which::First, i, j)), commutator(&mat(Which::First, i), &mat(Which::First, j))),
                    ("rho'", self.matrix(Which::Second, &dense(Which::Second, i, j)), commutator(&mat(Which::Second, i), &mat(Which::Second, j))),
                    (
                        "mixed",
                        add(self.matrix(Which::First, &dense(Which::Second, i, j)), self.matrix(Which::Second, &dense(Which::First, i, j))),
                        add(commutator(&mat(Which::First, i), &mat(Which::Second, j)), commutator(&mat(Which::Second, i), &mat(Which::First, j))),
                    ),
                ];
                for (name, lhs, rhs) in checks {
                    let r = diff(lhs, rhs);
                    if !r.is_zero() {
                        let f = Failure { n: 2, tuple: vec![e(i), e(j)], residual: r, detail: Some(format!("{name}; residual indexed by matrix entry")) };
                        return Report::fail("compatible-rep", f, 2, Some(2));
                    }
                }
            }
        }
        Report::pass("compatible-rep", 2, Some(2))
    }
}

/// An element of `C^n_c(g, V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CochainTuple {
    /// `v ∈ C⁰_c`.
    Zero(Vector),
    /// `n` skew maps `∧ⁿg → V`.
    Maps(Vec<MultiMap>),
}

impl CochainTuple {
    pub fn level(&self) -> usize {
        match self {
            CochainTuple::Zero(_) => 0,
            CochainTuple::Maps(m) => m.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CochainTuple::Zero(v) => v.is_zero(),
            CochainTuple::Maps(m) => m.iter().all(MultiMap::is_zero),
        }
    }

    pub fn zero(g: &CompatibleLieAlgebra, rep: &CompatibleRep, n: usize) -> Self {
        if n == 0 {
            CochainTuple::Zero(Vector::zero())
        } else {
            CochainTuple::Maps(vec![zero_cochain(g, rep, n); n])
        }
    }
}

pub fn zero_cochain(g: &CompatibleLieAlgebra, rep: &CompatibleRep, n: usize) -> MultiMap {
    MultiMap::new(g.space.clone(), rep.space.clone(), n, 0, Symmetry::Skew)
}

fn check_cochain(g: &CompatibleLieAlgebra, rep: &CompatibleRep, f: &MultiMap) -> Result<()> {
    if f.domain() != &g.space || f.codomain() != &rep.space {
        return Err(Error::Space("cochain must map ∧g to V".into()));
    }
    if f.symmetry() != Symmetry::Skew || f.degree() != 0 {
        return Err(Error::Symmetry("cochains are skew maps of degree 0".into()));
    }
    Ok(())
}

/// `∂f` for `f : ∧ⁿg → V`, `n ≥ 1`.
pub fn ce_differential(g: &CompatibleLieAlgebra, rep: &CompatibleRep, f: &MultiMap, which: Which) -> Result<MultiMap> {
    check_cochain(g, rep, f)?;
    let n = f.arity();
    let br = g.bracket_of(which);
    MultiMap::from_fn(&g.space, &rep.space, n + 1, 0, Symmetry::Skew, |x| {
        let mut out = Vector::zero();
        for i in 0..=n {
            let rest: Vec<BasisElement> = x.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, b)| *b).collect();
            let v = f.eval_basis(&rest);
            out.add_scaled(&rep.act(which, x[i], &v), &sign_pow(i as i64));
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let b = br.eval_basis(&[x[i], x[j]]);
                if b.is_zero() {
                    continue;
                }
                let mut args = vec![b];
                args.extend(x.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, b)| Vector::basis(*b)));
                out.add_scaled(&f.eval(&args), &sign_pow((i + j) as i64));
            }
        }
        out
    })
}

/// `∂v : x ↦ ρ(x)v`.
pub fn ce_differential0(g: &CompatibleLieAlgebra, rep: &CompatibleRep, v: &Vector, which: Which) -> Result<MultiMap> {
    MultiMap::from_fn(&g.space, &rep.space, 1, 0, Symmetry::Skew, |x| rep.act(which, x[0], v))
}

/// Kernel of `v ↦ (ρ(x)v − ρ'(x)v)_x`.
pub fn c0_basis(g: &CompatibleLieAlgebra, rep: &CompatibleRep) -> Vec<Vector> {
    let (n, m) = (g.dim(), rep.dim());
    let mut rows = Vec::new();
    for x in 0..n {
        let u = crate::multilinear::tensor::unit(n, x);
        let a = rep.matrix(Which::First, &u);
        let b = rep.matrix(Which::Second, &u);
        for i in 0..m {
            rows.push((0..m).map(|j| &a[i][j] - &b[i][j]).collect::<Vec<_>>());
        }
    }
    if rows.is_empty() {
        return rep.space.basis().into_iter().map(Vector::basis).collect();
    }
    kernel_basis(&Matrix::from_rows(&rows)).iter().map(|k| Vector::from_dense(&rep.space, k)).collect()
}

pub fn in_c0(g: &CompatibleLieAlgebra, rep: &CompatibleRep, v: &Vector) -> bool {
    g.space.basis().into_iter().all(|x| rep.act(Which::First, x, v) == rep.act(Which::Second, x, v))
}

/// `∂_c(f_1..f_n) = (∂f_1, .., ∂f_i + ∂'f_{i−1}, .., ∂'f_n)`.
pub fn delta_c(g: &CompatibleLieAlgebra, rep: &CompatibleRep, t: &CochainTuple) -> Result<CochainTuple> {
    match t {
        CochainTuple::Zero(v) => {
            if !in_c0(g, rep, v) {
                return Err(Error::Precondition("element is not in C^0_c: the two actions differ on it".into()));
            }
            Ok(CochainTuple::Maps(vec![ce_differential0(g, rep, v, Which::First)?]))
        }
        CochainTuple::Maps(fs) => {
            let n = fs.len();
            if fs.iter().any(|f| f.arity() != n) {
                return Err(Error::Arity { expected: n, got: fs.iter().map(MultiMap::arity).find(|a| *a != n).unwrap_or(n) });
            }
            let d1 = fs.iter().map(|f| ce_differential(g, rep, f, Which::First)).collect::<Result<Vec<_>>>()?;
            let d2 = fs.iter().map(|f| ce_differential(g, rep, f, Which::Second)).collect::<Result<Vec<_>>>()?;
            let mut out = vec![zero_cochain(g, rep, n + 1); n + 1];
            for i in 0..n {
                out[i].add_assign(&d1[i])?;
                out[i + 1].add_assign(&d2[i])?;
            }
            Ok(CochainTuple::Maps(out))
        }
    }
}

/// Coordinates of `Hom(∧ⁿg, V)`: canonical tuple, then output basis element.
fn hom_basis(g: &CompatibleLieAlgebra, rep: &CompatibleRep, n: usize) -> Vec<(Vec<BasisElement>, BasisElement)> {
    let outs = rep.space.basis();
    canonical_tuples(&g.space, n, Symmetry::Skew).into_iter().flat_map(|t| outs.iter().map(move |o| (t.clone(), *o))).collect()
}

fn flatten(t: &CochainTuple, hom: &[(Vec<BasisElement>, BasisElement)], rep: &CompatibleRep) -> BTreeMap<usize, Scalar> {
    let mut col = BTreeMap::new();
    match t {
        CochainTuple::Zero(v) => {
            for (b, c) in v.iter() {
                col.insert(rep.space.flat_index(*b), c.clone());
            }
        }
        CochainTuple::Maps(fs) => {
            for (s, f) in fs.iter().enumerate() {
                for (k, (tu, o)) in hom.iter().enumerate() {
                    let c = f.eval_basis(tu).coeff(*o);
                    if !c.is_zero() {
                        col.insert(s * hom.len() + k, c);
                    }
                }
            }
        }
    }
    col
}

fn basis_cochains(g: &CompatibleLieAlgebra, rep: &CompatibleRep, n: usize) -> Vec<CochainTuple> {
    if n == 0 {
        return c0_basis(g, rep).into_iter().map(CochainTuple::Zero).collect();
    }
    let hom = hom_basis(g, rep, n);
    let mut out = Vec::new();
    for s in 0..n {
        for (t, o) in &hom {
            let mut f = zero_cochain(g, rep, n);
            f.add_entry(t, &Vector::basis(*o)).expect("well formed");
            let mut slots = vec![zero_cochain(g, rep, n); n];
            slots[s] = f;
            out.push(CochainTuple::Maps(slots));
        }
    }
    out
}

/// Dimension of `C^n_c(g, V)`.
pub fn cochain_dim(g: &CompatibleLieAlgebra, rep: &CompatibleRep, n: usize) -> usize {
    if n == 0 {
        c0_basis(g, rep).len()
    } else {
        n * hom_basis(g, rep, n).len()
    }
}

/// Matrix of `∂_c : C^n_c → C^{n+1}_c` in the bases above.
pub fn delta_c_matrix(g: &CompatibleLieAlgebra, rep: &CompatibleRep, n: usize) -> Result<Matrix> {
    let hom = hom_basis(g, rep, n + 1);
    let cols = basis_cochains(g, rep, n)
        .par_iter()
        .map(|b| Ok(flatten(&delta_c(g, rep, b)?, &hom, rep)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns((n + 1) * hom.len(), &cols))
}

/// `dim H^n_c` for `n = 0..=n_max`.
pub fn cohomology_dims(g: &CompatibleLieAlgebra, rep: &CompatibleRep, n_max: usize) -> Result<Vec<usize>> {
    let ranks = (0..=n_max).map(|n| delta_c_matrix(g, rep, n).map(|m| rank(&m))).collect::<Result<Vec<_>>>()?;
    Ok((0..=n_max)
        .map(|n| {
            let before = if n == 0 { 0 } else { ranks[n - 1] };
            cochain_dim(g, rep, n) - ranks[n] - before
        })
        .collect())
}

/// `(f, f+f', .., f+f', f')` of level `n ≥ 2`, after checking the three
/// cocycle conditions.
pub fn induced_cocycle(g: &CompatibleLieAlgebra, rep: &CompatibleRep, f: &MultiMap, f2: &MultiMap) -> Result<CochainTuple> {
    let n = f.arity();
    if n < 2 || f2.arity() != n {
        return Err(Error::Arity { expected: n.max(2), got: f2.arity() });
    }
    let df = ce_differential(g, rep, f, Which::First)?;
    let d2f2 = ce_differential(g, rep, f2, Which::Second)?;
    let mixed = ce_differential(g, rep, f2, Which::First)?.sum(&ce_differential(g, rep, f, Which::Second)?)?;
    for (name, r) in [("∂f", &df), ("∂'f'", &d2f2), ("∂f' + ∂'f", &mixed)] {
        if let Some((t, v)) = r.entries().iter().next() {
            return Err(Error::Precondition(format!("{name} is nonzero at {t:?}: {v:?}")));
        }
    }
    let s = f.sum(f2)?;
    let mut slots = vec![f.clone()];
    slots.extend(std::iter::repeat_n(s, n - 2));
    slots.push(f2.clone());
    Ok(CochainTuple::Maps(slots))
}

/// `δ_c = ⟦(D, D'), −⟧`, truncated at `arity_cap`.
pub fn linfty_delta_c(pair: &CompatiblePair, t: &CoderTuple, arity_cap: Option<usize>) -> Result<CoderTuple> {
    let dd = CoderTuple::pair(&to_coder(&pair.first)?, &to_coder(&pair.second)?)?;
    crate::homotopy::tuple_bracket(&dd, t, arity_cap)
}

/// Basis of symmetric maps `S^k V → V` of the given degree, `1 ≤ k ≤ cap`.
pub fn coder_basis(v: &GradedSpace, degree: i64, cap: usize) -> Vec<(Vec<BasisElement>, BasisElement)> {
    let mut out = Vec::new();
    for k in 1..=cap {
        for t in canonical_tuples(v, k, Symmetry::Symmetric) {
            let d = t.iter().map(|b| b.degree).sum::<i64>() + degree;
            for o in v.basis_in_degree(d) {
                out.push((t.clone(), o));
            }
        }
    }
    out
}

/// Largest arity carrying a nonzero symmetric map of the given degree, or
/// `None` when there are such maps in every arity.
pub fn max_coder_arity(v: &GradedSpace, degree: i64) -> Option<usize> {
    let (Some(a), Some(b)) = (v.degrees().next(), v.degrees().next_back()) else { return Some(0) };
    // need k·x + degree ∈ [a, b] for some x in [a, b]
    if b < 0 {
        Some((degree - a).div_euclid(-b).max(0) as usize)
    } else if a > 0 {
        Some((b - degree).div_euclid(a).max(0) as usize)
    } else {
        None
    }
}

fn coder_from(v: &GradedSpace, degree: i64, t: &[BasisElement], o: BasisElement) -> CoderRep {
    let mut m = MultiMap::endo(v, t.len(), degree, Symmetry::Symmetric);
    m.add_entry(t, &Vector::basis(o)).expect("well formed");
    CoderRep::from_components(v, degree, [m]).expect("well formed")
}

/// Basis of the truncated `C^n_c(L, L)`: `n` slots of degree `n − 1` coderivations.
pub fn linfty_cochain_basis(v: &GradedSpace, n: usize, cap: usize) -> Vec<CoderTuple> {
    let degree = n as i64 - 1;
    let b = coder_basis(v, degree, cap);
    let mut out = Vec::new();
    for s in 0..n {
        for (t, o) in &b {
            let mut slots = vec![CoderRep::zero(v, degree); n];
            slots[s] = coder_from(v, degree, t, *o);
            out.push(CoderTuple { slots });
        }
    }
    out
}

/// Coordinates of a cochain tuple against `linfty_cochain_basis`.
pub fn linfty_flatten(t: &CoderTuple, cap: usize) -> BTreeMap<usize, Scalar> {
    let Some(first) = t.slots.first() else { return BTreeMap::new() };
    let b = coder_basis(first.space(), t.degree(), cap);
    let mut col = BTreeMap::new();
    for (s, slot) in t.slots.iter().enumerate() {
        for (k, (tu, o)) in b.iter().enumerate() {
            let c = slot.component(tu.len()).map_or_else(Scalar::zero, |m| m.eval_basis(tu).coeff(*o));
            if !c.is_zero() {
                col.insert(s * b.len() + k, c);
            }
        }
    }
    col
}

pub fn linfty_cochain_from(v: &GradedSpace, n: usize, cap: usize, coords: &[Scalar]) -> CoderTuple {
    let degree = n as i64 - 1;
    let b = coder_basis(v, degree, cap);
    let mut slots = vec![CoderRep::zero(v, degree); n];
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (tu, o) = &b[i % b.len()];
        slots[i / b.len()].add_scaled_assign(&coder_from(v, degree, tu, *o), c).expect("same shape");
    }
    CoderTuple { slots }
}

pub fn linfty_delta_matrix(pair: &CompatiblePair, n: usize, cap: usize) -> Result<Matrix> {
    let v = pair.space().desuspend();
    let dd = CoderTuple::pair(&to_coder(&pair.first)?, &to_coder(&pair.second)?)?;
    let rows = (n + 1) * coder_basis(&v, n as i64, cap).len();
    let cols = linfty_cochain_basis(&v, n, cap)
        .par_iter()
        .map(|b| Ok(linfty_flatten(&crate::homotopy::tuple_bracket(&dd, b, Some(cap))?, cap)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(rows, &cols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinftyCohomology {
    /// `dim H^n_c` for `n = 1..=n_max`.
    pub dims: Vec<usize>,
    pub arity_cap: usize,
    /// Whether no cochain of arity above the cap exists in the levels used.
    pub exact: bool,
}

impl LinftyCohomology {
    pub fn truncation(&self) -> String {
        if self.exact {
            "exact".into()
        } else {
            format!("arity<={}", self.arity_cap)
        }
    }
}

/// Whether levels `1..=top` have no cochains of arity above `cap`.
pub fn linfty_truncation_exact(v: &GradedSpace, top: usize, cap: usize) -> bool {
    (1..=top).all(|n| max_coder_arity(v, n as i64 - 1).is_some_and(|k| k <= cap))
}

/// Dimensions of the arity-truncated complex of a compatible L∞-algebra.
pub fn linfty_cohomology_dims(pair: &CompatiblePair, n_max: usize, arity_cap: usize) -> Result<LinftyCohomology> {
    let v = pair.space().desuspend();
    let ranks = (1..=n_max).map(|n| linfty_delta_matrix(pair, n, arity_cap).map(|m| rank(&m))).collect::<Result<Vec<_>>>()?;
    let dims = (1..=n_max)
        .map(|n| {
            let c = n * coder_basis(&v, n as i64 - 1, arity_cap).len();
            let before = if n == 1 { 0 } else { ranks[n - 2] };
            c - ranks[n - 1] - before
        })
        .collect();
    Ok(LinftyCohomology { dims, arity_cap, exact: linfty_truncation_exact(&v, n_max + 1, arity_cap) })
}

/// The compatible L∞-algebra with `l_2 = [,]` and `l'_2 = [,]'`.
pub fn as_linfty(g: &CompatibleLieAlgebra) -> Result<CompatiblePair> {
    use crate::homotopy::{Flavor, HomotopyStructure};
    let a = HomotopyStructure::from_ops(&g.space, Flavor::Linfty, [g.bracket.clone()])?;
    let b = HomotopyStructure::from_ops(&g.space, Flavor::Linfty, [g.bracket2.clone()])?;
    CompatiblePair::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn bracket(dim: usize, table: &[((usize, usize), usize)]) -> MultiMap {
        let g = GradedSpace::ungraded(dim);
        let mut m = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        for ((a, b), c) in table {
            m.add_entry(&[e(*a), e(*b)], &Vector::basis(e(*c))).unwrap();
        }
        m
    }

    fn a1() -> CompatibleLieAlgebra {
        CompatibleLieAlgebra::new(bracket(2, &[((0, 1), 0)]), bracket(2, &[((0, 1), 1)])).unwrap()
    }

    #[test]
    fn ce_example() {
        let g = a1();
        let k = CompatibleRep::trivial(&g, 1);
        let mut f = zero_cochain(&g, &k, 1);
        f.add_entry(&[e(0)], &Vector::basis(e(0))).unwrap();
        let df = ce_differential(&g, &k, &f, Which::First).unwrap();
        assert_eq!(df.eval_basis(&[e(0), e(1)]), Vector::term(e(0), int(-1)));
    }

    #[test]
    fn abelian_dims() {
        let g = CompatibleLieAlgebra::abelian(2);
        let k = CompatibleRep::trivial(&g, 1);
        assert_eq!(cohomology_dims(&g, &k, 3).unwrap(), vec![1, 2, 2, 0]);
        let g1 = CompatibleLieAlgebra::abelian(1);
        assert_eq!(cohomology_dims(&g1, &CompatibleRep::trivial(&g1, 1), 1).unwrap(), vec![1, 1]);
    }

    #[test]
    fn c0_of_identity_action() {
        let g = CompatibleLieAlgebra::abelian(1);
        let id = Tensor::from_fn(&[1, 1], 1, |_| vec![int(1)]);
        let rep = CompatibleRep::new(&g, 1, Tensor::zeros(&[1, 1], 1), id).unwrap();
        assert!(c0_basis(&g, &rep).is_empty());
        assert!(delta_c(&g, &rep, &CochainTuple::Zero(Vector::basis(e(0)))).is_err());
    }

    #[test]
    fn bad_bracket_rejected() {
        let bad = bracket(3, &[((0, 1), 0), ((1, 2), 1)]);
        assert!(CompatibleLieAlgebra::new(bad.clone(), bad).is_err());
    }

    #[test]
    fn coder_arity_window() {
        assert_eq!(max_coder_arity(&GradedSpace::new([(-1, 2)]), 1), Some(2));
        assert_eq!(max_coder_arity(&GradedSpace::new([(-1, 2)]), 0), Some(1));
        assert_eq!(max_coder_arity(&GradedSpace::new([(-2, 1), (-1, 1)]), 1), Some(3));
        assert_eq!(max_coder_arity(&GradedSpace::new([(-1, 1), (0, 1)]), 1), None);
    }
}
