//! 2-term compatible L∞-algebras, their morphisms, crossed modules, skeletal
//! triples and compatible Lie 2-algebra data.

use num_traits::Zero;
use rayon::prelude::*;

use crate::cohomology::{ce_differential, CompatibleLieAlgebra, CompatibleRep, Which};
use crate::error::{Error, Result};
use crate::exactla::{int, kernel_basis, solve, Matrix, Scalar};
use crate::graded::{BasisElement, GradedSpace, Vector};
use crate::homotopy::{CompatiblePair, Flavor, HomotopyStructure};
use crate::multilinear::tensor::{unit, vadd, vscale, vsub, zeros, Dense};
use crate::multilinear::{MultiMap, Symmetry, Tensor};
use crate::report::{Failure, Report};

/// One of the two structures `(l_1, l_2, l_3)` on `L_{-1} ⊕ L_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermHalf {
    /// `L_{-1} → L_0`.
    pub l1: Tensor,
    /// `L_0 × L_0 → L_0`.
    pub l2_00: Tensor,
    /// `L_0 × L_{-1} → L_{-1}`, i.e. `l_2(x, h)`.
    pub l2_0m1: Tensor,
    /// `L_0³ → L_{-1}`.
    pub l3: Tensor,
}

impl TwoTermHalf {
    pub fn zero(m1: usize, m0: usize) -> Self {
        TwoTermHalf {
            l1: Tensor::zeros(&[m1], m0),
            l2_00: Tensor::zeros(&[m0, m0], m0),
            l2_0m1: Tensor::zeros(&[m0, m1], m1),
            l3: Tensor::zeros(&[m0, m0, m0], m1),
        }
    }

    fn dims(&self) -> (usize, usize) {
        (self.l1.in_dims()[0], self.l1.out_dim())
    }

    fn check_shape(&self, m1: usize, m0: usize) -> Result<()> {
        let ok = self.l1.in_dims() == [m1]
            && self.l1.out_dim() == m0
            && self.l2_00.in_dims() == [m0, m0]
            && self.l2_00.out_dim() == m0
            && self.l2_0m1.in_dims() == [m0, m1]
            && self.l2_0m1.out_dim() == m1
            && self.l3.in_dims() == [m0, m0, m0]
            && self.l3.out_dim() == m1;
        if !ok {
            return Err(Error::Space(format!("2-term slots do not fit dimensions ({m1}, {m0})")));
        }
        if !self.l2_00.is_skew() {
            return Err(Error::Symmetry("l2 on L0 x L0 must be skew".into()));
        }
        if !self.l3.is_skew() {
            return Err(Error::Symmetry("l3 must be skew".into()));
        }
        Ok(())
    }

    fn l1v(&self, h: &[Scalar]) -> Dense {
        self.l1.apply(&[h])
    }

    fn b00(&self, x: &[Scalar], y: &[Scalar]) -> Dense {
        self.l2_00.apply(&[x, y])
    }

    fn b0m(&self, x: &[Scalar], h: &[Scalar]) -> Dense {
        self.l2_0m1.apply(&[x, h])
    }

    /// `l_2(h, x) = −l_2(x, h)`.
    fn bm0(&self, h: &[Scalar], x: &[Scalar]) -> Dense {
        vscale(&self.b0m(x, h), &int(-1))
    }

    fn t3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Dense {
        self.l3.apply(&[x, y, z])
    }

    pub fn scaled(&self, c: &Scalar) -> TwoTermHalf {
        TwoTermHalf { l1: self.l1.scaled(c), l2_00: self.l2_00.scaled(c), l2_0m1: self.l2_0m1.scaled(c), l3: self.l3.scaled(c) }
    }

    pub fn add(&self, o: &TwoTermHalf) -> TwoTermHalf {
        TwoTermHalf { l1: self.l1.add(&o.l1), l2_00: self.l2_00.add(&o.l2_00), l2_0m1: self.l2_0m1.add(&o.l2_0m1), l3: self.l3.add(&o.l3) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermStructure {
    pub dim_m1: usize,
    pub dim_0: usize,
    pub first: TwoTermHalf,
    pub second: TwoTermHalf,
}

fn h_el(i: usize) -> BasisElement {
    BasisElement::new(-1, i)
}

fn x_el(i: usize) -> BasisElement {
    BasisElement::new(0, i)
}

fn residual(v: &[Scalar], degree: i64) -> Vector {
    let mut out = Vector::zero();
    for (i, c) in v.iter().enumerate() {
        out.add_term(BasisElement::new(degree, i), c.clone());
    }
    out
}

/// Bilinear form whose diagonal gives the five 2-term identities and whose
/// symmetrization gives the mixed ones: outer maps from `a`, inner from `b`.
struct Identities<'a> {
    a: &'a TwoTermHalf,
    b: &'a TwoTermHalf,
}

impl Identities<'_> {
    fn e1(&self, x: &[Scalar], h: &[Scalar]) -> Dense {
        vsub(&self.a.l1v(&self.b.b0m(x, h)), &self.a.b00(x, &self.b.l1v(h)))
    }

    fn e2(&self, h: &[Scalar], k: &[Scalar]) -> Dense {
        vsub(&self.a.b0m(&self.b.l1v(h), k), &self.a.bm0(h, &self.b.l1v(k)))
    }

    fn e3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Dense {
        let (a, b) = (self.a, self.b);
        let mut r = a.l1v(&b.t3(x, y, z));
        r = vadd(&r, &a.b00(&b.b00(x, y), z));
        r = vsub(&r, &a.b00(&b.b00(x, z), y));
        vsub(&r, &a.b00(x, &b.b00(y, z)))
    }

    fn e4(&self, h: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Dense {
        let (a, b) = (self.a, self.b);
        let mut r = a.t3(&b.l1v(h), x, y);
        r = vadd(&r, &a.b0m(&b.b00(x, y), h));
        r = vsub(&r, &a.bm0(&b.b0m(x, h), y));
        vsub(&r, &a.b0m(x, &b.b0m(y, h)))
    }

    fn e5(&self, w: &[Scalar], x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Dense {
        let (a, b) = (self.a, self.b);
        let mut l = a.bm0(&b.t3(w, x, y), z);
        l = vadd(&l, &a.bm0(&b.t3(w, y, z), x));
        l = vsub(&l, &a.bm0(&b.t3(w, x, z), y));
        l = vsub(&l, &a.bm0(&b.t3(x, y, z), w));
        let mut r = a.t3(&b.b00(w, x), y, z);
        r = vsub(&r, &a.t3(&b.b00(w, y), x, z));
        r = vadd(&r, &a.t3(&b.b00(w, z), x, y));
        r = vadd(&r, &a.t3(&b.b00(x, y), w, z));
        r = vsub(&r, &a.t3(&b.b00(x, z), w, y));
        r = vadd(&r, &a.t3(&b.b00(y, z), w, x));
        vsub(&l, &r)
    }
}

fn polarized<F>(a: &TwoTermHalf, b: &TwoTermHalf, mixed: bool, f: F) -> Dense
where
    F: Fn(&Identities) -> Dense,
{
    let ab = f(&Identities { a, b });
    if mixed {
        vadd(&ab, &f(&Identities { a: b, b: a }))
    } else {
        ab
    }
}

/// All 2-term identities for `(a, b)`; `mixed` symmetrizes.
fn check_identities(name: &str, a: &TwoTermHalf, b: &TwoTermHalf, mixed: bool) -> Report {
    let (m1, m0) = a.dims();
    let u0 = |i| unit(m0, i);
    let u1 = |i| unit(m1, i);
    let fail = |id: &str, n: usize, t: Vec<BasisElement>, r: &[Scalar], deg: i64| {
        Report::fail(name, Failure { n, tuple: t, residual: residual(r, deg), detail: Some(id.into()) }, n, Some(4))
    };
    let zero = |v: &[Scalar]| v.iter().all(Zero::is_zero);
    for x in 0..m0 {
        for h in 0..m1 {
            let r = polarized(a, b, mixed, |s| s.e1(&u0(x), &u1(h)));
            if !zero(&r) {
                return fail("l1 l2(x,h) = l2(x, l1 h)", 2, vec![h_el(h), x_el(x)], &r, 0);
            }
        }
    }
    for h in 0..m1 {
        for k in 0..m1 {
            let r = polarized(a, b, mixed, |s| s.e2(&u1(h), &u1(k)));
            if !zero(&r) {
                return fail("l2(l1 h, k) = l2(h, l1 k)", 2, vec![h_el(h), h_el(k)], &r, -1);
            }
        }
    }
    for x in 0..m0 {
        for y in 0..m0 {
            for z in 0..m0 {
                let r = polarized(a, b, mixed, |s| s.e3(&u0(x), &u0(y), &u0(z)));
                if !zero(&r) {
                    return fail("l1 l3 = Jacobiator", 3, vec![x_el(x), x_el(y), x_el(z)], &r, 0);
                }
            }
        }
    }
    for h in 0..m1 {
        for x in 0..m0 {
            for y in 0..m0 {
                let r = polarized(a, b, mixed, |s| s.e4(&u1(h), &u0(x), &u0(y)));
                if !zero(&r) {
                    return fail("l3(l1 h, x, y) = Jacobiator", 3, vec![h_el(h), x_el(x), x_el(y)], &r, -1);
                }
            }
        }
    }
    for w in 0..m0 {
        for x in 0..m0 {
            for y in 0..m0 {
                for z in 0..m0 {
                    let r = polarized(a, b, mixed, |s| s.e5(&u0(w), &u0(x), &u0(y), &u0(z)));
                    if !zero(&r) {
                        return fail("l3 coherence", 4, vec![x_el(w), x_el(x), x_el(y), x_el(z)], &r, -1);
                    }
                }
            }
        }
    }
    Report::pass(name, 4, Some(4))
}

impl TwoTermStructure {
    pub fn new(dim_m1: usize, dim_0: usize, first: TwoTermHalf, second: TwoTermHalf) -> Result<Self> {
        first.check_shape(dim_m1, dim_0)?;
        second.check_shape(dim_m1, dim_0)?;
        Ok(TwoTermStructure { dim_m1, dim_0, first, second })
    }

    pub fn zero(dim_m1: usize, dim_0: usize) -> Self {
        let z = TwoTermHalf::zero(dim_m1, dim_0);
        TwoTermStructure { dim_m1, dim_0, first: z.clone(), second: z }
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::new([(-1, self.dim_m1), (0, self.dim_0)])
    }

    pub fn is_strict(&self) -> bool {
        self.first.l3.is_zero() && self.second.l3.is_zero()
    }

    pub fn is_skeletal(&self) -> bool {
        self.first.l1.is_zero() && self.second.l1.is_zero()
    }
}

pub fn check_two_term_half(h: &TwoTermHalf) -> Report {
    check_identities("2-term", h, h, false)
}

/// Each half and the mixed identities.
pub fn check_two_term(s: &TwoTermStructure) -> Report {
    Report::all(
        "2-term-comp",
        vec![
            check_identities("first", &s.first, &s.first, false),
            check_identities("second", &s.second, &s.second, false),
            check_identities("mixed", &s.first, &s.second, true),
        ],
    )
}

fn half_to_structure(space: &GradedSpace, h: &TwoTermHalf) -> Result<HomotopyStructure> {
    let (m1, m0) = h.dims();
    let mut l1 = MultiMap::endo(space, 1, 1, Symmetry::Skew);
    for i in 0..m1 {
        l1.add_entry(&[h_el(i)], &residual(h.l1.at(&[i]), 0))?;
    }
    let mut l2 = MultiMap::endo(space, 2, 0, Symmetry::Skew);
    for a in 0..m0 {
        for b in a + 1..m0 {
            l2.add_entry(&[x_el(a), x_el(b)], &residual(h.l2_00.at(&[a, b]), 0))?;
        }
        for k in 0..m1 {
            l2.add_entry(&[h_el(k), x_el(a)], &residual(h.l2_0m1.at(&[a, k]), -1).neg())?;
        }
    }
    let mut l3 = MultiMap::endo(space, 3, -1, Symmetry::Skew);
    for a in 0..m0 {
        for b in a + 1..m0 {
            for c in b + 1..m0 {
                l3.add_entry(&[x_el(a), x_el(b), x_el(c)], &residual(h.l3.at(&[a, b, c]), -1))?;
            }
        }
    }
    HomotopyStructure::from_ops(space, Flavor::Linfty, [l1, l2, l3])
}

/// The structure as a compatible L∞-algebra on degrees `{−1, 0}`.
pub fn embed(s: &TwoTermStructure) -> Result<CompatiblePair> {
    let space = s.space();
    CompatiblePair::new(half_to_structure(&space, &s.first)?, half_to_structure(&space, &s.second)?)
}

fn dense_of(v: &Vector, degree: i64, n: usize) -> Dense {
    (0..n).map(|i| v.coeff(BasisElement::new(degree, i))).collect()
}

fn structure_to_half(h: &HomotopyStructure, m1: usize, m0: usize) -> TwoTermHalf {
    let l1 = h.op_or_zero(1);
    let l2 = h.op_or_zero(2);
    let l3 = h.op_or_zero(3);
    TwoTermHalf {
        l1: Tensor::from_fn(&[m1], m0, |i| dense_of(&l1.eval_basis(&[h_el(i[0])]), 0, m0)),
        l2_00: Tensor::from_fn(&[m0, m0], m0, |i| dense_of(&l2.eval_basis(&[x_el(i[0]), x_el(i[1])]), 0, m0)),
        l2_0m1: Tensor::from_fn(&[m0, m1], m1, |i| dense_of(&l2.eval_basis(&[x_el(i[0]), h_el(i[1])]), -1, m1)),
        l3: Tensor::from_fn(&[m0, m0, m0], m1, |i| dense_of(&l3.eval_basis(&[x_el(i[0]), x_el(i[1]), x_el(i[2])]), -1, m1)),
    }
}

/// Inverse of `embed`; operations of arity above 3 must vanish.
pub fn from_pair(p: &CompatiblePair) -> Result<TwoTermStructure> {
    let space = p.space();
    if space.degrees().any(|d| d != -1 && d != 0) {
        return Err(Error::Degree("a 2-term structure lives in degrees -1 and 0".into()));
    }
    if p.max_arity() > 3 {
        return Err(Error::Arity { expected: 3, got: p.max_arity() });
    }
    let (m1, m0) = (space.dim(-1), space.dim(0));
    Ok(TwoTermStructure { dim_m1: m1, dim_0: m0, first: structure_to_half(&p.first, m1, m0), second: structure_to_half(&p.second, m1, m0) })
}

/// `(L, l, l_2 + l'_2, 2(l_3 + l'_3))` for `l_1 = l'_1 = l`.
pub fn remark_sum(s: &TwoTermStructure) -> Result<TwoTermHalf> {
    if s.first.l1 != s.second.l1 {
        return Err(Error::Precondition("needs l1 = l1'".into()));
    }
    Ok(TwoTermHalf {
        l1: s.first.l1.clone(),
        l2_00: s.first.l2_00.add(&s.second.l2_00),
        l2_0m1: s.first.l2_0m1.add(&s.second.l2_0m1),
        l3: s.first.l3.add(&s.second.l3).scaled(&int(2)),
    })
}

// ---------------------------------------------------------------------------
// tensors and maps on ungraded spaces

/// A skew (or plain) tensor on ungraded spaces as a `MultiMap`.
pub fn tensor_to_map(t: &Tensor, domain: &GradedSpace, codomain: &GradedSpace, symmetry: Symmetry) -> Result<MultiMap> {
    let k = t.arity();
    MultiMap::from_fn(domain, codomain, k, 0, symmetry, |x| {
        let idx: Vec<usize> = x.iter().map(|b| b.index).collect();
        residual(t.at(&idx), 0)
    })
}

pub fn map_to_tensor(m: &MultiMap) -> Tensor {
    let n = m.domain().total_dim();
    let out = m.codomain().total_dim();
    Tensor::from_fn(&vec![n; m.arity()], out, |idx| {
        let args: Vec<BasisElement> = idx.iter().map(|i| x_el(*i)).collect();
        dense_of(&m.eval_basis(&args), 0, out)
    })
}

fn lie_from_tensors(b: &Tensor, b2: &Tensor) -> Result<CompatibleLieAlgebra> {
    let g = GradedSpace::ungraded(b.out_dim());
    CompatibleLieAlgebra::new(tensor_to_map(b, &g, &g, Symmetry::Skew)?, tensor_to_map(b2, &g, &g, Symmetry::Skew)?)
}

// ---------------------------------------------------------------------------
// crossed modules

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub g: CompatibleLieAlgebra,
    pub h: CompatibleLieAlgebra,
    pub t: Tensor,
    pub t2: Tensor,
    pub alpha: Tensor,
    pub alpha2: Tensor,
}

impl CrossedModule {
    pub fn new(g: CompatibleLieAlgebra, h: CompatibleLieAlgebra, t: Tensor, t2: Tensor, alpha: Tensor, alpha2: Tensor) -> Result<Self> {
        let (dg, dh) = (g.dim(), h.dim());
        for m in [&t, &t2] {
            if m.in_dims() != [dg] || m.out_dim() != dh {
                return Err(Error::Space("t must map g to h".into()));
            }
        }
        for a in [&alpha, &alpha2] {
            if a.in_dims() != [dh, dg] || a.out_dim() != dg {
                return Err(Error::Space("alpha must map h x g to g".into()));
            }
        }
        let c = CrossedModule { g, h, t, t2, alpha, alpha2 };
        let r = c.validate();
        if !r.passed {
            return Err(Error::Precondition(format!("not a crossed module: {}", r.summary())));
        }
        Ok(c)
    }

    /// Axioms (i)–(iv) and the homomorphism property of `t`, `t'`.
    pub fn validate(&self) -> Report {
        let (dg, dh) = (self.g.dim(), self.h.dim());
        let (gb1, gb2) = (map_to_tensor(&self.g.bracket), map_to_tensor(&self.g.bracket2));
        let (hb1, hb2) = (map_to_tensor(&self.h.bracket), map_to_tensor(&self.h.bracket2));
        let t = |m: &[Scalar]| self.t.apply(&[m]);
        let t2 = |m: &[Scalar]| self.t2.apply(&[m]);
        let al = |x: &[Scalar], m: &[Scalar]| self.alpha.apply(&[x, m]);
        let al2 = |x: &[Scalar], m: &[Scalar]| self.alpha2.apply(&[x, m]);
        let g1 = |m: &[Scalar], n: &[Scalar]| gb1.apply(&[m, n]);
        let g2 = |m: &[Scalar], n: &[Scalar]| gb2.apply(&[m, n]);
        let h1 = |x: &[Scalar], y: &[Scalar]| hb1.apply(&[x, y]);
        let h2 = |x: &[Scalar], y: &[Scalar]| hb2.apply(&[x, y]);
        let zero = |v: &[Scalar]| v.iter().all(Zero::is_zero);
        let fail = |what: &str, t: Vec<BasisElement>, r: &[Scalar], deg: i64| {
            Report::fail("crossed-module", Failure { n: t.len(), tuple: t, residual: residual(r, deg), detail: Some(what.into()) }, 3, Some(3))
        };
        let ug = |i| unit(dg, i);
        let uh = |i| unit(dh, i);
        for a in 0..dg {
            for b in 0..dg {
                let (m, n) = (ug(a), ug(b));
                let checks: [(&str, Dense, i64); 5] = [
                    ("t is a homomorphism", vsub(&t(&g1(&m, &n)), &h1(&t(&m), &t(&n))), 0),
                    ("t' is a homomorphism", vsub(&t2(&g2(&m, &n)), &h2(&t2(&m), &t2(&n))), 0),
                    ("(ii) alpha(t m, n) = [m, n]", vsub(&al(&t(&m), &n), &g1(&m, &n)), -1),
                    ("(ii) alpha'(t' m, n) = [m, n]'", vsub(&al2(&t2(&m), &n), &g2(&m, &n)), -1),
                    (
                        "(ii) mixed",
                        vadd(&vadd(&al(&t2(&m), &n), &al2(&t(&m), &n)), &vadd(&al(&t2(&n), &m), &al2(&t(&n), &m))),
                        -1,
                    ),
                ];
                for (what, r, deg) in checks {
                    if !zero(&r) {
                        return fail(what, vec![h_el(a), h_el(b)], &r, deg);
                    }
                }
            }
        }
        for x in 0..dh {
            for a in 0..dg {
                let (xv, m) = (uh(x), ug(a));
                let checks: [(&str, Dense); 3] = [
                    ("(i) t alpha(x, m) = [x, t m]", vsub(&t(&al(&xv, &m)), &h1(&xv, &t(&m)))),
                    ("(i) t' alpha'(x, m) = [x, t' m]'", vsub(&t2(&al2(&xv, &m)), &h2(&xv, &t2(&m)))),
                    ("(i) mixed", vsub(&vadd(&t(&al2(&xv, &m)), &t2(&al(&xv, &m))), &vadd(&h1(&xv, &t2(&m)), &h2(&xv, &t(&m))))),
                ];
                for (what, r) in checks {
                    if !zero(&r) {
                        return fail(what, vec![x_el(x), h_el(a)], &r, 0);
                    }
                }
            }
        }
        for x in 0..dh {
            for a in 0..dg {
                for b in 0..dg {
                    let (xv, m, n) = (uh(x), ug(a), ug(b));
                    let checks: [(&str, Dense); 3] = [
                        ("(iii) alpha derivation", vsub(&al(&xv, &g1(&m, &n)), &vadd(&g1(&al(&xv, &m), &n), &g1(&m, &al(&xv, &n))))),
                        ("(iii) alpha' derivation", vsub(&al2(&xv, &g2(&m, &n)), &vadd(&g2(&al2(&xv, &m), &n), &g2(&m, &al2(&xv, &n))))),
                        (
                            "(iii) mixed",
                            vsub(
                                &vadd(&al(&xv, &g2(&m, &n)), &al2(&xv, &g1(&m, &n))),
                                &vadd(
                                    &vadd(&g2(&al(&xv, &m), &n), &g1(&al2(&xv, &m), &n)),
                                    &vadd(&g2(&m, &al(&xv, &n)), &g1(&m, &al2(&xv, &n))),
                                ),
                            ),
                        ),
                    ];
                    for (what, r) in checks {
                        if !zero(&r) {
                            return fail(what, vec![x_el(x), h_el(a), h_el(b)], &r, -1);
                        }
                    }
                }
            }
        }
        for x in 0..dh {
            for y in 0..dh {
                for a in 0..dg {
                    let (xv, yv, m) = (uh(x), uh(y), ug(a));
                    let checks: [(&str, Dense); 3] = [
                        ("(iv) alpha action", vsub(&al(&h1(&xv, &yv), &m), &vsub(&al(&xv, &al(&yv, &m)), &al(&yv, &al(&xv, &m))))),
                        ("(iv) alpha' action", vsub(&al2(&h2(&xv, &yv), &m), &vsub(&al2(&xv, &al2(&yv, &m)), &al2(&yv, &al2(&xv, &m))))),
                        (
                            "(iv) mixed",
                            vsub(
                                &vadd(&al(&h2(&xv, &yv), &m), &al2(&h1(&xv, &yv), &m)),
                                &vsub(
                                    &vadd(&al(&xv, &al2(&yv, &m)), &al2(&xv, &al(&yv, &m))),
                                    &vadd(&al(&yv, &al2(&xv, &m)), &al2(&yv, &al(&xv, &m))),
                                ),
                            ),
                        ),
                    ];
                    for (what, r) in checks {
                        if !zero(&r) {
                            return fail(what, vec![x_el(x), x_el(y), h_el(a)], &r, -1);
                        }
                    }
                }
            }
        }
        Report::pass("crossed-module", 3, Some(3))
    }
}

/// `[h,k] := l_2(l_1 h, k)`, `[x,y]_h := l_2(x,y)`, `t = l_1`, `α = l_2`.
pub fn strict_to_crossed(s: &TwoTermStructure) -> Result<CrossedModule> {
    if !s.is_strict() {
        return Err(Error::Precondition("structure is not strict: l3 or l3' is nonzero".into()));
    }
    let g_br = |h: &TwoTermHalf| Tensor::from_fn(&[s.dim_m1, s.dim_m1], s.dim_m1, |i| h.b0m(&h.l1v(&unit(s.dim_m1, i[0])), &unit(s.dim_m1, i[1])));
    let g = lie_from_tensors(&g_br(&s.first), &g_br(&s.second))?;
    let h = lie_from_tensors(&s.first.l2_00, &s.second.l2_00)?;
    CrossedModule::new(g, h, s.first.l1.clone(), s.second.l1.clone(), s.first.l2_0m1.clone(), s.second.l2_0m1.clone())
}

pub fn crossed_to_strict(c: &CrossedModule) -> Result<TwoTermStructure> {
    let (dg, dh) = (c.g.dim(), c.h.dim());
    let half = |t: &Tensor, br: &MultiMap, al: &Tensor| TwoTermHalf {
        l1: t.clone(),
        l2_00: map_to_tensor(br),
        l2_0m1: al.clone(),
        l3: Tensor::zeros(&[dh, dh, dh], dg),
    };
    TwoTermStructure::new(dg, dh, half(&c.t, &c.h.bracket, &c.alpha), half(&c.t2, &c.h.bracket2, &c.alpha2))
}

// ---------------------------------------------------------------------------
// skeletal structures

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletalTriple {
    pub g: CompatibleLieAlgebra,
    pub rep: CompatibleRep,
    pub theta: MultiMap,
    pub theta2: MultiMap,
}

impl SkeletalTriple {
    pub fn new(g: CompatibleLieAlgebra, rep: CompatibleRep, theta: MultiMap, theta2: MultiMap) -> Result<Self> {
        let t = SkeletalTriple { g, rep, theta, theta2 };
        let r = t.validate()?;
        if !r.passed {
            return Err(Error::Precondition(format!("not an induced 3-cocycle: {}", r.summary())));
        }
        Ok(t)
    }

    /// `∂θ = 0`, `∂'θ' = 0`, `∂θ' + ∂'θ = 0`.
    pub fn validate(&self) -> Result<Report> {
        let (g, rep) = (&self.g, &self.rep);
        let d1 = ce_differential(g, rep, &self.theta, Which::First)?;
        let d2 = ce_differential(g, rep, &self.theta2, Which::Second)?;
        let dm = ce_differential(g, rep, &self.theta2, Which::First)?.sum(&ce_differential(g, rep, &self.theta, Which::Second)?)?;
        for (name, m) in [("∂θ", d1), ("∂'θ'", d2), ("∂θ' + ∂'θ", dm)] {
            if let Some((t, v)) = m.entries().iter().next() {
                return Ok(Report::fail("skeletal-cocycle", Failure { n: 4, tuple: t.clone(), residual: v.clone(), detail: Some(name.into()) }, 4, None));
            }
        }
        Ok(Report::pass("skeletal-cocycle", 4, None))
    }
}

pub fn skeletal_to_triple(s: &TwoTermStructure) -> Result<SkeletalTriple> {
    if !s.is_skeletal() {
        return Err(Error::Precondition("structure is not skeletal: l1 or l1' is nonzero".into()));
    }
    let g = lie_from_tensors(&s.first.l2_00, &s.second.l2_00)?;
    let rep = CompatibleRep::new(&g, s.dim_m1, s.first.l2_0m1.clone(), s.second.l2_0m1.clone())?;
    let theta = tensor_to_map(&s.first.l3, &g.space, &rep.space, Symmetry::Skew)?;
    let theta2 = tensor_to_map(&s.second.l3, &g.space, &rep.space, Symmetry::Skew)?;
    SkeletalTriple::new(g, rep, theta, theta2)
}

pub fn triple_to_skeletal(t: &SkeletalTriple) -> Result<TwoTermStructure> {
    let (m1, m0) = (t.rep.dim(), t.g.dim());
    let half = |br: &MultiMap, act: &Tensor, th: &MultiMap| TwoTermHalf {
        l1: Tensor::zeros(&[m1], m0),
        l2_00: map_to_tensor(br),
        l2_0m1: act.clone(),
        l3: map_to_tensor(th),
    };
    TwoTermStructure::new(m1, m0, half(&t.g.bracket, &t.rep.action, &t.theta), half(&t.g.bracket2, &t.rep.action2, &t.theta2))
}

// ---------------------------------------------------------------------------
// morphisms

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermMorphism {
    pub f_m1: Tensor,
    pub f0: Tensor,
    /// `L_0 × L_0 → M_{-1}`, skew.
    pub f: Tensor,
}

impl TwoTermMorphism {
    pub fn identity(s: &TwoTermStructure) -> Self {
        TwoTermMorphism { f_m1: Tensor::identity(s.dim_m1), f0: Tensor::identity(s.dim_0), f: Tensor::zeros(&[s.dim_0, s.dim_0], s.dim_m1) }
    }
}

/// `(g_{-1} f_{-1}, g_0 f_0, g ∘ (f_0 × f_0) + g_{-1} ∘ f)`.
pub fn compose_morphisms(g: &TwoTermMorphism, f: &TwoTermMorphism) -> Result<TwoTermMorphism> {
    if g.f_m1.in_dims()[0] != f.f_m1.out_dim() || g.f0.in_dims()[0] != f.f0.out_dim() {
        return Err(Error::Space("morphisms are not composable".into()));
    }
    let n0 = f.f0.in_dims()[0];
    let f_m1 = Tensor::from_fn(f.f_m1.in_dims(), g.f_m1.out_dim(), |i| g.f_m1.apply(&[f.f_m1.at(i)]));
    let f0 = Tensor::from_fn(f.f0.in_dims(), g.f0.out_dim(), |i| g.f0.apply(&[f.f0.at(i)]));
    let ff = Tensor::from_fn(&[n0, n0], g.f_m1.out_dim(), |i| {
        let a = g.f.apply(&[f.f0.at(&[i[0]]), f.f0.at(&[i[1]])]);
        vadd(&a, &g.f_m1.apply(&[f.f.at(i)]))
    });
    Ok(TwoTermMorphism { f_m1, f0, f: ff })
}

fn check_morphism_half(name: &str, mor: &TwoTermMorphism, l: &TwoTermHalf, m: &TwoTermHalf) -> Report {
    let (l1d, l0d) = l.dims();
    let f0 = |x: &[Scalar]| mor.f0.apply(&[x]);
    let fm = |h: &[Scalar]| mor.f_m1.apply(&[h]);
    let f = |x: &[Scalar], y: &[Scalar]| mor.f.apply(&[x, y]);
    let zero = |v: &[Scalar]| v.iter().all(Zero::is_zero);
    let fail = |what: &str, t: Vec<BasisElement>, r: &[Scalar], deg: i64| {
        Report::fail(name, Failure { n: t.len(), tuple: t, residual: residual(r, deg), detail: Some(what.into()) }, 3, Some(3))
    };
    for h in 0..l1d {
        let hv = unit(l1d, h);
        let r = vsub(&f0(&l.l1v(&hv)), &m.l1v(&fm(&hv)));
        if !zero(&r) {
            return fail("f0 l1 = m1 f-1", vec![h_el(h)], &r, 0);
        }
    }
    for a in 0..l0d {
        for b in 0..l0d {
            let (x, y) = (unit(l0d, a), unit(l0d, b));
            let r = vsub(&m.l1v(&f(&x, &y)), &vsub(&f0(&l.b00(&x, &y)), &m.b00(&f0(&x), &f0(&y))));
            if !zero(&r) {
                return fail("m1 f = f0 l2 - m2(f0, f0)", vec![x_el(a), x_el(b)], &r, 0);
            }
        }
        for h in 0..l1d {
            let (x, hv) = (unit(l0d, a), unit(l1d, h));
            let r = vsub(&f(&x, &l.l1v(&hv)), &vsub(&fm(&l.b0m(&x, &hv)), &m.b0m(&f0(&x), &fm(&hv))));
            if !zero(&r) {
                return fail("f(x, l1 h) = f-1 l2(x,h) - m2(f0 x, f-1 h)", vec![h_el(h), x_el(a)], &r, -1);
            }
        }
    }
    for a in 0..l0d {
        for b in 0..l0d {
            for c in 0..l0d {
                let (x, y, z) = (unit(l0d, a), unit(l0d, b), unit(l0d, c));
                let mut lhs = m.bm0(&f(&x, &y), &f0(&z));
                lhs = vadd(&lhs, &f(&l.b00(&x, &y), &z));
                lhs = vadd(&lhs, &fm(&l.t3(&x, &y, &z)));
                let mut rhs = m.t3(&f0(&x), &f0(&y), &f0(&z));
                rhs = vadd(&rhs, &m.b0m(&f0(&x), &f(&y, &z)));
                rhs = vadd(&rhs, &m.bm0(&f(&x, &z), &f0(&y)));
                rhs = vadd(&rhs, &f(&x, &l.b00(&y, &z)));
                rhs = vadd(&rhs, &f(&l.b00(&x, &z), &y));
                let r = vsub(&lhs, &rhs);
                if !zero(&r) {
                    return fail("l3 compatibility", vec![x_el(a), x_el(b), x_el(c)], &r, -1);
                }
            }
        }
    }
    Report::pass(name, 3, Some(3))
}

pub fn check_morphism(f: &TwoTermMorphism, source: &TwoTermStructure, target: &TwoTermStructure) -> Result<Report> {
    let shapes = f.f_m1.in_dims() == [source.dim_m1]
        && f.f_m1.out_dim() == target.dim_m1
        && f.f0.in_dims() == [source.dim_0]
        && f.f0.out_dim() == target.dim_0
        && f.f.in_dims() == [source.dim_0, source.dim_0]
        && f.f.out_dim() == target.dim_m1;
    if !shapes {
        return Err(Error::Space("morphism does not fit source and target".into()));
    }
    if !f.f.is_skew() {
        return Err(Error::Symmetry("f must be skew".into()));
    }
    Ok(Report::all(
        "2-term-morphism",
        vec![check_morphism_half("first", f, &source.first, &target.first), check_morphism_half("second", f, &source.second, &target.second)],
    ))
}

/// Inverse of a square matrix given by a linear tensor.
pub fn invert(t: &Tensor) -> Result<Tensor> {
    let n = t.out_dim();
    if t.in_dims() != [n] {
        return Err(Error::Space("only square maps are invertible".into()));
    }
    let m = Matrix::from_rows(&t.matrix_rows());
    let cols = (0..n)
        .map(|j| solve(&m, &unit(n, j)).ok_or_else(|| Error::Precondition("map is not invertible".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Tensor::from_fn(&[n], n, |i| cols[i[0]].clone()))
}

/// The structure on the target making an isomorphism `(f_{-1}, f_0, f)`
/// (invertible linear parts) a morphism.
pub fn transport(s: &TwoTermStructure, mor: &TwoTermMorphism) -> Result<TwoTermStructure> {
    let ai = invert(&mor.f_m1)?;
    let bi = invert(&mor.f0)?;
    let (m1, m0) = (s.dim_m1, s.dim_0);
    let a = |h: &[Scalar]| mor.f_m1.apply(&[h]);
    let b = |x: &[Scalar]| mor.f0.apply(&[x]);
    let f = |x: &[Scalar], y: &[Scalar]| mor.f.apply(&[x, y]);
    let half = |l: &TwoTermHalf| -> TwoTermHalf {
        let l1 = Tensor::from_fn(&[m1], m0, |i| b(&l.l1v(ai.at(i))));
        let m1v = |h: &[Scalar]| l1.apply(&[h]);
        let l2_00 = Tensor::from_fn(&[m0, m0], m0, |i| {
            let (x, y) = (bi.at(&[i[0]]), bi.at(&[i[1]]));
            vsub(&b(&l.b00(x, y)), &m1v(&f(x, y)))
        });
        let l2_0m1 = Tensor::from_fn(&[m0, m1], m1, |i| {
            let (x, h) = (bi.at(&[i[0]]), ai.at(&[i[1]]));
            vsub(&a(&l.b0m(x, h)), &f(x, &l.l1v(h)))
        });
        let m = TwoTermHalf { l1: l1.clone(), l2_00: l2_00.clone(), l2_0m1: l2_0m1.clone(), l3: Tensor::zeros(&[m0, m0, m0], m1) };
        let l3 = Tensor::from_fn(&[m0, m0, m0], m1, |i| {
            let (x, y, z) = (bi.at(&[i[0]]), bi.at(&[i[1]]), bi.at(&[i[2]]));
            let mut r = m.bm0(&f(x, y), &b(z));
            r = vadd(&r, &f(&l.b00(x, y), z));
            r = vadd(&r, &a(&l.t3(x, y, z)));
            r = vsub(&r, &m.b0m(&b(x), &f(y, z)));
            r = vsub(&r, &m.bm0(&f(x, z), &b(y)));
            r = vsub(&r, &f(x, &l.b00(y, z)));
            vsub(&r, &f(&l.b00(x, z), y))
        });
        TwoTermHalf { l1, l2_00, l2_0m1, l3 }
    };
    TwoTermStructure::new(m1, m0, half(&s.first), half(&s.second))
}

/// Componentwise direct sum.
pub fn direct_sum(a: &TwoTermStructure, b: &TwoTermStructure) -> TwoTermStructure {
    let (m1, m0) = (a.dim_m1 + b.dim_m1, a.dim_0 + b.dim_0);
    // index maps into the sum
    let split = |i: usize, na: usize| if i < na { (0, i) } else { (1, i - na) };
    let embed_vec = |v: &[Scalar], part: usize, na: usize, n: usize| -> Dense {
        let mut out = zeros(n);
        for (j, c) in v.iter().enumerate() {
            out[if part == 0 { j } else { na + j }] = c.clone();
        }
        out
    };
    let half = |x: &TwoTermHalf, y: &TwoTermHalf| -> TwoTermHalf {
        let l1 = Tensor::from_fn(&[m1], m0, |i| match split(i[0], a.dim_m1) {
            (0, j) => embed_vec(x.l1.at(&[j]), 0, a.dim_0, m0),
            (_, j) => embed_vec(y.l1.at(&[j]), 1, a.dim_0, m0),
        });
        let l2_00 = Tensor::from_fn(&[m0, m0], m0, |i| match (split(i[0], a.dim_0), split(i[1], a.dim_0)) {
            ((0, p), (0, q)) => embed_vec(x.l2_00.at(&[p, q]), 0, a.dim_0, m0),
            ((1, p), (1, q)) => embed_vec(y.l2_00.at(&[p, q]), 1, a.dim_0, m0),
            _ => zeros(m0),
        });
        let l2_0m1 = Tensor::from_fn(&[m0, m1], m1, |i| match (split(i[0], a.dim_0), split(i[1], a.dim_m1)) {
            ((0, p), (0, q)) => embed_vec(x.l2_0m1.at(&[p, q]), 0, a.dim_m1, m1),
            ((1, p), (1, q)) => embed_vec(y.l2_0m1.at(&[p, q]), 1, a.dim_m1, m1),
            _ => zeros(m1),
        });
        let l3 = Tensor::from_fn(&[m0, m0, m0], m1, |i| {
            match (split(i[0], a.dim_0), split(i[1], a.dim_0), split(i[2], a.dim_0)) {
                ((0, p), (0, q), (0, r)) => embed_vec(x.l3.at(&[p, q, r]), 0, a.dim_m1, m1),
                ((1, p), (1, q), (1, r)) => embed_vec(y.l3.at(&[p, q, r]), 1, a.dim_m1, m1),
                _ => zeros(m1),
            }
        });
        TwoTermHalf { l1, l2_00, l2_0m1, l3 }
    };
    TwoTermStructure { dim_m1: m1, dim_0: m0, first: half(&a.first, &b.first), second: half(&a.second, &b.second) }
}

// ---------------------------------------------------------------------------
// compatible Lie 2-algebras

/// Linear data of a compatible Lie 2-algebra: objects `C_0`, morphisms `C_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTwoData {
    pub c0: usize,
    pub c1: usize,
    pub s: Tensor,
    pub t: Tensor,
    pub i: Tensor,
    /// Bracket functors on objects and on morphisms.
    pub bracket0: Tensor,
    pub bracket1: Tensor,
    pub bracket0_2: Tensor,
    pub bracket1_2: Tensor,
    /// Jacobiators `C_0³ → C_1`.
    pub j: Tensor,
    pub j2: Tensor,
    pub jc: Tensor,
}

struct Lie2View<'a> {
    d: &'a LieTwoData,
    b0: &'a Tensor,
    b1: &'a Tensor,
    j: Tensor,
}

impl Lie2View<'_> {
    fn s(&self, f: &[Scalar]) -> Dense {
        self.d.s.apply(&[f])
    }
    fn t(&self, f: &[Scalar]) -> Dense {
        self.d.t.apply(&[f])
    }
    fn i(&self, x: &[Scalar]) -> Dense {
        self.d.i.apply(&[x])
    }
    fn br0(&self, x: &[Scalar], y: &[Scalar]) -> Dense {
        self.b0.apply(&[x, y])
    }
    fn br1(&self, f: &[Scalar], g: &[Scalar]) -> Dense {
        self.b1.apply(&[f, g])
    }
    fn jac(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Dense {
        self.j.apply(&[x, y, z])
    }
    /// `[[x,z],y] + [x,[y,z]]`.
    fn jac_target(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Dense {
        vadd(&self.br0(&self.br0(x, z), y), &self.br0(x, &self.br0(y, z)))
    }
}

fn vec_el(v: &[Scalar], degree: i64) -> Vector {
    residual(v, degree)
}

fn check_lie2(name: &str, v: &Lie2View) -> Report {
    let d = v.d;
    let (c0, c1) = (d.c0, d.c1);
    let zero = |x: &[Scalar]| x.iter().all(Zero::is_zero);
    let fail = |what: &str, t: Vec<BasisElement>, r: &[Scalar], deg: i64| {
        Report::fail(name, Failure { n: t.len(), tuple: t, residual: vec_el(r, deg), detail: Some(what.into()) }, 4, Some(4))
    };
    let o = |k| BasisElement::new(0, k);
    let m = |k| BasisElement::new(1, k);
    for x in 0..c0 {
        let xv = unit(c0, x);
        for (what, r) in [("s i = id", vsub(&v.s(&v.i(&xv)), &xv)), ("t i = id", vsub(&v.t(&v.i(&xv)), &xv))] {
            if !zero(&r) {
                return fail(what, vec![o(x)], &r, 0);
            }
        }
    }
    if !v.b0.is_skew() {
        return fail("object bracket is skew", vec![], &[], 0);
    }
    if !v.b1.is_skew() {
        return fail("morphism bracket is skew", vec![], &[], 1);
    }
    for a in 0..c1 {
        for b in 0..c1 {
            let (f, g) = (unit(c1, a), unit(c1, b));
            let br = v.br1(&f, &g);
            let checks = [("s is preserved", vsub(&v.s(&br), &v.br0(&v.s(&f), &v.s(&g)))), ("t is preserved", vsub(&v.t(&br), &v.br0(&v.t(&f), &v.t(&g))))];
            for (what, r) in checks {
                if !zero(&r) {
                    return fail(what, vec![m(a), m(b)], &r, 0);
                }
            }
        }
    }
    for x in 0..c0 {
        for y in 0..c0 {
            let (xv, yv) = (unit(c0, x), unit(c0, y));
            let r = vsub(&v.br1(&v.i(&xv), &v.i(&yv)), &v.i(&v.br0(&xv, &yv)));
            if !zero(&r) {
                return fail("identities are preserved", vec![o(x), o(y)], &r, 1);
            }
        }
    }
    // composable pairs (f, g) with t f = s g; g ∘ f = f + g − i(t f)
    let mut rows = Vec::new();
    for r in 0..c0 {
        let mut row = zeros(2 * c1);
        for k in 0..c1 {
            row[k] = d.t.at(&[k])[r].clone();
            row[c1 + k] = -d.s.at(&[k])[r].clone();
        }
        rows.push(row);
    }
    let pairs = if rows.is_empty() { (0..2 * c1).map(|k| unit(2 * c1, k)).collect() } else { kernel_basis(&Matrix::from_rows(&rows)) };
    let comp = |f: &[Scalar], g: &[Scalar]| vsub(&vadd(f, g), &v.i(&v.t(f)));
    for (pa, p) in pairs.iter().enumerate() {
        for (qa, q) in pairs.iter().enumerate() {
            let (f, g) = (&p[..c1], &p[c1..]);
            let (f2, g2) = (&q[..c1], &q[c1..]);
            let r = vsub(&v.br1(&comp(f, g), &comp(f2, g2)), &comp(&v.br1(f, f2), &v.br1(g, g2)));
            if !zero(&r) {
                return fail("composition is preserved", vec![BasisElement::new(2, pa), BasisElement::new(2, qa)], &r, 1);
            }
        }
    }
    for x in 0..c0 {
        for y in 0..c0 {
            for z in 0..c0 {
                let (xv, yv, zv) = (unit(c0, x), unit(c0, y), unit(c0, z));
                let jxyz = v.jac(&xv, &yv, &zv);
                let src = vsub(&v.s(&jxyz), &v.br0(&v.br0(&xv, &yv), &zv));
                let tgt = vsub(&v.t(&jxyz), &v.jac_target(&xv, &yv, &zv));
                for (what, r) in [("Jacobiator source", src), ("Jacobiator target", tgt)] {
                    if !zero(&r) {
                        return fail(what, vec![o(x), o(y), o(z)], &r, 0);
                    }
                }
            }
        }
    }
    // the part of J in ker s is skew
    let jk = Tensor::from_fn(&[c0, c0, c0], c1, |idx| {
        let j = v.j.at(idx).to_vec();
        vsub(&j, &v.i(&v.s(&j)))
    });
    if !jk.is_skew() {
        return fail("Jacobiator is skew", vec![], &[], 1);
    }
    let triples: Vec<[usize; 3]> = (0..c1).flat_map(|a| (0..c1).flat_map(move |b| (0..c1).map(move |c| [a, b, c]))).collect();
    let natural = triples.par_iter().find_map_first(|&[a, b, c]| {
        let (f, g, h) = (unit(c1, a), unit(c1, b), unit(c1, c));
        let (sf, sg, sh) = (v.s(&f), v.s(&g), v.s(&h));
        let (tf, tg, th) = (v.t(&f), v.t(&g), v.t(&h));
        let fgh = v.br1(&v.br1(&f, &g), &h);
        let lhs = vsub(&vadd(&fgh, &v.jac(&tf, &tg, &th)), &v.i(&v.br0(&v.br0(&tf, &tg), &th)));
        let other = vadd(&v.br1(&v.br1(&f, &h), &g), &v.br1(&f, &v.br1(&g, &h)));
        let rhs = vsub(&vadd(&v.jac(&sf, &sg, &sh), &other), &v.i(&v.jac_target(&sf, &sg, &sh)));
        let r = vsub(&lhs, &rhs);
        (!zero(&r)).then(|| fail("Jacobiator is natural", vec![m(a), m(b), m(c)], &r, 1))
    });
    if let Some(r) = natural {
        return r;
    }
    let quads: Vec<[usize; 4]> = (0..c0)
        .flat_map(|a| (0..c0).flat_map(move |b| (0..c0).flat_map(move |c| (0..c0).map(move |e| [a, b, c, e]))))
        .collect();
    let coherent = quads.par_iter().find_map_first(|&[a, b, c, e]| {
        let (w, x, y, z) = (unit(c0, a), unit(c0, b), unit(c0, c), unit(c0, e));
        let r = vsub(&coherence_left(v, &w, &x, &y, &z), &coherence_right(v, &w, &x, &y, &z));
        (!zero(&r)).then(|| fail("Jacobiator coherence", vec![o(a), o(b), o(c), o(e)], &r, 1))
    });
    if let Some(r) = coherent {
        return r;
    }
    Report::pass(name, 4, Some(4))
}

/// Composite of the path starting with `[J_{w,x,y}, z]`.
fn coherence_left(v: &Lie2View, w: &[Scalar], x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Dense {
    let b = |p: &[Scalar], q: &[Scalar]| v.br0(p, q);
    let a1 = v.br1(&v.jac(w, x, y), &v.i(z));
    let a2 = vadd(&v.jac(&b(w, y), x, z), &v.jac(w, &b(x, y), z));
    let mut a3 = v.br1(&v.jac(w, y, z), &v.i(x));
    a3 = vadd(&a3, &v.i(&b(&b(w, y), &b(x, z))));
    a3 = vadd(&a3, &v.i(&b(&b(w, z), &b(x, y))));
    a3 = vadd(&a3, &v.br1(&v.i(w), &v.jac(x, y, z)));
    let sum = vadd(&vadd(&a1, &a2), &a3);
    vsub(&vsub(&sum, &v.i(&v.t(&a1))), &v.i(&v.t(&a2)))
}

fn coherence_right(v: &Lie2View, w: &[Scalar], x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Dense {
    let b = |p: &[Scalar], q: &[Scalar]| v.br0(p, q);
    let b1 = v.jac(&b(w, x), y, z);
    let b2 = vadd(&v.br1(&v.jac(w, x, z), &v.i(y)), &v.jac(w, x, &b(y, z)));
    let mut b3 = vadd(&v.jac(&b(w, z), x, y), &v.jac(w, &b(x, z), y));
    b3 = vadd(&b3, &v.i(&b(&b(w, &b(y, z)), x)));
    b3 = vadd(&b3, &v.i(&b(w, &b(x, &b(y, z)))));
    let sum = vadd(&vadd(&b1, &b2), &b3);
    vsub(&vsub(&sum, &v.i(&v.t(&b1))), &v.i(&v.t(&b2)))
}

impl LieTwoData {
    fn view<'a>(&'a self, b0: &'a Tensor, b1: &'a Tensor, j: Tensor) -> Lie2View<'a> {
        Lie2View { d: self, b0, b1, j }
    }

    /// Both Lie 2-algebras and the one with `[,] + [,]'`, `J + J' + J^c`.
    pub fn validate(&self) -> Report {
        let b0s = self.bracket0.add(&self.bracket0_2);
        let b1s = self.bracket1.add(&self.bracket1_2);
        let js = self.j.add(&self.j2).add(&self.jc);
        Report::all(
            "compatible-lie2",
            vec![
                check_lie2("first", &self.view(&self.bracket0, &self.bracket1, self.j.clone())),
                check_lie2("second", &self.view(&self.bracket0_2, &self.bracket1_2, self.j2.clone())),
                check_lie2("sum", &self.view(&b0s, &b1s, js)),
            ],
        )
    }
}

/// Objects `L_0`, morphisms `L_{-1} ⊕ L_0`, the bracket
/// `[(h,x),(k,y)] = (l_2(h,y) + l_2(x,k) + l_2(l h, k), l_2(x,y))`.
pub fn phi(s: &TwoTermStructure) -> Result<LieTwoData> {
    if s.first.l1 != s.second.l1 {
        return Err(Error::Precondition("the Lie 2-algebra dictionary needs l1 = l1'".into()));
    }
    let (m1, m0) = (s.dim_m1, s.dim_0);
    let c1 = m1 + m0;
    let split = |v: &[Scalar]| (v[..m1].to_vec(), v[m1..].to_vec());
    let join = |h: &[Scalar], x: &[Scalar]| [h, x].concat();
    let l = &s.first.l1;
    let sm = Tensor::from_fn(&[c1], m0, |i| split(&unit(c1, i[0])).1);
    let tm = Tensor::from_fn(&[c1], m0, |i| {
        let (h, x) = split(&unit(c1, i[0]));
        vadd(&l.apply(&[&h]), &x)
    });
    let im = Tensor::from_fn(&[m0], c1, |i| join(&zeros(m1), &unit(m0, i[0])));
    let br1 = |half: &TwoTermHalf| {
        Tensor::from_fn(&[c1, c1], c1, |i| {
            let (h, x) = split(&unit(c1, i[0]));
            let (k, y) = split(&unit(c1, i[1]));
            let mut first = half.bm0(&h, &y);
            first = vadd(&first, &half.b0m(&x, &k));
            first = vadd(&first, &half.b0m(&half.l1v(&h), &k));
            join(&first, &half.b00(&x, &y))
        })
    };
    let jac = |outer: &TwoTermHalf, inner: &TwoTermHalf, l3: &Tensor| {
        Tensor::from_fn(&[m0, m0, m0], c1, |i| {
            let (x, y, z) = (unit(m0, i[0]), unit(m0, i[1]), unit(m0, i[2]));
            join(&l3.apply(&[&x, &y, &z]), &outer.b00(&inner.b00(&x, &y), &z))
        })
    };
    let (a, b) = (&s.first, &s.second);
    let mut jc = jac(a, b, &a.l3.add(&b.l3));
    let jc2 = jac(b, a, &Tensor::zeros(&[m0, m0, m0], m1));
    jc = jc.add(&jc2);
    Ok(LieTwoData {
        c0: m0,
        c1,
        s: sm,
        t: tm,
        i: im,
        bracket0: a.l2_00.clone(),
        bracket1: br1(a),
        bracket0_2: b.l2_00.clone(),
        bracket1_2: br1(b),
        j: jac(a, a, &a.l3),
        j2: jac(b, b, &b.l3),
        jc,
    })
}

/// Coordinates of `v ∈ span(basis)`.
fn coords_in(basis: &[Dense], v: &[Scalar]) -> Result<Dense> {
    let n = v.len();
    if basis.is_empty() {
        return if v.iter().all(Zero::is_zero) { Ok(Vec::new()) } else { Err(Error::Precondition("vector outside the subspace".into())) };
    }
    let rows: Vec<Dense> = (0..n).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    solve(&Matrix::from_rows(&rows), v).ok_or_else(|| Error::Precondition("vector outside the subspace".into()))
}

/// Basis of `ker s` used by `psi` (columns of the kernel basis).
pub fn kernel_of_source(d: &LieTwoData) -> Vec<Dense> {
    if d.c0 == 0 {
        return (0..d.c1).map(|k| unit(d.c1, k)).collect();
    }
    kernel_basis(&Matrix::from_rows(&d.s.matrix_rows()))
}

/// `L_{-1} = ker s`, `L_0 = C_0`, `l = t|_{ker s}`, `l_2(x,h) = [i x, h]`, `l_3 = pr_1 J`.
pub fn psi(d: &LieTwoData) -> Result<TwoTermStructure> {
    let r = d.validate();
    if !r.passed {
        return Err(Error::Precondition(format!("not a compatible Lie 2-algebra: {}", r.summary())));
    }
    let k = kernel_of_source(d);
    let (m1, m0) = (k.len(), d.c0);
    let pr1 = |f: &[Scalar]| -> Result<Dense> {
        let sf = d.s.apply(&[f]);
        coords_in(&k, &vsub(f, &d.i.apply(&[&sf])))
    };
    let half = |b0: &Tensor, b1: &Tensor, j: &Tensor| -> Result<TwoTermHalf> {
        let l1 = Tensor::from_fn(&[m1], m0, |i| d.t.apply(&[&k[i[0]]]));
        let mut l2_0m1 = Tensor::zeros(&[m0, m1], m1);
        for x in 0..m0 {
            for h in 0..m1 {
                let v = b1.apply(&[&d.i.apply(&[&unit(m0, x)]), &k[h]]);
                l2_0m1.set_vec(&[x, h], &coords_in(&k, &v)?);
            }
        }
        let mut l3 = Tensor::zeros(&[m0, m0, m0], m1);
        for idx in l3.indices() {
            let v = pr1(j.at(&idx))?;
            l3.set_vec(&idx, &v);
        }
        Ok(TwoTermHalf { l1, l2_00: b0.clone(), l2_0m1, l3 })
    };
    TwoTermStructure::new(m1, m0, half(&d.bracket0, &d.bracket1, &d.j)?, half(&d.bracket0_2, &d.bracket1_2, &d.j2)?)
}

/// `β(h, x) = h + i(x)` from `φ(ψ(C))` to `C`, as a matrix on `ker s ⊕ C_0`.
pub fn beta(d: &LieTwoData) -> Tensor {
    let k = kernel_of_source(d);
    let m1 = k.len();
    Tensor::from_fn(&[m1 + d.c0], d.c1, |i| if i[0] < m1 { k[i[0]].clone() } else { d.i.apply(&[&unit(d.c0, i[0] - m1)]) })
}

/// Checks that `β` is an isomorphism carrying every piece of `dot` to `d`.
pub fn check_beta(d: &LieTwoData, dot: &LieTwoData, beta: &Tensor) -> Report {
    let fail = |what: &str, r: &[Scalar]| {
        Report::fail("beta", Failure { n: 0, tuple: vec![], residual: residual(r, 1), detail: Some(what.into()) }, 0, None)
    };
    if dot.c0 != d.c0 || dot.c1 != d.c1 || beta.in_dims() != [dot.c1] || beta.out_dim() != d.c1 {
        return fail("dimensions differ", &[]);
    }
    if invert(beta).is_err() {
        return fail("beta is not invertible", &[]);
    }
    let bt = |f: &[Scalar]| beta.apply(&[f]);
    let zero = |x: &[Scalar]| x.iter().all(Zero::is_zero);
    for a in 0..dot.c1 {
        let f = unit(dot.c1, a);
        for (what, r) in [("s", vsub(&d.s.apply(&[&bt(&f)]), &dot.s.apply(&[&f]))), ("t", vsub(&d.t.apply(&[&bt(&f)]), &dot.t.apply(&[&f])))] {
            if !zero(&r) {
                return fail(what, &r);
            }
        }
        for b in 0..dot.c1 {
            let g = unit(dot.c1, b);
            for (what, b_d, b_dot) in [("bracket", &d.bracket1, &dot.bracket1), ("bracket'", &d.bracket1_2, &dot.bracket1_2)] {
                let r = vsub(&b_d.apply(&[&bt(&f), &bt(&g)]), &bt(&b_dot.apply(&[&f, &g])));
                if !zero(&r) {
                    return fail(what, &r);
                }
            }
        }
    }
    for x in 0..d.c0 {
        let xv = unit(d.c0, x);
        let r = vsub(&d.i.apply(&[&xv]), &bt(&dot.i.apply(&[&xv])));
        if !zero(&r) {
            return fail("i", &r);
        }
    }
    if d.bracket0 != dot.bracket0 || d.bracket0_2 != dot.bracket0_2 {
        return fail("object brackets", &[]);
    }
    for idx in d.j.indices() {
        for (what, jd, jdot) in [("J", &d.j, &dot.j), ("J'", &d.j2, &dot.j2), ("Jc", &d.jc, &dot.jc)] {
            let r = vsub(jd.at(&idx), &bt(jdot.at(&idx)));
            if !zero(&r) {
                return fail(what, &r);
            }
        }
    }
    Report::pass("beta", 0, None)
}

/// A change of basis of `C_1`: the datum `γ·d` with `γ` invertible.
pub fn change_morphism_basis(d: &LieTwoData, gamma: &Tensor) -> Result<LieTwoData> {
    let gi = invert(gamma)?;
    let g = |f: &[Scalar]| gamma.apply(&[f]);
    let n = d.c1;
    let lin = |m: &Tensor, out: usize| Tensor::from_fn(&[n], out, |i| m.apply(&[gi.at(i)]));
    let br = |b: &Tensor| Tensor::from_fn(&[n, n], n, |i| g(&b.apply(&[gi.at(&[i[0]]), gi.at(&[i[1]])])));
    let cube = |j: &Tensor| Tensor::from_fn(j.in_dims(), n, |i| g(j.at(i)));
    Ok(LieTwoData {
        c0: d.c0,
        c1: n,
        s: lin(&d.s, d.c0),
        t: lin(&d.t, d.c0),
        i: Tensor::from_fn(&[d.c0], n, |i| g(d.i.at(i))),
        bracket0: d.bracket0.clone(),
        bracket1: br(&d.bracket1),
        bracket0_2: d.bracket0_2.clone(),
        bracket1_2: br(&d.bracket1_2),
        j: cube(&d.j),
        j2: cube(&d.j2),
        jc: cube(&d.jc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> TwoTermStructure {
        // L_{-1} = <h>, L_0 = <x>, l1 = l1' : h -> x
        let mut s = TwoTermStructure::zero(1, 1);
        s.first.l1 = Tensor::identity(1);
        s.second.l1 = Tensor::identity(1);
        s
    }

    #[test]
    fn small_cases() {
        assert!(check_two_term(&TwoTermStructure::zero(1, 2)).passed);
        assert!(check_two_term(&line()).passed);
        let d = phi(&line()).unwrap();
        assert!(d.validate().passed);
        assert_eq!(psi(&d).unwrap(), line());
    }

    #[test]
    fn embedding_round_trip() {
        let s = line();
        assert_eq!(from_pair(&embed(&s).unwrap()).unwrap(), s);
    }
}
