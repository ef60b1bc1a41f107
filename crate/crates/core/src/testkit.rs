//! Seeded generators of random (and random valid) instances for tests and
//! benchmarks. Enabled by the `testkit` feature.

pub mod criteria;
pub mod oracle;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{ce_differential, CompatibleLieAlgebra, CompatibleRep, Which};
use crate::exactla::{int, kernel_basis, rank, Matrix, Scalar};
use crate::graded::{BasisElement, GradedSpace, Vector};
use crate::homotopy::{CompatiblePair, Flavor, HomotopyStructure};
use crate::multilinear::map::canonical_tuples;
use crate::multilinear::tensor::{unit, vadd, vscale};
use crate::multilinear::{CoderRep, MultiMap, Symmetry, Tensor};
use crate::twoterm::{
    direct_sum, invert, map_to_tensor, phi, tensor_to_map, transport, change_morphism_basis, LieTwoData, SkeletalTriple,
    TwoTermHalf, TwoTermMorphism, TwoTermStructure,
};

fn e(i: usize) -> BasisElement {
    BasisElement::new(0, i)
}

/// Bracket table `[e_a, e_b] = Σ c e_k`.
pub fn bracket(dim: usize, table: &[(usize, usize, usize, i64)]) -> MultiMap {
    let g = GradedSpace::ungraded(dim);
    let mut m = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
    for &(a, b, k, c) in table {
        m.add_entry(&[e(a), e(b)], &Vector::term(e(k), int(c))).expect("bracket table entry");
    }
    m
}

/// Small compatible Lie algebras used as seeds.
pub fn catalogue() -> Vec<(&'static str, CompatibleLieAlgebra)> {
    let so3 = bracket(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]);
    let sl2 = bracket(3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]);
    let list = vec![
        ("abelian-1", bracket(1, &[]), bracket(1, &[])),
        ("abelian-2", bracket(2, &[]), bracket(2, &[])),
        ("a1", bracket(2, &[(0, 1, 0, 1)]), bracket(2, &[(0, 1, 1, 1)])),
        ("a1-same", bracket(2, &[(0, 1, 0, 1)]), bracket(2, &[(0, 1, 0, 1)])),
        ("heisenberg", bracket(3, &[(0, 1, 2, 1)]), bracket(3, &[(0, 2, 1, 1)])),
        ("so3", so3.clone(), so3.clone()),
        ("so3-zero", so3, bracket(3, &[])),
        ("sl2-zero", sl2, bracket(3, &[])),
        ("r3", bracket(3, &[(0, 1, 1, 1), (0, 2, 2, 1)]), bracket(3, &[(0, 1, 2, 1)])),
        ("abelian-3", bracket(3, &[]), bracket(3, &[])),
    ];
    list.into_iter().map(|(n, a, b)| (n, CompatibleLieAlgebra::new(a, b).expect("catalogue entry is compatible"))).collect()
}

/// Compatible associative pairs: an algebra with product `xy` and `x a y`.
fn associative_seeds() -> Vec<(usize, Tensor)> {
    // k[x]/(x^3), upper triangular 2x2, k x k, k[x]/(x^2)
    let trunc3 = Tensor::from_fn(&[3, 3], 3, |i| if i[0] + i[1] < 3 { unit(3, i[0] + i[1]) } else { vec![int(0); 3] });
    // basis e11, e12, e22
    let ut = Tensor::from_fn(&[3, 3], 3, |i| match (i[0], i[1]) {
        (0, 0) => unit(3, 0),
        (0, 1) => unit(3, 1),
        (1, 2) => unit(3, 1),
        (2, 2) => unit(3, 2),
        _ => vec![int(0); 3],
    });
    let kk = Tensor::from_fn(&[2, 2], 2, |i| if i[0] == i[1] { unit(2, i[0]) } else { vec![int(0); 2] });
    let dual = Tensor::from_fn(&[2, 2], 2, |i| if i[0] + i[1] < 2 { unit(2, i[0] + i[1]) } else { vec![int(0); 2] });
    vec![(3, trunc3), (3, ut), (2, kk), (2, dual)]
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn small(&mut self) -> Scalar {
        int(self.range(-2, 2))
    }

    /// Nonzero small scalar.
    pub fn unit_scalar(&mut self) -> Scalar {
        let v = [-2, -1, 1, 2];
        int(*v.choose(&mut self.rng).expect("nonempty"))
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        v.shuffle(&mut self.rng);
    }

    pub fn tensor(&mut self, in_dims: &[usize], out: usize) -> Tensor {
        let mut t = Tensor::zeros(in_dims, out);
        for x in t.data_mut() {
            *x = int(self.rng.gen_range(-2i64..=2));
        }
        t
    }

    /// Random skew tensor on `n`-dimensional inputs.
    pub fn skew_tensor(&mut self, n: usize, k: usize, out: usize) -> Tensor {
        let g = GradedSpace::ungraded(n);
        let w = GradedSpace::ungraded(out);
        let m = self.multimap(&g, &w, k, 0, Symmetry::Skew);
        map_to_tensor(&m)
    }

    pub fn invertible(&mut self, n: usize) -> Tensor {
        loop {
            let t = self.tensor(&[n], n);
            if n == 0 || rank(&Matrix::from_rows(&t.matrix_rows())) == n {
                return t;
            }
        }
    }

    /// Permutation times a unipotent matrix with a few `±1` entries.
    pub fn unimodular(&mut self, n: usize) -> Tensor {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let mut m = Tensor::identity(n);
        for _ in 0..n {
            let (i, j) = (self.below(n), self.below(n));
            if i < j {
                let c = if self.coin(0.5) { int(1) } else { int(-1) };
                m.set(&[j], i, c);
            }
        }
        Tensor::from_fn(&[n], n, |i| {
            let col = m.at(i);
            (0..n).map(|r| col[perm[r]].clone()).collect()
        })
    }

    pub fn vector(&mut self, space: &GradedSpace, degree: i64) -> Vector {
        let mut v = Vector::zero();
        for b in space.basis_in_degree(degree) {
            v.add_term(b, self.small());
        }
        v
    }

    /// Random structure constants; sparse with probability `1 − density`.
    pub fn multimap_density(&mut self, domain: &GradedSpace, codomain: &GradedSpace, arity: usize, degree: i64, sym: Symmetry, density: f64) -> MultiMap {
        let mut m = MultiMap::new(domain.clone(), codomain.clone(), arity, degree, sym);
        for t in canonical_tuples(domain, arity, sym) {
            let d = m.out_degree(&t);
            let mut v = Vector::zero();
            for b in codomain.basis_in_degree(d) {
                if self.coin(density) {
                    v.add_term(b, self.small());
                }
            }
            m.add_entry(&t, &v).expect("canonical tuple");
        }
        m
    }

    pub fn multimap(&mut self, domain: &GradedSpace, codomain: &GradedSpace, arity: usize, degree: i64, sym: Symmetry) -> MultiMap {
        self.multimap_density(domain, codomain, arity, degree, sym, 0.6)
    }

    pub fn coder(&mut self, space: &GradedSpace, degree: i64, max_arity: usize) -> CoderRep {
        let maps: Vec<MultiMap> = (1..=max_arity).map(|k| self.multimap_density(space, space, k, degree, Symmetry::Symmetric, 0.4)).collect();
        CoderRep::from_components(space, degree, maps).expect("degree matches")
    }

    /// Random (usually invalid) L∞ structure constants.
    pub fn structure(&mut self, space: &GradedSpace, max_arity: usize, density: f64) -> HomotopyStructure {
        let ops: Vec<MultiMap> =
            (1..=max_arity).map(|k| self.multimap_density(space, space, k, 2 - k as i64, Symmetry::Skew, density)).collect();
        HomotopyStructure::from_ops(space, Flavor::Linfty, ops).expect("valid op shapes")
    }

    pub fn space_two_term(&mut self) -> GradedSpace {
        GradedSpace::new([(-1, 1 + self.below(2)), (0, 1 + self.below(2))])
    }

    // -----------------------------------------------------------------------
    // compatible Lie algebras and representations

    /// A catalogue entry, mixed in its pencil and moved by a random basis change.
    pub fn compatible_lie(&mut self, max_dim: usize) -> CompatibleLieAlgebra {
        let cat: Vec<_> = catalogue().into_iter().filter(|(_, g)| g.dim() <= max_dim).collect();
        let (_, g) = cat[self.below(cat.len())].clone();
        let n = g.dim();
        let (b1, b2) = (map_to_tensor(&g.bracket), map_to_tensor(&g.bracket2));
        let (p, q, r, s) = loop {
            let c = (self.small(), self.small(), self.small(), self.small());
            if &c.0 * &c.3 - &c.1 * &c.2 != int(0) {
                break c;
            }
        };
        let m1 = b1.scaled(&p).add(&b2.scaled(&q));
        let m2 = b1.scaled(&r).add(&b2.scaled(&s));
        let gm = self.invertible(n);
        let gi = invert(&gm).expect("invertible");
        let move_br = |b: &Tensor| Tensor::from_fn(&[n, n], n, |i| gm.apply(&[&b.apply(&[gi.at(&[i[0]]), gi.at(&[i[1]])])]));
        let sp = GradedSpace::ungraded(n);
        let a = tensor_to_map(&move_br(&m1), &sp, &sp, Symmetry::Skew).expect("shape");
        let b = tensor_to_map(&move_br(&m2), &sp, &sp, Symmetry::Skew).expect("shape");
        CompatibleLieAlgebra::new(a, b).expect("pencil and basis change preserve compatibility")
    }

    /// Adjoint, trivial, or adjoint ⊕ trivial, conjugated by a random basis change.
    pub fn rep(&mut self, g: &CompatibleLieAlgebra, max_dim: usize) -> CompatibleRep {
        let n = g.dim();
        let choice = self.below(3);
        let (dim, a1, a2) = match choice {
            0 if n <= max_dim => {
                let r = CompatibleRep::adjoint(g);
                (n, r.action.clone(), r.action2.clone())
            }
            1 if n < max_dim => {
                let r = CompatibleRep::adjoint(g);
                let ext = |t: &Tensor| Tensor::from_fn(&[n, n + 1], n + 1, |i| if i[1] < n { [t.at(i), &[int(0)][..]].concat() } else { vec![int(0); n + 1] });
                (n + 1, ext(&r.action), ext(&r.action2))
            }
            _ => {
                let d = 1 + self.below(max_dim.clamp(1, 2));
                (d, Tensor::zeros(&[n, d], d), Tensor::zeros(&[n, d], d))
            }
        };
        let gm = self.invertible(dim);
        let gi = invert(&gm).expect("invertible");
        let conj = |t: &Tensor| Tensor::from_fn(&[n, dim], dim, |i| gm.apply(&[&t.apply(&[&unit(n, i[0]), gi.at(&[i[1]])])]));
        CompatibleRep::new(g, dim, conj(&a1), conj(&a2)).expect("conjugated representation")
    }

    /// Random `(θ, θ')` with `∂θ = 0`, `∂'θ' = 0`, `∂θ' + ∂'θ = 0`.
    pub fn cocycle_pair(&mut self, g: &CompatibleLieAlgebra, rep: &CompatibleRep) -> (MultiMap, MultiMap) {
        let basis: Vec<MultiMap> = canonical_tuples(&g.space, 3, Symmetry::Skew)
            .into_iter()
            .flat_map(|t| {
                rep.space.basis().into_iter().map(move |o| (t.clone(), o))
            })
            .map(|(t, o)| {
                let mut m = MultiMap::new(g.space.clone(), rep.space.clone(), 3, 0, Symmetry::Skew);
                m.add_entry(&t, &Vector::basis(o)).expect("canonical");
                m
            })
            .collect();
        let zero = MultiMap::new(g.space.clone(), rep.space.clone(), 3, 0, Symmetry::Skew);
        if basis.is_empty() {
            return (zero.clone(), zero);
        }
        let d = |f: &MultiMap, w| ce_differential(g, rep, f, w).expect("cochain");
        // unknowns: θ coordinates then θ' coordinates
        let mut rows: BTreeMap<(usize, Vec<BasisElement>, BasisElement), BTreeMap<usize, Scalar>> = BTreeMap::new();
        let nb = basis.len();
        let mut put = |part: usize, m: &MultiMap, col: usize| {
            for (t, v) in m.entries() {
                for (b, c) in v.iter() {
                    rows.entry((part, t.clone(), *b)).or_default().insert(col, c.clone());
                }
            }
        };
        for (j, f) in basis.iter().enumerate() {
            put(0, &d(f, Which::First), j);
            put(2, &d(f, Which::Second), j);
            put(1, &d(f, Which::Second), nb + j);
            put(2, &d(f, Which::First), nb + j);
        }
        let dense: Vec<Vec<Scalar>> = rows
            .values()
            .map(|r| (0..2 * nb).map(|j| r.get(&j).cloned().unwrap_or_else(|| int(0))).collect())
            .collect();
        let ker = if dense.is_empty() { (0..2 * nb).map(|j| unit(2 * nb, j)).collect() } else { kernel_basis(&Matrix::from_rows(&dense)) };
        let mut x = vec![int(0); 2 * nb];
        for k in &ker {
            x = vadd(&x, &vscale(k, &self.small()));
        }
        let build = |off: usize| {
            let mut m = zero.clone();
            for (j, f) in basis.iter().enumerate() {
                m.add_scaled_assign(f, &x[off + j]).expect("same shape");
            }
            m
        };
        (build(0), build(nb))
    }

    pub fn skeletal_triple(&mut self) -> SkeletalTriple {
        let g = self.compatible_lie(3);
        let rep = self.rep(&g, 2);
        let (t1, t2) = self.cocycle_pair(&g, &rep);
        SkeletalTriple::new(g, rep, t1, t2).expect("cocycle conditions by construction")
    }

    // -----------------------------------------------------------------------
    // 2-term structures

    /// `L_{-1} = L_0 = g`, `l_1 = id`, `l_2` the bracket in both slots.
    pub fn identity_type(g: &CompatibleLieAlgebra) -> TwoTermStructure {
        let n = g.dim();
        let half = |b: &MultiMap| {
            let t = map_to_tensor(b);
            TwoTermHalf { l1: Tensor::identity(n), l2_00: t.clone(), l2_0m1: t, l3: Tensor::zeros(&[n, n, n], n) }
        };
        TwoTermStructure::new(n, n, half(&g.bracket), half(&g.bracket2)).expect("shapes")
    }

    /// Random isomorphism data `(f_{-1}, f_0, f)`.
    pub fn isomorphism(&mut self, m1: usize, m0: usize, with_f: bool) -> TwoTermMorphism {
        let f = if with_f && m1 > 0 { self.skew_tensor(m0, 2, m1) } else { Tensor::zeros(&[m0, m0], m1) };
        TwoTermMorphism { f_m1: self.invertible(m1), f0: self.invertible(m0), f }
    }

    /// Strict structure: identity type ⊕ a representation placed in degree −1.
    pub fn strict(&mut self) -> TwoTermStructure {
        let g1 = self.compatible_lie(2);
        let mut s = Self::identity_type(&g1);
        if self.coin(0.6) {
            let g2 = self.compatible_lie(2);
            let rep = self.rep(&g2, 2);
            let z = MultiMap::new(g2.space.clone(), rep.space.clone(), 3, 0, Symmetry::Skew);
            let skel = crate::twoterm::triple_to_skeletal(&SkeletalTriple { g: g2, rep, theta: z.clone(), theta2: z }).expect("valid");
            s = direct_sum(&s, &skel);
        }
        let iso = self.isomorphism(s.dim_m1, s.dim_0, false);
        transport(&s, &iso).expect("invertible")
    }

    pub fn skeletal(&mut self) -> TwoTermStructure {
        crate::twoterm::triple_to_skeletal(&self.skeletal_triple()).expect("valid triple")
    }

    /// A general valid structure with `l_1 = l'_1`: identity type ⊕ skeletal,
    /// transported along a random isomorphism with nonzero `f`.
    pub fn two_term(&mut self) -> TwoTermStructure {
        let base = match self.below(3) {
            0 => self.skeletal(),
            1 => {
                let g = self.compatible_lie(2);
                Self::identity_type(&g)
            }
            _ => {
                let d = 1 + self.below(2);
                let g = self.compatible_lie(d);
                let sk = loop {
                    let s = self.skeletal();
                    if s.dim_0 + g.dim() <= 4 && s.dim_m1 + g.dim() <= 4 {
                        break s;
                    }
                };
                direct_sum(&Self::identity_type(&g), &sk)
            }
        };
        let iso = self.isomorphism(base.dim_m1, base.dim_0, true);
        transport(&base, &iso).expect("invertible")
    }

    /// Random valid compatible Lie 2-algebra data in a random basis of `C_1`.
    pub fn lie2(&mut self) -> LieTwoData {
        let s = self.two_term();
        let d = phi(&s).expect("l1 = l1'");
        let gamma = self.unimodular(d.c1);
        change_morphism_basis(&d, &gamma).expect("invertible")
    }

    /// Add `±1` or `±2` times one basis structure constant (kept skew) to a
    /// random slot that has room for it.
    pub fn perturb_two_term(&mut self, s: &TwoTermStructure) -> TwoTermStructure {
        let (m1, m0) = (s.dim_m1, s.dim_0);
        let mut out = s.clone();
        let mut slots = vec![0, 2];
        if m0 >= 2 {
            slots.push(1);
        }
        if m0 >= 3 {
            slots.push(3);
        }
        let slot = slots[self.below(slots.len())];
        let c = self.unit_scalar();
        let first = self.coin(0.5);
        let half = if first { &mut out.first } else { &mut out.second };
        let skew_one = |k: usize, out_dim: usize, g: &mut Gen| {
            let sp = GradedSpace::ungraded(m0);
            let w = GradedSpace::ungraded(out_dim);
            let tuples = canonical_tuples(&sp, k, Symmetry::Skew);
            let t = tuples[g.below(tuples.len())].clone();
            let mut m = MultiMap::new(sp.clone(), w, k, 0, Symmetry::Skew);
            m.add_entry(&t, &Vector::term(e(g.below(out_dim)), c.clone())).expect("canonical");
            map_to_tensor(&m)
        };
        match slot {
            0 => {
                let (i, o) = (self.below(m1), self.below(m0));
                let v = &half.l1.at(&[i])[o] + &c;
                half.l1.set(&[i], o, v);
            }
            1 => half.l2_00 = half.l2_00.add(&skew_one(2, m0, self)),
            2 => {
                let (i, j, o) = (self.below(m0), self.below(m1), self.below(m1));
                let v = &half.l2_0m1.at(&[i, j])[o] + &c;
                half.l2_0m1.set(&[i, j], o, v);
            }
            _ => half.l3 = half.l3.add(&skew_one(3, m1, self)),
        }
        out
    }

    // -----------------------------------------------------------------------
    // associative

    /// Compatible associative pair `(μ, μ')` on dim ≤ `max_dim` as A∞ structures.
    pub fn compatible_associative(&mut self, max_dim: usize) -> (HomotopyStructure, HomotopyStructure) {
        let seeds: Vec<_> = associative_seeds().into_iter().filter(|(n, _)| *n <= max_dim).collect();
        let (n, mu) = seeds[self.below(seeds.len())].clone();
        let a: Vec<Scalar> = (0..n).map(|_| self.small()).collect();
        let mu2 = Tensor::from_fn(&[n, n], n, |i| mu.apply(&[&mu.apply(&[&unit(n, i[0]), &a]), &unit(n, i[1])]));
        let (p, q, r, s) = loop {
            let c = (self.small(), self.small(), self.small(), self.small());
            if &c.0 * &c.3 - &c.1 * &c.2 != int(0) {
                break c;
            }
        };
        let m1 = mu.scaled(&p).add(&mu2.scaled(&q));
        let m2 = mu.scaled(&r).add(&mu2.scaled(&s));
        let gm = self.invertible(n);
        let gi = invert(&gm).expect("invertible");
        let moved = |b: &Tensor| Tensor::from_fn(&[n, n], n, |i| gm.apply(&[&b.apply(&[gi.at(&[i[0]]), gi.at(&[i[1]])])]));
        let sp = GradedSpace::ungraded(n);
        let st = |t: &Tensor| {
            let m = tensor_to_map(&moved(t), &sp, &sp, Symmetry::None).expect("shape");
            HomotopyStructure::from_ops(&sp, Flavor::Ainfty, [m]).expect("degree 0")
        };
        (st(&m1), st(&m2))
    }

    pub fn pair_from(&mut self, s: &TwoTermStructure) -> CompatiblePair {
        crate::twoterm::embed(s).expect("embedding")
    }
}
