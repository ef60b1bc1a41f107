//! Nijenhuis–Richardson bracket, corestriction composition of coderivations,
//! and the suspension isomorphisms between skew maps on `L` and symmetric maps
//! on `V = s⁻¹L`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::{sign_pow, Scalar};
use crate::graded::{BasisElement, Vector};
use crate::multilinear::map::{MultiMap, Symmetry};
use crate::multilinear::perm::signed_shuffles;

fn require(m: &MultiMap, sym: Symmetry, what: &str) -> Result<()> {
    if m.symmetry() != sym {
        return Err(Error::Symmetry(format!("{what} must be {}", sym.name())));
    }
    if m.domain() != m.codomain() {
        return Err(Error::Space(format!("{what} must map a space to itself")));
    }
    if m.arity() == 0 {
        return Err(Error::Arity { expected: 1, got: 0 });
    }
    Ok(())
}

/// `(f ⋄ g)(x_1..x_{m+n+1}) = Σ_{Sh(n+1,m)} sgn(σ) f(g(x_σ(1..n+1)), x_σ(n+2..))`.
pub fn nr_diamond(f: &MultiMap, g: &MultiMap) -> Result<MultiMap> {
    require(f, Symmetry::Skew, "f")?;
    require(g, Symmetry::Skew, "g")?;
    if f.domain() != g.domain() {
        return Err(Error::Space("f and g live on different spaces".into()));
    }
    if f.domain().degrees().any(|d| d != 0) || f.degree() != 0 || g.degree() != 0 {
        return Err(Error::Degree("the Nijenhuis-Richardson bracket is defined on ungraded maps".into()));
    }
    let (m1, n1) = (f.arity(), g.arity());
    let arity = m1 + n1 - 1;
    let zeros = vec![0i64; arity];
    let shuffles = signed_shuffles(n1, m1 - 1, &zeros);
    MultiMap::from_fn(f.domain(), f.codomain(), arity, 0, Symmetry::Skew, |x| {
        let mut out = Vector::zero();
        for sh in &shuffles {
            let w = sh.perm.permute(x);
            let inner = g.eval_basis(&w[..n1]);
            if inner.is_zero() {
                continue;
            }
            out.add_scaled(&f.eval_first(&inner, &w[n1..]), &sh.sign);
        }
        out
    })
}

/// `[f, g]_NR = f ⋄ g − (−1)^{mn} g ⋄ f` for `f` of arity `m+1`, `g` of arity `n+1`.
pub fn nr_bracket(f: &MultiMap, g: &MultiMap) -> Result<MultiMap> {
    let a = nr_diamond(f, g)?;
    let b = nr_diamond(g, f)?;
    let (m, n) = (f.arity() as i64 - 1, g.arity() as i64 - 1);
    let mut out = a;
    out.add_scaled_assign(&b, &-sign_pow(m * n))?;
    Ok(out)
}

/// Corestriction of `ρ̃ ∘ τ̃`:
/// `Σ_{Sh(q,p−1)} ε(σ) ρ(τ(v_σ(1..q)), v_σ(q+1..))`.
pub fn coder_compose(rho: &MultiMap, tau: &MultiMap) -> Result<MultiMap> {
    require(rho, Symmetry::Symmetric, "rho")?;
    require(tau, Symmetry::Symmetric, "tau")?;
    if rho.domain() != tau.domain() {
        return Err(Error::Space("rho and tau live on different spaces".into()));
    }
    let (p, q) = (rho.arity(), tau.arity());
    let arity = p + q - 1;
    let degree = rho.degree() + tau.degree();
    MultiMap::from_fn(rho.domain(), rho.codomain(), arity, degree, Symmetry::Symmetric, |v| {
        let degs: Vec<i64> = v.iter().map(|b| b.degree).collect();
        let mut out = Vector::zero();
        for sh in signed_shuffles(q, p - 1, &degs) {
            let w = sh.perm.permute(v);
            let inner = tau.eval_basis(&w[..q]);
            if inner.is_zero() {
                continue;
            }
            out.add_scaled(&rho.eval_first(&inner, &w[q..]), &sh.koszul);
        }
        out
    })
}

/// Corestriction of the commutator of the lifted coderivations.
pub fn coder_bracket(rho: &MultiMap, tau: &MultiMap) -> Result<MultiMap> {
    let mut out = coder_compose(rho, tau)?;
    let back = coder_compose(tau, rho)?;
    out.add_scaled_assign(&back, &-sign_pow(rho.degree() * tau.degree()))?;
    Ok(out)
}

/// The global prefactor `(−1)^{k(k−1)/2}`.
pub fn desuspension_prefactor(k: usize) -> Scalar {
    let k = k as i64;
    sign_pow(k * (k - 1) / 2)
}

/// Koszul sign of `s^{⊗k}` applied to `v_1 ⊗ .. ⊗ v_k`: the `j`-th `s` (odd)
/// passes `v_1..v_{j−1}`.
pub fn suspension_koszul(v_degrees: &[i64]) -> Scalar {
    let k = v_degrees.len() as i64;
    let e: i64 = v_degrees.iter().enumerate().map(|(i, d)| (k - 1 - i as i64) * d).sum();
    sign_pow(e)
}

/// Total sign relating `ρ_k(v_1..v_k)` and `s⁻¹ l_k(s v_1..s v_k)`.
pub fn suspension_sign(v_degrees: &[i64]) -> Scalar {
    desuspension_prefactor(v_degrees.len()) * suspension_koszul(v_degrees)
}

/// `ρ_k = (−1)^{k(k−1)/2} s⁻¹ ∘ l_k ∘ s^{⊗k}`; skew on `L` to symmetric on `s⁻¹L`.
pub fn desuspend_map(l: &MultiMap) -> Result<MultiMap> {
    require(l, Symmetry::Skew, "l")?;
    let k = l.arity();
    let v_space = l.domain().desuspend();
    let degree = l.degree() + k as i64 - 1;
    MultiMap::from_fn(&v_space, &v_space, k, degree, Symmetry::Symmetric, |v| {
        let x: Vec<BasisElement> = v.iter().map(|b| b.shift(1)).collect();
        let degs: Vec<i64> = v.iter().map(|b| b.degree).collect();
        l.eval_basis(&x).shift(-1).scaled(&suspension_sign(&degs))
    })
}

/// `l_k = s ∘ ρ_k ∘ (s⁻¹)^{⊗k}` with the same sign; inverse of `desuspend_map`.
pub fn suspend_map(rho: &MultiMap) -> Result<MultiMap> {
    require(rho, Symmetry::Symmetric, "rho")?;
    let k = rho.arity();
    let l_space = rho.domain().suspend();
    let degree = rho.degree() - k as i64 + 1;
    MultiMap::from_fn(&l_space, &l_space, k, degree, Symmetry::Skew, |x| {
        let v: Vec<BasisElement> = x.iter().map(|b| b.shift(-1)).collect();
        let degs: Vec<i64> = v.iter().map(|b| b.degree).collect();
        rho.eval_basis(&v).shift(1).scaled(&suspension_sign(&degs))
    })
}

/// The identity of a space as an arity-1 map of the given symmetry tag.
pub fn identity_map(space: &crate::graded::GradedSpace, symmetry: Symmetry) -> MultiMap {
    MultiMap::from_fn(space, space, 1, 0, symmetry, |x| Vector::term(x[0], Scalar::one()))
        .expect("identity is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;
    use crate::graded::GradedSpace;

    fn e(i: usize) -> BasisElement {
        BasisElement::new(0, i)
    }

    fn bracket(dim: usize, table: &[((usize, usize), Vec<(usize, i64)>)]) -> MultiMap {
        let g = GradedSpace::ungraded(dim);
        let mut m = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        for ((a, b), out) in table {
            let v = Vector::from_pairs(out.iter().map(|(i, c)| (e(*i), int(*c))));
            m.add_entry(&[e(*a), e(*b)], &v).unwrap();
        }
        m
    }

    #[test]
    fn nr_of_endomorphisms_is_commutator() {
        let g = GradedSpace::ungraded(2);
        let mut f = MultiMap::endo(&g, 1, 0, Symmetry::Skew);
        f.add_entry(&[e(0)], &Vector::basis(e(1))).unwrap();
        let mut h = MultiMap::endo(&g, 1, 0, Symmetry::Skew);
        h.add_entry(&[e(1)], &Vector::basis(e(1))).unwrap();
        let c = nr_bracket(&f, &h).unwrap();
        // f h (e0) - h f (e0) = 0 - e1
        assert_eq!(c.eval_basis(&[e(0)]), Vector::term(e(1), int(-1)));
        assert!(c.eval_basis(&[e(1)]).is_zero());
    }

    #[test]
    fn nr_self_bracket_of_lie_brackets_vanishes() {
        let a1 = bracket(2, &[((0, 1), vec![(0, 1)])]);
        assert!(nr_bracket(&a1, &a1).unwrap().is_zero());
        let heis = bracket(3, &[((0, 1), vec![(2, 1)])]);
        assert!(nr_bracket(&heis, &heis).unwrap().is_zero());
        let bad = bracket(3, &[((0, 1), vec![(0, 1)]), ((1, 2), vec![(1, 1)])]);
        assert!(!nr_bracket(&bad, &bad).unwrap().is_zero());
    }

    #[test]
    fn desuspension_prefactors() {
        assert_eq!(desuspension_prefactor(1), int(1));
        assert_eq!(desuspension_prefactor(2), int(-1));
        assert_eq!(desuspension_prefactor(3), int(-1));

        let l = GradedSpace::new([(0, 1), (1, 1)]);
        let mut l1 = MultiMap::endo(&l, 1, 1, Symmetry::Skew);
        l1.add_entry(&[BasisElement::new(0, 0)], &Vector::basis(BasisElement::new(1, 0))).unwrap();
        let r1 = desuspend_map(&l1).unwrap();
        assert_eq!(r1.eval_basis(&[BasisElement::new(-1, 0)]), Vector::basis(BasisElement::new(0, 0)));

        // on degree 0, the prefactor −1 meets the Koszul sign of s passing an odd v
        let g = GradedSpace::ungraded(2);
        let mut l2 = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        l2.add_entry(&[e(0), e(1)], &Vector::basis(e(0))).unwrap();
        let r2 = desuspend_map(&l2).unwrap();
        let v0 = BasisElement::new(-1, 0);
        let v1 = BasisElement::new(-1, 1);
        assert_eq!(suspension_koszul(&[-1, -1]), int(-1));
        assert_eq!(r2.eval_basis(&[v0, v1]), Vector::basis(v0));
        assert_eq!(r2.eval_basis(&[v1, v0]), Vector::term(v0, int(-1)));
        assert_eq!(suspend_map(&r2).unwrap(), l2);
    }

    #[test]
    fn coder_bracket_of_odd_self() {
        let v = GradedSpace::new([(-1, 2)]);
        let l2 = bracket(2, &[((0, 1), vec![(0, 1)])]);
        let r = desuspend_map(&l2).unwrap();
        assert_eq!(r.domain(), &v);
        let b = coder_bracket(&r, &r).unwrap();
        let c = coder_compose(&r, &r).unwrap();
        assert_eq!(b, c.scaled(&int(2)));
    }
}
