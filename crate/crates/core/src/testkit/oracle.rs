//! Reference implementations that share no code with the library kernels:
//! signs by adjacent transpositions and coderivations acting on an explicit
//! model of the symmetric coalgebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactla::{int, Scalar};
use crate::graded::{BasisElement, GradedSpace, Vector};
use crate::multilinear::{MultiMap, Permutation};

fn bubble_parity(word: &mut [usize], odd: impl Fn(usize, usize) -> bool) -> bool {
    let mut flip = false;
    for pass in 0..word.len() {
        for j in 0..word.len().saturating_sub(1 + pass) {
            if word[j] > word[j + 1] {
                if odd(word[j], word[j + 1]) {
                    flip = !flip;
                }
                word.swap(j, j + 1);
            }
        }
    }
    flip
}

fn pm(flip: bool) -> Scalar {
    if flip {
        int(-1)
    } else {
        int(1)
    }
}

/// `ε(σ)`: sort the permuted word back to the original order one adjacent
/// swap at a time, picking up `(−1)^{|a||b|}` per swap.
pub fn koszul_by_sorting(sigma: &Permutation, degrees: &[i64]) -> Scalar {
    let mut w = sigma.images().to_vec();
    pm(bubble_parity(&mut w, |a, b| (degrees[a] * degrees[b]).rem_euclid(2) == 1))
}

/// Sign of `σ` as the parity of adjacent swaps.
pub fn sign_by_sorting(sigma: &Permutation) -> Scalar {
    let mut w = sigma.images().to_vec();
    pm(bubble_parity(&mut w, |_, _| true))
}

/// Whether `σ` is increasing on its first `i` and its last `j` slots.
pub fn is_shuffle(sigma: &Permutation, i: usize) -> bool {
    let im = sigma.images();
    im[..i].windows(2).all(|w| w[0] < w[1]) && im[i..].windows(2).all(|w| w[0] < w[1])
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// A monomial of `S(V)`: basis elements in nondecreasing order.
pub type Monomial = Vec<BasisElement>;

/// An element of `S(V)` in the monomial basis.
pub type SymElement = BTreeMap<Monomial, Scalar>;

/// `w_1 ⊙ .. ⊙ w_n = c · m` with `m` sorted; `None` when an odd element repeats.
pub fn to_monomial(word: &[BasisElement]) -> Option<(Scalar, Monomial)> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| (word[i], i));
    // ranks of the word letters in the sorted order
    let mut rank = vec![0; word.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let flip = bubble_parity(&mut rank, |a, b| (word[order[a]].degree * word[order[b]].degree).rem_euclid(2) == 1);
    let m: Monomial = order.iter().map(|&i| word[i]).collect();
    if m.windows(2).any(|w| w[0] == w[1] && w[0].degree.rem_euclid(2) == 1) {
        return None;
    }
    Some((pm(flip), m))
}

/// Every monomial of length `n` over the basis of `v`.
pub fn monomials(v: &GradedSpace, n: usize) -> Vec<Monomial> {
    fn go(basis: &[BasisElement], from: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in from..basis.len() {
            let b = basis[k];
            // an odd element may appear once
            let next = if b.degree.rem_euclid(2) == 1 { k + 1 } else { k };
            cur.push(b);
            go(basis, next, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut basis = v.basis();
    basis.sort();
    let mut out = Vec::new();
    go(&basis, 0, n, &mut Vec::new(), &mut out);
    out
}

fn add_into(acc: &mut SymElement, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(m.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&m);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// `ρ̃(x_1 ⊙ .. ⊙ x_n) = Σ_S ε · ρ(x_S) ⊙ x_{rest}` over `p`-subsets `S` of slots.
pub fn lift_on_monomial(rho: &MultiMap, m: &[BasisElement]) -> SymElement {
    let p = rho.arity();
    let mut out = SymElement::new();
    if m.len() < p {
        return out;
    }
    let degs: Vec<i64> = m.iter().map(|b| b.degree).collect();
    for s in subsets(m.len(), p) {
        let rest: Vec<usize> = (0..m.len()).filter(|i| !s.contains(i)).collect();
        let images: Vec<usize> = s.iter().chain(&rest).copied().collect();
        let eps = koszul_by_sorting(&Permutation::new(images).expect("bijection"), &degs);
        let args: Vec<BasisElement> = s.iter().map(|&i| m[i]).collect();
        let value = rho.eval_basis(&args);
        for (b, c) in value.iter() {
            let mut word = vec![*b];
            word.extend(rest.iter().map(|&i| m[i]));
            if let Some((sc, mono)) = to_monomial(&word) {
                add_into(&mut out, mono, &eps * c * sc);
            }
        }
    }
    out
}

pub fn lift_apply(rho: &MultiMap, x: &SymElement) -> SymElement {
    let mut out = SymElement::new();
    for (m, c) in x {
        for (m2, c2) in lift_on_monomial(rho, m) {
            add_into(&mut out, m2, c * c2);
        }
    }
    out
}

/// `ρ̃ τ̃ − (−1)^{|ρ||τ|} τ̃ ρ̃` on one monomial.
pub fn lift_commutator(rho: &MultiMap, tau: &MultiMap, m: &[BasisElement]) -> SymElement {
    let x: SymElement = [(m.to_vec(), Scalar::one())].into_iter().collect();
    let mut out = lift_apply(rho, &lift_apply(tau, &x));
    let sign = if (rho.degree() * tau.degree()).rem_euclid(2) == 1 { int(1) } else { int(-1) };
    for (m2, c) in lift_apply(tau, &lift_apply(rho, &x)) {
        add_into(&mut out, m2, c * &sign);
    }
    out
}

/// The length-one part of an element of `S(V)`.
pub fn corestrict(x: &SymElement) -> Vector {
    Vector::from_pairs(x.iter().filter(|(m, _)| m.len() == 1).map(|(m, c)| (m[0], c.clone())))
}
