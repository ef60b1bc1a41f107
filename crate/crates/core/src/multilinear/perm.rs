//! Permutations, Koszul signs and shuffles.

use crate::error::{Error, Result};
use crate::exactla::{sign_pow, Scalar};

/// A bijection of `{0..k}`; `images[i]` is `σ(i)`. The permuted word of
/// `(x_0, .., x_{k-1})` is `(x_σ(0), .., x_σ(k-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Precondition(format!("not a bijection: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From the one-based image list `σ(1), .., σ(k)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Precondition("one-based images must be positive".into()));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(k: usize) -> Self {
        Permutation { images: (0..k).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Permuted word `(w_σ(0), ..)`.
    pub fn permute<T: Clone>(&self, word: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| word[i].clone()).collect()
    }

    pub fn sign(&self) -> Scalar {
        let mut inv = 0i64;
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.images[a] > self.images[b] {
                    inv += 1;
                }
            }
        }
        sign_pow(inv)
    }

    /// All permutations of size `k`, lexicographic.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Koszul sign `ε(σ)` with `x_1 ⊙ .. ⊙ x_k = ε(σ) x_σ(1) ⊙ .. ⊙ x_σ(k)`.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i64]) -> Result<Scalar> {
    if degrees.len() != sigma.len() {
        return Err(Error::Arity { expected: sigma.len(), got: degrees.len() });
    }
    Ok(koszul_exponent(sigma.images(), degrees))
}

fn koszul_exponent(images: &[usize], degrees: &[i64]) -> Scalar {
    let mut e = 0i64;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                e += degrees[images[a]] * degrees[images[b]];
            }
        }
    }
    sign_pow(e)
}

/// `χ(σ) = sgn(σ) ε(σ)`, the sign for graded skew-symmetry.
pub fn chi_sign(sigma: &Permutation, degrees: &[i64]) -> Result<Scalar> {
    Ok(sigma.sign() * koszul_sign(sigma, degrees)?)
}

/// `(i, j)`-shuffles: increasing on the first `i` and the last `j` slots.
/// Ordered lexicographically by the first block.
pub fn shuffles(i: usize, j: usize) -> Vec<Permutation> {
    let n = i + j;
    let mut out = Vec::new();
    let mut first: Vec<usize> = (0..i).collect();
    loop {
        let mut images = first.clone();
        images.extend((0..n).filter(|x| !first.contains(x)));
        out.push(Permutation { images });
        // next i-subset of 0..n in lexicographic order
        let Some(p) = (0..i).rev().find(|&p| first[p] < n - i + p) else { break };
        first[p] += 1;
        for q in p + 1..i {
            first[q] = first[q - 1] + 1;
        }
    }
    out
}

/// A shuffle together with its Koszul sign and its sign, for a degree word.
#[derive(Clone, Debug)]
pub struct SignedShuffle {
    pub perm: Permutation,
    pub koszul: Scalar,
    pub sign: Scalar,
}

pub fn signed_shuffles(i: usize, j: usize, degrees: &[i64]) -> Vec<SignedShuffle> {
    shuffles(i, j)
        .into_iter()
        .map(|perm| {
            let koszul = koszul_exponent(perm.images(), degrees);
            let sign = perm.sign();
            SignedShuffle { perm, koszul, sign }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn koszul_examples() {
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(koszul_sign(&Permutation::identity(3), &[1, 3, 5]).unwrap(), int(1));
        assert_eq!(koszul_sign(&swap, &[1, 1]).unwrap(), int(-1));
        assert_eq!(koszul_sign(&swap, &[0, 1]).unwrap(), int(1));
        assert!(koszul_sign(&swap, &[0]).is_err());
    }

    #[test]
    fn chi_examples() {
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(chi_sign(&Permutation::identity(2), &[0, 0]).unwrap(), int(1));
        assert_eq!(chi_sign(&swap, &[0, 0]).unwrap(), int(-1));
        assert_eq!(chi_sign(&swap, &[1, 1]).unwrap(), int(1));
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(1, 1).len(), 2);
        assert_eq!(shuffles(2, 1).len(), 3);
        assert_eq!(shuffles(0, 3), vec![Permutation::identity(3)]);
        assert_eq!(shuffles(0, 0), vec![Permutation::identity(0)]);
    }

    #[test]
    fn all_perms() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }
}
