//! Graded multilinear maps stored as exact structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{sign_pow, Scalar};
use crate::graded::{BasisElement, GradedSpace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Skew,
    Symmetric,
    None,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Skew => "skew",
            Symmetry::Symmetric => "symmetric",
            Symmetry::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Symmetry> {
        match s {
            "skew" => Some(Symmetry::Skew),
            "symmetric" => Some(Symmetry::Symmetric),
            "none" => Some(Symmetry::None),
            _ => Option::None,
        }
    }

    /// Whether a repeated argument of this degree forces the value to zero.
    pub fn repeat_vanishes(self, degree: i64) -> bool {
        match self {
            Symmetry::Skew => degree.rem_euclid(2) == 0,
            Symmetry::Symmetric => degree.rem_euclid(2) == 1,
            Symmetry::None => false,
        }
    }
}

/// Sort `args` into canonical order. Returns the sign relating the value on
/// `args` to the value on the sorted tuple, or `None` when the symmetry forces
/// the value to vanish.
pub fn normalize(args: &[BasisElement], symmetry: Symmetry) -> Option<(Scalar, Vec<BasisElement>)> {
    if symmetry == Symmetry::None {
        return Some((Scalar::one(), args.to_vec()));
    }
    let mut e = 0i64;
    for a in 0..args.len() {
        for b in a + 1..args.len() {
            if args[a] == args[b] {
                if symmetry.repeat_vanishes(args[a].degree) {
                    return Option::None;
                }
            } else if args[a] > args[b] {
                e += args[a].degree * args[b].degree;
                if symmetry == Symmetry::Skew {
                    e += 1;
                }
            }
        }
    }
    let mut sorted = args.to_vec();
    sorted.sort();
    Some((sign_pow(e), sorted))
}

/// Canonical argument tuples of length `k` for the given symmetry: sorted
/// with repetition, minus the ones forced to vanish. For `Symmetry::None`, all
/// tuples.
pub fn canonical_tuples(space: &GradedSpace, k: usize, symmetry: Symmetry) -> Vec<Vec<BasisElement>> {
    let basis = space.basis();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        basis: &[BasisElement],
        k: usize,
        symmetry: Symmetry,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<BasisElement>>,
    ) {
        if cur.len() == k {
            out.push(cur.iter().map(|&i| basis[i]).collect());
            return;
        }
        let start = match (symmetry, cur.last()) {
            (Symmetry::None, _) | (_, Option::None) => 0,
            (_, Some(&last)) => last,
        };
        for i in start..basis.len() {
            if symmetry != Symmetry::None && cur.last() == Some(&i) && symmetry.repeat_vanishes(basis[i].degree) {
                continue;
            }
            cur.push(i);
            rec(basis, k, symmetry, cur, out);
            cur.pop();
        }
    }
    rec(&basis, k, symmetry, &mut cur, &mut out);
    out
}

/// A multilinear map `domain^{⊗k} → codomain` of fixed degree.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiMap {
    domain: GradedSpace,
    codomain: GradedSpace,
    arity: usize,
    degree: i64,
    symmetry: Symmetry,
    entries: BTreeMap<Vec<BasisElement>, Vector>,
}

impl fmt::Debug for MultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MultiMap(arity {}, degree {}, {})", self.arity, self.degree, self.symmetry.name())?;
        for (k, v) in &self.entries {
            writeln!(f, "  {k:?} -> {v:?}")?;
        }
        Ok(())
    }
}

impl MultiMap {
    pub fn new(domain: GradedSpace, codomain: GradedSpace, arity: usize, degree: i64, symmetry: Symmetry) -> Self {
        MultiMap { domain, codomain, arity, degree, symmetry, entries: BTreeMap::new() }
    }

    /// A map from a space to itself.
    pub fn endo(space: &GradedSpace, arity: usize, degree: i64, symmetry: Symmetry) -> Self {
        MultiMap::new(space.clone(), space.clone(), arity, degree, symmetry)
    }

    /// Build by evaluating `f` on every canonical tuple whose output degree is
    /// present in the codomain. `f` must respect the declared symmetry.
    pub fn from_fn<F>(
        domain: &GradedSpace,
        codomain: &GradedSpace,
        arity: usize,
        degree: i64,
        symmetry: Symmetry,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&[BasisElement]) -> Vector + Sync + Send,
    {
        let mut m = MultiMap::new(domain.clone(), codomain.clone(), arity, degree, symmetry);
        let tuples: Vec<Vec<BasisElement>> = canonical_tuples(domain, arity, symmetry)
            .into_iter()
            .filter(|t| codomain.dim(m.out_degree(t)) > 0)
            .collect();
        let values: Vec<Vector> = if tuples.len() > 64 {
            tuples.par_iter().map(|t| f(t)).collect()
        } else {
            tuples.iter().map(|t| f(t)).collect()
        };
        for (t, v) in tuples.into_iter().zip(values) {
            m.add_entry(&t, &v)?;
        }
        Ok(m)
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedSpace {
        &self.codomain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn entries(&self) -> &BTreeMap<Vec<BasisElement>, Vector> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn out_degree(&self, args: &[BasisElement]) -> i64 {
        args.iter().map(|b| b.degree).sum::<i64>() + self.degree
    }

    /// Structural equality ignoring map metadata other than arity and degree.
    pub fn same_shape(&self, other: &MultiMap) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.arity == other.arity
            && self.degree == other.degree
            && self.symmetry == other.symmetry
    }

    fn check_args(&self, args: &[BasisElement]) -> Result<()> {
        if args.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, got: args.len() });
        }
        if let Some(b) = args.iter().find(|b| !self.domain.contains(**b)) {
            return Err(Error::Space(format!("{b:?} is not a basis element of the domain")));
        }
        Ok(())
    }

    /// Add `value` to the entry at `args`, normalizing by the symmetry sign.
    /// Keys forced to vanish are dropped.
    pub fn add_entry(&mut self, args: &[BasisElement], value: &Vector) -> Result<()> {
        self.check_args(args)?;
        if value.is_zero() {
            return Ok(());
        }
        let d = self.out_degree(args);
        if value.degree() != Some(d) {
            return Err(Error::Degree(format!("value {value:?} on {args:?} must be homogeneous of degree {d}")));
        }
        if let Some(b) = value.iter().map(|(b, _)| *b).find(|b| !self.codomain.contains(*b)) {
            return Err(Error::Space(format!("{b:?} is not a basis element of the codomain")));
        }
        let Some((sign, key)) = normalize(args, self.symmetry) else { return Ok(()) };
        let e = self.entries.entry(key.clone()).or_default();
        e.add_scaled(value, &sign);
        if e.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    /// Overwrite the entry for a canonical key.
    pub fn set_entry(&mut self, args: &[BasisElement], value: Vector) -> Result<()> {
        self.check_args(args)?;
        match normalize(args, self.symmetry) {
            Option::None if value.is_zero() => Ok(()),
            Option::None => Err(Error::Precondition(format!("key {args:?} is forced to vanish by symmetry"))),
            Some((_, key)) if key != args => Err(Error::Precondition(format!("key {args:?} is not canonical"))),
            Some(_) => {
                self.entries.remove(args);
                self.add_entry(args, &value)
            }
        }
    }

    /// Value on basis arguments, using the sign rules of the symmetry type.
    pub fn eval_basis(&self, args: &[BasisElement]) -> Vector {
        debug_assert_eq!(args.len(), self.arity);
        let Some((sign, key)) = normalize(args, self.symmetry) else { return Vector::zero() };
        match self.entries.get(&key) {
            Some(v) => v.scaled(&sign),
            Option::None => Vector::zero(),
        }
    }

    /// Checked evaluation.
    pub fn evaluate(&self, args: &[BasisElement]) -> Result<Vector> {
        self.check_args(args)?;
        Ok(self.eval_basis(args))
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[Vector]) -> Vector {
        debug_assert_eq!(args.len(), self.arity);
        let mut out = Vector::zero();
        let mut cur: Vec<BasisElement> = Vec::with_capacity(args.len());
        self.eval_rec(args, &mut cur, Scalar::one(), &mut out);
        out
    }

    fn eval_rec(&self, args: &[Vector], cur: &mut Vec<BasisElement>, coeff: Scalar, out: &mut Vector) {
        if cur.len() == args.len() {
            out.add_scaled(&self.eval_basis(cur), &coeff);
            return;
        }
        for (b, c) in args[cur.len()].iter() {
            cur.push(*b);
            self.eval_rec(args, cur, &coeff * c, out);
            cur.pop();
        }
    }

    /// `self(v, rest)` with the first argument a vector.
    pub fn eval_first(&self, first: &Vector, rest: &[BasisElement]) -> Vector {
        let mut out = Vector::zero();
        let mut args = Vec::with_capacity(rest.len() + 1);
        args.push(BasisElement::new(0, 0));
        args.extend_from_slice(rest);
        for (b, c) in first.iter() {
            args[0] = *b;
            out.add_scaled(&self.eval_basis(&args), c);
        }
        out
    }

    pub fn add_assign(&mut self, other: &MultiMap) -> Result<()> {
        self.add_scaled_assign(other, &Scalar::one())
    }

    pub fn add_scaled_assign(&mut self, other: &MultiMap, c: &Scalar) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::Space("adding maps of different shape".into()));
        }
        if c.is_zero() {
            return Ok(());
        }
        for (k, v) in &other.entries {
            let e = self.entries.entry(k.clone()).or_default();
            e.add_scaled(v, c);
            if e.is_zero() {
                self.entries.remove(k);
            }
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Scalar) -> MultiMap {
        let mut m = MultiMap::new(self.domain.clone(), self.codomain.clone(), self.arity, self.degree, self.symmetry);
        if !c.is_zero() {
            m.entries = self.entries.iter().map(|(k, v)| (k.clone(), v.scaled(c))).collect();
        }
        m
    }

    pub fn neg(&self) -> MultiMap {
        self.scaled(&-Scalar::one())
    }

    pub fn sum(&self, other: &MultiMap) -> Result<MultiMap> {
        let mut m = self.clone();
        m.add_assign(other)?;
        Ok(m)
    }

    pub fn difference(&self, other: &MultiMap) -> Result<MultiMap> {
        let mut m = self.clone();
        m.add_scaled_assign(other, &-Scalar::one())?;
        Ok(m)
    }

    pub fn zero_like(&self) -> MultiMap {
        MultiMap::new(self.domain.clone(), self.codomain.clone(), self.arity, self.degree, self.symmetry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn e(i: usize) -> BasisElement {
        BasisElement::new(0, i)
    }

    #[test]
    fn skew_swap() {
        let g = GradedSpace::ungraded(2);
        let mut l2 = MultiMap::endo(&g, 2, 0, Symmetry::Skew);
        l2.add_entry(&[e(0), e(1)], &Vector::basis(e(0))).unwrap();
        assert_eq!(l2.evaluate(&[e(1), e(0)]).unwrap(), Vector::term(e(0), int(-1)));
        assert!(l2.evaluate(&[e(0), e(0)]).unwrap().is_zero());
        assert!(l2.evaluate(&[e(0)]).is_err());
    }

    #[test]
    fn symmetric_odd_repeat() {
        let v = GradedSpace::new([(-1, 1), (0, 1)]);
        let odd = BasisElement::new(-1, 0);
        let even = BasisElement::new(0, 0);
        let mut r = MultiMap::endo(&v, 2, 1, Symmetry::Symmetric);
        r.add_entry(&[odd, odd], &Vector::basis(BasisElement::new(-1, 0))).unwrap();
        assert!(r.eval_basis(&[odd, odd]).is_zero());
        r.add_entry(&[odd, even], &Vector::basis(even)).unwrap();
        assert_eq!(r.eval_basis(&[even, odd]), Vector::basis(even));
    }

    #[test]
    fn odd_repeat_allowed_for_skew() {
        let l = GradedSpace::new([(1, 1), (2, 1)]);
        let x = BasisElement::new(1, 0);
        let mut m = MultiMap::endo(&l, 2, 0, Symmetry::Skew);
        m.add_entry(&[x, x], &Vector::basis(BasisElement::new(2, 0))).unwrap();
        assert!(!m.eval_basis(&[x, x]).is_zero());
    }

    #[test]
    fn degree_is_enforced() {
        let g = GradedSpace::new([(0, 1), (1, 1)]);
        let mut m = MultiMap::endo(&g, 1, 0, Symmetry::Skew);
        assert!(m.add_entry(&[BasisElement::new(0, 0)], &Vector::basis(BasisElement::new(1, 0))).is_err());
    }

    #[test]
    fn canonical_tuple_counts() {
        let v = GradedSpace::new([(-1, 2)]);
        assert_eq!(canonical_tuples(&v, 2, Symmetry::Symmetric).len(), 1);
        assert_eq!(canonical_tuples(&v, 2, Symmetry::Skew).len(), 3);
        assert_eq!(canonical_tuples(&v, 2, Symmetry::None).len(), 4);
        assert_eq!(canonical_tuples(&v, 0, Symmetry::Skew), vec![Vec::<BasisElement>::new()]);
    }
}
