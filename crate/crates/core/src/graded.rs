//! Finite-dimensional Z-graded vector spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactla::{format_scalar, Scalar};

/// A basis element addressed by `(degree, index)`. Ordering is lexicographic,
/// which is the canonical order used for every sign normalization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub degree: i64,
    pub index: usize,
}

impl BasisElement {
    pub const fn new(degree: i64, index: usize) -> Self {
        BasisElement { degree, index }
    }

    pub fn shift(self, by: i64) -> Self {
        BasisElement { degree: self.degree + by, index: self.index }
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.degree, self.index)
    }
}

#[derive(Clone, Default)]
pub struct GradedSpace {
    dims: BTreeMap<i64, usize>,
    labels: BTreeMap<BasisElement, String>,
}

/// Labels are presentation only; equality compares dimensions.
impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims
    }
}

impl Eq for GradedSpace {}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSpace{:?}", self.dims)
    }
}

impl GradedSpace {
    pub fn new<I: IntoIterator<Item = (i64, usize)>>(dims: I) -> Self {
        let mut d = BTreeMap::new();
        for (deg, n) in dims {
            if n > 0 {
                *d.entry(deg).or_insert(0) += n;
            }
        }
        GradedSpace { dims: d, labels: BTreeMap::new() }
    }

    /// A space concentrated in degree 0.
    pub fn ungraded(n: usize) -> Self {
        GradedSpace::new([(0, n)])
    }

    pub fn with_labels(mut self, labels: BTreeMap<BasisElement, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &BTreeMap<BasisElement, String> {
        &self.labels
    }

    pub fn label(&self, b: BasisElement) -> String {
        self.labels.get(&b).cloned().unwrap_or_else(|| format!("{b:?}"))
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn degrees(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn contains(&self, b: BasisElement) -> bool {
        b.index < self.dim(b.degree)
    }

    /// All basis elements in canonical order.
    pub fn basis(&self) -> Vec<BasisElement> {
        self.dims.iter().flat_map(|(&d, &n)| (0..n).map(move |i| BasisElement::new(d, i))).collect()
    }

    pub fn basis_in_degree(&self, degree: i64) -> Vec<BasisElement> {
        (0..self.dim(degree)).map(|i| BasisElement::new(degree, i)).collect()
    }

    /// Position of `b` in `basis()`.
    pub fn flat_index(&self, b: BasisElement) -> usize {
        self.dims.range(..b.degree).map(|(_, n)| n).sum::<usize>() + b.index
    }

    /// Every degree component moved by `by`.
    pub fn shift(&self, by: i64) -> GradedSpace {
        GradedSpace {
            dims: self.dims.iter().map(|(d, n)| (d + by, *n)).collect(),
            labels: self.labels.iter().map(|(b, l)| (b.shift(by), l.clone())).collect(),
        }
    }

    /// `V_i = L_{i+1}`.
    pub fn desuspend(&self) -> GradedSpace {
        self.shift(-1)
    }

    pub fn suspend(&self) -> GradedSpace {
        self.shift(1)
    }

    /// Direct sum, the basis of `other` placed after that of `self` in each degree.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        let mut dims = self.dims.clone();
        for (d, n) in &other.dims {
            *dims.entry(*d).or_insert(0) += n;
        }
        GradedSpace { dims, labels: BTreeMap::new() }
    }
}

/// Sparse vector with exact coordinates.
#[derive(Clone, PartialEq, Eq, Default, PartialOrd, Ord)]
pub struct Vector {
    coords: BTreeMap<BasisElement, Scalar>,
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coords.iter().map(|(b, c)| format!("{}*{b:?}", format_scalar(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(b: BasisElement) -> Self {
        Vector::term(b, Scalar::from_integer(1.into()))
    }

    pub fn term(b: BasisElement, c: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(b, c);
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (BasisElement, Scalar)>>(it: I) -> Self {
        let mut v = Vector::zero();
        for (b, c) in it {
            v.add_term(b, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &BTreeMap<BasisElement, Scalar> {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisElement, &Scalar)> {
        self.coords.iter()
    }

    pub fn coeff(&self, b: BasisElement) -> Scalar {
        self.coords.get(&b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, b: BasisElement, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(b).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.coords {
            self.add_term(*b, x * c);
        }
    }

    pub fn add(&mut self, other: &Vector) {
        for (b, x) in &other.coords {
            self.add_term(*b, x.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { coords: self.coords.iter().map(|(b, x)| (*b, x * c)).collect() }
    }

    pub fn neg(&self) -> Vector {
        Vector { coords: self.coords.iter().map(|(b, x)| (*b, -x.clone())).collect() }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(other, &-Scalar::from_integer(1.into()));
        v
    }

    /// The common degree of all nonzero coordinates, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.coords.keys().map(|b| b.degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn shift(&self, by: i64) -> Vector {
        Vector { coords: self.coords.iter().map(|(b, x)| (b.shift(by), x.clone())).collect() }
    }

    /// Keep only coordinates in the given degree.
    pub fn restrict(&self, degree: i64) -> Vector {
        Vector { coords: self.coords.iter().filter(|(b, _)| b.degree == degree).map(|(b, x)| (*b, x.clone())).collect() }
    }

    /// Dense coordinates with respect to `space.basis()`.
    pub fn to_dense(&self, space: &GradedSpace) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); space.total_dim()];
        for (b, x) in &self.coords {
            out[space.flat_index(*b)] = x.clone();
        }
        out
    }

    pub fn from_dense(space: &GradedSpace, coords: &[Scalar]) -> Vector {
        Vector::from_pairs(space.basis().into_iter().zip(coords.iter().cloned()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suspension_examples() {
        assert_eq!(GradedSpace::new([(0, 2)]).desuspend(), GradedSpace::new([(-1, 2)]));
        assert_eq!(GradedSpace::new([(-1, 1), (0, 1)]).desuspend(), GradedSpace::new([(-2, 1), (-1, 1)]));
        assert_eq!(GradedSpace::new([]).desuspend(), GradedSpace::new([]));
        assert_eq!(GradedSpace::new([(-1, 2)]).suspend(), GradedSpace::new([(0, 2)]));
        let x = GradedSpace::new([(-1, 1), (0, 3)]);
        assert_eq!(x.desuspend().suspend(), x);
        assert_eq!(GradedSpace::new([(5, 1)]).suspend(), GradedSpace::new([(6, 1)]));
    }

    #[test]
    fn flat_indexing() {
        let s = GradedSpace::new([(-1, 2), (0, 3)]);
        let b = s.basis();
        assert_eq!(b.len(), 5);
        for (i, e) in b.iter().enumerate() {
            assert_eq!(s.flat_index(*e), i);
        }
    }

    #[test]
    fn vector_degree() {
        let mut v = Vector::basis(BasisElement::new(0, 1));
        assert_eq!(v.degree(), Some(0));
        v.add_term(BasisElement::new(1, 0), Scalar::from_integer(2.into()));
        assert!(!v.is_homogeneous());
        assert!(Vector::zero().is_homogeneous());
    }
}
