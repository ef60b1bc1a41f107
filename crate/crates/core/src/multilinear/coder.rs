//! Coderivations of the symmetric coalgebra, represented by their
//! corestrictions `S^k V → V`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::{sign_pow, Scalar};
use crate::graded::GradedSpace;
use crate::multilinear::brackets::{coder_bracket, coder_compose, identity_map};
use crate::multilinear::map::{MultiMap, Symmetry};

/// A coderivation of uniform degree given by its arity components.
/// Components of arity above an optional cap are dropped by every operation
/// that takes one; the maps of arity above a cap form an ideal, so truncated
/// brackets are exact in the quotient.
#[derive(Clone, PartialEq, Eq)]
pub struct CoderRep {
    space: GradedSpace,
    degree: i64,
    components: BTreeMap<usize, MultiMap>,
}

impl fmt::Debug for CoderRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CoderRep(degree {})", self.degree)?;
        for m in self.components.values() {
            write!(f, "{m:?}")?;
        }
        Ok(())
    }
}

impl CoderRep {
    pub fn zero(space: &GradedSpace, degree: i64) -> Self {
        CoderRep { space: space.clone(), degree, components: BTreeMap::new() }
    }

    pub fn from_components<I: IntoIterator<Item = MultiMap>>(space: &GradedSpace, degree: i64, maps: I) -> Result<Self> {
        let mut c = CoderRep::zero(space, degree);
        for m in maps {
            c.add_component(&m)?;
        }
        Ok(c)
    }

    /// The lift of `id_V` as a coderivation (it acts by `n` on `S^n V`).
    pub fn identity(space: &GradedSpace) -> Self {
        let mut c = CoderRep::zero(space, 0);
        c.add_component(&identity_map(space, Symmetry::Symmetric)).expect("identity");
        c
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<usize, MultiMap> {
        &self.components
    }

    pub fn component(&self, arity: usize) -> Option<&MultiMap> {
        self.components.get(&arity)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    pub fn add_component(&mut self, m: &MultiMap) -> Result<()> {
        self.add_component_scaled(m, &Scalar::one())
    }

    fn add_component_scaled(&mut self, m: &MultiMap, c: &Scalar) -> Result<()> {
        if m.symmetry() != Symmetry::Symmetric {
            return Err(Error::Symmetry("coderivation components must be symmetric".into()));
        }
        if m.domain() != &self.space || m.codomain() != &self.space {
            return Err(Error::Space("component lives on a different space".into()));
        }
        if m.degree() != self.degree {
            return Err(Error::Degree(format!("component of degree {} in a degree {} coderivation", m.degree(), self.degree)));
        }
        if m.arity() == 0 {
            return Err(Error::Arity { expected: 1, got: 0 });
        }
        if m.is_zero() {
            return Ok(());
        }
        let k = m.arity();
        match self.components.get_mut(&k) {
            Some(e) => {
                e.add_scaled_assign(m, c)?;
                if e.is_zero() {
                    self.components.remove(&k);
                }
            }
            None => {
                self.components.insert(k, m.scaled(c));
            }
        }
        Ok(())
    }

    pub fn truncated(&self, cap: Option<usize>) -> CoderRep {
        let mut c = self.clone();
        if let Some(cap) = cap {
            c.components.retain(|k, _| *k <= cap);
        }
        c
    }

    pub fn add_scaled_assign(&mut self, other: &CoderRep, c: &Scalar) -> Result<()> {
        self.check_compatible(other)?;
        if other.degree != self.degree {
            return Err(Error::Degree("adding coderivations of different degree".into()));
        }
        for m in other.components.values() {
            self.add_component_scaled(m, c)?;
        }
        Ok(())
    }

    pub fn sum(&self, other: &CoderRep) -> Result<CoderRep> {
        let mut c = self.clone();
        c.add_scaled_assign(other, &Scalar::one())?;
        Ok(c)
    }

    pub fn difference(&self, other: &CoderRep) -> Result<CoderRep> {
        let mut c = self.clone();
        c.add_scaled_assign(other, &-Scalar::one())?;
        Ok(c)
    }

    pub fn scaled(&self, c: &Scalar) -> CoderRep {
        let mut out = CoderRep::zero(&self.space, self.degree);
        for m in self.components.values() {
            out.add_component_scaled(m, c).expect("same shape");
        }
        out
    }

    fn check_compatible(&self, other: &CoderRep) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Space("coderivations on different spaces".into()));
        }
        Ok(())
    }

    fn pairwise<F>(&self, other: &CoderRep, cap: Option<usize>, f: F) -> Result<CoderRep>
    where
        F: Fn(&MultiMap, &MultiMap) -> Result<MultiMap>,
    {
        self.check_compatible(other)?;
        let mut out = CoderRep::zero(&self.space, self.degree + other.degree);
        for (p, a) in &self.components {
            for (q, b) in &other.components {
                if cap.is_some_and(|c| p + q - 1 > c) {
                    continue;
                }
                out.add_component(&f(a, b)?)?;
            }
        }
        Ok(out)
    }

    /// Corestriction of `self̃ ∘ other̃`.
    pub fn compose(&self, other: &CoderRep, cap: Option<usize>) -> Result<CoderRep> {
        self.pairwise(other, cap, coder_compose)
    }

    /// `[self, other]_C`.
    pub fn bracket(&self, other: &CoderRep, cap: Option<usize>) -> Result<CoderRep> {
        self.pairwise(other, cap, coder_bracket)
    }

    /// `[self, other]_C` computed as `self ∘ other − (−1)^{|self||other|} other ∘ self`
    /// from component compositions; equal to `bracket`.
    pub fn bracket_via_compose(&self, other: &CoderRep, cap: Option<usize>) -> Result<CoderRep> {
        let mut a = self.compose(other, cap)?;
        let b = other.compose(self, cap)?;
        a.add_scaled_assign(&b, &-sign_pow(self.degree * other.degree))?;
        Ok(a)
    }
}
