//! Exact computer algebra for compatible Lie, A∞ and L∞ structures on
//! finite-dimensional graded vector spaces.

pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod exactla;
pub mod graded;
pub mod homotopy;
pub mod multilinear;
pub mod report;
pub mod rotabaxter;
#[cfg(feature = "testkit")]
pub mod testkit;
pub mod twoterm;

pub use error::{Error, Result};
pub use exactla::{Matrix, Scalar};
pub use graded::{BasisElement, GradedSpace, Vector};
pub use multilinear::{CoderRep, MultiMap, Permutation, Symmetry, Tensor};
pub use homotopy::{CompatiblePair, Flavor, HomotopyStructure};
pub use report::{Failure, Report};
