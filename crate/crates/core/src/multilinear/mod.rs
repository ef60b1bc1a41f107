//! Sign and shuffle combinatorics, multilinear maps and the brackets built on
//! them.

pub mod brackets;
pub mod coder;
pub mod map;
pub mod perm;
pub mod tensor;

pub use brackets::{coder_bracket, coder_compose, desuspend_map, identity_map, nr_bracket, nr_diamond, suspend_map};
pub use coder::CoderRep;
pub use map::{canonical_tuples, normalize, MultiMap, Symmetry};
pub use perm::{chi_sign, koszul_sign, shuffles, Permutation};
pub use tensor::{Dense, Tensor};
