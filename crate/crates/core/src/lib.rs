//! Exact combinatorics of five equinumerous families counted by the
//! Fishburn numbers 1, 1, 2, 5, 15, 53, 217, ...:
//!
//! * ascent sequences ([`ascent`]),
//! * interval orders, i.e. (2+2)-free posets ([`poset`]),
//! * upper-triangular "staircase" matrices with no zero row or column
//!   ([`matrix`]),
//! * permutations avoiding a restricted 231 occurrence ([`perm`]),
//! * Stoimenow matchings ([`matching`]),
//!
//! together with the bijections between them and an exact truncated
//! multivariate power-series engine ([`series`]) reproducing their
//! generating functions. Everything is integer/rational arithmetic; there
//! is no floating point in this crate.

pub mod ascent;
pub mod dist;
pub mod error;
pub mod matching;
pub mod matrix;
pub mod perm;
pub mod poset;
pub mod series;

pub use error::{Error, Result};
