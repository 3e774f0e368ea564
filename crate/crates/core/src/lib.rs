//! Holomorphy semigroups of Artin L-functions, modeled on exponent vectors.
//!
//! Elements of the free semigroup generated by `f_1, ..., f_r` are exponent
//! vectors in `N^r`; a hypothetical order profile `v` at a point `s0` makes
//! the holomorphic elements the set `{k : <k, v> >= 0}`. This crate computes
//! the Hilbert basis of that semigroup with two independent engines, decides
//! the holomorphy criteria built from factoriality and divisibility, and
//! sweeps whole families of order profiles to check that the criteria agree.

pub mod catalog;
pub mod conditions;
pub mod error;
pub mod hilbert;
pub mod hnf;
pub mod model;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
