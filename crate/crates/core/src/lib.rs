//! Exact computations with left-invariant orderings on countable groups.
//!
//! The crate covers concrete ordering oracles (Dehornoy and
//! Dubrovina–Dubrovin orderings of braid groups, slope orderings of `Z^n`,
//! Smirnov orderings of the rational affine group, the Magnus ordering of
//! free groups, the four orderings of the Klein-bottle group), operators on
//! orderings, finite approximations of the space of orderings, Conrad-type
//! diagnostics, and dynamical realizations.

pub mod acceptance;
pub mod braid;
pub mod error;
pub mod groups;
pub mod orders;
pub mod orderspace;
pub mod quadratic;
pub mod realization;

pub use error::{Error, Result};
