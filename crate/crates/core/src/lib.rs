//! Locally repairable codes from rational and elliptic function fields.
//!
//! The crate builds evaluation codes whose repair groups are free orbits of an
//! automorphism subgroup, extends them with raw message symbols or local
//! parities, and certifies the resulting parameters: rank, locality via actual
//! erasure repair, and minimum distance by exhaustive or bounded search.

pub mod code;
pub mod elliptic;
pub mod error;
pub mod family;
pub mod field;
pub mod linalg;
pub mod mobius;
pub mod poly;
pub mod ratfn;
pub mod rational;

pub use error::{LrcError, Result};
pub use field::{Fe, Field, FieldOp, FieldSpec};
pub use mobius::Mobius;
pub use poly::{lagrange_interpolate, Poly};
pub use ratfn::{Eval, PlaceP1, RatFn};
