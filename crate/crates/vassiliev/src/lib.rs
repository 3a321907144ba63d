//! Exact-arithmetic toolkit for oriented and singular braid calculus: move
//! words, the Birman-Lin expansion engine, Jones/Conway evaluation, and
//! verification of the finite type difference formula at desk scale.

pub mod algebra;
pub mod braid;
pub mod error;
pub mod invariants;
pub mod moves;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
