//! Numerical laboratory for Cantor-set constructions, coded measures,
//! Riesz s-energies, and box-counting dimension estimates.
//!
//! The crate is organized around a small pipeline: build a Cantor set from a
//! removal schedule ([`cantor`]), put a coding measure on its addresses
//! ([`measure`]), push it forward through a function on code space
//! ([`funcgen`]), and interrogate the result with energy sums ([`energy`])
//! and box counts ([`boxdim`]).

pub mod boxdim;
pub mod cantor;
pub mod energy;
pub mod error;
pub mod funcgen;
pub mod measure;
pub mod numerics;
pub mod rng;

pub use error::{Error, Result};
