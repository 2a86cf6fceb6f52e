//! Exact decision and enumeration for systems of algebraic equations with
//! integer exponents.

pub mod algebra;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod model;
pub mod reductions;
pub mod solve;
pub mod structure;
pub mod verify;

pub use error::{Error, Result, ValidationError};
