//! Dicritical divisors of rational functions on two-dimensional regular local
//! rings, modeled as `K[x,y]` localized at the origin.

pub mod cli;
pub mod divisor;
pub mod error;
pub mod field;
pub mod newton;
pub mod parse;
pub mod pencil;
pub mod poly;
pub mod residue;
pub mod valuation;

pub use error::{Error, Result};
