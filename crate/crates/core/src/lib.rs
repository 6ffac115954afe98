//! Exact verification of the generalized power-sum identity and the colored
//! Newton–Girard identities.
//!
//! Every quantity is an exact integer, rational, or integer-coefficient
//! polynomial, so each identity is checked by testing a residual for zero.

pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod exactnum;
pub mod involution;
pub mod newton;
pub mod poly;
pub mod powersum;

pub use error::{Error, Result};
