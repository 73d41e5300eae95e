//! Exact-arithmetic toolkit for Apery limits: linear recurrences with
//! polynomial coefficients, quotients of their solutions, continued
//! fractions, and recognition of numerical limits via integer relations.

pub mod arith;
pub mod catalog;
pub mod contfrac;
pub mod error;
pub mod exec;
pub mod limits;
pub mod recognize;
pub mod recurrence;
pub mod sums;

pub use error::{Error, Result};
