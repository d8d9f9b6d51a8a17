//! Exact decision procedures for mixed trigonometric-polynomials: positive
//! root bounds, square-free factorization into real factors, and sign
//! determination on bounded intervals and on the positive half-line.

pub mod arctan;
pub mod arith;
pub mod bound;
pub mod error;
pub mod factor;
pub mod mtp;
pub mod numeric;
pub mod poly;
pub mod sign;
pub mod trace;

pub use error::{Error, Result};
