//! Semilinear algebra of Dieudonné modules over finite fields and truncated
//! Witt rings, twist classification through finite group tables, and
//! Frobenius-distribution surveys for curves over small finite fields.

pub mod arith;
pub mod dieudonne;
pub mod error;
pub mod group;
pub mod h11;
pub mod linalg;
pub mod par;
pub mod scalar;
pub mod survey;

pub use error::{Error, Result};
