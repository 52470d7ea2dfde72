//! Lower bounds for the p-part of class numbers of division fields
//! `Q(E[p^n])`, for elliptic curves over `Q` with multiplicative reduction
//! at `p`.

pub mod arith;
pub mod bound;
pub mod curve;
pub mod error;
pub mod galois;
pub mod padic;
pub mod tate;
pub mod reduction;
pub mod report;

pub use error::{Error, Result};
