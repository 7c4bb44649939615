//! Exact monomial-scale models of affine semigroup rings, monomial ideals, Rees rings and
//! associated graded rings, with witness-producing checks for normality, seminormality and
//! weak normality, and a randomized harness that asserts the lifting and ascent
//! implications between them.

pub mod cone;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod io;
pub mod lattice;
pub mod monoid;
pub mod rees;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, IntVector};
