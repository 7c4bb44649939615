//! Exact integer linear algebra: vectors, Hermite normal form, subgroup membership
//! and nonnegative integer solving.

mod hnf;
mod solve;
mod vector;

pub use hnf::{determinant, group_contains, hnf, rank, LatticeGroup};
pub use solve::{solve_nonneg_integer, solve_rational};
pub use vector::{IntMatrix, IntVector};
