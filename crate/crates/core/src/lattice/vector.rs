use std::fmt;
use std::ops::{Add, Neg, Sub};

use malachite::num::arithmetic::traits::{Gcd, UnsignedAbs};
use malachite::num::basic::traits::Zero;
use malachite::{Integer, Natural};

use crate::error::{invalid, Result};

/// An exact integer vector, the exponent vector `a` of a monomial `x^a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(Vec<Integer>);

impl IntVector {
    pub fn new(coords: Vec<Integer>) -> Self {
        IntVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![Integer::ZERO; dim])
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Unit vector `e_i` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Integer::from(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Integer] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Integer> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    pub fn dot(&self, other: &IntVector) -> Integer {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Integer::ZERO;
        for (a, b) in self.0.iter().zip(&other.0) {
            if *a != 0 && *b != 0 {
                acc += a * b;
            }
        }
        acc
    }

    pub fn scale(&self, k: &Integer) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn scale_i64(&self, k: i64) -> IntVector {
        self.scale(&Integer::from(k))
    }

    /// `self - k * other`
    pub fn sub_scaled(&self, k: &Integer, other: &IntVector) -> IntVector {
        IntVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - k * b)
                .collect(),
        )
    }

    /// Greatest common divisor of the coordinates (0 for the zero vector).
    pub fn content(&self) -> Natural {
        self.0
            .iter()
            .fold(Natural::ZERO, |g, c| g.gcd(c.unsigned_abs()))
    }

    /// Divide out the content; the zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g == 0u32 || g == 1u32 {
            return self.clone();
        }
        let g = Integer::from(g);
        IntVector(self.0.iter().map(|c| c / &g).collect())
    }

    /// Exact division of every coordinate by `k`, or `None` if some coordinate is not divisible.
    pub fn div_exact(&self, k: &Integer) -> Option<IntVector> {
        use malachite::num::arithmetic::traits::DivisibleBy;
        if *k == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(self.dim());
        for c in &self.0 {
            if !c.divisible_by(k) {
                return None;
            }
            out.push(c / k);
        }
        Some(IntVector(out))
    }

    /// Append one coordinate (used for the Rees degree and fresh variables).
    pub fn extended(&self, last: Integer) -> IntVector {
        let mut c = self.0.clone();
        c.push(last);
        IntVector(c)
    }

    /// Drop the last coordinate.
    pub fn truncated(&self) -> IntVector {
        IntVector(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn last(&self) -> &Integer {
        self.0.last().expect("nonempty vector")
    }
}

impl From<Vec<Integer>> for IntVector {
    fn from(v: Vec<Integer>) -> Self {
        IntVector(v)
    }
}

impl std::ops::Index<usize> for IntVector {
    type Output = Integer;
    fn index(&self, i: usize) -> &Integer {
        &self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    dim: usize,
    rows: Vec<IntVector>,
}

impl IntMatrix {
    pub fn new(dim: usize, rows: Vec<IntVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != dim) {
            return invalid(format!(
                "row {bad} has dimension {} but the matrix has {dim} columns",
                bad.dim()
            ));
        }
        Ok(IntMatrix { dim, rows })
    }

    /// Builds a matrix from nonempty rows, taking the column count from the first row.
    pub fn from_rows(rows: Vec<IntVector>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return invalid("matrix needs at least one row");
        };
        let dim = first.dim();
        Self::new(dim, rows)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    pub fn empty(dim: usize) -> Self {
        IntMatrix { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<IntVector> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}
