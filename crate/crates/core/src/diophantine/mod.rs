//! Exact integer and rational linear algebra.
//!
//! Everything here works on checked 64-bit integers: an overflow anywhere aborts
//! the operation with [`Error::Overflow`] instead of wrapping. Rationals are
//! `num_rational::Ratio<i64>` and are only ever combined through the checked
//! operations in [`rational`].

mod graver;
mod kernel;
mod minimal;
mod motzkin;
pub mod rational;
mod solve;

pub use graver::{conformal, graver_basis};
pub use kernel::{kernel_lattice_basis, rank};
pub use minimal::{minimal_nonneg_solutions, DEFAULT_NODE_BUDGET};
pub use motzkin::positivity_witness;
pub use rational::{RatVector, Rational};
pub use solve::rational_solve_all_ones;

use crate::error::{Error, Result};

/// A vector of signed integers.
pub type IntVector = Vec<i64>;

pub(crate) fn checked<T>(value: Option<T>, context: &'static str) -> Result<T> {
    value.ok_or(Error::Overflow(context))
}

/// Componentwise order: `u <= v` iff `v - u` has no negative entry.
pub fn leq(u: &[i64], v: &[i64]) -> bool {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).all(|(a, b)| a <= b)
}

pub fn dot(u: &[i64], v: &[i64]) -> Result<i64> {
    u.iter().zip(v).try_fold(0i64, |acc, (a, b)| {
        checked(a.checked_mul(*b).and_then(|p| acc.checked_add(p)), "dot product")
    })
}

pub fn add(u: &[i64], v: &[i64]) -> Result<IntVector> {
    u.iter()
        .zip(v)
        .map(|(a, b)| checked(a.checked_add(*b), "vector sum"))
        .collect()
}

pub fn sub(u: &[i64], v: &[i64]) -> Result<IntVector> {
    u.iter()
        .zip(v)
        .map(|(a, b)| checked(a.checked_sub(*b), "vector difference"))
        .collect()
}

/// Integer matrix stored by rows; a generator matrix has one generator per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    cols: usize,
}

impl IntMatrix {
    /// Builds a matrix from rows of a common width. An empty row list gives a
    /// `0 x cols` matrix only through [`IntMatrix::empty`].
    pub fn from_rows(rows: Vec<IntVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn empty(cols: usize) -> Self {
        IntMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    /// `uA`, the combination of the rows with coefficients `u`.
    pub fn combine(&self, u: &[i64]) -> Result<IntVector> {
        debug_assert_eq!(u.len(), self.rows.len());
        let mut out = vec![0i64; self.cols];
        for (coef, row) in u.iter().zip(&self.rows) {
            if *coef == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o = checked(
                    x.checked_mul(*coef).and_then(|p| o.checked_add(p)),
                    "row combination",
                )?;
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other` (same width).
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(IntMatrix {
            rows,
            cols: self.cols,
        })
    }

    pub fn negated(&self) -> Result<IntMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| checked(x.checked_neg(), "negation"))
                    .collect::<Result<IntVector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix {
            rows,
            cols: self.cols,
        })
    }
}
