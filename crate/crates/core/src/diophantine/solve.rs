use num_traits::{One, Zero};

use super::rational::{self, RatVector, Rational};
use super::IntMatrix;
use crate::error::Result;

/// Solves `A w^T = (1, ..., 1)^T` over the rationals.
///
/// Reduced row echelon form with the leftmost available pivot in each column;
/// free coordinates are set to zero. `None` when the system is inconsistent.
pub fn rational_solve_all_ones(a: &IntMatrix) -> Result<Option<RatVector>> {
    let d = a.ncols();
    let mut rows: Vec<RatVector> = a
        .rows()
        .iter()
        .map(|r| {
            let mut v: RatVector = r.iter().map(|x| Rational::from_integer(*x)).collect();
            v.push(Rational::one());
            v
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut next = 0;
    for col in 0..d {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let lead = rows[next][col];
        for x in rows[next].iter_mut() {
            *x = rational::div(x, &lead)?;
        }
        for r in 0..rows.len() {
            if r == next || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col];
            for c in col..=d {
                let delta = rational::mul(&factor, &rows[next][c])?;
                rows[r][c] = rational::sub(&rows[r][c], &delta)?;
            }
        }
        pivot_cols.push(col);
        next += 1;
    }

    if rows[next..].iter().any(|r| !r[d].is_zero()) {
        return Ok(None);
    }
    let mut omega = vec![Rational::zero(); d];
    for (r, col) in pivot_cols.iter().enumerate() {
        omega[*col] = rows[r][d];
    }
    Ok(Some(omega))
}
