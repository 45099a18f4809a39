use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{self, RatVector, Rational};
use super::{checked, IntMatrix};
use crate::error::{Error, Result};

const MAX_INEQUALITIES: usize = 200_000;

/// `coeffs . x >= rhs`, coefficients primitive (gcd 1) unless all zero.
#[derive(Debug, Clone)]
struct Inequality {
    coeffs: Vec<i64>,
    rhs: Rational,
}

impl Inequality {
    fn normalized(coeffs: Vec<i64>, rhs: Rational) -> Result<Self> {
        let g = coeffs.iter().fold(0i64, |acc, c| acc.gcd(c));
        if g <= 1 {
            return Ok(Inequality { coeffs, rhs });
        }
        let rhs = rational::div(&rhs, &Rational::from_integer(g))?;
        Ok(Inequality {
            coeffs: coeffs.into_iter().map(|c| c / g).collect(),
            rhs,
        })
    }
}

/// Keeps, for every coefficient vector, only the tightest right-hand side.
fn prune(system: Vec<Inequality>) -> Result<Option<Vec<Inequality>>> {
    let mut best: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for ineq in system {
        if ineq.coeffs.iter().all(|c| *c == 0) {
            if ineq.rhs > Rational::zero() {
                return Ok(None);
            }
            continue;
        }
        best.entry(ineq.coeffs)
            .and_modify(|r| {
                if ineq.rhs > *r {
                    *r = ineq.rhs;
                }
            })
            .or_insert(ineq.rhs);
    }
    if best.len() > MAX_INEQUALITIES {
        return Err(Error::BudgetExceeded {
            what: "Fourier-Motzkin inequality",
            limit: MAX_INEQUALITIES,
        });
    }
    Ok(Some(
        best.into_iter()
            .map(|(coeffs, rhs)| Inequality { coeffs, rhs })
            .collect(),
    ))
}

fn eliminate(system: &[Inequality], var: usize) -> Result<Vec<Inequality>> {
    let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for ineq in system {
        match ineq.coeffs[var].signum() {
            1 => lower.push(ineq),
            -1 => upper.push(ineq),
            _ => rest.push(ineq.clone()),
        }
    }
    for p in &lower {
        for q in &upper {
            let (cp, cq) = (p.coeffs[var], -q.coeffs[var]);
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(a, b)| {
                    checked(
                        a.checked_mul(cq)
                            .and_then(|x| b.checked_mul(cp).and_then(|y| x.checked_add(y))),
                        "Fourier-Motzkin combination",
                    )
                })
                .collect::<Result<Vec<i64>>>()?;
            let rhs = rational::add(
                &rational::mul(&p.rhs, &Rational::from_integer(cq))?,
                &rational::mul(&q.rhs, &Rational::from_integer(cp))?,
            )?;
            rest.push(Inequality::normalized(coeffs, rhs)?);
        }
    }
    Ok(rest)
}

/// Finds `r` with `a_i . r >= 1` for every row `a_i` of `A`, by Fourier-Motzkin
/// elimination followed by back substitution.
///
/// `None` exactly when some nonzero `u >= 0` has `uA = 0`, i.e. when the monoid
/// spanned by the rows has nontrivial units. Back substitution picks the largest
/// lower bound for each coordinate, or `0` clamped to the upper bounds when a
/// coordinate is bounded only from above.
pub fn positivity_witness(a: &IntMatrix) -> Result<Option<RatVector>> {
    let d = a.ncols();
    let initial = a
        .rows()
        .iter()
        .map(|r| Inequality::normalized(r.clone(), Rational::one()))
        .collect::<Result<Vec<_>>>()?;
    let Some(mut system) = prune(initial)? else {
        return Ok(None);
    };

    // stages[k] involves only variables k..d
    let mut stages = Vec::with_capacity(d);
    for var in 0..d {
        let next = eliminate(&system, var)?;
        stages.push(std::mem::replace(&mut system, Vec::new()));
        match prune(next)? {
            Some(s) => system = s,
            None => return Ok(None),
        }
    }
    debug_assert!(system.is_empty());

    let mut r = vec![Rational::zero(); d];
    for var in (0..d).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for ineq in &stages[var] {
            let c = ineq.coeffs[var];
            if c == 0 {
                continue;
            }
            let mut t = ineq.rhs;
            for j in var + 1..d {
                let term = rational::mul(&Rational::from_integer(ineq.coeffs[j]), &r[j])?;
                t = rational::sub(&t, &term)?;
            }
            let bound = rational::div(&t, &Rational::from_integer(c))?;
            if c > 0 {
                lo = Some(lo.map_or(bound, |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound, |h| h.min(bound)));
            }
        }
        r[var] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h.min(Rational::zero()),
            (None, None) => Rational::zero(),
        };
    }
    Ok(Some(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn assert_witness(a: &IntMatrix, r: &[Rational]) {
        for row in a.rows() {
            assert!(rational::dot_int(row, r).unwrap() >= Rational::one(), "{row:?} . {r:?}");
        }
    }

    #[test]
    fn positive_scalars() {
        let a = m(&[&[10], &[11], &[14], &[19]]);
        assert_eq!(positivity_witness(&a).unwrap(), Some(vec![Rational::new(1, 10)]));
    }

    #[test]
    fn opposite_vectors_have_no_witness() {
        assert_eq!(positivity_witness(&m(&[&[1, -1], &[-1, 1]])).unwrap(), None);
        assert_eq!(positivity_witness(&m(&[&[2], &[-3]])).unwrap(), None);
    }

    #[test]
    fn mixed_signs_in_the_plane() {
        let a = m(&[&[1, -2], &[3, 1], &[-1, 5]]);
        let r = positivity_witness(&a).unwrap().unwrap();
        assert_witness(&a, &r);
        let a = m(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(positivity_witness(&a).unwrap(), None);
    }

    #[test]
    fn three_dimensional_cone() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1], &[2, -1, 3]]);
        let r = positivity_witness(&a).unwrap().unwrap();
        assert_witness(&a, &r);
    }
}
