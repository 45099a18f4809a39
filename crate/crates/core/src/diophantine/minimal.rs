use std::collections::HashMap;

use super::{checked, dot, leq, IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Default cap on the number of search nodes generated by
/// [`minimal_nonneg_solutions`].
pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

/// The componentwise-minimal `u in N^m` with `uC = b`.
///
/// Contejean-Devie breadth-first completion. An inhomogeneous system is
/// homogenized with one extra variable carrying `-b`; since a minimal
/// inhomogeneous solution never dominates a nonzero homogeneous one, its
/// extension is a minimal homogeneous solution with last coordinate 1, so the
/// extra coordinate is never raised above 1. A node `t` that is not yet a
/// solution is only extended along `e_j` when the residue `tC` and the row `c_j`
/// point in opposite directions (negative scalar product), and never once it
/// dominates a solution already found.
///
/// For `b = 0` the nonzero minimal solutions (the Hilbert basis of the solution
/// monoid) are returned. The result is sorted lexicographically. Exceeding
/// `node_budget` generated nodes is an error; an infeasible system gives an
/// empty result.
pub fn minimal_nonneg_solutions(
    c: &IntMatrix,
    b: &[i64],
    node_budget: usize,
) -> Result<Vec<IntVector>> {
    if b.len() != c.ncols() {
        return Err(Error::DimensionMismatch {
            expected: c.ncols(),
            found: b.len(),
        });
    }
    let homogeneous = b.iter().all(|x| *x == 0);
    let mut rows: Vec<IntVector> = c.rows().to_vec();
    if !homogeneous {
        rows.push(
            b.iter()
                .map(|x| checked(x.checked_neg(), "right-hand side"))
                .collect::<Result<_>>()?,
        );
    }
    let vars = rows.len();
    let extra = (!homogeneous).then_some(vars - 1);

    let mut found: Vec<IntVector> = Vec::new();
    let mut frontier: HashMap<IntVector, IntVector> = (0..vars)
        .map(|j| {
            let mut t = vec![0; vars];
            t[j] = 1;
            (t, rows[j].clone())
        })
        .collect();
    let mut generated = frontier.len();

    while !frontier.is_empty() {
        let mut level: Vec<(IntVector, IntVector)> = frontier.into_iter().collect();
        level.sort_unstable();

        let (solved, open): (Vec<_>, Vec<_>) =
            level.into_iter().partition(|(_, res)| res.iter().all(|x| *x == 0));
        for (t, _) in solved {
            if !found.iter().any(|s| leq(s, &t)) {
                found.push(t);
            }
        }

        let mut next: HashMap<IntVector, IntVector> = HashMap::new();
        for (t, res) in open {
            for j in 0..vars {
                if Some(j) == extra && t[j] >= 1 {
                    continue;
                }
                if dot(&res, &rows[j])? >= 0 {
                    continue;
                }
                let mut child = t.clone();
                child[j] += 1;
                if next.contains_key(&child) || found.iter().any(|s| leq(s, &child)) {
                    continue;
                }
                let child_res = super::add(&res, &rows[j])?;
                next.insert(child, child_res);
                generated += 1;
                if generated > node_budget {
                    return Err(Error::BudgetExceeded {
                        what: "Contejean-Devie search node",
                        limit: node_budget,
                    });
                }
            }
        }
        frontier = next;
    }

    let mut out: Vec<IntVector> = match extra {
        None => found,
        Some(e) => found
            .into_iter()
            .filter(|t| t[e] == 1)
            .map(|mut t| {
                t.pop();
                t
            })
            .collect(),
    };
    out.sort();
    Ok(out)
}
