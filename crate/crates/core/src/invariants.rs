//! Omega-primality and the tame degree.
//!
//! Both are computed from the minimal elements of `pi^{-1}(a + NA)`. For an
//! arbitrary `a` these are the `u`-parts of the minimal nonnegative solutions
//! of `uA - wA = a`. When `a = a_i` they are read off the Graver basis of the
//! kernel lattice: a minimal `u != e_i` and any `v` in `Z(pi(u))` with
//! `v_i >= 1` differ by a primitive kernel element, otherwise a conformal
//! summand would give a smaller member of the cover.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::diophantine::{self, graver_basis, minimal_nonneg_solutions, IntMatrix, IntVector};
use crate::error::Result;
use crate::fibers::{self, distance, length, Factorization};
use crate::semigroup::AffineSemigroup;

/// The `<=`-minimal elements of `{u in N^n : uA - a in NA}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalFiberCover {
    pub target: IntVector,
    /// Lexicographically sorted antichain.
    pub minimals: Vec<Factorization>,
}

/// Drops every vector that dominates another one.
fn minimal_elements(mut vs: Vec<IntVector>) -> Vec<IntVector> {
    vs.sort_by_key(|v| (length(v), v.clone()));
    vs.dedup();
    let mut kept: Vec<IntVector> = Vec::new();
    for v in vs {
        if !kept.iter().any(|k| diophantine::leq(k, &v)) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

/// Minimal `u` with `uA - a` in the monoid. Uses the Graver basis when `a` is a
/// generator and [`minimal_fiber_cover_by_solver`] otherwise.
pub fn minimal_fiber_cover(s: &AffineSemigroup, a: &[i64]) -> Result<MinimalFiberCover> {
    s.check_width(a)?;
    match (0..s.len()).find(|&i| s.generator(i) == a) {
        Some(i) => {
            let graver = graver_basis(s.generators(), s.limits().completion_steps)?;
            Ok(generator_cover(s, i, &graver))
        }
        None => minimal_fiber_cover_by_solver(s, a),
    }
}

fn generator_cover(s: &AffineSemigroup, i: usize, graver: &[IntVector]) -> MinimalFiberCover {
    let n = s.len();
    let mut candidates = vec![(0..n).map(|j| i64::from(j == i)).collect::<IntVector>()];
    for g in graver {
        for sign in [1, -1] {
            let plus: IntVector = g.iter().map(|x| (sign * x).max(0)).collect();
            if sign * g[i] < 0 {
                candidates.push(plus);
            }
        }
    }
    MinimalFiberCover {
        target: s.generator(i).to_vec(),
        minimals: minimal_elements(candidates),
    }
}

/// Minimal `u` with `uA - a` in the monoid, from the linear system.
///
/// If `uA - wA = a` with `u` minimal then `u` and `w` have disjoint supports,
/// since `u_j, w_j >= 1` would make `u - e_j` a smaller solution. So instead of
/// one system in `2n` unknowns, one system in `n` unknowns is solved for every
/// support `P` of `u`: `u` on `P`, `w` on the complement.
pub fn minimal_fiber_cover_by_solver(s: &AffineSemigroup, a: &[i64]) -> Result<MinimalFiberCover> {
    s.check_width(a)?;
    let n = s.len();
    if a.iter().all(|x| *x == 0) {
        return Ok(MinimalFiberCover {
            target: a.to_vec(),
            minimals: vec![vec![0; n]],
        });
    }
    let budget = s.limits().solver_nodes;
    let supports: Vec<u32> = (1..1u32 << n).collect();
    let per_support = supports
        .par_iter()
        .map(|&mask| -> Result<Vec<IntVector>> {
            let rows = (0..n)
                .map(|j| {
                    if mask >> j & 1 == 1 {
                        Ok(s.generator(j).to_vec())
                    } else {
                        s.generator(j)
                            .iter()
                            .map(|x| diophantine::checked(x.checked_neg(), "negated generator"))
                            .collect()
                    }
                })
                .collect::<Result<Vec<IntVector>>>()?;
            let system = IntMatrix::from_rows(rows)?;
            let solutions = minimal_nonneg_solutions(&system, a, budget)?;
            Ok(solutions
                .into_iter()
                .map(|x| (0..n).map(|j| if mask >> j & 1 == 1 { x[j] } else { 0 }).collect())
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinimalFiberCover {
        target: a.to_vec(),
        minimals: minimal_elements(per_support.into_iter().flatten().collect()),
    })
}

/// `omega(a)`: the largest length in the minimal fiber cover of `a`.
pub fn omega_element(s: &AffineSemigroup, a: &[i64]) -> Result<i64> {
    s.require_minimal()?;
    let cover = minimal_fiber_cover(s, a)?;
    Ok(cover.minimals.iter().map(|u| length(u)).max().unwrap_or(0))
}

/// `omega(NA) = max_i omega(a_i)`.
pub fn omega_monoid(s: &AffineSemigroup) -> Result<i64> {
    s.require_minimal()?;
    Ok(generator_covers(s)?
        .iter()
        .flat_map(|c| c.minimals.iter().map(|u| length(u)))
        .max()
        .unwrap_or(0))
}

/// The minimal fiber cover of every generator, sharing one Graver basis.
pub fn generator_covers(s: &AffineSemigroup) -> Result<Vec<MinimalFiberCover>> {
    let graver = graver_basis(s.generators(), s.limits().completion_steps)?;
    Ok((0..s.len()).map(|i| generator_cover(s, i, &graver)).collect())
}

/// Tame degree of an element given its fiber.
pub fn tame_of_fiber(fiber: &[Factorization]) -> i64 {
    let Some(first) = fiber.first() else {
        return 0;
    };
    let n = first.len();
    let mut worst = 0;
    for i in 0..n {
        let holders: Vec<&Factorization> = fiber.iter().filter(|v| v[i] >= 1).collect();
        if holders.is_empty() {
            continue;
        }
        for u in fiber.iter().filter(|u| u[i] == 0) {
            let best = holders.iter().map(|v| distance(u, v)).min().unwrap_or(0);
            worst = worst.max(best);
        }
    }
    worst
}

/// `t(a)`: how far a factorization may be from one using a prescribed
/// applicable atom.
pub fn tame_element(s: &AffineSemigroup, a: &[i64]) -> Result<i64> {
    s.require_minimal()?;
    let fiber = fibers::factorizations(s, a)?;
    if fiber.is_empty() {
        return Err(crate::Error::NotMember(a.to_vec()));
    }
    Ok(tame_of_fiber(&fiber))
}

/// Elements `pi(u)` for `u` minimal over some generator.
pub fn tame_candidates(s: &AffineSemigroup) -> Result<Vec<IntVector>> {
    s.require_minimal()?;
    let covers = generator_covers(s)?;
    let mut out = BTreeSet::new();
    for cover in covers {
        for u in cover.minimals {
            out.insert(s.evaluate(&u)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// `t(NA)` as the largest tame degree over [`tame_candidates`].
pub fn tame_monoid(s: &AffineSemigroup) -> Result<i64> {
    let candidates = tame_candidates(s)?;
    let values = candidates
        .par_iter()
        .map(|x| tame_element(s, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.into_iter().max().unwrap_or(0))
}

/// Largest tame degree over every element of degree at most `bound`.
pub fn tame_scan(s: &AffineSemigroup, bound: i64) -> Result<i64> {
    s.require_minimal()?;
    let elements = s.elements_up_to_degree(bound)?;
    let values = elements
        .par_iter()
        .map(|x| tame_element(s, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.into_iter().max().unwrap_or(0))
}

/// `(t(NA), t(NA^hom))`; the first never exceeds the second.
pub fn tame_lift_bound_check(s: &AffineSemigroup) -> Result<(i64, i64)> {
    let t = tame_monoid(s)?;
    let t_hom = tame_monoid(&s.lift_hom()?)?;
    assert!(t <= t_hom, "tame degree {t} exceeds that of the homogeneous lift {t_hom}");
    Ok((t, t_hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn s(rows: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn plane() -> AffineSemigroup {
        s(&[&[1, 0], &[1, 3], &[1, 5], &[1, 7]])
    }

    /// Minimal `u` with `uA - a` in the monoid, by brute force over a box.
    fn brute_cover(s: &AffineSemigroup, a: &[i64], side: i64) -> Vec<IntVector> {
        let n = s.len();
        let mut all = Vec::new();
        let mut u = vec![0i64; n];
        loop {
            let rest = diophantine::sub(&s.evaluate(&u).unwrap(), a).unwrap();
            if s.member(&rest) {
                all.push(u.clone());
            }
            let mut k = 0;
            while k < n {
                u[k] += 1;
                if u[k] <= side {
                    break;
                }
                u[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        minimal_elements(all)
    }

    #[test]
    fn numerical_covers() {
        let m = s(&[&[2], &[3]]);
        assert_eq!(minimal_fiber_cover(&m, &[2]).unwrap().minimals, vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(minimal_fiber_cover(&m, &[3]).unwrap().minimals, vec![vec![0, 1], vec![3, 0]]);
        assert_eq!(minimal_fiber_cover(&m, &[0]).unwrap().minimals, vec![vec![0, 0]]);
        assert_eq!(omega_element(&m, &[2]).unwrap(), 2);
        assert_eq!(omega_element(&m, &[3]).unwrap(), 3);
        assert_eq!(omega_monoid(&m).unwrap(), 3);
    }

    #[test]
    fn covers_match_brute_force() {
        for rows in [vec![vec![2], vec![3]], vec![vec![3], vec![5], vec![7]], vec![vec![1, 0], vec![1, 3], vec![1, 5], vec![1, 7]]] {
            let m = AffineSemigroup::new(rows).unwrap();
            for i in 0..m.len() {
                let a = m.generator(i).to_vec();
                assert_eq!(minimal_fiber_cover(&m, &a).unwrap().minimals, brute_cover(&m, &a, 8), "{a:?}");
            }
        }
    }

    #[test]
    fn graver_route_matches_solver() {
        for m in [s(&[&[3], &[5], &[7]]), plane(), s(&[&[4], &[6], &[9]]), s(&[&[2, 0], &[1, 1], &[0, 2]])] {
            for i in 0..m.len() {
                let a = m.generator(i).to_vec();
                assert_eq!(minimal_fiber_cover(&m, &a).unwrap(), minimal_fiber_cover_by_solver(&m, &a).unwrap());
            }
        }
    }

    #[test]
    fn tame_small() {
        let m = s(&[&[2], &[3]]);
        assert_eq!(tame_element(&m, &[6]).unwrap(), 3);
        assert_eq!(tame_element(&m, &[2]).unwrap(), 0);
        assert_eq!(tame_monoid(&m).unwrap(), 3);
        assert_eq!(tame_scan(&m, 30).unwrap(), 3);
        let (t, t_hom) = tame_lift_bound_check(&m).unwrap();
        assert_eq!(t, 3);
        assert!(t_hom >= 3);
    }

    #[test]
    fn free_monoid() {
        let m = s(&[&[1, 0], &[0, 1]]);
        assert_eq!(omega_element(&m, &[1, 0]).unwrap(), 1);
        assert_eq!(omega_monoid(&m).unwrap(), 1);
        assert_eq!(tame_monoid(&m).unwrap(), 0);
        assert_eq!(tame_lift_bound_check(&m).unwrap(), (0, 0));
    }

    #[test]
    fn plane_example() {
        let m = plane();
        assert_eq!(omega_monoid(&m).unwrap(), 7);
        assert_eq!(tame_monoid(&m).unwrap(), 7);
    }

    #[test]
    fn candidates_reach_the_scan() {
        for rows in [vec![vec![3], vec![5], vec![7]], vec![vec![4], vec![6], vec![9]]] {
            let m = AffineSemigroup::new(rows).unwrap();
            let bound = 20 * m.max_generator_degree();
            assert_eq!(tame_monoid(&m).unwrap(), tame_scan(&m, bound).unwrap());
        }
    }

    #[test]
    fn minimal_elements_have_disjoint_witnesses() {
        for m in [s(&[&[3], &[5], &[7]]), plane(), s(&[&[2], &[3]])] {
            for i in 0..m.len() {
                let cover = minimal_fiber_cover(&m, m.generator(i)).unwrap();
                for u in cover.minimals.iter().filter(|u| !(u[i] == 1 && length(u) == 1)) {
                    let a = m.evaluate(u).unwrap();
                    for v in fibers::factorizations(&m, &a).unwrap().iter().filter(|v| v[i] != 0) {
                        assert_eq!(diophantine::dot(u, v).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn requires_minimal_generators() {
        let m = s(&[&[2], &[3], &[4]]);
        assert_eq!(omega_monoid(&m), Err(Error::NotMinimalGenerating(vec![2])));
        assert!(tame_monoid(&m).is_err());
    }
}
