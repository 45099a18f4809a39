use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::{add, kernel_lattice_basis, sub, IntMatrix, IntVector};
use crate::error::{Error, Result};

/// `g` is conformal to `s`: same sign pattern where `g` is nonzero, and
/// `|g_k| <= |s_k|` everywhere.
pub fn conformal(g: &[i64], s: &[i64]) -> bool {
    g.iter()
        .zip(s)
        .all(|(x, y)| *x == 0 || (x.signum() == y.signum() && x.abs() <= y.abs()))
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

fn reduce(mut s: IntVector, basis: &[IntVector]) -> Result<IntVector> {
    'outer: while s.iter().any(|x| *x != 0) {
        for g in basis {
            if conformal(g, &s) {
                s = sub(&s, g)?;
                continue 'outer;
            }
        }
        break;
    }
    Ok(s)
}

/// The Graver basis of `{ z in Z^n : zA = 0 }`: its conformally minimal nonzero
/// elements, one of each pair `+-g`, normalized so the first nonzero entry is
/// positive and sorted by 1-norm then lexicographically.
///
/// Pottier's completion: start from a symmetric lattice basis and add the
/// conformal normal form of every pairwise sum until all of them vanish.
/// Exceeding `budget` processed sums is an error.
pub fn graver_basis(a: &IntMatrix, budget: usize) -> Result<Vec<IntVector>> {
    let lattice = kernel_lattice_basis(a)?;
    let mut basis: Vec<IntVector> = Vec::new();
    let mut seen: HashSet<IntVector> = HashSet::new();
    for z in &lattice {
        let neg: IntVector = sub(&vec![0; z.len()], z)?;
        for v in [z.clone(), neg] {
            if seen.insert(v.clone()) {
                basis.push(v);
            }
        }
    }
    let mut queue: BinaryHeap<Reverse<(i64, IntVector)>> = BinaryHeap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = add(&basis[i], &basis[j])?;
            queue.push(Reverse((l1(&s), s)));
        }
    }
    let mut steps = 0usize;
    while let Some(Reverse((_, s))) = queue.pop() {
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded {
                what: "Graver completion step",
                limit: budget,
            });
        }
        let r = reduce(s, &basis)?;
        if r.iter().all(|x| *x == 0) || !seen.insert(r.clone()) {
            continue;
        }
        for g in &basis {
            let t = add(&r, g)?;
            if t.iter().any(|x| *x != 0) {
                queue.push(Reverse((l1(&t), t)));
            }
        }
        basis.push(r);
    }
    let minimal: Vec<IntVector> = basis
        .iter()
        .filter(|g| !basis.iter().any(|h| h != *g && conformal(h, g)))
        .filter(|g| g.iter().find(|x| **x != 0).is_some_and(|x| *x > 0))
        .cloned()
        .collect();
    let mut out = minimal;
    out.sort_by_key(|g| (l1(g), g.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Conformally minimal kernel vectors in a box, by enumeration.
    fn brute(a: &IntMatrix, side: i64) -> Vec<IntVector> {
        let n = a.nrows();
        let mut all = Vec::new();
        let mut z = vec![-side; n];
        loop {
            if z.iter().any(|x| *x != 0) && a.combine(&z).unwrap().iter().all(|x| *x == 0) {
                all.push(z.clone());
            }
            let mut k = 0;
            while k < n {
                z[k] += 1;
                if z[k] <= side {
                    break;
                }
                z[k] = -side;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        let mut out: Vec<IntVector> = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && conformal(h, g)))
            .filter(|g| g.iter().find(|x| **x != 0).is_some_and(|x| *x > 0))
            .cloned()
            .collect();
        out.sort_by_key(|g| (l1(g), g.clone()));
        out
    }

    #[test]
    fn two_three() {
        assert_eq!(graver_basis(&m(&[&[2], &[3]]), 1000).unwrap(), vec![vec![3, -2]]);
    }

    #[test]
    fn twisted_cubic() {
        let a = m(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]);
        let g = graver_basis(&a, 100_000).unwrap();
        assert_eq!(g, brute(&a, 3));
    }

    #[test]
    fn matches_enumeration() {
        for rows in [vec![vec![3], vec![5], vec![7]], vec![vec![4], vec![6], vec![9]], vec![vec![1, 0], vec![1, 3], vec![1, 5], vec![1, 7]]] {
            let a = IntMatrix::from_rows(rows).unwrap();
            assert_eq!(graver_basis(&a, 1_000_000).unwrap(), brute(&a, 9));
        }
    }

    #[test]
    fn conformality() {
        assert!(conformal(&[1, 0, -2], &[2, 1, -2]));
        assert!(!conformal(&[1, 0, -2], &[2, 1, 2]));
        assert!(!conformal(&[3, 0, 0], &[2, 0, 0]));
    }
}
