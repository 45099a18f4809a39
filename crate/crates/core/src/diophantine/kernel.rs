use super::{checked, dot, IntMatrix, IntVector};
use crate::error::Result;

/// Echelonizes `[A | I]` with unimodular row operations. Returns the transformed
/// rows and the number of pivots found in the `A` block.
fn echelon_with_transform(a: &IntMatrix) -> Result<(Vec<IntVector>, usize)> {
    let n = a.nrows();
    let d = a.ncols();
    let mut rows: Vec<IntVector> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..n).map(|j| i64::from(i == j)));
            r
        })
        .collect();

    let mut pivot = 0;
    for col in 0..d {
        if pivot == n {
            break;
        }
        loop {
            // row with the smallest nonzero entry in this column
            let best = (pivot..n)
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].unsigned_abs());
            let Some(best) = best else { break };
            rows.swap(pivot, best);
            let mut done = true;
            for r in pivot + 1..n {
                let x = rows[r][col];
                if x == 0 {
                    continue;
                }
                let q = x.div_euclid(rows[pivot][col]);
                if q != 0 {
                    let (head, tail) = rows.split_at_mut(r);
                    let prow = &head[pivot];
                    for (t, p) in tail[0].iter_mut().zip(prow) {
                        *t = checked(
                            p.checked_mul(q).and_then(|m| t.checked_sub(m)),
                            "kernel elimination",
                        )?;
                    }
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    Ok((rows, pivot))
}

/// Rank of `A` over the rationals.
pub fn rank(a: &IntMatrix) -> Result<usize> {
    Ok(echelon_with_transform(a)?.1)
}

/// A basis of the lattice `{ z in Z^n : zA = 0 }`, size-reduced so that entries
/// stay small. The basis has `n - rank(A)` vectors.
pub fn kernel_lattice_basis(a: &IntMatrix) -> Result<Vec<IntVector>> {
    let d = a.ncols();
    let (rows, pivots) = echelon_with_transform(a)?;
    let mut basis: Vec<IntVector> = rows[pivots..].iter().map(|r| r[d..].to_vec()).collect();
    size_reduce(&mut basis)?;
    Ok(basis)
}

fn norm2(v: &[i64]) -> Result<i64> {
    dot(v, v)
}

/// Pairwise Gauss reduction until no vector gets shorter. This is weaker than
/// LLL but keeps the initial binomials of the toric completion small.
fn size_reduce(basis: &mut Vec<IntVector>) -> Result<()> {
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < 1000 {
        changed = false;
        rounds += 1;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let nj = norm2(&basis[j])?;
                if nj == 0 {
                    continue;
                }
                let p = dot(&basis[i], &basis[j])?;
                // nearest integer to p / nj
                let q = checked(p.checked_mul(2).and_then(|x| x.checked_add(nj)), "size reduction")?
                    .div_euclid(checked(nj.checked_mul(2), "size reduction")?);
                if q == 0 {
                    continue;
                }
                let candidate: IntVector = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(x, y)| checked(y.checked_mul(q).and_then(|m| x.checked_sub(m)), "size reduction"))
                    .collect::<Result<_>>()?;
                if norm2(&candidate)? < norm2(&basis[i])? {
                    basis[i] = candidate;
                    changed = true;
                }
            }
        }
    }
    for v in basis.iter_mut() {
        // sign convention: first nonzero entry positive
        if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
    basis.sort_by_key(|v| (v.iter().map(|x| x.unsigned_abs()).sum::<u64>(), v.clone()));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(kernel_lattice_basis(&m(&[&[1, 0], &[0, 1]])).unwrap().is_empty());
    }

    #[test]
    fn opposite_pair() {
        assert_eq!(kernel_lattice_basis(&m(&[&[1], &[-1]])).unwrap(), vec![vec![1, 1]]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[31], &[47], &[57]]);
        let basis = kernel_lattice_basis(&a).unwrap();
        assert_eq!(basis.len(), 2);
        for z in &basis {
            assert_eq!(a.combine(z).unwrap(), vec![0]);
        }
    }

    #[test]
    fn overflow_surfaces() {
        let a = m(&[&[i64::MAX, 1], &[i64::MAX - 1, 3], &[5, 7]]);
        match kernel_lattice_basis(&a) {
            Ok(basis) => {
                for z in &basis {
                    assert!(a.combine(z).map(|v| v == vec![0, 0]).unwrap_or(true));
                }
            }
            Err(e) => assert!(matches!(e, Error::Overflow(_))),
        }
    }
}
