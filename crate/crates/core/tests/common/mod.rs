//! Brute-force oracles and random instances shared by the integration tests.
#![allow(dead_code)]

use catena::AffineSemigroup;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every `u` in a box with `uA = x`, by exhaustive enumeration.
pub fn brute_fiber(s: &AffineSemigroup, x: &[i64]) -> Vec<Vec<i64>> {
    let n = s.len();
    let deg = |v: &[i64]| v.iter().zip(s.grading()).map(|(a, b)| a * b).sum::<i64>();
    let top = deg(x);
    let caps: Vec<i64> = (0..n).map(|i| top / deg(s.generator(i))).collect();
    let mut out = Vec::new();
    let mut u = vec![0i64; n];
    loop {
        let mut sum = vec![0i64; s.dim()];
        for (i, ui) in u.iter().enumerate() {
            for (k, g) in s.generator(i).iter().enumerate() {
                sum[k] += ui * g;
            }
        }
        if sum == x {
            out.push(u.clone());
        }
        let mut k = 0;
        while k < n {
            u[k] += 1;
            if u[k] <= caps[k] {
                break;
            }
            u[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.sort();
    out
}

pub fn len(u: &[i64]) -> i64 {
    u.iter().sum()
}

pub fn dist(u: &[i64], v: &[i64]) -> i64 {
    let common: i64 = u.iter().zip(v).map(|(a, b)| *a.min(b)).sum();
    len(u).max(len(v)) - common
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ordinary,
    Equal,
    Monotone,
    Homogeneous,
}

/// Whether `to` is reachable from `from` by steps of distance at most `n`
/// that respect the length rule of `kind`.
fn reachable(z: &[Vec<i64>], from: usize, to: usize, n: i64, kind: Kind) -> bool {
    let top = len(&z[from]).max(len(&z[to]));
    let allowed = |w: &[i64]| match kind {
        Kind::Equal => len(w) == len(&z[from]),
        Kind::Homogeneous => len(w) <= top,
        _ => true,
    };
    let mut seen = vec![false; z.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for y in 0..z.len() {
            if seen[y] || !allowed(&z[y]) || dist(&z[x], &z[y]) > n {
                continue;
            }
            if kind == Kind::Monotone && len(&z[y]) < len(&z[x]) {
                continue;
            }
            seen[y] = true;
            stack.push(y);
        }
    }
    false
}

/// Catenary degree of the given kind from its definition: the least `N` for
/// which every admissible pair is joined by an admissible `N`-chain.
pub fn brute_catenary(z: &[Vec<i64>], kind: Kind) -> i64 {
    let pairs: Vec<(usize, usize)> = (0..z.len())
        .flat_map(|i| (0..z.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .filter(|&(i, j)| match kind {
            Kind::Equal => len(&z[i]) == len(&z[j]),
            Kind::Monotone => len(&z[i]) <= len(&z[j]),
            _ => true,
        })
        .collect();
    if pairs.is_empty() {
        return 0;
    }
    let mut candidates: Vec<i64> = pairs.iter().map(|&(i, j)| dist(&z[i], &z[j])).collect();
    candidates.sort_unstable();
    candidates.dedup();
    for n in candidates {
        if pairs.iter().all(|&(i, j)| reachable(z, i, j, n, kind)) {
            return n;
        }
    }
    unreachable!("the direct step always joins an admissible pair")
}

/// A random reduced monoid: `d = 1` with two or three generators in `2..=60`,
/// or `d` in `{2, 3}` with two to four nonnegative generators, entries at most 5.
pub fn random_semigroup(rng: &mut ChaCha8Rng) -> AffineSemigroup {
    loop {
        let d = rng.gen_range(1..=3usize);
        let rows: Vec<Vec<i64>> = if d == 1 {
            let n = rng.gen_range(2..=3);
            (0..n).map(|_| vec![rng.gen_range(2..=60)]).collect()
        } else {
            let n = rng.gen_range(2..=4);
            (0..n).map(|_| (0..d).map(|_| rng.gen_range(0..=5)).collect()).collect()
        };
        if let Ok(s) = AffineSemigroup::new(rows) {
            if let Ok(m) = s.minimized() {
                if m.len() >= 2 {
                    return m;
                }
            }
        }
    }
}

/// A random monoid of dimension at most 2 whose lifts stay in dimension 3.
pub fn random_base(rng: &mut ChaCha8Rng) -> AffineSemigroup {
    loop {
        let s = random_semigroup(rng);
        if s.dim() <= 2 {
            return s;
        }
    }
}
