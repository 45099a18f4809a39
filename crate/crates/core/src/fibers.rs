//! Factorization fibers `Z(a)`, lengths, the factorization distance and the
//! support graph of a fiber.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::diophantine::{self, IntVector};
use crate::error::{Error, Result};
use crate::semigroup::{format_point, AffineSemigroup};
use crate::unionfind::UnionFind;

/// A point of `N^n` in some fiber; coordinate `i` is the multiplicity of
/// generator `i`.
pub type Factorization = IntVector;

/// `|u|`, the number of atoms in the factorization.
pub fn length(u: &[i64]) -> i64 {
    u.iter().sum()
}

/// Componentwise minimum, the exponent of `gcd(X^u, X^v)`.
pub fn common_part(u: &[i64], v: &[i64]) -> IntVector {
    u.iter().zip(v).map(|(a, b)| *a.min(b)).collect()
}

/// `max(|u|, |v|) - |gcd(u, v)|`.
pub fn distance(u: &[i64], v: &[i64]) -> i64 {
    debug_assert_eq!(u.len(), v.len());
    let common: i64 = u.iter().zip(v).map(|(a, b)| *a.min(b)).sum();
    length(u).max(length(v)) - common
}

/// True when the supports of `u` and `v` meet, i.e. `u . v != 0` for
/// nonnegative vectors.
pub fn supports_meet(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).any(|(a, b)| *a > 0 && *b > 0)
}

struct FiberSearch<'a> {
    s: &'a AffineSemigroup,
    dead: HashSet<(usize, IntVector)>,
    /// `nonneg[j][c]`: every generator `j..n` has coordinate `c >= 0`.
    nonneg: Vec<Vec<bool>>,
    nonpos: Vec<Vec<bool>>,
    current: IntVector,
    out: Vec<Factorization>,
    first_only: bool,
}

impl FiberSearch<'_> {
    /// Enumerates the ways to write `rest` with generators `j..n`. Returns
    /// whether at least one exists; failing states are memoized.
    fn run(&mut self, j: usize, rest: &[i64]) -> Result<bool> {
        let n = self.s.len();
        let deg = self.s.degree(rest)?;
        if deg < 0 {
            return Ok(false);
        }
        if deg == 0 {
            if rest.iter().any(|x| *x != 0) {
                return Ok(false);
            }
            self.emit()?;
            return Ok(true);
        }
        if j == n {
            return Ok(false);
        }
        let sign_ok = rest.iter().enumerate().all(|(c, r)| {
            !(self.nonneg[j][c] && *r < 0) && !(self.nonpos[j][c] && *r > 0)
        });
        if !sign_ok {
            return Ok(false);
        }
        let gen_deg = self.s.generator_degrees()[j];
        let generator = self.s.generator(j);
        if j + 1 == n {
            if deg % gen_deg != 0 {
                return Ok(false);
            }
            let k = deg / gen_deg;
            let hit = generator
                .iter()
                .zip(rest)
                .all(|(g, r)| g.checked_mul(k) == Some(*r));
            if hit {
                self.current[j] = k;
                self.emit()?;
                self.current[j] = 0;
            }
            return Ok(hit);
        }
        if self.dead.contains(&(j, rest.to_vec())) {
            return Ok(false);
        }
        // the remainder must keep the sign pattern of the later generators
        let mut top = deg / gen_deg;
        for (c, (g, r)) in generator.iter().zip(rest).enumerate() {
            if self.nonneg[j + 1][c] && *g > 0 {
                top = top.min(r.div_euclid(*g));
            } else if self.nonpos[j + 1][c] && *g < 0 {
                top = top.min(r.div_euclid(*g));
            }
        }
        let mut any = false;
        let mut r = rest.to_vec();
        for k in 0..=top {
            if k > 0 {
                r = diophantine::sub(&r, generator)?;
            }
            self.current[j] = k;
            let found = self.run(j + 1, &r)?;
            any |= found;
            if found && self.first_only {
                break;
            }
        }
        self.current[j] = 0;
        if !any {
            self.dead.insert((j, rest.to_vec()));
        }
        Ok(any)
    }

    fn emit(&mut self) -> Result<()> {
        self.out.push(self.current.clone());
        let cap = self.s.limits().fiber_cap;
        if self.out.len() > cap {
            return Err(Error::BudgetExceeded {
                what: "fiber size",
                limit: cap,
            });
        }
        Ok(())
    }
}

fn search(s: &AffineSemigroup, x: &[i64], first_only: bool) -> Result<Vec<Factorization>> {
    s.check_width(x)?;
    let n = s.len();
    let suffix = |test: fn(i64) -> bool| -> Vec<Vec<bool>> {
        (0..=n)
            .map(|j| (0..s.dim()).map(|c| (j..n).all(|i| test(s.generator(i)[c]))).collect())
            .collect()
    };
    let mut fs = FiberSearch {
        s,
        dead: HashSet::new(),
        nonneg: suffix(|x| x >= 0),
        nonpos: suffix(|x| x <= 0),
        current: vec![0; s.len()],
        out: Vec::new(),
        first_only,
    };
    fs.run(0, x)?;
    let mut out = fs.out;
    out.sort_unstable();
    Ok(out)
}

/// The complete fiber `Z(x) = pi^{-1}(x)`, sorted lexicographically. Empty when
/// `x` is not in the monoid.
///
/// Depth-first over the generators with `u_i <= deg(x) / deg(a_i)` for the
/// integer grading of the semigroup; states `(i, remainder)` that admit no
/// completion are remembered so the search only revisits productive branches.
pub fn factorizations(s: &AffineSemigroup, x: &[i64]) -> Result<Vec<Factorization>> {
    search(s, x, false)
}

pub fn has_factorization(s: &AffineSemigroup, x: &[i64]) -> Result<bool> {
    Ok(!search(s, x, true)?.is_empty())
}

/// The set of lengths `L(x)`, ascending.
pub fn lengths(s: &AffineSemigroup, x: &[i64]) -> Result<Vec<i64>> {
    let set: BTreeSet<i64> = factorizations(s, x)?.iter().map(|u| length(u)).collect();
    Ok(set.into_iter().collect())
}

/// 1-skeleton of the simplicial complex on `Z(a)` whose faces are the sets of
/// factorizations with a common support. Vertices are in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberGraph {
    pub element: IntVector,
    pub vertices: Vec<Factorization>,
    /// `(i, j, distance)` with `i < j`, present iff the supports meet.
    pub edges: Vec<(usize, usize, i64)>,
    /// Connected components as sorted vertex-index lists, ordered by their
    /// smallest vertex.
    pub components: Vec<Vec<usize>>,
}

impl FiberGraph {
    pub fn from_fiber(element: IntVector, vertices: Vec<Factorization>) -> Self {
        let mut edges = Vec::new();
        let mut uf = UnionFind::new(vertices.len());
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if supports_meet(&vertices[i], &vertices[j]) {
                    edges.push((i, j, distance(&vertices[i], &vertices[j])));
                    uf.union(i, j);
                }
            }
        }
        let components = uf.groups();
        FiberGraph {
            element,
            vertices,
            edges,
            components,
        }
    }

    /// Disconnected, i.e. the element is a Betti element.
    pub fn is_betti(&self) -> bool {
        self.components.len() >= 2
    }

    /// Pairs of distinct vertices that are not joined, with their distance.
    pub fn missing_pairs(&self) -> Vec<(usize, usize, i64)> {
        let present: HashSet<(usize, usize)> = self.edges.iter().map(|(i, j, _)| (*i, *j)).collect();
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                if !present.contains(&(i, j)) {
                    out.push((i, j, distance(&self.vertices[i], &self.vertices[j])));
                }
            }
        }
        out
    }

    /// Graphviz rendering: vertices labeled by monomials, edges by distance,
    /// and with `show_missing` the absent pairs as dashed edges.
    pub fn to_dot(&self, show_missing: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph nabla {{");
        let _ = writeln!(out, "  label=\"{}\";", format_point(&self.element));
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", monomial(v));
        }
        for (i, j, w) in &self.edges {
            let _ = writeln!(out, "  v{i} -- v{j} [label=\"{w}\"];");
        }
        if show_missing {
            for (i, j, w) in self.missing_pairs() {
                let _ = writeln!(out, "  v{i} -- v{j} [label=\"{w}\", style=dashed];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The graph on `Z(x)`. `x` must be in the monoid.
pub fn nabla_graph(s: &AffineSemigroup, x: &[i64]) -> Result<FiberGraph> {
    let z = factorizations(s, x)?;
    if z.is_empty() {
        return Err(Error::NotMember(x.to_vec()));
    }
    Ok(FiberGraph::from_fiber(x.to_vec(), z))
}

/// Monomial notation: `x^13 y z^2` with letters for at most three variables,
/// `x1^2 x4` otherwise; `1` for the zero vector.
pub fn monomial(u: &[i64]) -> String {
    const LETTERS: [&str; 3] = ["x", "y", "z"];
    let name = |i: usize| {
        if u.len() <= 3 {
            LETTERS[i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    };
    let parts: Vec<String> = u
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| if *e == 1 { name(i) } else { format!("{}^{e}", name(i)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}
