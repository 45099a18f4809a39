//! Catenary degrees: ordinary, equal, monotone and homogeneous, per element and
//! per monoid.
//!
//! Per element everything is computed from the materialized fiber with the
//! pairwise distances cached. The ordinary, equal and homogeneous variants are
//! bottleneck connectivity thresholds found with Kruskal's algorithm; the
//! monotone variant is a minimax path search on the graph whose edges only go
//! from shorter to longer (or equally long) factorizations.
//!
//! Per monoid, the ordinary degree is attained at a Betti element, and the equal
//! and homogeneous degrees are the ordinary degrees of the two lifts. The
//! monotone degree of a monoid is only available as a bounded scan.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibers::{self, distance, length, Factorization};
use crate::semigroup::AffineSemigroup;
use crate::toric;
use crate::unionfind::UnionFind;

/// Stand-in for an infinite catenary degree. Unreachable for reduced monoids:
/// the two-term chain `u, v` is admissible for every variant except `Equal` and
/// `Monotone` across layers, and those restrict the pairs instead.
pub const INFINITE: i64 = i64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainVariant {
    /// Any chain in `Z(a)`.
    Ordinary,
    /// Chains inside one length class `Z_i(a)`.
    Equal,
    /// Chains with non-decreasing lengths from the shorter endpoint.
    Monotone,
    /// Chains whose lengths never exceed the longer endpoint.
    Homogeneous,
}

impl ChainVariant {
    pub const ALL: [ChainVariant; 4] = [
        ChainVariant::Ordinary,
        ChainVariant::Equal,
        ChainVariant::Monotone,
        ChainVariant::Homogeneous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainVariant::Ordinary => "ordinary",
            ChainVariant::Equal => "equal",
            ChainVariant::Monotone => "monotone",
            ChainVariant::Homogeneous => "homogeneous",
        }
    }

    /// Whether `chain` obeys this variant's length constraint.
    pub fn admissible(self, chain: &[Factorization]) -> bool {
        let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
            return true;
        };
        let lens: Vec<i64> = chain.iter().map(|u| length(u)).collect();
        match self {
            ChainVariant::Ordinary => true,
            ChainVariant::Equal => lens.iter().all(|l| *l == lens[0]),
            ChainVariant::Monotone => lens.windows(2).all(|w| w[0] <= w[1]),
            ChainVariant::Homogeneous => {
                let top = length(first).max(length(last));
                lens.iter().all(|l| *l <= top)
            }
        }
    }
}

/// A pair of factorizations at which the degree is attained, with a chain
/// joining them whose steps are all at most the degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub from: Factorization,
    pub to: Factorization,
    pub chain: Vec<Factorization>,
}

impl Witness {
    /// Largest step distance along the chain.
    pub fn max_step(&self) -> i64 {
        self.chain
            .windows(2)
            .map(|w| distance(&w[0], &w[1]))
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatenaryResult {
    pub variant: ChainVariant,
    pub value: i64,
    pub witness: Option<Witness>,
}

/// Pairwise distances over a fiber, computed once.
struct DistanceTable<'a> {
    fiber: &'a [Factorization],
    lengths: Vec<i64>,
    dist: Vec<i64>,
}

impl<'a> DistanceTable<'a> {
    fn new(fiber: &'a [Factorization]) -> Self {
        let n = fiber.len();
        let mut dist = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = distance(&fiber[i], &fiber[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        DistanceTable {
            fiber,
            lengths: fiber.iter().map(|u| length(u)).collect(),
            dist,
        }
    }

    fn d(&self, i: usize, j: usize) -> i64 {
        self.dist[i * self.fiber.len() + j]
    }

    fn chain(&self, path: &[usize]) -> Vec<Factorization> {
        path.iter().map(|&i| self.fiber[i].clone()).collect()
    }
}

/// Outcome of a Kruskal run restricted to a vertex subset: the threshold, the
/// endpoints chosen on the two sides of the deciding merge, and the spanning
/// forest built up to that merge.
struct Bottleneck {
    value: i64,
    from: usize,
    to: usize,
    path: Vec<usize>,
}

/// Kruskal over all pairs of `subset`. The deciding merge is the last one for
/// which `counts` accepts one of the two sides; the returned endpoints are the
/// first accepted vertex of that side and the first vertex of the other side.
fn kruskal(
    table: &DistanceTable<'_>,
    subset: &[usize],
    counts: impl Fn(usize) -> bool,
) -> Option<Bottleneck> {
    let n = table.fiber.len();
    let mut pairs: Vec<(i64, usize, usize)> = Vec::new();
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            pairs.push((table.d(i, j), i.min(j), i.max(j)));
        }
    }
    pairs.sort_unstable();

    let mut uf = UnionFind::new(n);
    let mut marked: Vec<bool> = (0..n).map(&counts).collect();
    let mut tree: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut decided: Option<(i64, usize, usize, usize)> = None;
    let mut tree_at_decision = 0;
    let mut accepted = Vec::new();

    for (w, i, j) in pairs {
        let (ri, rj) = (uf.find(i), uf.find(j));
        if ri == rj {
            continue;
        }
        if marked[ri] || marked[rj] {
            decided = Some((w, i, j, accepted.len()));
            tree_at_decision = accepted.len() + 1;
        }
        let side_marked = marked[ri] || marked[rj];
        uf.union(i, j);
        let r = uf.find(i);
        marked[r] = side_marked;
        accepted.push((i, j));
    }

    let (value, i, j, before) = decided?;
    // sides of the deciding merge, as they were just before it
    let mut side_uf = UnionFind::new(n);
    for &(a, b) in &accepted[..before] {
        side_uf.union(a, b);
    }
    let side = |v: usize, uf: &mut UnionFind| -> Vec<usize> {
        subset.iter().copied().filter(|&x| uf.same(x, v)).collect()
    };
    let (mut left, mut right) = (side(i, &mut side_uf), side(j, &mut side_uf));
    left.sort_unstable();
    right.sort_unstable();
    let left_pick = left.iter().copied().find(|&x| counts(x));
    let right_pick = right.iter().copied().find(|&x| counts(x));
    let (from, to) = match (left_pick, right_pick) {
        (Some(a), _) => (a, right[0]),
        (None, Some(b)) => (b, left[0]),
        (None, None) => unreachable!("deciding merge has a marked side"),
    };

    for &(a, b) in &accepted[..tree_at_decision] {
        tree[a].push(b);
        tree[b].push(a);
    }
    let path = tree_path(&tree, from, to);
    Some(Bottleneck {
        value,
        from,
        to,
        path,
    })
}

fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn result_from(
    variant: ChainVariant,
    table: &DistanceTable<'_>,
    best: Option<Bottleneck>,
) -> CatenaryResult {
    match best {
        None => CatenaryResult {
            variant,
            value: 0,
            witness: None,
        },
        Some(b) => CatenaryResult {
            variant,
            value: b.value,
            witness: Some(Witness {
                from: table.fiber[b.from].clone(),
                to: table.fiber[b.to].clone(),
                chain: table.chain(&b.path),
            }),
        },
    }
}

fn max_by_value(acc: Option<Bottleneck>, next: Option<Bottleneck>) -> Option<Bottleneck> {
    match (acc, next) {
        (Some(a), Some(b)) if b.value > a.value => Some(b),
        (Some(a), _) => Some(a),
        (None, b) => b,
    }
}

fn ordinary(table: &DistanceTable<'_>) -> Option<Bottleneck> {
    let all: Vec<usize> = (0..table.fiber.len()).collect();
    kruskal(table, &all, |_| true)
}

fn equal(table: &DistanceTable<'_>) -> Option<Bottleneck> {
    let mut layers: Vec<i64> = table.lengths.clone();
    layers.sort_unstable();
    layers.dedup();
    layers.into_iter().fold(None, |acc, l| {
        let class: Vec<usize> = (0..table.fiber.len()).filter(|&i| table.lengths[i] == l).collect();
        max_by_value(acc, kruskal(table, &class, |_| true))
    })
}

fn homogeneous(table: &DistanceTable<'_>) -> Option<Bottleneck> {
    let mut layers: Vec<i64> = table.lengths.clone();
    layers.sort_unstable();
    layers.dedup();
    layers.into_iter().fold(None, |acc, top| {
        let below: Vec<usize> = (0..table.fiber.len()).filter(|&i| table.lengths[i] <= top).collect();
        max_by_value(acc, kruskal(table, &below, |i| table.lengths[i] == top))
    })
}

/// For every source, a minimax search along non-decreasing lengths.
fn monotone(table: &DistanceTable<'_>) -> Option<Bottleneck> {
    let n = table.fiber.len();
    let mut best: Option<Bottleneck> = None;
    for src in 0..n {
        let mut cost = vec![INFINITE; n];
        let mut prev = vec![usize::MAX; n];
        let mut done = vec![false; n];
        cost[src] = 0;
        prev[src] = src;
        loop {
            let next = (0..n)
                .filter(|&i| !done[i] && cost[i] != INFINITE)
                .min_by_key(|&i| (cost[i], i));
            let Some(x) = next else { break };
            done[x] = true;
            for y in 0..n {
                if done[y] || table.lengths[y] < table.lengths[x] {
                    continue;
                }
                let c = cost[x].max(table.d(x, y));
                if c < cost[y] {
                    cost[y] = c;
                    prev[y] = x;
                }
            }
        }
        for dst in 0..n {
            if dst == src || table.lengths[dst] < table.lengths[src] {
                continue;
            }
            let value = cost[dst];
            if best.as_ref().is_some_and(|b| b.value >= value) {
                continue;
            }
            let mut path = vec![dst];
            let mut cur = dst;
            while cur != src {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            best = Some(Bottleneck {
                value,
                from: src,
                to: dst,
                path,
            });
        }
    }
    best
}

/// The catenary degree of the given variant computed from a complete fiber.
/// Zero when there are no admissible pairs of distinct factorizations.
pub fn catenary_of_fiber(fiber: &[Factorization], variant: ChainVariant) -> CatenaryResult {
    let table = DistanceTable::new(fiber);
    let best = match variant {
        ChainVariant::Ordinary => ordinary(&table),
        ChainVariant::Equal => equal(&table),
        ChainVariant::Monotone => monotone(&table),
        ChainVariant::Homogeneous => homogeneous(&table),
    };
    result_from(variant, &table, best)
}

fn fiber_of(s: &AffineSemigroup, x: &[i64]) -> Result<Vec<Factorization>> {
    let z = fibers::factorizations(s, x)?;
    if z.is_empty() {
        return Err(Error::NotMember(x.to_vec()));
    }
    Ok(z)
}

pub fn catenary_variant_element(
    s: &AffineSemigroup,
    x: &[i64],
    variant: ChainVariant,
) -> Result<CatenaryResult> {
    Ok(catenary_of_fiber(&fiber_of(s, x)?, variant))
}

/// `c(a)`: the least `N` joining any two factorizations of `a` by an `N`-chain.
pub fn catenary_element(s: &AffineSemigroup, x: &[i64]) -> Result<CatenaryResult> {
    catenary_variant_element(s, x, ChainVariant::Ordinary)
}

/// `c_eq(a)`: chains confined to one length class.
pub fn equal_catenary_element(s: &AffineSemigroup, x: &[i64]) -> Result<CatenaryResult> {
    catenary_variant_element(s, x, ChainVariant::Equal)
}

/// `c_mon(a)`: chains with non-decreasing lengths.
pub fn monotone_catenary_element(s: &AffineSemigroup, x: &[i64]) -> Result<CatenaryResult> {
    catenary_variant_element(s, x, ChainVariant::Monotone)
}

/// `c_hom(a)`: chains bounded in length by the longer endpoint.
pub fn homogeneous_catenary_element(s: &AffineSemigroup, x: &[i64]) -> Result<CatenaryResult> {
    catenary_variant_element(s, x, ChainVariant::Homogeneous)
}

/// Catenary degree of the monoid with the Betti element where it is attained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidCatenary {
    pub value: i64,
    pub attained_at: Option<Vec<i64>>,
}

/// `c(NA)`, the maximum of `c(b)` over the Betti elements (0 without any).
pub fn catenary_monoid_detail(s: &AffineSemigroup) -> Result<MonoidCatenary> {
    let betti = toric::betti_elements(s)?;
    let values = betti
        .par_iter()
        .map(|b| catenary_element(s, &b.element).map(|r| (r.value, b.element.clone())))
        .collect::<Result<Vec<_>>>()?;
    let best = values
        .into_iter()
        .fold(None::<(i64, Vec<i64>)>, |acc, (v, b)| match acc {
            Some((bv, _)) if bv >= v => acc,
            _ => Some((v, b)),
        });
    Ok(match best {
        Some((value, b)) => MonoidCatenary {
            value,
            attained_at: Some(b),
        },
        None => MonoidCatenary {
            value: 0,
            attained_at: None,
        },
    })
}

pub fn catenary_monoid(s: &AffineSemigroup) -> Result<i64> {
    Ok(catenary_monoid_detail(s)?.value)
}

/// The two routes to the catenary degree of a lifted monoid: the largest
/// `c(b)` over its Betti elements, and the largest total degree of a minimal
/// binomial generating set of its toric ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiftedRoutes {
    pub via_betti_catenary: i64,
    pub via_total_degree: i64,
}

pub fn lifted_routes(lifted: &AffineSemigroup) -> Result<LiftedRoutes> {
    let via_betti_catenary = catenary_monoid(lifted)?;
    let via_total_degree = toric::minimal_generators(lifted)?.max_total_degree();
    Ok(LiftedRoutes {
        via_betti_catenary,
        via_total_degree,
    })
}

fn lifted_value(lifted: &AffineSemigroup) -> Result<i64> {
    let routes = lifted_routes(lifted)?;
    debug_assert_eq!(routes.via_betti_catenary, routes.via_total_degree);
    Ok(routes.via_betti_catenary.max(routes.via_total_degree))
}

/// `c_eq(NA) = c(NA^eq)`.
pub fn equal_catenary_monoid(s: &AffineSemigroup) -> Result<i64> {
    lifted_value(&s.lift_eq()?)
}

/// `c_hom(NA) = c(NA^hom)`.
pub fn homogeneous_catenary_monoid(s: &AffineSemigroup) -> Result<i64> {
    lifted_value(&s.lift_hom()?)
}

/// Result of scanning every element up to a degree bound. Only a lower bound
/// for the monoid invariant unless the bound is known to be large enough.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedScan {
    pub variant: ChainVariant,
    pub value: i64,
    pub bound: i64,
    pub elements_scanned: usize,
    pub attained_at: Option<Vec<i64>>,
}

/// Maximum of the per-element degree over all elements of degree at most
/// `bound` (integer grading of the semigroup).
pub fn catenary_scan(s: &AffineSemigroup, variant: ChainVariant, bound: i64) -> Result<BoundedScan> {
    let elements = s.elements_up_to_degree(bound)?;
    let values = elements
        .par_iter()
        .map(|x| catenary_variant_element(s, x, variant).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(i64, usize)> = None;
    for (i, v) in values.iter().enumerate() {
        if best.map_or(true, |(bv, _)| *v > bv) {
            best = Some((*v, i));
        }
    }
    let (value, attained_at) = match best {
        Some((v, i)) if v > 0 => (v, Some(elements[i].clone())),
        _ => (0, None),
    };
    Ok(BoundedScan {
        variant,
        value,
        bound,
        elements_scanned: elements.len(),
        attained_at,
    })
}

/// Bounded-scan estimate of the monotone catenary degree of the monoid.
pub fn monotone_catenary_monoid_bounded(s: &AffineSemigroup, bound: i64) -> Result<BoundedScan> {
    catenary_scan(s, ChainVariant::Monotone, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn check_witness(r: &CatenaryResult) {
        let w = r.witness.as_ref().expect("witness");
        assert_eq!(w.chain.first(), Some(&w.from));
        assert_eq!(w.chain.last(), Some(&w.to));
        assert!(w.max_step() <= r.value);
        assert!(r.variant.admissible(&w.chain), "{r:?}");
    }

    #[test]
    fn figure_element_and_betti_elements() {
        let m = s(&[&[31], &[47], &[57]]);
        for (x, c) in [(564, 14), (171, 5), (517, 15), (527, 17)] {
            let r = catenary_element(&m, &[x]).unwrap();
            assert_eq!(r.value, c, "c({x})");
            check_witness(&r);
        }
        assert_eq!(catenary_element(&m, &[31]).unwrap().value, 0);
        assert!(catenary_element(&m, &[31]).unwrap().witness.is_none());
        assert!(catenary_element(&m, &[30]).is_err());
    }

    #[test]
    fn two_generators_have_trivial_equal_catenary() {
        let m = s(&[&[2], &[3]]);
        for x in 0..40 {
            if m.member(&[x]) {
                assert_eq!(equal_catenary_element(&m, &[x]).unwrap().value, 0);
            }
        }
    }

    #[test]
    fn variants_agree_when_half_factorial() {
        let m = s(&[&[1, 0], &[1, 3], &[1, 5], &[1, 7]]);
        for x in [vec![4, 12], vec![5, 20], vec![6, 24]] {
            let c = catenary_element(&m, &x).unwrap().value;
            for v in ChainVariant::ALL {
                let r = catenary_variant_element(&m, &x, v).unwrap();
                assert_eq!(r.value, c, "{v:?} at {x:?}");
                if r.value > 0 {
                    check_witness(&r);
                }
            }
        }
    }

    #[test]
    fn witnesses_are_admissible() {
        let m = s(&[&[11], &[19], &[23]]);
        for x in [230, 300, 437, 506] {
            for v in ChainVariant::ALL {
                let r = catenary_variant_element(&m, &[x], v).unwrap();
                if r.value > 0 {
                    check_witness(&r);
                }
            }
        }
    }

    #[test]
    fn per_element_chain_of_inequalities() {
        let m = s(&[&[10], &[11], &[14], &[19]]);
        for x in 0..200 {
            if !m.member(&[x]) {
                continue;
            }
            let c = catenary_element(&m, &[x]).unwrap().value;
            let h = homogeneous_catenary_element(&m, &[x]).unwrap().value;
            let mo = monotone_catenary_element(&m, &[x]).unwrap().value;
            assert!(c <= h && h <= mo, "{x}: {c} {h} {mo}");
        }
    }

    #[test]
    fn admissibility_rules() {
        let chain = vec![vec![2, 0], vec![0, 1], vec![1, 1]];
        assert!(ChainVariant::Ordinary.admissible(&chain));
        assert!(!ChainVariant::Equal.admissible(&chain));
        assert!(!ChainVariant::Monotone.admissible(&chain));
        assert!(ChainVariant::Homogeneous.admissible(&chain));
        let up = vec![vec![0, 1], vec![1, 1], vec![2, 1]];
        assert!(ChainVariant::Monotone.admissible(&up));
    }

    #[test]
    fn small_fibers() {
        assert_eq!(catenary_of_fiber(&[], ChainVariant::Ordinary).value, 0);
        assert_eq!(catenary_of_fiber(&[vec![1, 2]], ChainVariant::Monotone).value, 0);
        let f = vec![vec![0, 2], vec![3, 0]];
        assert_eq!(catenary_of_fiber(&f, ChainVariant::Ordinary).value, 3);
        assert_eq!(catenary_of_fiber(&f, ChainVariant::Equal).value, 0);
        assert_eq!(catenary_of_fiber(&f, ChainVariant::Monotone).value, 3);
        assert_eq!(catenary_of_fiber(&f, ChainVariant::Homogeneous).value, 3);
    }
}
