//! Binomial generators of the toric ideal `I_A`, Betti elements and minimal
//! presentations.
//!
//! Generators of `I_A` come from a lattice basis of `ker A`: each basis vector
//! `z` gives `X^{z+} - X^{z-}`, these generate the lattice ideal, and saturating
//! by every variable yields `I_A`. Saturation by `X_k` uses a weighted reverse
//! lexicographic order in which `X_k` is the cheapest variable: dividing each
//! element of a Gröbner basis by the largest power of `X_k` it contains gives a
//! Gröbner basis of the quotient. All S-pairs and reductions of binomials stay
//! binomials, so no polynomial arithmetic is needed.
//!
//! Betti elements are read off the `A`-degrees of the generators by checking
//! which support graphs are disconnected.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap};

use rayon::prelude::*;
use serde::Serialize;

use crate::diophantine::{self, checked, kernel_lattice_basis, IntVector};
use crate::error::{Error, Result};
use crate::fibers::{self, length, FiberGraph, Factorization};
use crate::semigroup::AffineSemigroup;

/// `X^plus - X^minus` with `pi(plus) = pi(minus)`. The plus side is the
/// lexicographically larger exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Binomial {
    pub plus: Factorization,
    pub minus: Factorization,
    /// `pi(plus)`, the `A`-degree.
    pub a_degree: IntVector,
    /// `max(|plus|, |minus|)`.
    pub total_degree: i64,
}

impl Binomial {
    pub fn new(s: &AffineSemigroup, u: Factorization, v: Factorization) -> Result<Self> {
        let (plus, minus) = if u >= v { (u, v) } else { (v, u) };
        let a_degree = s.evaluate(&plus)?;
        let total_degree = length(&plus).max(length(&minus));
        Ok(Binomial {
            plus,
            minus,
            a_degree,
            total_degree,
        })
    }

    /// The pair with the common factor `gcd(X^plus, X^minus)` removed.
    pub fn normalized(&self) -> (Factorization, Factorization) {
        let common = fibers::common_part(&self.plus, &self.minus);
        let strip = |u: &[i64]| -> Factorization { u.iter().zip(&common).map(|(a, c)| a - c).collect() };
        (strip(&self.plus), strip(&self.minus))
    }

    /// `pi(plus) == pi(minus) == a_degree`.
    pub fn is_sound(&self, s: &AffineSemigroup) -> bool {
        matches!((s.evaluate(&self.plus), s.evaluate(&self.minus)),
            (Ok(p), Ok(m)) if p == m && p == self.a_degree)
    }

    /// `X2*X3^2 - X1^2*X4`, with variable names from the semigroup.
    pub fn display(&self, s: &AffineSemigroup) -> String {
        format!("{} - {}", monomial(s, &self.plus), monomial(s, &self.minus))
    }
}

fn monomial(s: &AffineSemigroup, u: &[i64]) -> String {
    let parts: Vec<String> = u
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| {
            let name = s.variable_name(i);
            if *e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Weighted degree first, then either lexicographic order or reverse
/// lexicographic order with a chosen cheapest variable.
#[derive(Debug, Clone)]
struct TermOrder {
    weights: Vec<i64>,
    cheapest: Option<usize>,
}

impl TermOrder {
    fn weight(&self, u: &[i64]) -> i128 {
        u.iter().zip(&self.weights).map(|(a, w)| i128::from(*a) * i128::from(*w)).sum()
    }

    fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        let by_weight = self.weight(a).cmp(&self.weight(b));
        if by_weight != Ordering::Equal {
            return by_weight;
        }
        match self.cheapest {
            None => a.cmp(b),
            Some(k) => {
                let n = a.len();
                let order = std::iter::once(k).chain((0..n).rev().filter(move |&i| i != k));
                for i in order {
                    if a[i] != b[i] {
                        // more of a cheap variable makes a monomial smaller
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A binomial `X^lead - X^trail` with `lead > trail` in the current order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Rule {
    lead: IntVector,
    trail: IntVector,
}

struct Completion<'a> {
    order: &'a TermOrder,
    rules: Vec<Rule>,
    steps: usize,
    budget: usize,
}

impl Completion<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded {
                what: "binomial completion step",
                limit: self.budget,
            });
        }
        Ok(())
    }

    /// Normal form of a monomial under the current rules.
    fn reduce(&mut self, mut m: IntVector) -> Result<IntVector> {
        'outer: loop {
            for idx in 0..self.rules.len() {
                let rule = &self.rules[idx];
                if diophantine::leq(&rule.lead, &m) {
                    let next = m
                        .iter()
                        .zip(&rule.lead)
                        .zip(&rule.trail)
                        .map(|((x, l), t)| checked((x - l).checked_add(*t), "binomial reduction"))
                        .collect::<Result<IntVector>>()?;
                    m = next;
                    self.tick()?;
                    continue 'outer;
                }
            }
            return Ok(m);
        }
    }

    /// Reduces `X^a - X^b` and orients it; `None` if it reduces to zero.
    fn reduce_pair(&mut self, a: IntVector, b: IntVector) -> Result<Option<Rule>> {
        let a = self.reduce(a)?;
        let b = self.reduce(b)?;
        Ok(match self.order.cmp(&a, &b) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Rule { lead: a, trail: b }),
            Ordering::Less => Some(Rule { lead: b, trail: a }),
        })
    }

    fn add_rule(&mut self, pairs: &mut BinaryHeap<Reverse<(i128, usize, usize)>>, rule: Rule) {
        let new = self.rules.len();
        for old in 0..new {
            let lcm: IntVector = self.rules[old]
                .lead
                .iter()
                .zip(&rule.lead)
                .map(|(x, y)| *x.max(y))
                .collect();
            pairs.push(Reverse((self.order.weight(&lcm), old, new)));
        }
        self.rules.push(rule);
    }

    fn run(mut self, input: Vec<(IntVector, IntVector)>) -> Result<Vec<Rule>> {
        let mut pairs: BinaryHeap<Reverse<(i128, usize, usize)>> = BinaryHeap::new();
        let mut pending: Vec<(IntVector, IntVector)> = input;
        pending.sort_by(|x, y| self.order.weight(&x.0).cmp(&self.order.weight(&y.0)));

        for (a, b) in pending.drain(..) {
            if let Some(rule) = self.reduce_pair(a, b)? {
                self.add_rule(&mut pairs, rule);
            }
        }

        while let Some(Reverse((_, i, j))) = pairs.pop() {
            self.tick()?;
            let (li, lj) = (&self.rules[i].lead, &self.rules[j].lead);
            // coprime leading terms: the S-binomial reduces to zero
            if li.iter().zip(lj).all(|(x, y)| *x == 0 || *y == 0) {
                continue;
            }
            let lcm: IntVector = li.iter().zip(lj).map(|(x, y)| *x.max(y)).collect();
            let shift = |rule: &Rule| -> Result<IntVector> {
                lcm.iter()
                    .zip(&rule.lead)
                    .zip(&rule.trail)
                    .map(|((m, l), t)| checked((m - l).checked_add(*t), "S-binomial"))
                    .collect()
            };
            let a = shift(&self.rules[i])?;
            let b = shift(&self.rules[j])?;
            if let Some(rule) = self.reduce_pair(a, b)? {
                self.add_rule(&mut pairs, rule);
            }
        }
        self.interreduce()
    }

    /// Reduced Gröbner basis: drop rules whose lead is divisible by another
    /// lead, then bring every trail to normal form.
    fn interreduce(mut self) -> Result<Vec<Rule>> {
        let mut rules = std::mem::take(&mut self.rules);
        rules.sort_by(|x, y| self.order.cmp(&x.lead, &y.lead));
        rules.dedup_by(|x, y| x.lead == y.lead);
        let mut kept: Vec<Rule> = Vec::new();
        for (idx, r) in rules.iter().enumerate() {
            let redundant = rules
                .iter()
                .enumerate()
                .any(|(o, other)| o != idx && diophantine::leq(&other.lead, &r.lead) && other.lead != r.lead);
            if !redundant {
                kept.push(r.clone());
            }
        }
        let mut out = Vec::with_capacity(kept.len());
        for i in 0..kept.len() {
            let others: Vec<Rule> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.clone())
                .collect();
            self.rules = others;
            let trail = self.reduce(kept[i].trail.clone())?;
            out.push(Rule {
                lead: kept[i].lead.clone(),
                trail,
            });
        }
        Ok(out)
    }
}

fn complete(
    order: &TermOrder,
    input: Vec<(IntVector, IntVector)>,
    budget: usize,
) -> Result<Vec<Rule>> {
    Completion {
        order,
        rules: Vec::new(),
        steps: 0,
        budget,
    }
    .run(input)
}

/// A generating set of `I_A` made of binomials (the reduced Gröbner basis for
/// the degree-then-lexicographic order), sorted and oriented canonically.
pub fn toric_generators(s: &AffineSemigroup) -> Result<Vec<Binomial>> {
    let budget = s.limits().completion_steps;
    let weights = s.generator_degrees().to_vec();
    let n = s.len();

    let mut current: Vec<(IntVector, IntVector)> = kernel_lattice_basis(s.generators())?
        .into_iter()
        .map(|z| {
            let plus = z.iter().map(|x| (*x).max(0)).collect();
            let minus = z.iter().map(|x| (-*x).max(0)).collect();
            (plus, minus)
        })
        .collect();
    if current.is_empty() {
        return Ok(Vec::new());
    }

    let lex = TermOrder {
        weights: weights.clone(),
        cheapest: None,
    };
    current = into_pairs(complete(&lex, current, budget)?);

    for k in 0..n {
        let order = TermOrder {
            weights: weights.clone(),
            cheapest: Some(k),
        };
        current = complete(&order, current, budget)?
            .into_iter()
            .map(|r| {
                let c = r.lead[k].min(r.trail[k]);
                let (mut a, mut b) = (r.lead, r.trail);
                a[k] -= c;
                b[k] -= c;
                (a, b)
            })
            .collect();
    }

    let mut out = complete(&lex, current, budget)?
        .into_iter()
        .map(|r| Binomial::new(s, r.lead, r.trail))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

fn into_pairs(rules: Vec<Rule>) -> Vec<(IntVector, IntVector)> {
    rules.into_iter().map(|r| (r.lead, r.trail)).collect()
}

/// A Betti element with the number of connected components of its graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BettiElement {
    pub element: IntVector,
    pub components: usize,
}

/// Support graphs of the candidates that are disconnected, ordered by degree
/// and then lexicographically.
fn disconnected(
    s: &AffineSemigroup,
    candidates: Vec<IntVector>,
) -> Result<Vec<(BettiElement, FiberGraph)>> {
    let graphs = candidates
        .into_par_iter()
        .map(|x| fibers::nabla_graph(s, &x))
        .collect::<Result<Vec<_>>>()?;
    let mut keyed = graphs
        .into_iter()
        .filter(FiberGraph::is_betti)
        .map(|g| {
            let b = BettiElement {
                element: g.element.clone(),
                components: g.components.len(),
            };
            s.degree(&b.element).map(|d| (d, b, g))
        })
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|x, y| (x.0, &x.1.element).cmp(&(y.0, &y.1.element)));
    Ok(keyed.into_iter().map(|(_, b, g)| (b, g)).collect())
}

fn betti_graphs(s: &AffineSemigroup) -> Result<Vec<(BettiElement, FiberGraph)>> {
    let candidates: BTreeSet<IntVector> =
        toric_generators(s)?.into_iter().map(|b| b.a_degree).collect();
    disconnected(s, candidates.into_iter().collect())
}

/// The elements whose support graph is disconnected, ordered by degree.
pub fn betti_elements(s: &AffineSemigroup) -> Result<Vec<BettiElement>> {
    Ok(betti_graphs(s)?.into_iter().map(|(b, _)| b).collect())
}

/// Betti elements of degree at most `bound`, found by checking every element
/// up to that degree. Independent of the binomial completion.
pub fn betti_oracle(s: &AffineSemigroup, bound: i64) -> Result<Vec<BettiElement>> {
    let elements = s.elements_up_to_degree(bound)?;
    Ok(disconnected(s, elements)?.into_iter().map(|(b, _)| b).collect())
}

/// A minimal presentation: for every Betti element with `k` components,
/// `k - 1` relations joining the lexicographically least factorization of the
/// first component to the least factorization of each other component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub relations: Vec<Binomial>,
    pub betti: Vec<BettiElement>,
}

impl Presentation {
    /// Largest total degree among the relations (0 if there are none).
    pub fn max_total_degree(&self) -> i64 {
        self.relations.iter().map(|r| r.total_degree).max().unwrap_or(0)
    }
}

pub fn minimal_generators(s: &AffineSemigroup) -> Result<Presentation> {
    let graphs = betti_graphs(s)?;
    let mut relations = Vec::new();
    let mut betti = Vec::new();
    for (b, g) in graphs {
        let base = &g.vertices[g.components[0][0]];
        for comp in &g.components[1..] {
            relations.push(Binomial::new(s, g.vertices[comp[0]].clone(), base.clone())?);
        }
        betti.push(b);
    }
    Ok(Presentation { relations, betti })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn elements(b: &[BettiElement]) -> Vec<IntVector> {
        b.iter().map(|x| x.element.clone()).collect()
    }

    #[test]
    fn cusp() {
        let m = s(&[&[2], &[3]]);
        let gens = toric_generators(&m).unwrap();
        let normalized: Vec<_> = gens.iter().map(Binomial::normalized).collect();
        assert_eq!(normalized, vec![(vec![3, 0], vec![0, 2])]);
        assert_eq!(elements(&betti_elements(&m).unwrap()), vec![vec![6]]);
        assert_eq!(elements(&betti_oracle(&m, 20).unwrap()), vec![vec![6]]);
    }

    #[test]
    fn free_monoid() {
        let m = s(&[&[1, 0], &[0, 1]]);
        assert!(toric_generators(&m).unwrap().is_empty());
        assert!(betti_elements(&m).unwrap().is_empty());
        assert!(betti_oracle(&m, 10).unwrap().is_empty());
        let p = minimal_generators(&m).unwrap();
        assert!(p.relations.is_empty());
        assert_eq!(p.max_total_degree(), 0);
    }

    #[test]
    fn three_generated() {
        let m = s(&[&[31], &[47], &[57]]);
        let gens = toric_generators(&m).unwrap();
        assert!(gens.iter().all(|g| g.is_sound(&m)));
        let betti = betti_elements(&m).unwrap();
        assert_eq!(elements(&betti), vec![vec![171], vec![517], vec![527]]);
        assert!(betti.iter().all(|b| b.components == 2));
        let p = minimal_generators(&m).unwrap();
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.relations[0].plus, vec![4, 1, 0]);
        assert_eq!(p.relations[0].minus, vec![0, 0, 3]);
        assert_eq!(elements(&betti_oracle(&m, 600).unwrap()), elements(&betti));
    }

    #[test]
    fn term_orders() {
        let lex = TermOrder {
            weights: vec![1, 1, 1],
            cheapest: None,
        };
        assert_eq!(lex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
        let rev = TermOrder {
            weights: vec![1, 1, 1],
            cheapest: Some(0),
        };
        // more of the cheap variable is smaller
        assert_eq!(rev.cmp(&[1, 1, 0], &[0, 1, 1]), Ordering::Less);
        let weighted = TermOrder {
            weights: vec![2, 3],
            cheapest: None,
        };
        assert_eq!(weighted.cmp(&[3, 0], &[0, 2]), Ordering::Greater);
    }

    #[test]
    fn display_uses_variable_names() {
        let m = s(&[&[10], &[11], &[14], &[19]]).lift_hom().unwrap();
        let b = Binomial::new(&m, vec![0, 0, 1, 2, 0], vec![0, 2, 0, 0, 1]).unwrap();
        assert_eq!(b.display(&m), "X1^2*X4 - X2*X3^2");
        assert!(b.is_sound(&m));
    }
}
