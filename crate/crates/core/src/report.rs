//! The serializable invariant panel printed by `catena report`.

use serde::{Deserialize, Serialize};

use crate::catenary::{self, ChainVariant};
use crate::diophantine::{rational, IntVector};
use crate::error::Result;
use crate::fibers::Factorization;
use crate::invariants;
use crate::semigroup::AffineSemigroup;
use crate::toric;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupEcho {
    pub generators: Vec<IntVector>,
    /// Rational coordinates as strings such as `"1/10"`.
    pub rho: Vec<String>,
    pub omega: Option<Vec<String>>,
    pub atoms_verified: bool,
}

impl SemigroupEcho {
    pub fn of(s: &AffineSemigroup) -> Self {
        SemigroupEcho {
            generators: s.generators().rows().to_vec(),
            rho: s.rho().iter().map(rational::format).collect(),
            omega: s.omega().map(|w| w.iter().map(rational::format).collect()),
            atoms_verified: s.atoms_verified(),
        }
    }
}

/// A value obtained by scanning every element up to a degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEstimate {
    pub value: i64,
    pub method: String,
    pub bound: i64,
    pub elements_scanned: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub plus: Factorization,
    pub minus: Factorization,
    pub degree: IntVector,
    pub total_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub element: IntVector,
    pub value: i64,
    pub chain: Vec<Factorization>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub relations: Vec<RelationRecord>,
    /// One chain per Betti element realizing its catenary degree.
    pub catenary_chains: Vec<ChainRecord>,
}

/// Every invariant of the panel. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub version: String,
    pub semigroup: SemigroupEcho,
    pub half_factorial: bool,
    pub betti: Vec<IntVector>,
    pub catenary: i64,
    pub catenary_eq: i64,
    pub catenary_hom: i64,
    pub catenary_mon: ScanEstimate,
    /// `null` when the generators are not the atoms.
    pub omega: Option<i64>,
    pub tame: Option<i64>,
    pub tame_method: String,
    pub witnesses: Option<Witnesses>,
}

impl InvariantReport {
    /// Computes the full panel; `bound` is the monotone scan bound.
    pub fn compute(s: &AffineSemigroup, bound: i64, with_witnesses: bool) -> Result<Self> {
        let presentation = toric::minimal_generators(s)?;
        let betti: Vec<IntVector> = presentation.betti.iter().map(|b| b.element.clone()).collect();
        let mut chains = Vec::new();
        let mut c = 0;
        for b in &betti {
            let r = catenary::catenary_element(s, b)?;
            c = c.max(r.value);
            chains.push(ChainRecord {
                element: b.clone(),
                value: r.value,
                chain: r.witness.map(|w| w.chain).unwrap_or_default(),
            });
        }
        let scan = catenary::catenary_scan(s, ChainVariant::Monotone, bound)?;
        let (omega, tame) = if s.atoms_verified() {
            (Some(invariants::omega_monoid(s)?), Some(invariants::tame_monoid(s)?))
        } else {
            (None, None)
        };
        let witnesses = with_witnesses.then(|| Witnesses {
            relations: presentation
                .relations
                .iter()
                .map(|r| RelationRecord {
                    plus: r.plus.clone(),
                    minus: r.minus.clone(),
                    degree: r.a_degree.clone(),
                    total_degree: r.total_degree,
                })
                .collect(),
            catenary_chains: chains,
        });
        Ok(InvariantReport {
            version: VERSION.to_string(),
            semigroup: SemigroupEcho::of(s),
            half_factorial: s.is_half_factorial(),
            betti,
            catenary: c,
            catenary_eq: catenary::equal_catenary_monoid(s)?,
            catenary_hom: catenary::homogeneous_catenary_monoid(s)?,
            catenary_mon: ScanEstimate {
                value: scan.value,
                method: "bounded-scan".into(),
                bound: scan.bound,
                elements_scanned: scan.elements_scanned,
            },
            omega,
            tame,
            tame_method: "candidate-set".into(),
            witnesses,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    /// Checks every listed factorization against the generators it echoes:
    /// both sides of each relation and every chain member map to the claimed
    /// element.
    pub fn verify(&self) -> Result<bool> {
        let s = AffineSemigroup::new(self.semigroup.generators.clone())?;
        for r in self.witnesses.iter().flat_map(|w| &w.relations) {
            if s.evaluate(&r.plus)? != r.degree || s.evaluate(&r.minus)? != r.degree {
                return Ok(false);
            }
        }
        for c in self.witnesses.iter().flat_map(|w| &w.catenary_chains) {
            for u in &c.chain {
                if s.evaluate(u)? != c.element {
                    return Ok(false);
                }
            }
            let steps = c.chain.windows(2).map(|w| crate::fibers::distance(&w[0], &w[1]));
            if steps.max().unwrap_or(0) > c.value {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_text(&self) -> String {
        let show = |v: &Option<i64>| v.map_or("n/a (generators not minimal)".to_string(), |x| x.to_string());
        let betti: Vec<String> = self.betti.iter().map(|b| crate::semigroup::format_point(b)).collect();
        let mut out = String::new();
        out.push_str(&format!("generators: {}\n", crate::semigroup::format_generators(&self.semigroup.generators)));
        out.push_str(&format!("half-factorial: {}\n", self.half_factorial));
        out.push_str(&format!("betti: {}\n", betti.join(" ")));
        out.push_str(&format!("catenary: {}\n", self.catenary));
        out.push_str(&format!("catenary-eq: {}\n", self.catenary_eq));
        out.push_str(&format!("catenary-hom: {}\n", self.catenary_hom));
        out.push_str(&format!(
            "catenary-mon: {} (bounded scan, degree <= {}, {} elements)\n",
            self.catenary_mon.value, self.catenary_mon.bound, self.catenary_mon.elements_scanned
        ));
        out.push_str(&format!("omega: {}\n", show(&self.omega)));
        out.push_str(&format!("tame: {} ({})\n", show(&self.tame), self.tame_method));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = AffineSemigroup::new(vec![vec![31], vec![47], vec![57]]).unwrap();
        let r = InvariantReport::compute(&s, 200, true).unwrap();
        assert_eq!(r.betti, vec![vec![171], vec![517], vec![527]]);
        let back = InvariantReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(back.verify().unwrap());
    }

    #[test]
    fn tampered_relation_fails_verification() {
        let s = AffineSemigroup::new(vec![vec![2], vec![3]]).unwrap();
        let mut r = InvariantReport::compute(&s, 30, true).unwrap();
        r.witnesses.as_mut().unwrap().relations[0].plus[0] += 1;
        assert!(!r.verify().unwrap());
    }
}
