//! The validated monoid `NA` generated by the rows of an integer matrix.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diophantine::{
    self, positivity_witness, rational, rational_solve_all_ones, IntMatrix, IntVector,
    RatVector, Rational,
};
use crate::error::{Error, Result};
use crate::fibers;

/// Resource caps shared by every computation on a semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest fiber that may be materialized.
    pub fiber_cap: usize,
    /// Node budget for the minimal-solution search.
    pub solver_nodes: usize,
    /// Reduction steps allowed in one binomial completion.
    pub completion_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            fiber_cap: 1_000_000,
            solver_nodes: diophantine::DEFAULT_NODE_BUDGET,
            completion_steps: 10_000_000,
        }
    }
}

/// Which lift, if any, produced a semigroup. Only affects variable naming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lift {
    /// `(1, a_i)` for every generator.
    Eq,
    /// `e_0 = (1, 0, ..., 0)` followed by `(1, a_i)`.
    Hom,
}

/// A finitely generated reduced monoid `NA`, `A = {a_1, ..., a_n}` in `Z^d`.
///
/// Invariants established on construction: no zero and no repeated generator,
/// `a_i . rho >= 1` for every generator, and `A omega^T = (1, ..., 1)^T` when
/// `omega` is present.
#[derive(Debug, Clone)]
pub struct AffineSemigroup {
    generators: IntMatrix,
    rho: RatVector,
    grading: IntVector,
    generator_degrees: Vec<i64>,
    omega: Option<RatVector>,
    atoms: Vec<usize>,
    lift: Option<Lift>,
    limits: Limits,
}

/// A certified member of `NA` together with its degree `value . rho`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub value: IntVector,
    pub degree: Rational,
}

impl AffineSemigroup {
    pub fn new(rows: Vec<IntVector>) -> Result<Self> {
        Self::with_limits(rows, Limits::default())
    }

    pub fn with_limits(rows: Vec<IntVector>, limits: Limits) -> Result<Self> {
        let generators = validate_rows(rows)?;
        let rho = positivity_witness(&generators)?.ok_or(Error::NotReduced)?;
        let omega = rational_solve_all_ones(&generators)?;
        Self::assemble(generators, rho, omega, None, limits)
    }

    fn assemble(
        generators: IntMatrix,
        rho: RatVector,
        omega: Option<RatVector>,
        lift: Option<Lift>,
        limits: Limits,
    ) -> Result<Self> {
        let grading = rational::primitive_integer_multiple(&rho)?;
        let generator_degrees = generators
            .rows()
            .iter()
            .map(|r| diophantine::dot(r, &grading))
            .collect::<Result<Vec<_>>>()?;
        if generator_degrees.iter().any(|g| *g <= 0) {
            return Err(Error::InvalidWitness);
        }
        let mut s = AffineSemigroup {
            generators,
            rho,
            grading,
            generator_degrees,
            omega,
            atoms: Vec::new(),
            lift,
            limits,
        };
        s.atoms = (0..s.len())
            .map(|i| fibers::factorizations(&s, s.generator(i)).map(|z| (i, z.len() == 1)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter_map(|(i, atom)| atom.then_some(i))
            .collect();
        Ok(s)
    }

    /// Replaces the positivity witness by a user-supplied one.
    pub fn with_rho(self, rho: RatVector) -> Result<Self> {
        if rho.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.len(),
            });
        }
        for row in self.generators.rows() {
            if rational::dot_int(row, &rho)? < Rational::one() {
                return Err(Error::InvalidWitness);
            }
        }
        Self::assemble(self.generators, rho, self.omega, self.lift, self.limits)
    }

    pub fn with_new_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// Number of generators `n`.
    pub fn len(&self) -> usize {
        self.generators.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.nrows() == 0
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.generators.ncols()
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &[i64] {
        self.generators.row(i)
    }

    pub fn rho(&self) -> &[Rational] {
        &self.rho
    }

    /// The primitive integer vector on the ray of `rho`; `a . grading` is the
    /// integer degree used to bound enumerations and scans.
    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    /// `a_i . grading` for every generator (all positive).
    pub fn generator_degrees(&self) -> &[i64] {
        &self.generator_degrees
    }

    pub fn max_generator_degree(&self) -> i64 {
        self.generator_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn degree(&self, x: &[i64]) -> Result<i64> {
        diophantine::dot(x, &self.grading)
    }

    pub fn omega(&self) -> Option<&[Rational]> {
        self.omega.as_deref()
    }

    pub fn is_half_factorial(&self) -> bool {
        self.omega.is_some()
    }

    pub fn lift_kind(&self) -> Option<Lift> {
        self.lift
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Indices of generators whose fiber is a singleton.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// True when every generator is an atom, i.e. `A` is the minimal generating
    /// system of the monoid.
    pub fn atoms_verified(&self) -> bool {
        self.atoms.len() == self.len()
    }

    /// The semigroup generated by the atoms only.
    pub fn minimized(&self) -> Result<Self> {
        if self.atoms_verified() {
            return Ok(self.clone());
        }
        let rows = self.atoms.iter().map(|&i| self.generator(i).to_vec()).collect();
        Ok(Self::with_limits(rows, self.limits)?.with_rho(self.rho.clone())?)
    }

    pub fn require_minimal(&self) -> Result<()> {
        if self.atoms_verified() {
            return Ok(());
        }
        let redundant = (0..self.len()).filter(|i| !self.atoms.contains(i)).collect();
        Err(Error::NotMinimalGenerating(redundant))
    }

    pub fn check_width(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Membership in `NA`, decided by a degree-bounded factorization search.
    pub fn member(&self, x: &[i64]) -> bool {
        x.len() == self.dim() && fibers::has_factorization(self, x).unwrap_or(false)
    }

    pub fn element(&self, value: IntVector) -> Result<Element> {
        self.check_width(&value)?;
        if !fibers::has_factorization(self, &value)? {
            return Err(Error::NotMember(value));
        }
        let degree = rational::dot_int(&value, &self.rho)?;
        Ok(Element { value, degree })
    }

    /// Every element of degree at most `bound`, ordered by degree then
    /// lexicographically. Fails when more than `fiber_cap` elements qualify.
    pub fn elements_up_to_degree(&self, bound: i64) -> Result<Vec<IntVector>> {
        let zero = vec![0; self.dim()];
        if bound < 0 {
            return Ok(Vec::new());
        }
        let mut seen: HashSet<IntVector> = HashSet::from([zero.clone()]);
        let mut stack = vec![(zero, 0i64)];
        while let Some((x, deg)) = stack.pop() {
            for (g, gd) in self.generators.rows().iter().zip(&self.generator_degrees) {
                if deg + gd > bound {
                    continue;
                }
                let y = diophantine::add(&x, g)?;
                if seen.insert(y.clone()) {
                    if seen.len() > self.limits.fiber_cap {
                        return Err(Error::BudgetExceeded {
                            what: "element enumeration",
                            limit: self.limits.fiber_cap,
                        });
                    }
                    stack.push((y, deg + gd));
                }
            }
        }
        let mut out = seen
            .into_iter()
            .map(|x| self.degree(&x).map(|d| (d, x)))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out.into_iter().map(|(_, x)| x).collect())
    }

    /// `pi(u) = uA`.
    pub fn evaluate(&self, u: &[i64]) -> Result<IntVector> {
        self.generators.combine(u)
    }

    /// `A^eq = {(1, a_1), ..., (1, a_n)}`.
    pub fn lift_eq(&self) -> Result<Self> {
        let rows = self.generators.rows().iter().map(|r| prepend_one(r)).collect();
        self.lifted(rows, Lift::Eq)
    }

    /// `A^hom = {e_0, (1, a_1), ..., (1, a_n)}` with `e_0` as generator 0.
    pub fn lift_hom(&self) -> Result<Self> {
        let mut e0 = vec![0; self.dim() + 1];
        e0[0] = 1;
        let mut rows = vec![e0];
        rows.extend(self.generators.rows().iter().map(|r| prepend_one(r)));
        self.lifted(rows, Lift::Hom)
    }

    fn lifted(&self, rows: Vec<IntVector>, lift: Lift) -> Result<Self> {
        let generators = validate_rows(rows)?;
        let mut unit = vec![Rational::zero(); self.dim() + 1];
        unit[0] = Rational::one();
        Self::assemble(generators, unit.clone(), Some(unit), Some(lift), self.limits)
    }

    /// Name of the variable attached to generator `i`: `X1..Xn`, or `X0..Xn`
    /// for a homogeneous lift where `X0` is `e_0`.
    pub fn variable_name(&self, i: usize) -> String {
        match self.lift {
            Some(Lift::Hom) => format!("X{i}"),
            _ => format!("X{}", i + 1),
        }
    }
}

fn prepend_one(r: &[i64]) -> IntVector {
    std::iter::once(1).chain(r.iter().copied()).collect()
}

fn validate_rows(rows: Vec<IntVector>) -> Result<IntMatrix> {
    if rows.is_empty() {
        return Err(Error::NoGenerators);
    }
    let m = IntMatrix::from_rows(rows)?;
    if m.ncols() == 0 {
        return Err(Error::ZeroGenerator(0));
    }
    for (i, r) in m.rows().iter().enumerate() {
        if r.iter().all(|x| *x == 0) {
            return Err(Error::ZeroGenerator(i));
        }
        if let Some(j) = m.rows()[..i].iter().position(|s| s == r) {
            return Err(Error::DuplicateGenerator(j, i));
        }
    }
    Ok(m)
}

impl fmt::Display for AffineSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_generators(self.generators.rows()))
    }
}

/// Inverse of [`parse_generators`] for the comma / semicolon forms.
pub fn format_generators(rows: &[IntVector]) -> String {
    if rows.iter().all(|r| r.len() == 1) {
        rows.iter().map(|r| r[0].to_string()).collect::<Vec<_>>().join(",")
    } else {
        rows.iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Formats a point of `Z^d`: a bare integer for `d = 1`, `(x,y,...)` otherwise.
pub fn format_point(x: &[i64]) -> String {
    if x.len() == 1 {
        x[0].to_string()
    } else {
        format!("({})", x.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

#[derive(Deserialize)]
struct GeneratorFile {
    generators: Vec<IntVector>,
}

/// Parses generators given as
///
/// - comma-separated integers for `d = 1`: `"31,47,57"`;
/// - semicolon-separated rows of whitespace-separated integers:
///   `"1 0; 1 3; 1 5; 1 7"`;
/// - JSON: `{"generators": [[1, 0], [1, 3]]}`.
pub fn parse_generators(input: &str) -> Result<Vec<IntVector>> {
    let s = input.trim();
    if s.starts_with('{') {
        let file: GeneratorFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(file.generators);
    }
    let int = |t: &str| -> Result<i64> {
        t.parse()
            .map_err(|_| Error::Parse(format!("invalid integer {t:?} in {s:?}")))
    };
    if s.contains(';') {
        s.split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| r.split_whitespace().map(int).collect())
            .collect()
    } else if s.contains(',') {
        s.split(',').map(|t| int(t.trim()).map(|x| vec![x])).collect()
    } else if s.is_empty() {
        Err(Error::NoGenerators)
    } else {
        // a single generator written as one row
        Ok(vec![s.split_whitespace().map(int).collect::<Result<_>>()?])
    }
}

/// Parses an element: a bare integer, or whitespace/comma separated coordinates.
pub fn parse_point(input: &str) -> Result<IntVector> {
    let s = input.trim().trim_start_matches('(').trim_end_matches(')');
    let v = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("invalid integer {t:?} in {input:?}")))
        })
        .collect::<Result<IntVector>>()?;
    if v.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    Ok(v)
}
