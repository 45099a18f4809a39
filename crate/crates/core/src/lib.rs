//! Exact non-unique factorization invariants of finitely generated reduced
//! monoids `NA` spanned by integer vectors.
//!
//! The crate is organized bottom-up:
//!
//! - [`diophantine`]: checked integer/rational linear algebra, kernel lattices,
//!   positivity witnesses and minimal nonnegative solutions of linear systems;
//! - [`semigroup`]: the validated monoid, atoms, membership and the two lifts
//!   that prepend a length coordinate;
//! - [`fibers`]: factorization sets, lengths, distances and the support graph
//!   of a fiber;
//! - [`catenary`]: ordinary, equal, monotone and homogeneous catenary degrees;
//! - [`toric`]: binomial completion of the toric ideal, Betti elements and
//!   minimal presentations;
//! - [`invariants`]: omega-primality and the tame degree;
//! - [`report`] and [`cli`]: serialization and the `catena` command line.
//!
//! No floating point is used anywhere.

pub mod catenary;
pub mod cli;
pub mod diophantine;
pub mod error;
pub mod fibers;
pub mod invariants;
pub mod report;
pub mod semigroup;
pub mod toric;
mod unionfind;

pub use error::{Error, Result};
pub use semigroup::{AffineSemigroup, Element, Limits};
