//! Word and conjugacy problems in Artin groups of extra-large type.
//!
//! An Artin group is presented by generators `x1 … xn` and, for each pair
//! with a finite Coxeter entry `m ≥ 4`, the relation equating the two
//! alternating products of length `m`. This crate decides equality and
//! conjugacy of elements given as words, returns explicit conjugating
//! witnesses, and ships an independent brute-force oracle used to validate
//! the production path in tests.
//!
//! Modules:
//! - [`word`], [`context`]: letters, words, free reduction, Coxeter data.
//! - [`dihedral`]: two-generator geodesic criterion and tau/delta rewrites.
//! - [`rewrite`]: geodesic reduction, normal forms, cyclic reduction.
//! - [`dihedral_conjugacy`]: conjugacy in two-generator groups through the
//!   free-product-with-centre picture.
//! - [`solver`]: the full conjugacy decision procedure with witnesses.
//! - [`oracle`]: presentation-level brute force (never used by the solver).
//! - [`bench`]: deterministic instance generation and timing helpers.

pub mod bench;
pub mod context;
pub mod dihedral;
pub mod dihedral_conjugacy;
pub mod oracle;
pub mod rewrite;
pub mod solver;
pub mod word;

pub use context::{ContextError, CoxeterMatrix, GroupContext, MValue};
pub use word::{GeneratorId, Letter, Sign, Word};
