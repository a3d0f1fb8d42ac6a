//! Exact combinatorics of affine standard Lyndon words in type A.
//!
//! The crate models the affine root system of type A under an arbitrary
//! total order on the alphabet `{0, …, n}`, evaluates standard bracketings
//! in the loop realization with exact integer arithmetic, computes the full
//! table of affine standard Lyndon words by the inductive algorithm, checks
//! it against closed-form generators and a definition-level brute-force
//! oracle, and analyzes the induced order on extended positive roots.

pub mod closed_forms;
pub mod engine;
pub mod loop_algebra;
pub mod orders;
pub mod root_system;
pub mod words;

pub use engine::SLTable;
pub use root_system::{AffineRoot, ExtendedRoot, OrderedAlphabet, RealRoot};
pub use words::{Letter, Word};
