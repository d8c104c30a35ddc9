//! Computation in Kiselman's semigroup `K_n` and its endomorphism monoid.
//!
//! `End(K_n)` is realised three ways and the crate moves freely between them:
//! as content tuples ([`morphisms::Endomorphism`]), as monotone set sequences
//! under the `∗` product ([`monotone::SetSequence`]), and as boolean matrices
//! avoiding the `[[0,1],[1,0]]` pattern ([`boolmat::BoolMatrix`]).
//! [`counting`] evaluates the closed formulas for pattern-avoiding matrix
//! counts and checks them against exhaustive enumeration, and [`verify`]
//! bundles every structural property as a runnable suite.

pub mod boolmat;
pub mod counting;
pub mod error;
pub mod kiselman;
pub mod monotone;
pub mod morphisms;
pub mod subset;
pub mod verify;

pub use boolmat::BoolMatrix;
pub use counting::{CountResult, CountSource};
pub use error::{Error, Result};
pub use kiselman::{Element, Generator, RewriteRule, RewriteSystem, Word};
pub use monotone::SetSequence;
pub use morphisms::{CandidateMap, Endomorphism};
pub use subset::Subset;
pub use verify::{Suite, VerificationReport, VerifyConfig};
