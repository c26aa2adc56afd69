//! Finite models of zero-knowledge interaction between a prover and a
//! verifier: partition knowledge and belief, the stage classifier, the
//! signaling threshold and transitions, equilibrium analysis of finite games,
//! and linguistic fuzzy equilibria.

pub mod alternation;
pub mod cli;
pub mod epistemic;
pub mod equilibrium;
pub mod error;
pub mod fuzzy;
pub mod report;
pub mod signaling;
pub mod spec;
pub mod walkthrough;

pub use error::{Error, Result};
