//! Filtered belief revision over finite propositional universes, and the
//! generalized choice structures that induce it.

pub mod belief;
pub mod cli;
pub mod gcs;
pub mod logic;
pub mod revision;
