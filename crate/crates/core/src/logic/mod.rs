//! Propositional formulas, finite universes of points, and truth sets.

mod formula;
mod parser;
mod pointset;
mod universe;

pub use formula::{is_identifier, print_formula, AtomSet, Formula};
pub use parser::parse_formula;
pub use pointset::{PointSet, MAX_POINTS};
pub use universe::{
    are_equivalent, classify, represent, truth_set, Classification, Point, Universe, DEFAULT_ATOM_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown atom `{name}`{}", position.map(|p| format!(" at offset {p}")).unwrap_or_default())]
    UnknownAtom { name: String, position: Option<usize> },
    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
    #[error("atom `{0}` declared twice")]
    DuplicateAtom(String),
    #[error("invalid point id `{0}`")]
    InvalidPointId(String),
    #[error("point `{0}` declared twice")]
    DuplicatePoint(String),
    #[error("point `{0}` assigns an undeclared atom")]
    AssignmentOutOfRange(String),
    #[error("a universe needs at least one point")]
    EmptyUniverse,
    #[error("{requested} {what} exceeds the limit of {limit}")]
    LimitExceeded { what: &'static str, requested: usize, limit: usize },
    #[error("belief sets live in different universes")]
    UniverseMismatch,
}
