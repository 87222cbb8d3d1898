//! Full-domain revision functions over a finite universe, the AGM and
//! filtered-revision checkers, and the passage between filtered revision and
//! basic AGM revision in both directions.

mod construct;
mod enumerate;
mod filtered;
mod postulates;
mod table;

pub use construct::{revision_from_preorder, revision_from_selection};
pub use enumerate::{
    enumerate_labelings, enumerate_preorders, enumerate_selections, enumerate_tables, random_labeling,
    random_nonempty_subset, random_preorder, random_selection, random_selection_with, random_subset, random_table,
    MAX_ENUMERATION, MAX_PREORDER_POINTS,
};
pub use filtered::{admissible_selection, build_filtered, recover_basic, recover_selection, Infeasibility, Infeasible};
pub(crate) use filtered::filter_unchecked;
pub use postulates::{
    agm_failure_at, agm_pair_failure_at, check_agm, check_filtered, filter_failures_at, witness_reproduces,
    AgmPostulate, FilterClause, FilterReport, Postulate, PostulateReport, Verdict, Witness,
};
pub(crate) use table::{check_table_size, same_universe};
pub use table::{
    Credibility, CredibilityLabeling, PlausibilityOrder, RevisionTable, SelectionFunction, MAX_TABLE_POINTS,
};

use thiserror::Error;

use crate::logic::PointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RevisionError {
    #[error("universe of {points} points exceeds the limit of {limit}")]
    TooLarge { points: usize, limit: usize },
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("initial beliefs must be consistent")]
    InconsistentInitial,
    #[error("objects over different universes")]
    UniverseMismatch,
    #[error("invalid selection at {proposition:?}: {reason}")]
    Selection { proposition: PointSet, reason: String },
    #[error("invalid labeling at {proposition:?}: {reason}")]
    Labeling { proposition: PointSet, reason: String },
    #[error("invalid plausibility order: {0}")]
    Order(String),
    #[error("input is not a basic AGM revision: {postulate} fails at {:?}", witness.propositions)]
    Precondition { postulate: Postulate, witness: Witness },
    #[error(transparent)]
    Infeasible(#[from] Infeasible),
}
