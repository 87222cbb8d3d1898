//! Deductively closed theories represented by their models.
//!
//! A [`BeliefSet`] over a universe holds the set of points it leaves open; a
//! formula belongs to it iff the formula is true at every one of those points.
//! Closure under consequence is therefore automatic, and the empty point set
//! is the inconsistent theory containing every formula.
//!
//! Theory inclusion is reverse inclusion of point sets, so intersecting two
//! theories unions their points.

use std::fmt;
use std::sync::Arc;

use crate::logic::{represent, truth_set, Formula, LogicError, PointSet, Universe};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BeliefSet {
    universe: Arc<Universe>,
    points: PointSet,
}

impl BeliefSet {
    /// The theory of `points`: every formula true throughout the set.
    pub fn from_points(points: PointSet, universe: Arc<Universe>) -> BeliefSet {
        assert_eq!(points.universe_len(), universe.len(), "point set does not fit universe");
        BeliefSet { universe, points }
    }

    /// The inconsistent theory (all formulas).
    pub fn inconsistent(universe: Arc<Universe>) -> BeliefSet {
        let points = universe.empty();
        BeliefSet { universe, points }
    }

    /// The theory containing exactly the formulas valid on the universe.
    pub fn tautologies(universe: Arc<Universe>) -> BeliefSet {
        let points = universe.full();
        BeliefSet { universe, points }
    }

    pub fn points(&self) -> PointSet {
        self.points
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn contains(&self, f: &Formula) -> Result<bool, LogicError> {
        Ok(self.points.is_subset(truth_set(f, &self.universe)?))
    }

    /// Membership of the proposition with truth set `set`.
    pub fn contains_set(&self, set: PointSet) -> bool {
        self.points.is_subset(set)
    }

    /// `[K ∪ {f}]`: adds `f` and closes.
    pub fn expand(&self, f: &Formula) -> Result<BeliefSet, LogicError> {
        Ok(self.expand_set(truth_set(f, &self.universe)?))
    }

    pub fn expand_set(&self, set: PointSet) -> BeliefSet {
        BeliefSet { universe: self.universe.clone(), points: self.points & set }
    }

    /// `K ∩ K'` as theories: the formulas both contain.
    pub fn intersect(&self, other: &BeliefSet) -> Result<BeliefSet, LogicError> {
        self.check_universe(other)?;
        Ok(BeliefSet { universe: self.universe.clone(), points: self.points | other.points })
    }

    /// Theory inclusion `self ⊆ other`.
    pub fn is_subtheory_of(&self, other: &BeliefSet) -> Result<bool, LogicError> {
        self.check_universe(other)?;
        Ok(other.points.is_subset(self.points))
    }

    pub fn is_consistent(&self) -> bool {
        !self.points.is_empty()
    }

    fn check_universe(&self, other: &BeliefSet) -> Result<(), LogicError> {
        if Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe {
            Ok(())
        } else {
            Err(LogicError::UniverseMismatch)
        }
    }
}

impl fmt::Debug for BeliefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Th{}", self.universe.describe(self.points))
    }
}

impl fmt::Display for BeliefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match represent(self.points, &self.universe) {
            Some(text) if self.is_consistent() => {
                write!(f, "Th{} = [{}]", self.universe.describe(self.points), text)
            }
            _ => write!(f, "Th{}", self.universe.describe(self.points)),
        }
    }
}
