use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::RevisionError;
use crate::belief::BeliefSet;
use crate::logic::{truth_set, Formula, LogicError, PointSet, Universe};

/// Largest universe over which total tables are materialized (`2^16` entries).
pub const MAX_TABLE_POINTS: usize = 16;

pub(crate) fn check_table_size(u: &Universe) -> Result<(), RevisionError> {
    if u.len() > MAX_TABLE_POINTS {
        Err(RevisionError::TooLarge { points: u.len(), limit: MAX_TABLE_POINTS })
    } else {
        Ok(())
    }
}

pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<(), RevisionError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(RevisionError::UniverseMismatch)
    }
}

/// A full-domain revision function on the quotient of formulas by logical
/// equivalence: one belief set (stored as its points) per proposition.
///
/// Revising by a formula looks up the entry of its truth set, so two
/// equivalent formulas always revise alike.
#[derive(Clone, PartialEq, Eq)]
pub struct RevisionTable {
    universe: Arc<Universe>,
    initial: PointSet,
    entries: Vec<PointSet>,
}

impl RevisionTable {
    pub fn new(universe: Arc<Universe>, initial: PointSet, entries: Vec<PointSet>) -> Result<Self, RevisionError> {
        check_table_size(&universe)?;
        let n = universe.len();
        if entries.len() != 1 << n {
            return Err(RevisionError::Shape(format!(
                "expected {} entries, found {}",
                1usize << n,
                entries.len()
            )));
        }
        if initial.universe_len() != n || entries.iter().any(|e| e.universe_len() != n) {
            return Err(RevisionError::Shape("point set sized for a different universe".into()));
        }
        if initial.is_empty() {
            return Err(RevisionError::InconsistentInitial);
        }
        Ok(RevisionTable { universe, initial, entries })
    }

    /// Builds a table by evaluating `entry` on every proposition.
    pub fn from_fn(
        universe: Arc<Universe>,
        initial: PointSet,
        mut entry: impl FnMut(PointSet) -> PointSet,
    ) -> Result<Self, RevisionError> {
        check_table_size(&universe)?;
        let entries = universe.propositions().map(&mut entry).collect();
        RevisionTable::new(universe, initial, entries)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn initial(&self) -> PointSet {
        self.initial
    }

    pub fn initial_belief(&self) -> BeliefSet {
        BeliefSet::from_points(self.initial, self.universe.clone())
    }

    pub fn entry(&self, proposition: PointSet) -> PointSet {
        self.entries[proposition.index()]
    }

    pub fn belief(&self, proposition: PointSet) -> BeliefSet {
        BeliefSet::from_points(self.entry(proposition), self.universe.clone())
    }

    pub fn revise(&self, f: &Formula) -> Result<BeliefSet, LogicError> {
        Ok(self.belief(truth_set(f, &self.universe)?))
    }

    pub fn entries(&self) -> impl Iterator<Item = (PointSet, PointSet)> + '_ {
        self.universe.propositions().zip(self.entries.iter().copied())
    }

    /// Copy of the table with one entry replaced.
    pub fn with_entry(&self, proposition: PointSet, points: PointSet) -> RevisionTable {
        let mut out = self.clone();
        out.entries[proposition.index()] = points;
        out
    }
}

impl fmt::Debug for RevisionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.universe;
        write!(f, "RevisionTable {{ initial: {}", u.describe(self.initial))?;
        for (e, b) in self.entries() {
            write!(f, ", {} => {}", u.describe(e), u.describe(b))?;
        }
        write!(f, " }}")
    }
}

/// Total pre-order on points given by ranks; rank 0 is most plausible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlausibilityOrder {
    universe: Arc<Universe>,
    ranks: Vec<usize>,
}

impl PlausibilityOrder {
    /// Ranks must cover `0..=max` without gaps.
    pub fn new(universe: Arc<Universe>, ranks: Vec<usize>) -> Result<Self, RevisionError> {
        if ranks.len() != universe.len() {
            return Err(RevisionError::Order(format!(
                "{} ranks for {} points",
                ranks.len(),
                universe.len()
            )));
        }
        let max = ranks.iter().copied().max().unwrap_or(0);
        if let Some(missing) = (0..=max).find(|r| !ranks.contains(r)) {
            return Err(RevisionError::Order(format!("rank {missing} is unused")));
        }
        Ok(PlausibilityOrder { universe, ranks })
    }

    /// Order whose `i`-th level is `levels[i]`; levels must partition the points.
    pub fn from_levels(universe: Arc<Universe>, levels: &[PointSet]) -> Result<Self, RevisionError> {
        let mut ranks = vec![usize::MAX; universe.len()];
        for (r, level) in levels.iter().enumerate() {
            if level.is_empty() {
                return Err(RevisionError::Order(format!("level {r} is empty")));
            }
            for i in level.iter() {
                if ranks[i] != usize::MAX {
                    return Err(RevisionError::Order(format!("point {} in two levels", universe.points()[i].id)));
                }
                ranks[i] = r;
            }
        }
        if let Some(i) = ranks.iter().position(|&r| r == usize::MAX) {
            return Err(RevisionError::Order(format!("point {} is unranked", universe.points()[i].id)));
        }
        PlausibilityOrder::new(universe, ranks)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, point: usize) -> usize {
        self.ranks[point]
    }

    pub fn levels(&self) -> Vec<PointSet> {
        let n = self.universe.len();
        let height = self.ranks.iter().copied().max().map_or(0, |m| m + 1);
        (0..height)
            .map(|r| PointSet::from_indices((0..n).filter(|&i| self.ranks[i] == r), n))
            .collect()
    }

    /// Most plausible points of `set`.
    pub fn min_set(&self, set: PointSet) -> PointSet {
        match set.iter().map(|i| self.ranks[i]).min() {
            None => set,
            Some(best) => PointSet::from_indices(set.iter().filter(|&i| self.ranks[i] == best), set.universe_len()),
        }
    }
}

impl fmt::Debug for PlausibilityOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PlausibilityOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self.levels().into_iter().map(|l| self.universe.describe(l)).collect();
        write!(f, "{}", levels.join(" < "))
    }
}

/// Semantic form of a basic AGM revision: picks, for every consistent
/// proposition, the points that survive revision by it.
#[derive(Clone, PartialEq, Eq)]
pub struct SelectionFunction {
    universe: Arc<Universe>,
    initial: PointSet,
    /// Indexed by proposition; the slot for the empty proposition is empty.
    choice: Vec<PointSet>,
}

impl SelectionFunction {
    /// Checks `∅ ≠ S(E) ⊆ E` and that `S(E) = E ∩ K` whenever that is nonempty.
    pub fn new(universe: Arc<Universe>, initial: PointSet, choice: Vec<PointSet>) -> Result<Self, RevisionError> {
        check_table_size(&universe)?;
        if choice.len() != 1 << universe.len() {
            return Err(RevisionError::Shape(format!("expected {} choices", 1usize << universe.len())));
        }
        if initial.is_empty() {
            return Err(RevisionError::InconsistentInitial);
        }
        for e in universe.propositions().skip(1) {
            let s = choice[e.index()];
            let reason = if s.is_empty() {
                Some("selection is empty")
            } else if !s.is_subset(e) {
                Some("selection is not a subset of the proposition")
            } else if e.intersects(initial) && s != e & initial {
                Some("proposition meets the initial points but selection differs from their intersection")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(RevisionError::Selection { proposition: e, reason: reason.into() });
            }
        }
        let mut choice = choice;
        choice[0] = universe.empty();
        Ok(SelectionFunction { universe, initial, choice })
    }

    pub fn from_fn(
        universe: Arc<Universe>,
        initial: PointSet,
        mut select: impl FnMut(PointSet) -> PointSet,
    ) -> Result<Self, RevisionError> {
        check_table_size(&universe)?;
        let choice = universe
            .propositions()
            .map(|e| if e.is_empty() { e } else { select(e) })
            .collect();
        SelectionFunction::new(universe, initial, choice)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn initial(&self) -> PointSet {
        self.initial
    }

    pub fn select(&self, proposition: PointSet) -> PointSet {
        self.choice[proposition.index()]
    }
}

impl fmt::Debug for SelectionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.universe;
        write!(f, "SelectionFunction {{ initial: {}", u.describe(self.initial))?;
        for e in u.propositions().skip(1) {
            write!(f, ", {} => {}", u.describe(e), u.describe(self.select(e)))?;
        }
        write!(f, " }}")
    }
}

/// Credibility class of a piece of information.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Credibility {
    #[serde(rename = "C")]
    Credible,
    #[serde(rename = "A")]
    Allowable,
    #[serde(rename = "R")]
    Rejected,
}

impl Credibility {
    pub const ALL: [Credibility; 3] = [Credibility::Credible, Credibility::Allowable, Credibility::Rejected];

    pub fn letter(self) -> char {
        match self {
            Credibility::Credible => 'C',
            Credibility::Allowable => 'A',
            Credibility::Rejected => 'R',
        }
    }
}

impl fmt::Display for Credibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Partition of the propositions into credible, allowable and rejected ones.
/// Labels attach to truth sets, so closure under equivalence is built in.
#[derive(Clone, PartialEq, Eq)]
pub struct CredibilityLabeling {
    universe: Arc<Universe>,
    labels: Vec<Credibility>,
}

impl CredibilityLabeling {
    pub fn new(universe: Arc<Universe>, labels: Vec<Credibility>) -> Result<Self, RevisionError> {
        check_table_size(&universe)?;
        if labels.len() != 1 << universe.len() {
            return Err(RevisionError::Shape(format!("expected {} labels", 1usize << universe.len())));
        }
        let full = universe.full();
        if labels[full.index()] != Credibility::Credible {
            return Err(RevisionError::Labeling {
                proposition: full,
                reason: "the tautology must be credible".into(),
            });
        }
        if labels[0] != Credibility::Rejected {
            return Err(RevisionError::Labeling {
                proposition: universe.empty(),
                reason: "the contradiction must be rejected".into(),
            });
        }
        Ok(CredibilityLabeling { universe, labels })
    }

    pub fn from_fn(universe: Arc<Universe>, label: impl FnMut(PointSet) -> Credibility) -> Result<Self, RevisionError> {
        check_table_size(&universe)?;
        let labels = universe.propositions().map(label).collect();
        CredibilityLabeling::new(universe, labels)
    }

    /// Everything consistent is credible: plain AGM revision.
    pub fn all_credible(universe: Arc<Universe>) -> Result<Self, RevisionError> {
        CredibilityLabeling::from_fn(universe, |e| {
            if e.is_empty() {
                Credibility::Rejected
            } else {
                Credibility::Credible
            }
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn label(&self, proposition: PointSet) -> Credibility {
        self.labels[proposition.index()]
    }

    pub fn labels(&self) -> &[Credibility] {
        &self.labels
    }
}

impl fmt::Debug for CredibilityLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CredibilityLabeling {{")?;
        for e in self.universe.propositions() {
            write!(f, " {}:{}", self.universe.describe(e), self.label(e))?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::AtomSet;

    fn u2() -> Arc<Universe> {
        Arc::new(Universe::canonical(&AtomSet::new(["p", "q"]).unwrap()).unwrap())
    }

    #[test]
    fn order_ranks_must_be_contiguous() {
        let u = u2();
        assert!(PlausibilityOrder::new(u.clone(), vec![0, 2, 2, 0]).is_err());
        assert!(PlausibilityOrder::new(u.clone(), vec![0, 1]).is_err());
        let o = PlausibilityOrder::new(u.clone(), vec![1, 0, 1, 2]).unwrap();
        assert_eq!(o.levels(), vec![PointSet::singleton(1, 4), PointSet::from_indices([0, 2], 4), PointSet::singleton(3, 4)]);
        assert_eq!(PlausibilityOrder::from_levels(u, &o.levels()).unwrap(), o);
    }

    #[test]
    fn min_set_picks_lowest_rank() {
        let o = PlausibilityOrder::new(u2(), vec![3, 2, 1, 0]).unwrap();
        assert_eq!(o.min_set(PointSet::from_indices([0, 1], 4)), PointSet::singleton(1, 4));
        assert_eq!(o.min_set(PointSet::empty(4)), PointSet::empty(4));
    }

    #[test]
    fn selection_invariants() {
        let u = u2();
        let k = PointSet::singleton(3, 4);
        let bad = SelectionFunction::from_fn(u.clone(), k, |e| if e.bits() == 0b0011 { PointSet::singleton(2, 4) } else if e.intersects(k) { e & k } else { e });
        match bad {
            Err(RevisionError::Selection { proposition, .. }) => assert_eq!(proposition.bits(), 0b0011),
            other => panic!("expected selection error, got {other:?}"),
        }
        let forced = SelectionFunction::from_fn(u.clone(), k, |e| e);
        assert!(matches!(forced, Err(RevisionError::Selection { .. })));
        assert!(SelectionFunction::from_fn(u, k, |e| if e.intersects(k) { e & k } else { e }).is_ok());
    }

    #[test]
    fn labeling_invariants() {
        let u = u2();
        assert!(CredibilityLabeling::from_fn(u.clone(), |_| Credibility::Credible).is_err());
        assert!(CredibilityLabeling::from_fn(u.clone(), |_| Credibility::Rejected).is_err());
        let c = CredibilityLabeling::all_credible(u.clone()).unwrap();
        assert_eq!(c.label(u.full()), Credibility::Credible);
        assert_eq!(c.label(u.empty()), Credibility::Rejected);
    }

    #[test]
    fn table_shape() {
        let u = u2();
        assert!(matches!(
            RevisionTable::new(u.clone(), u.full(), vec![u.full(); 3]),
            Err(RevisionError::Shape(_))
        ));
        assert!(matches!(
            RevisionTable::new(u.clone(), u.empty(), vec![u.full(); 16]),
            Err(RevisionError::InconsistentInitial)
        ));
    }
}
