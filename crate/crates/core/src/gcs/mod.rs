//! Generalized choice structures: a choice function on events that are
//! sorted into credible, allowable and rejected information.
//!
//! A [`Gcs`] lives on an arbitrary [`Universe`] of states. Interpreting it
//! with a valuation of some atoms yields a [`Model`] and, through it, a
//! partial revision function on formulas. [`check_prop2`] decides directly
//! whether every such interpretation extends to a filtered revision over a
//! basic AGM revision; [`agm_consistency_bruteforce`] decides the same thing
//! by trying the interpretations one by one.

mod generate;
mod model;
mod oracle;
mod prop2;
mod rationalize;

pub use generate::{enumerate_gcs, random_gcs, MAX_ENUMERATED_GCS_POINTS};
pub use model::{build_model, induced_beliefs, Model, PartialRevision, MAX_MODEL_ATOMS};
pub use oracle::{
    agm_consistency_bruteforce, default_atom_budget, extension_oracle, Certificate, Consistency, Extension,
    ModelInfeasible, MAX_BRUTEFORCE_ATOMS, MAX_BRUTEFORCE_POINTS, MAX_ORACLE_POINTS,
};
pub use prop2::{check_prop2, prop2_failure_at, Prop2Clause, Prop2Finding, Prop2Report};
pub use rationalize::{find_rationalizing_preorder, rationalize_choice, MAX_RATIONALIZE_POINTS};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::logic::{LogicError, PointSet, Universe};
use crate::revision::{Credibility, RevisionError};

/// Which of the three event families an event belongs to.
pub type Family = Credibility;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcsError {
    #[error("event {0:?} is sized for a different universe")]
    Size(PointSet),
    #[error("not a generalized choice structure: {0}")]
    Invalid(ValidationReport),
    #[error("atom `{0}` is not declared by the universe")]
    UnknownAtom(String),
    #[error("{requested} {what} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, requested: usize, limit: usize },
    #[error("model labeling conflict: {0}")]
    Labeling(RevisionError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Revision(#[from] RevisionError),
}

/// `⟨Ω, {E_C, E_A, E_R}, f⟩`.
#[derive(Clone, PartialEq, Eq)]
pub struct Gcs {
    universe: Arc<Universe>,
    credible: BTreeSet<PointSet>,
    allowable: BTreeSet<PointSet>,
    rejected: BTreeSet<PointSet>,
    choice: BTreeMap<PointSet, PointSet>,
}

impl Gcs {
    /// Assembles a structure without checking the defining conditions; see
    /// [`validate_gcs`].
    pub fn new(
        universe: Arc<Universe>,
        credible: impl IntoIterator<Item = PointSet>,
        allowable: impl IntoIterator<Item = PointSet>,
        rejected: impl IntoIterator<Item = PointSet>,
        choice: impl IntoIterator<Item = (PointSet, PointSet)>,
    ) -> Result<Gcs, GcsError> {
        let n = universe.len();
        let fits = |s: &PointSet| if s.universe_len() == n { Ok(*s) } else { Err(GcsError::Size(*s)) };
        let credible = credible.into_iter().map(|s| fits(&s)).collect::<Result<_, _>>()?;
        let allowable = allowable.into_iter().map(|s| fits(&s)).collect::<Result<_, _>>()?;
        let rejected = rejected.into_iter().map(|s| fits(&s)).collect::<Result<_, _>>()?;
        let choice = choice
            .into_iter()
            .map(|(e, f)| Ok((fits(&e)?, fits(&f)?)))
            .collect::<Result<_, GcsError>>()?;
        Ok(Gcs { universe, credible, allowable, rejected, choice })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn credible(&self) -> &BTreeSet<PointSet> {
        &self.credible
    }

    pub fn allowable(&self) -> &BTreeSet<PointSet> {
        &self.allowable
    }

    pub fn rejected(&self) -> &BTreeSet<PointSet> {
        &self.rejected
    }

    pub fn choice_map(&self) -> &BTreeMap<PointSet, PointSet> {
        &self.choice
    }

    /// Family of `e`, checking credible, then allowable, then rejected.
    pub fn family(&self, e: PointSet) -> Option<Family> {
        if self.credible.contains(&e) {
            Some(Credibility::Credible)
        } else if self.allowable.contains(&e) {
            Some(Credibility::Allowable)
        } else if self.rejected.contains(&e) {
            Some(Credibility::Rejected)
        } else {
            None
        }
    }

    /// `f(e)`, if defined.
    pub fn choice(&self, e: PointSet) -> Option<PointSet> {
        self.choice.get(&e).copied()
    }

    /// `f(Ω)`; the empty set if undefined.
    pub fn initial(&self) -> PointSet {
        self.choice(self.universe.full()).unwrap_or(self.universe.empty())
    }

    /// All events of `E` in increasing mask order with their family.
    pub fn events(&self) -> Vec<(PointSet, Family)> {
        let all: BTreeSet<PointSet> =
            self.credible.iter().chain(&self.allowable).chain(&self.rejected).copied().collect();
        all.into_iter().map(|e| (e, self.family(e).expect("event is in a family"))).collect()
    }

    /// Copy over a universe with the same number of points (e.g. a different
    /// valuation).
    pub fn with_universe(&self, universe: Arc<Universe>) -> Gcs {
        assert_eq!(universe.len(), self.universe.len());
        Gcs { universe, ..self.clone() }
    }
}

impl fmt::Debug for Gcs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.universe;
        write!(f, "Gcs {{")?;
        for (e, fam) in self.events() {
            let fe = self.choice(e).map_or("undefined".to_string(), |s| u.describe(s));
            write!(f, " {}:{} -> {};", u.describe(e), fam, fe)?;
        }
        write!(f, " }}")
    }
}

/// Numbered conditions of the definition of a generalized choice structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// The families are disjoint, `Ω` is credible and `∅` rejected.
    Families,
    /// `f` is defined on exactly the events.
    Domain,
    /// `f(Ω) ≠ ∅`.
    InitialNonempty,
    /// Rejected events leave `f(Ω)` unchanged.
    RejectedKeepsInitial,
    /// Credible events: `∅ ≠ f(E) ⊆ E`.
    CredibleSuccess,
    /// Allowable events: `f(E) ∩ E ≠ ∅`.
    AllowablePossible,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Families => "2",
            Clause::Domain => "3",
            Clause::InitialNonempty => "3(a)",
            Clause::RejectedKeepsInitial => "3(b)",
            Clause::CredibleSuccess => "3(c)",
            Clause::AllowablePossible => "3(d)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub event: Option<PointSet>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v.event {
                Some(e) => format!("clause {} at {e:?}: {}", v.clause, v.detail),
                None => format!("clause {}: {}", v.clause, v.detail),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate_gcs(g: &Gcs) -> ValidationReport {
    let u = &g.universe;
    let mut violations = Vec::new();
    let mut push = |clause, event, detail: &str| violations.push(Violation { clause, event, detail: detail.into() });

    let all: BTreeSet<PointSet> = g.credible.iter().chain(&g.allowable).chain(&g.rejected).copied().collect();
    for e in all {
        let memberships = [&g.credible, &g.allowable, &g.rejected].iter().filter(|fam| fam.contains(&e)).count();
        if memberships > 1 {
            push(Clause::Families, Some(e), "event belongs to more than one family");
        }
    }
    if !g.credible.contains(&u.full()) {
        push(Clause::Families, Some(u.full()), "the universe is not a credible event");
    }
    if !g.rejected.contains(&u.empty()) {
        push(Clause::Families, Some(u.empty()), "the empty event is not rejected");
    }
    for (e, _) in g.events() {
        if g.choice(e).is_none() {
            push(Clause::Domain, Some(e), "no choice given for event");
        }
    }
    for e in g.choice.keys() {
        if g.family(*e).is_none() {
            push(Clause::Domain, Some(*e), "choice given for a set that is not an event");
        }
    }
    let initial = g.choice(u.full());
    if initial.is_some_and(PointSet::is_empty) {
        push(Clause::InitialNonempty, Some(u.full()), "f(Ω) is empty");
    }
    for (e, fam) in g.events() {
        let Some(fe) = g.choice(e) else { continue };
        match fam {
            Credibility::Rejected => {
                if initial.is_some_and(|i| fe != i) {
                    push(Clause::RejectedKeepsInitial, Some(e), "f(E) differs from f(Ω)");
                }
            }
            Credibility::Credible => {
                if fe.is_empty() {
                    push(Clause::CredibleSuccess, Some(e), "f(E) is empty");
                } else if !fe.is_subset(e) {
                    push(Clause::CredibleSuccess, Some(e), "f(E) is not a subset of E");
                }
            }
            Credibility::Allowable => {
                if !fe.intersects(e) {
                    push(Clause::AllowablePossible, Some(e), "f(E) does not meet E");
                }
            }
        }
    }
    ValidationReport { violations }
}

impl Gcs {
    pub(crate) fn require_valid(&self) -> Result<(), GcsError> {
        let report = validate_gcs(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(GcsError::Invalid(report))
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::logic::{AtomSet, Point};

    /// `Ω = {a, b, c}`; Ann is guilty only at `a`, Bob only at `b`.
    pub(crate) fn detective() -> Gcs {
        let atoms = AtomSet::new(["ann", "bob"]).unwrap();
        let u = Arc::new(
            Universe::new(atoms, vec![Point::new("a", 0b01), Point::new("b", 0b10), Point::new("c", 0)]).unwrap(),
        );
        let omega = u.full();
        let a = PointSet::singleton(0, 3);
        let bc = PointSet::from_indices([1, 2], 3);
        Gcs::new(
            u.clone(),
            [omega],
            [a],
            [u.empty()],
            [(omega, bc), (u.empty(), bc), (a, omega)],
        )
        .unwrap()
    }

    pub(crate) fn numbered(n: usize) -> Arc<Universe> {
        Arc::new(
            Universe::new(AtomSet::default(), (1..=n).map(|i| Point::new(i.to_string(), 0)).collect()).unwrap(),
        )
    }

    /// Event over `numbered(n)` from 1-based ids.
    pub(crate) fn ev(n: usize, ids: &[usize]) -> PointSet {
        PointSet::from_indices(ids.iter().map(|i| i - 1), n)
    }

    #[test]
    fn detective_is_valid() {
        assert!(validate_gcs(&detective()).is_valid());
    }

    #[test]
    fn empty_initial_choice() {
        let u = numbered(2);
        let g = Gcs::new(u.clone(), [u.full()], [], [u.empty()], [(u.full(), u.empty()), (u.empty(), u.empty())])
            .unwrap();
        let report = validate_gcs(&g);
        assert!(report.violations.iter().any(|v| v.clause == Clause::InitialNonempty));
    }

    #[test]
    fn credible_choice_outside_event() {
        let u = numbered(3);
        let e = ev(3, &[1, 2]);
        let g = Gcs::new(
            u.clone(),
            [u.full(), e],
            [],
            [u.empty()],
            [(u.full(), u.full()), (u.empty(), u.full()), (e, ev(3, &[3]))],
        )
        .unwrap();
        let report = validate_gcs(&g);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].clause, Clause::CredibleSuccess);
        assert_eq!(report.violations[0].event, Some(e));
    }

    #[test]
    fn structural_clauses() {
        let u = numbered(2);
        let one = ev(2, &[1]);
        let g = Gcs::new(
            u.clone(),
            [u.full(), one],
            [one],
            [],
            [(u.full(), one), (one, one), (ev(2, &[2]), one)],
        )
        .unwrap();
        let clauses: Vec<String> = validate_gcs(&g).violations.iter().map(|v| v.clause.to_string()).collect();
        assert!(clauses.contains(&"2".to_string()));
        assert!(clauses.contains(&"3".to_string()));
        assert_eq!(clauses.iter().filter(|c| *c == "2").count(), 2, "{clauses:?}");
    }

    #[test]
    fn allowable_and_rejected_clauses() {
        let u = numbered(3);
        let e3 = ev(3, &[3]);
        let e2 = ev(3, &[2]);
        let g = Gcs::new(
            u.clone(),
            [u.full()],
            [e3],
            [u.empty(), e2],
            [(u.full(), ev(3, &[1])), (u.empty(), ev(3, &[1])), (e3, ev(3, &[1, 2])), (e2, e2)],
        )
        .unwrap();
        let clauses: Vec<Clause> = validate_gcs(&g).violations.iter().map(|v| v.clause).collect();
        assert_eq!(clauses, vec![Clause::RejectedKeepsInitial, Clause::AllowablePossible]);
    }
}
