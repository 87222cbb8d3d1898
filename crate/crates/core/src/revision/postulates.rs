//! Executable forms of the AGM postulates and of the filtered-revision
//! properties, quantified over every proposition of a table.
//!
//! Reading belief sets as point sets, theory inclusion `X ⊆ Y` becomes
//! `points(Y) ⊆ points(X)`, membership `φ ∈ X` becomes `points(X) ⊆ ||φ||`,
//! and `¬φ ∉ K` becomes `points(K) ∩ ||φ|| ≠ ∅`. For a proposition `E`:
//!
//! | postulate | checked as |
//! |-----------|-----------|
//! | AGM2 | `B(E) ⊆ E` |
//! | AGM3 | `E ∩ K ⊆ B(E)` |
//! | AGM4 | `E ∩ K ≠ ∅ ⇒ B(E) ⊆ E ∩ K` |
//! | AGM5 | `B(E) = ∅ ⇔ E = ∅` |
//! | AGM7 | `B(E) ∩ F ⊆ B(E ∩ F)` |
//! | AGM8 | `B(E) ∩ F ≠ ∅ ⇒ B(E ∩ F) ⊆ B(E) ∩ F` |
//!
//! AGM1 and AGM6 hold for every table because entries are point sets keyed by
//! truth sets.
//!
//! For filtered revision with labeling `c`:
//!
//! | clause | checked as |
//! |--------|-----------|
//! | F1 | `c(E) = R ⇒ B(E) = K` |
//! | F2(a) | `E ∩ K ≠ ∅, c(E) = C ⇒ B(E) = E ∩ K` |
//! | F2(b) | `E ∩ K ≠ ∅, c(E) = A ⇒ B(E) = K` |
//! | F3 | `E ∩ K = ∅ ⇒ B(E) ≠ ∅` |
//! | F3(a) | `E ∩ K = ∅, c(E) = C ⇒ B(E) ⊆ E` |
//! | F3(b) | `E ∩ K = ∅, c(E) = A ⇒ K ⊆ B(E), B(E) ∩ E ≠ ∅, B(E) \ E = K` |
//!
//! The three parts of F3(b) read `B(E) ⊆ K`, `¬φ ∉ B(E)`, and
//! `[B(E) ∪ {¬φ}] = K`. F4 is again free.

use std::fmt;

use super::{Credibility, CredibilityLabeling, RevisionTable};
use crate::logic::PointSet;

/// One of AGM1 .. AGM8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgmPostulate(u8);

impl AgmPostulate {
    pub const BASIC: [AgmPostulate; 6] = [
        AgmPostulate(1),
        AgmPostulate(2),
        AgmPostulate(3),
        AgmPostulate(4),
        AgmPostulate(5),
        AgmPostulate(6),
    ];
    pub const ALL: [AgmPostulate; 8] = [
        AgmPostulate(1),
        AgmPostulate(2),
        AgmPostulate(3),
        AgmPostulate(4),
        AgmPostulate(5),
        AgmPostulate(6),
        AgmPostulate(7),
        AgmPostulate(8),
    ];

    pub fn new(n: u8) -> Option<AgmPostulate> {
        (1..=8).contains(&n).then_some(AgmPostulate(n))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// Whether the postulate is stated about pairs of propositions.
    pub fn is_binary(self) -> bool {
        self.0 >= 7
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterClause {
    F1,
    F2a,
    F2b,
    F3,
    F3a,
    F3b,
}

impl FilterClause {
    pub const ALL: [FilterClause; 6] =
        [FilterClause::F1, FilterClause::F2a, FilterClause::F2b, FilterClause::F3, FilterClause::F3a, FilterClause::F3b];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postulate {
    Agm(AgmPostulate),
    Filter(FilterClause),
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Postulate::Agm(p) => write!(f, "AGM{}", p.0),
            Postulate::Filter(FilterClause::F1) => write!(f, "F1"),
            Postulate::Filter(FilterClause::F2a) => write!(f, "F2(a)"),
            Postulate::Filter(FilterClause::F2b) => write!(f, "F2(b)"),
            Postulate::Filter(FilterClause::F3) => write!(f, "F3"),
            Postulate::Filter(FilterClause::F3a) => write!(f, "F3(a)"),
            Postulate::Filter(FilterClause::F3b) => write!(f, "F3(b)"),
        }
    }
}

/// The propositions at which a postulate fails (one for unary postulates,
/// `[E, F]` for AGM7/8) and what went wrong there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub propositions: Vec<PointSet>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub postulate: Postulate,
    /// First failure found, `None` when the postulate holds.
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PostulateReport {
    pub verdicts: Vec<Verdict>,
}

pub type FilterReport = PostulateReport;

impl PostulateReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(Verdict::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.holds())
    }

    pub fn verdict(&self, postulate: Postulate) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.postulate == postulate)
    }
}

/// Checks a unary AGM postulate at `e`; returns a description of the failure.
pub fn agm_failure_at(t: &RevisionTable, postulate: AgmPostulate, e: PointSet) -> Option<String> {
    let k = t.initial();
    let b = t.entry(e);
    match postulate.0 {
        1 | 6 => None,
        2 => (!b.is_subset(e)).then(|| "revised points are not all within the information".to_string()),
        3 => (!(e & k).is_subset(b)).then(|| "revision adds beliefs beyond the expansion".to_string()),
        4 => (e.intersects(k) && !b.is_subset(e & k))
            .then(|| "information is compatible with K but the expansion is not retained".to_string()),
        5 => (b.is_empty() != e.is_empty()).then(|| {
            if b.is_empty() {
                "revision by consistent information is inconsistent".to_string()
            } else {
                "revision by a contradiction is consistent".to_string()
            }
        }),
        _ => None,
    }
}

/// Checks AGM7 or AGM8 at the pair `(e, f)`, `f` standing for `ψ`.
pub fn agm_pair_failure_at(t: &RevisionTable, postulate: AgmPostulate, e: PointSet, f: PointSet) -> Option<String> {
    let b = t.entry(e);
    let both = t.entry(e & f);
    match postulate.0 {
        7 => (!(b & f).is_subset(both)).then(|| "revision by the conjunction exceeds the expansion".to_string()),
        8 => (b.intersects(f) && !both.is_subset(b & f))
            .then(|| "the expansion is not contained in revision by the conjunction".to_string()),
        _ => None,
    }
}

pub fn check_agm(t: &RevisionTable, which: &[AgmPostulate]) -> PostulateReport {
    let props: Vec<PointSet> = t.universe().propositions().collect();
    let verdicts = which
        .iter()
        .map(|&p| {
            let witness = if p.is_binary() {
                props.iter().find_map(|&e| {
                    props.iter().find_map(|&f| {
                        agm_pair_failure_at(t, p, e, f).map(|detail| Witness { propositions: vec![e, f], detail })
                    })
                })
            } else {
                props.iter().find_map(|&e| {
                    agm_failure_at(t, p, e).map(|detail| Witness { propositions: vec![e], detail })
                })
            };
            Verdict { postulate: Postulate::Agm(p), witness }
        })
        .collect();
    PostulateReport { verdicts }
}

/// Filtered-revision clauses violated at proposition `e`.
pub fn filter_failures_at(t: &RevisionTable, c: &CredibilityLabeling, e: PointSet) -> Vec<(FilterClause, String)> {
    let k = t.initial();
    let b = t.entry(e);
    let label = c.label(e);
    let mut out = Vec::new();
    if label == Credibility::Rejected && b != k {
        out.push((FilterClause::F1, "rejected information changed the beliefs".to_string()));
    }
    if e.intersects(k) {
        match label {
            Credibility::Credible if b != e & k => {
                out.push((FilterClause::F2a, "credible compatible information is not an expansion".to_string()))
            }
            Credibility::Allowable if b != k => {
                out.push((FilterClause::F2b, "allowable compatible information changed the beliefs".to_string()))
            }
            _ => {}
        }
    } else {
        if b.is_empty() {
            out.push((FilterClause::F3, "revised beliefs are inconsistent".to_string()));
        }
        match label {
            Credibility::Credible if !b.is_subset(e) => {
                out.push((FilterClause::F3a, "credible information is not believed".to_string()))
            }
            Credibility::Allowable => {
                let mut problems = Vec::new();
                if !k.is_subset(b) {
                    problems.push("new beliefs were added");
                }
                if !b.intersects(e) {
                    problems.push("the negation of the information is still believed");
                }
                if b - e != k {
                    problems.push("re-adding the negation does not restore K");
                }
                if !problems.is_empty() {
                    out.push((FilterClause::F3b, problems.join("; ")));
                }
            }
            _ => {}
        }
    }
    out
}

pub fn check_filtered(t: &RevisionTable, c: &CredibilityLabeling) -> FilterReport {
    let mut witnesses: Vec<Option<Witness>> = vec![None; FilterClause::ALL.len()];
    for e in t.universe().propositions() {
        for (clause, detail) in filter_failures_at(t, c, e) {
            let slot = &mut witnesses[clause as usize];
            if slot.is_none() {
                *slot = Some(Witness { propositions: vec![e], detail });
            }
        }
    }
    PostulateReport {
        verdicts: FilterClause::ALL
            .iter()
            .zip(witnesses)
            .map(|(&clause, witness)| Verdict { postulate: Postulate::Filter(clause), witness })
            .collect(),
    }
}

/// Re-runs the single-instance check named by a failing verdict on its
/// witness; true when the failure reproduces.
pub fn witness_reproduces(t: &RevisionTable, c: Option<&CredibilityLabeling>, verdict: &Verdict) -> bool {
    let Some(w) = &verdict.witness else { return false };
    match (verdict.postulate, w.propositions.as_slice()) {
        (Postulate::Agm(p), [e]) => agm_failure_at(t, p, *e).is_some(),
        (Postulate::Agm(p), [e, f]) => agm_pair_failure_at(t, p, *e, *f).is_some(),
        (Postulate::Filter(clause), [e]) => {
            c.is_some_and(|c| filter_failures_at(t, c, *e).iter().any(|(cl, _)| *cl == clause))
        }
        _ => false,
    }
}
