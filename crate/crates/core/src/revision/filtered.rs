//! Filtered revision built from a basic AGM revision, and the converse
//! recovery of a basic AGM revision from a filtered one.
//!
//! Basic AGM tables are exactly those of selection functions, and nothing
//! ties the selection at one proposition to another. Deciding whether a
//! filtered entry can come from some basic revision is therefore a question
//! about each proposition on its own, answered by [`admissible_selection`].

use std::fmt;

use thiserror::Error;

use super::{
    check_agm, revision_from_selection, same_universe, AgmPostulate, Credibility, CredibilityLabeling,
    RevisionError, RevisionTable, SelectionFunction,
};
use crate::logic::PointSet;

/// Routes each proposition by its label: rejected keeps `K`, credible takes
/// the basic revision, allowable intersects it with `K` (as theories).
pub fn build_filtered(star: &RevisionTable, c: &CredibilityLabeling) -> Result<RevisionTable, RevisionError> {
    same_universe(star.universe(), c.universe())?;
    let report = check_agm(star, &AgmPostulate::BASIC);
    if let Some(v) = report.failures().next() {
        return Err(RevisionError::Precondition {
            postulate: v.postulate,
            witness: v.witness.clone().expect("failing verdict has a witness"),
        });
    }
    Ok(filter_unchecked(star, c))
}

pub(crate) fn filter_unchecked(star: &RevisionTable, c: &CredibilityLabeling) -> RevisionTable {
    let k = star.initial();
    RevisionTable::from_fn(star.universe().clone(), k, |e| match c.label(e) {
        Credibility::Rejected => k,
        Credibility::Credible => star.entry(e),
        Credibility::Allowable => k | star.entry(e),
    })
    .expect("same shape as the input table")
}

/// Why no selection value reproduces a filtered entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Infeasibility {
    /// Rejected information must leave `K` unchanged.
    RejectedChangesBeliefs,
    /// Credible information compatible with `K` must yield `E ∩ K`.
    CredibleNotExpansion,
    /// Allowable information compatible with `K` must leave `K` unchanged.
    AllowableChangesBeliefs,
    /// Credible information must yield a nonempty subset of itself.
    CredibleNotSuccessful,
    /// Allowable information cannot drop points of `K`.
    AllowableDropsInitial,
    /// Allowable information incompatible with `K` must add some point.
    AllowableAddsNothing,
    /// Points added by allowable information must lie inside it.
    AllowableAddsOutside,
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Infeasibility::RejectedChangesBeliefs => "rejected information changes the initial beliefs",
            Infeasibility::CredibleNotExpansion => "credible information compatible with K does not yield E ∩ K",
            Infeasibility::AllowableChangesBeliefs => "allowable information compatible with K changes the beliefs",
            Infeasibility::CredibleNotSuccessful => "credible information does not yield a nonempty subset of E",
            Infeasibility::AllowableDropsInitial => "allowable information drops initial points",
            Infeasibility::AllowableAddsNothing => "allowable information incompatible with K adds no point",
            Infeasibility::AllowableAddsOutside => "allowable information adds points outside E",
        };
        f.write_str(text)
    }
}

/// A proposition whose entry no basic AGM revision can produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("no admissible selection at {proposition:?}: {reason}")]
pub struct Infeasible {
    pub proposition: PointSet,
    pub reason: Infeasibility,
}

/// The selection value `S(E)` under which filtering by `label` turns
/// `Th(S(E))` into the theory of `target`, given initial points `k`.
///
/// When several values work (only for rejected information) the largest,
/// `E` itself or `E ∩ K`, is returned. For `E = ∅` the result is `∅`.
pub fn admissible_selection(
    k: PointSet,
    e: PointSet,
    label: Credibility,
    target: PointSet,
) -> Result<PointSet, Infeasibility> {
    let forced = e & k;
    match label {
        Credibility::Rejected => {
            if target != k {
                return Err(Infeasibility::RejectedChangesBeliefs);
            }
            Ok(if forced.is_empty() { e } else { forced })
        }
        Credibility::Credible if !forced.is_empty() => {
            if target == forced {
                Ok(forced)
            } else {
                Err(Infeasibility::CredibleNotExpansion)
            }
        }
        Credibility::Credible => {
            if target.is_empty() || !target.is_subset(e) {
                Err(Infeasibility::CredibleNotSuccessful)
            } else {
                Ok(target)
            }
        }
        Credibility::Allowable if !forced.is_empty() => {
            if target == k {
                Ok(forced)
            } else {
                Err(Infeasibility::AllowableChangesBeliefs)
            }
        }
        Credibility::Allowable => {
            let added = target - k;
            if !k.is_subset(target) {
                Err(Infeasibility::AllowableDropsInitial)
            } else if added.is_empty() {
                Err(Infeasibility::AllowableAddsNothing)
            } else if !added.is_subset(e) {
                Err(Infeasibility::AllowableAddsOutside)
            } else {
                Ok(added)
            }
        }
    }
}

/// Selection function of a basic AGM revision that filters to `filtered`.
pub fn recover_selection(
    filtered: &RevisionTable,
    c: &CredibilityLabeling,
) -> Result<SelectionFunction, RevisionError> {
    same_universe(filtered.universe(), c.universe())?;
    let k = filtered.initial();
    let mut choice = Vec::with_capacity(1 << filtered.universe().len());
    for e in filtered.universe().propositions() {
        let s = admissible_selection(k, e, c.label(e), filtered.entry(e))
            .map_err(|reason| RevisionError::Infeasible(Infeasible { proposition: e, reason }))?;
        choice.push(s);
    }
    SelectionFunction::new(filtered.universe().clone(), k, choice)
}

/// Basic AGM table `B*` with `build_filtered(B*, c) == filtered`, or the
/// first proposition at which none exists.
pub fn recover_basic(filtered: &RevisionTable, c: &CredibilityLabeling) -> Result<RevisionTable, RevisionError> {
    recover_selection(filtered, c).map(|s| revision_from_selection(&s))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::logic::{AtomSet, Point, Universe};
    use crate::revision::{check_filtered, revision_from_preorder, PlausibilityOrder};

    /// Three suspects; `a` is the state where Ann is the culprit.
    fn detective() -> Arc<Universe> {
        let atoms = AtomSet::new(["ann", "bob"]).unwrap();
        Arc::new(Universe::new(atoms, vec![Point::new("a", 0b01), Point::new("b", 0b10), Point::new("c", 0)]).unwrap())
    }

    #[test]
    fn allowable_information_suspends_judgment() {
        let u = detective();
        let a = PointSet::singleton(0, 3);
        let order = PlausibilityOrder::new(u.clone(), vec![1, 0, 0]).unwrap();
        let star = revision_from_preorder(&order).unwrap();
        assert_eq!(star.initial(), PointSet::from_indices([1, 2], 3));
        assert_eq!(star.entry(a), a);
        let c = CredibilityLabeling::from_fn(u.clone(), |e| {
            if e == a {
                Credibility::Allowable
            } else if e.is_empty() {
                Credibility::Rejected
            } else {
                Credibility::Credible
            }
        })
        .unwrap();
        let filtered = build_filtered(&star, &c).unwrap();
        assert_eq!(filtered.entry(a), u.full());
        let belief = filtered.belief(a);
        assert!(!belief.contains_set(a));
        assert!(!belief.contains_set(!a));
        assert!(check_filtered(&filtered, &c).holds());
    }

    #[test]
    fn all_credible_filter_is_identity() {
        let u = detective();
        let star = revision_from_preorder(&PlausibilityOrder::new(u.clone(), vec![2, 0, 1]).unwrap()).unwrap();
        let c = CredibilityLabeling::all_credible(u.clone()).unwrap();
        let filtered = build_filtered(&star, &c).unwrap();
        for e in u.propositions().skip(1) {
            assert_eq!(filtered.entry(e), star.entry(e));
        }
        // the contradiction is rejected, not revised by
        assert_eq!(filtered.entry(u.empty()), star.initial());
    }

    #[test]
    fn allowable_compatible_information_is_a_no_op() {
        let u = detective();
        let star = revision_from_preorder(&PlausibilityOrder::new(u.clone(), vec![1, 0, 0]).unwrap()).unwrap();
        let bc = PointSet::from_indices([0, 1], 3);
        let c = CredibilityLabeling::from_fn(u, |e| {
            if e == bc {
                Credibility::Allowable
            } else if e.is_empty() {
                Credibility::Rejected
            } else {
                Credibility::Credible
            }
        })
        .unwrap();
        let filtered = build_filtered(&star, &c).unwrap();
        assert_eq!(filtered.entry(bc), star.initial());
    }

    #[test]
    fn precondition_names_the_postulate() {
        let u = detective();
        let star = revision_from_preorder(&PlausibilityOrder::new(u.clone(), vec![0, 0, 0]).unwrap()).unwrap();
        let broken = star.with_entry(PointSet::singleton(0, 3), PointSet::singleton(1, 3));
        let c = CredibilityLabeling::all_credible(u).unwrap();
        match build_filtered(&broken, &c) {
            Err(RevisionError::Precondition { postulate, witness }) => {
                assert_eq!(postulate.to_string(), "AGM2");
                assert_eq!(witness.propositions, vec![PointSet::singleton(0, 3)]);
            }
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn recovered_selection_is_the_added_part() {
        let u = detective();
        let k = PointSet::singleton(2, 3);
        let e = PointSet::from_indices([0, 1], 3);
        let added = PointSet::singleton(1, 3);
        assert_eq!(admissible_selection(k, e, Credibility::Allowable, k | added), Ok(added));
        assert_eq!(
            admissible_selection(k, e, Credibility::Allowable, k),
            Err(Infeasibility::AllowableAddsNothing)
        );
        assert_eq!(
            admissible_selection(k, PointSet::singleton(0, 3), Credibility::Allowable, k | added),
            Err(Infeasibility::AllowableAddsOutside)
        );
        assert_eq!(
            admissible_selection(k, e, Credibility::Allowable, added),
            Err(Infeasibility::AllowableDropsInitial)
        );
        // Rejected information: the largest admissible selection.
        assert_eq!(admissible_selection(k, e, Credibility::Rejected, k), Ok(e));
        assert_eq!(admissible_selection(k, u.full(), Credibility::Rejected, k), Ok(k));
    }

    #[test]
    fn recovery_reports_first_infeasible_proposition() {
        let u = detective();
        let star = revision_from_preorder(&PlausibilityOrder::new(u.clone(), vec![1, 0, 0]).unwrap()).unwrap();
        let c = CredibilityLabeling::all_credible(u.clone()).unwrap();
        let a = PointSet::singleton(0, 3);
        let bad = build_filtered(&star, &c).unwrap().with_entry(a, PointSet::singleton(1, 3));
        match recover_basic(&bad, &c) {
            Err(RevisionError::Infeasible(inf)) => {
                assert_eq!(inf.proposition, a);
                assert_eq!(inf.reason, Infeasibility::CredibleNotSuccessful);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        let filtered = build_filtered(&star, &c).unwrap();
        let rebuilt = build_filtered(&recover_basic(&filtered, &c).unwrap(), &c).unwrap();
        assert_eq!(rebuilt, filtered);
    }
}
