//! Direct test of basic-AGM consistency on the structure itself.
//!
//! For every event `E` with `f(Ω) = K`:
//!
//! * `E ∩ K ≠ ∅`, credible: `f(E) = E ∩ K` (clause 1(a));
//! * `E ∩ K ≠ ∅`, allowable: `f(E) = K` (clause 1(b));
//! * `E ∩ K = ∅`, allowable: `f(E) = K ∪ E'` for some `∅ ≠ E' ⊆ E` (clause 2).
//!
//! Rejected events are already pinned to `K` by validity; credible events
//! disjoint from `K` are unconstrained.

use std::fmt;

use super::{Family, Gcs, GcsError};
use crate::logic::PointSet;
use crate::revision::Credibility;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop2Clause {
    OneA,
    OneB,
    Two,
}

impl fmt::Display for Prop2Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prop2Clause::OneA => "1(a)",
            Prop2Clause::OneB => "1(b)",
            Prop2Clause::Two => "2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Finding {
    pub event: PointSet,
    pub family: Family,
    /// Clause governing the event, if any.
    pub clause: Option<Prop2Clause>,
    /// For clause 2, the added part `E' = f(E) \ K` when it is admissible.
    pub added: Option<PointSet>,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Prop2Report {
    pub findings: Vec<Prop2Finding>,
}

impl Prop2Report {
    pub fn holds(&self) -> bool {
        self.findings.iter().all(|f| f.violation.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Prop2Finding> {
        self.findings.iter().filter(|f| f.violation.is_some())
    }
}

/// The clause governing `e` and, if it fails there, why.
pub fn prop2_failure_at(g: &Gcs, e: PointSet) -> Option<(Prop2Clause, String)> {
    evaluate(g, e).and_then(|(clause, _, violation)| violation.map(|v| (clause, v)))
}

fn evaluate(g: &Gcs, e: PointSet) -> Option<(Prop2Clause, Option<PointSet>, Option<String>)> {
    let k = g.initial();
    let fe = g.choice(e)?;
    let family = g.family(e)?;
    let compatible = e.intersects(k);
    let u = g.universe();
    match (compatible, family) {
        (true, Credibility::Credible) => {
            let required = e & k;
            let violation =
                (fe != required).then(|| format!("f(E) = {} but E ∩ f(Ω) = {}", u.describe(fe), u.describe(required)));
            Some((Prop2Clause::OneA, None, violation))
        }
        (true, Credibility::Allowable) => {
            let violation =
                (fe != k).then(|| format!("f(E) = {} differs from f(Ω) = {}", u.describe(fe), u.describe(k)));
            Some((Prop2Clause::OneB, None, violation))
        }
        (false, Credibility::Allowable) => {
            let added = fe - k;
            let violation = if !k.is_subset(fe) {
                Some(format!("f(Ω) = {} is not contained in f(E) = {}", u.describe(k), u.describe(fe)))
            } else if added.is_empty() {
                Some("f(E) adds nothing to f(Ω)".to_string())
            } else if !added.is_subset(e) {
                Some(format!("added points {} are not within E", u.describe(added)))
            } else {
                None
            };
            let added = violation.is_none().then_some(added);
            Some((Prop2Clause::Two, added, violation))
        }
        _ => None,
    }
}

/// Checks the characterization on every event. The structure must be valid.
pub fn check_prop2(g: &Gcs) -> Result<Prop2Report, GcsError> {
    g.require_valid()?;
    let findings = g
        .events()
        .into_iter()
        .map(|(event, family)| {
            let (clause, added, violation) = match evaluate(g, event) {
                Some((c, a, v)) => (Some(c), a, v),
                None => (None, None, None),
            };
            Prop2Finding { event, family, clause, added, violation }
        })
        .collect();
    Ok(Prop2Report { findings })
}
