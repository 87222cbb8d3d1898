use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use rand::Rng;

use super::{validate_gcs, Gcs, GcsError};
use crate::logic::{AtomSet, Point, PointSet, Universe};
use crate::revision::{random_nonempty_subset, random_subset, Credibility};

pub const MAX_ENUMERATED_GCS_POINTS: usize = 2;

fn numbered(n: usize) -> Arc<Universe> {
    let points = (1..=n).map(|i| Point::new(i.to_string(), 0)).collect();
    Arc::new(Universe::new(AtomSet::default(), points).expect("numbered universe is valid"))
}

/// Every valid structure on states `1..=n`: each proper nonempty subset is
/// in one family or none, and `f` ranges over all maps passing validation.
pub fn enumerate_gcs(n: usize) -> Result<Vec<Gcs>, GcsError> {
    if n == 0 || n > MAX_ENUMERATED_GCS_POINTS {
        return Err(GcsError::TooLarge { what: "states", requested: n, limit: MAX_ENUMERATED_GCS_POINTS });
    }
    let u = numbered(n);
    let middle: Vec<PointSet> = u.propositions().filter(|e| !e.is_empty() && !e.is_full()).collect();
    let subsets: Vec<PointSet> = u.propositions().collect();
    let mut out = Vec::new();
    for assignment in middle.iter().map(|_| 0..4usize).multi_cartesian_product() {
        let mut families: BTreeMap<PointSet, Credibility> = BTreeMap::new();
        families.insert(u.full(), Credibility::Credible);
        families.insert(u.empty(), Credibility::Rejected);
        for (e, &code) in middle.iter().zip(&assignment) {
            if code < 3 {
                families.insert(*e, Credibility::ALL[code]);
            }
        }
        let events: Vec<PointSet> = families.keys().copied().collect();
        for values in events.iter().map(|_| subsets.iter().copied()).multi_cartesian_product() {
            let g = assemble(&u, &families, events.iter().copied().zip(values))?;
            if validate_gcs(&g).is_valid() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

fn assemble(
    u: &Arc<Universe>,
    families: &BTreeMap<PointSet, Credibility>,
    choice: impl IntoIterator<Item = (PointSet, PointSet)>,
) -> Result<Gcs, GcsError> {
    let of = |fam: Credibility| families.iter().filter(move |(_, f)| **f == fam).map(|(e, _)| *e);
    Gcs::new(
        u.clone(),
        of(Credibility::Credible),
        of(Credibility::Allowable),
        of(Credibility::Rejected),
        choice,
    )
}

/// Random valid structure on states `1..=n`.
///
/// Each event's choice follows the consistency conditions with probability
/// `comply` and is otherwise drawn from what validity alone permits, so both
/// consistent and inconsistent structures come up.
pub fn random_gcs<R: Rng + ?Sized>(rng: &mut R, n: usize, comply: f64) -> Gcs {
    let u = numbered(n);
    let full = u.full();
    let initial = random_nonempty_subset(rng, full);
    let mut families = BTreeMap::new();
    families.insert(full, Credibility::Credible);
    families.insert(u.empty(), Credibility::Rejected);
    for e in u.propositions().filter(|e| !e.is_empty() && !e.is_full()) {
        match rng.gen_range(0..4) {
            0 => {}
            code => {
                families.insert(e, Credibility::ALL[code - 1]);
            }
        }
    }
    let mut choice = Vec::new();
    for (&e, &fam) in &families {
        let follow = rng.gen_bool(comply);
        let fe = match fam {
            _ if e.is_full() => initial,
            Credibility::Rejected => initial,
            Credibility::Credible if follow && e.intersects(initial) => e & initial,
            Credibility::Credible => random_nonempty_subset(rng, e),
            Credibility::Allowable if follow && e.intersects(initial) => initial,
            Credibility::Allowable if follow => initial | random_nonempty_subset(rng, e),
            Credibility::Allowable => random_subset(rng, full) | random_nonempty_subset(rng, e),
        };
        choice.push((e, fe));
    }
    let g = assemble(&u, &families, choice).expect("events fit the universe");
    debug_assert!(validate_gcs(&g).is_valid());
    g
}
