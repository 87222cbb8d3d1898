//! Exhaustive enumerators for small universes and seeded random generators.

use std::sync::Arc;

use rand::Rng;

use super::{
    check_table_size, Credibility, CredibilityLabeling, PlausibilityOrder, RevisionError, RevisionTable,
    SelectionFunction,
};
use crate::logic::{PointSet, Universe};

pub const MAX_PREORDER_POINTS: usize = 5;
/// Cap on the number of objects an exhaustive enumerator will produce.
pub const MAX_ENUMERATION: u64 = 5_000_000;

fn too_large(points: usize, limit: usize) -> RevisionError {
    RevisionError::TooLarge { points, limit }
}

/// Every ordered partition of `set` into nonempty levels.
pub(crate) fn ordered_partitions(set: PointSet) -> Vec<Vec<PointSet>> {
    if set.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in set.subsets().skip(1) {
        for mut rest in ordered_partitions(set - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All weak orders of the points, each exactly once.
pub fn enumerate_preorders(u: &Arc<Universe>) -> Result<Vec<PlausibilityOrder>, RevisionError> {
    if u.len() > MAX_PREORDER_POINTS {
        return Err(too_large(u.len(), MAX_PREORDER_POINTS));
    }
    Ok(ordered_partitions(u.full())
        .into_iter()
        .map(|levels| PlausibilityOrder::from_levels(u.clone(), &levels).expect("levels partition the universe"))
        .collect())
}

/// All labelings: `3^(2^n - 2)` of them.
pub fn enumerate_labelings(u: &Arc<Universe>) -> Result<impl Iterator<Item = CredibilityLabeling>, RevisionError> {
    check_table_size(u)?;
    let free = (1usize << u.len()).saturating_sub(2);
    let count = 3u64.checked_pow(free as u32).filter(|&c| c <= MAX_ENUMERATION);
    let count = count.ok_or_else(|| too_large(u.len(), 3))?;
    let u = u.clone();
    Ok((0..count).map(move |mut code| {
        CredibilityLabeling::from_fn(u.clone(), |e| {
            if e.is_empty() {
                Credibility::Rejected
            } else if e.is_full() {
                Credibility::Credible
            } else {
                let label = Credibility::ALL[(code % 3) as usize];
                code /= 3;
                label
            }
        })
        .expect("constructed labels respect the fixed classes")
    }))
}

/// All selection functions with the given initial points.
pub fn enumerate_selections(u: &Arc<Universe>, initial: PointSet) -> Result<Vec<SelectionFunction>, RevisionError> {
    check_table_size(u)?;
    // Only propositions disjoint from the initial points have a free choice.
    let free: Vec<PointSet> = u.propositions().filter(|e| !e.is_empty() && !e.intersects(initial)).collect();
    let mut total: u64 = 1;
    for e in &free {
        total = total.saturating_mul((1u64 << e.count()) - 1);
        if total > MAX_ENUMERATION {
            return Err(too_large(u.len(), 0));
        }
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut picks: Vec<PointSet> = free.iter().map(|e| lowest_nonempty(*e)).collect();
    loop {
        let mut choice: Vec<PointSet> = u.propositions().map(|e| e & initial).collect();
        for (e, s) in free.iter().zip(&picks) {
            choice[e.index()] = *s;
        }
        out.push(SelectionFunction::new(u.clone(), initial, choice)?);
        // odometer over nonempty subsets of each free proposition
        let mut i = 0;
        loop {
            if i == free.len() {
                return Ok(out);
            }
            match next_nonempty_subset(picks[i], free[i]) {
                Some(next) => {
                    picks[i] = next;
                    break;
                }
                None => {
                    picks[i] = lowest_nonempty(free[i]);
                    i += 1;
                }
            }
        }
    }
}

fn lowest_nonempty(e: PointSet) -> PointSet {
    e.subsets().nth(1).expect("nonempty set")
}

fn next_nonempty_subset(current: PointSet, of: PointSet) -> Option<PointSet> {
    if current == of {
        None
    } else {
        let bits = current.bits().wrapping_sub(of.bits()) & of.bits();
        Some(PointSet::from_bits(bits, of.universe_len()))
    }
}

/// Every table with a consistent initial belief set. Only tiny universes.
pub fn enumerate_tables(u: &Arc<Universe>) -> Result<Vec<RevisionTable>, RevisionError> {
    check_table_size(u)?;
    let props: Vec<PointSet> = u.propositions().collect();
    let per_table = (props.len() as u64).checked_pow(props.len() as u32);
    let total = per_table.and_then(|n| n.checked_mul(props.len() as u64 - 1));
    match total {
        Some(t) if t <= MAX_ENUMERATION => {}
        _ => return Err(too_large(u.len(), 2)),
    }
    let mut out = Vec::new();
    for initial in props.iter().skip(1) {
        let mut code = vec![0usize; props.len()];
        loop {
            let entries = code.iter().map(|&c| props[c]).collect();
            out.push(RevisionTable::new(u.clone(), *initial, entries)?);
            let mut i = 0;
            while i < code.len() && code[i] + 1 == props.len() {
                code[i] = 0;
                i += 1;
            }
            if i == code.len() {
                break;
            }
            code[i] += 1;
        }
    }
    Ok(out)
}

/// Uniform random subset of `of`.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, of: PointSet) -> PointSet {
    PointSet::from_bits(rng.gen::<u64>() & of.bits(), of.universe_len())
}

/// Uniform random nonempty subset of a nonempty `of`.
pub fn random_nonempty_subset<R: Rng + ?Sized>(rng: &mut R, of: PointSet) -> PointSet {
    assert!(!of.is_empty());
    loop {
        let s = random_subset(rng, of);
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn random_preorder<R: Rng + ?Sized>(rng: &mut R, u: &Arc<Universe>) -> PlausibilityOrder {
    let n = u.len();
    let mut ranks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    // compress to contiguous ranks
    let mut used: Vec<usize> = ranks.clone();
    used.sort_unstable();
    used.dedup();
    for r in &mut ranks {
        *r = used.binary_search(r).expect("rank is present");
    }
    PlausibilityOrder::new(u.clone(), ranks).expect("compressed ranks are contiguous")
}

/// Random selection function with the given initial points.
pub fn random_selection_with<R: Rng + ?Sized>(rng: &mut R, u: &Arc<Universe>, initial: PointSet) -> SelectionFunction {
    SelectionFunction::from_fn(u.clone(), initial, |e| {
        if e.intersects(initial) {
            e & initial
        } else {
            random_nonempty_subset(rng, e)
        }
    })
    .expect("generated selection respects the invariants")
}

pub fn random_selection<R: Rng + ?Sized>(rng: &mut R, u: &Arc<Universe>) -> SelectionFunction {
    let initial = random_nonempty_subset(rng, u.full());
    random_selection_with(rng, u, initial)
}

pub fn random_labeling<R: Rng + ?Sized>(rng: &mut R, u: &Arc<Universe>) -> CredibilityLabeling {
    CredibilityLabeling::from_fn(u.clone(), |e| {
        if e.is_empty() {
            Credibility::Rejected
        } else if e.is_full() {
            Credibility::Credible
        } else {
            Credibility::ALL[rng.gen_range(0..3)]
        }
    })
    .expect("generated labels respect the fixed classes")
}

/// Table with uniformly random entries and a random consistent initial set.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R, u: &Arc<Universe>) -> RevisionTable {
    let initial = random_nonempty_subset(rng, u.full());
    RevisionTable::from_fn(u.clone(), initial, |_| random_subset(rng, u.full())).expect("table fits universe")
}
