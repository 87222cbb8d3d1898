//! Revealed-preference rationalization of the credible part of a structure.

use std::sync::Arc;

use super::{Gcs, GcsError};
use crate::logic::{PointSet, Universe};
use crate::revision::PlausibilityOrder;

pub const MAX_RATIONALIZE_POINTS: usize = 6;

/// A total pre-order whose most plausible points in every credible event
/// `E` are exactly `f(E)`, if one exists.
pub fn find_rationalizing_preorder(g: &Gcs) -> Result<Option<PlausibilityOrder>, GcsError> {
    let menus: Vec<(PointSet, PointSet)> =
        g.credible().iter().map(|&e| (e, g.choice(e).unwrap_or(g.universe().empty()))).collect();
    rationalize_choice(g.universe(), &menus)
}

/// Searches weak orders level by level, most plausible first. Once a level
/// is placed, every menu it touches for the first time has its choice fixed
/// (the menu's points in that level), so mismatches prune the branch.
pub fn rationalize_choice(
    u: &Arc<Universe>,
    menus: &[(PointSet, PointSet)],
) -> Result<Option<PlausibilityOrder>, GcsError> {
    if u.len() > MAX_RATIONALIZE_POINTS {
        return Err(GcsError::TooLarge { what: "states", requested: u.len(), limit: MAX_RATIONALIZE_POINTS });
    }
    // The empty menu is never touched by a level; its choice must be empty.
    if menus.iter().any(|(e, fe)| e.is_empty() && !fe.is_empty()) {
        return Ok(None);
    }
    let pending: Vec<(PointSet, PointSet)> = menus.iter().copied().filter(|(e, _)| !e.is_empty()).collect();
    let mut levels = Vec::new();
    if place(u.full(), &pending, &mut levels) {
        Ok(Some(PlausibilityOrder::from_levels(u.clone(), &levels)?))
    } else {
        Ok(None)
    }
}

fn place(remaining: PointSet, pending: &[(PointSet, PointSet)], levels: &mut Vec<PointSet>) -> bool {
    if remaining.is_empty() {
        return pending.is_empty();
    }
    // every untouched menu must still be able to choose inside what is left
    if pending.iter().any(|(e, fe)| !fe.is_subset(*e & remaining) || fe.is_empty()) {
        return false;
    }
    for level in remaining.subsets().skip(1) {
        if pending.iter().all(|(e, fe)| !e.intersects(level) || *e & level == *fe) {
            let rest: Vec<(PointSet, PointSet)> = pending.iter().copied().filter(|(e, _)| !e.intersects(level)).collect();
            levels.push(level);
            if place(remaining - level, &rest, levels) {
                return true;
            }
            levels.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcs::tests::{ev, numbered};

    #[test]
    fn single_menu() {
        let u = numbered(3);
        let m = ev(3, &[2]);
        let g = Gcs::new(u.clone(), [u.full()], [], [u.empty()], [(u.full(), m), (u.empty(), m)]).unwrap();
        let order = find_rationalizing_preorder(&g).unwrap().unwrap();
        assert_eq!(order.min_set(u.full()), m);
    }

    #[test]
    fn cyclic_choice_is_not_rationalizable() {
        let u = numbered(3);
        let menus = [
            (ev(3, &[1, 2]), ev(3, &[1])),
            (ev(3, &[2, 3]), ev(3, &[2])),
            (ev(3, &[1, 3]), ev(3, &[3])),
            (ev(3, &[1, 2, 3]), ev(3, &[1])),
        ];
        assert_eq!(rationalize_choice(&u, &menus).unwrap(), None);
    }

    #[test]
    fn choice_outside_menu_is_not_rationalizable() {
        let u = numbered(2);
        assert_eq!(rationalize_choice(&u, &[(ev(2, &[1]), ev(2, &[2]))]).unwrap(), None);
        assert_eq!(rationalize_choice(&u, &[(ev(2, &[1, 2]), u.empty())]).unwrap(), None);
    }

    #[test]
    fn size_limit() {
        let u = numbered(7);
        assert!(matches!(rationalize_choice(&u, &[]), Err(GcsError::TooLarge { .. })));
    }
}
