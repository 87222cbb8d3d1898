use super::{check_table_size, PlausibilityOrder, RevisionError, RevisionTable, SelectionFunction};

/// Revision by most plausible points: `B(E) = Th(min E)`, `B(∅)` inconsistent,
/// and the initial beliefs are the theory of the bottom level.
pub fn revision_from_preorder(order: &PlausibilityOrder) -> Result<RevisionTable, RevisionError> {
    let u = order.universe().clone();
    check_table_size(&u)?;
    let initial = order.min_set(u.full());
    RevisionTable::from_fn(u, initial, |e| order.min_set(e))
}

/// `B(E) = Th(S(E))` for consistent `E`, inconsistent at `∅`.
pub fn revision_from_selection(s: &SelectionFunction) -> RevisionTable {
    RevisionTable::from_fn(s.universe().clone(), s.initial(), |e| s.select(e))
        .expect("a valid selection function yields a valid table")
}
