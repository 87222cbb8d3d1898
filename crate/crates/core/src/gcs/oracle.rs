//! Search for the revision functions whose existence defines basic-AGM
//! consistency, one model at a time.
//!
//! Given a model, we need a full-domain revision `B°` agreeing with the
//! induced partial revision on information, and a basic AGM revision `B*`
//! that filters to `B°`. Basic AGM revisions are selection functions with no
//! coupling between propositions, so the search splits per canonical
//! proposition `P`:
//!
//! * if `P` is information, its entry is fixed and [`admissible_selection`]
//!   decides whether some `S(P)` produces it under `P`'s label;
//! * otherwise `B°(P)` is ours to choose, so any selection works, and the
//!   label of `P` is irrelevant.
//!
//! The second point is why models only need the labels the families force:
//! every completion of the labeling behaves the same.

use itertools::Itertools;

use super::{Gcs, GcsError, Model};
use crate::logic::{AtomSet, PointSet};
use crate::revision::{
    admissible_selection, build_filtered, check_agm, filter_unchecked, revision_from_selection, AgmPostulate,
    Infeasibility, RevisionTable, SelectionFunction,
};

pub const MAX_ORACLE_POINTS: usize = 5;
pub const MAX_BRUTEFORCE_POINTS: usize = 4;
pub const MAX_BRUTEFORCE_ATOMS: usize = 3;

/// The pair of revision functions witnessing that a model extends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// `B*`, over the canonical universe of the model's atoms.
    pub basic: RevisionTable,
    /// `B°`, the filtered revision built from `basic`.
    pub filtered: RevisionTable,
}

impl Certificate {
    /// Re-checks the certificate against the model from scratch.
    pub fn verify(&self, m: &Model) -> bool {
        let agrees = m.canonical().propositions().all(|p| match m.revised_points(p) {
            Some(target) if m.is_information(p) => self.filtered.entry(p) == target,
            _ => true,
        });
        agrees
            && self.filtered.initial() == m.initial_points()
            && check_agm(&self.basic, &AgmPostulate::BASIC).holds()
            && build_filtered(&self.basic, m.labeling()).as_ref() == Ok(&self.filtered)
    }
}

/// An item of information no basic AGM revision can accommodate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelInfeasible {
    /// Truth set of the offending formulas on the canonical universe.
    pub proposition: PointSet,
    /// The event those formulas denote.
    pub event: PointSet,
    pub reason: Infeasibility,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extendable(Certificate),
    Blocked(ModelInfeasible),
}

impl Extension {
    pub fn is_extendable(&self) -> bool {
        matches!(self, Extension::Extendable(_))
    }
}

pub fn extension_oracle(m: &Model) -> Result<Extension, GcsError> {
    let points = m.omega().len();
    if points > MAX_ORACLE_POINTS {
        return Err(GcsError::TooLarge { what: "states", requested: points, limit: MAX_ORACLE_POINTS });
    }
    let canonical = m.canonical().clone();
    let k = m.initial_points();
    let mut choice = Vec::with_capacity(1 << canonical.len());
    for p in canonical.propositions() {
        let target = m.revised_points(p).filter(|_| m.is_information(p));
        let s = match target {
            Some(target) => match admissible_selection(k, p, m.labeling().label(p), target) {
                Ok(s) => s,
                Err(reason) => {
                    return Ok(Extension::Blocked(ModelInfeasible { proposition: p, event: m.image(p), reason }))
                }
            },
            None if p.intersects(k) => p & k,
            None => p,
        };
        choice.push(s);
    }
    let selection = SelectionFunction::new(canonical, k, choice)?;
    let basic = revision_from_selection(&selection);
    let filtered = filter_unchecked(&basic, m.labeling());
    Ok(Extension::Extendable(Certificate { basic, filtered }))
}

#[derive(Clone, Debug)]
pub enum Consistency {
    /// Every model extends; `models` counts the valuations examined.
    Consistent { models: usize },
    Inconsistent { counter_model: Box<Model>, blocked: ModelInfeasible },
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent { .. })
    }
}

/// Fewest atoms whose valuations can tell all states apart.
pub fn default_atom_budget(points: usize) -> usize {
    let mut n = 1;
    while (1usize << n) < points {
        n += 1;
    }
    n
}

fn atom_names(n: usize) -> AtomSet {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    AtomSet::new(NAMES.iter().take(n).copied()).expect("fixed names are valid")
}

/// Applies an atom permutation to a canonical point index.
fn permute_index(index: usize, perm: &[usize], n: usize) -> usize {
    // atom i sits at bit n-1-i
    (0..n).filter(|&i| index >> (n - 1 - i) & 1 == 1).fold(0, |acc, i| acc | 1 << (n - 1 - perm[i]))
}

/// Valuations of `states` points over `n` atoms, one per orbit of atom
/// renaming (the lexicographically least member).
pub(crate) fn valuations_up_to_renaming(states: usize, n: usize) -> Vec<Vec<usize>> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let base = 1usize << n;
    (0..states)
        .map(|_| 0..base)
        .multi_cartesian_product()
        .filter(|v| {
            perms.iter().all(|perm| {
                let image: Vec<usize> = v.iter().map(|&x| permute_index(x, perm, n)).collect();
                image >= *v
            })
        })
        .collect()
}

/// Decides basic-AGM consistency by running [`extension_oracle`] on a model
/// for every valuation of `atoms` atoms (up to renaming of atoms).
///
/// With fewer atoms than needed to separate the states, some events are not
/// expressible and the search may miss an obstruction; the default budget
/// from [`default_atom_budget`] avoids that.
pub fn agm_consistency_bruteforce(g: &Gcs, atoms: usize) -> Result<Consistency, GcsError> {
    let states = g.universe().len();
    if states > MAX_BRUTEFORCE_POINTS {
        return Err(GcsError::TooLarge { what: "states", requested: states, limit: MAX_BRUTEFORCE_POINTS });
    }
    if atoms == 0 || atoms > MAX_BRUTEFORCE_ATOMS {
        return Err(GcsError::TooLarge { what: "atoms", requested: atoms, limit: MAX_BRUTEFORCE_ATOMS });
    }
    g.require_valid()?;
    let names = atom_names(atoms);
    let mut models = 0;
    for valuation in valuations_up_to_renaming(states, atoms) {
        let model = Model::with_valuation(g, names.clone(), valuation)?;
        models += 1;
        if let Extension::Blocked(blocked) = extension_oracle(&model)? {
            return Ok(Consistency::Inconsistent { counter_model: Box::new(model), blocked });
        }
    }
    Ok(Consistency::Consistent { models })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcs::tests::{detective, ev, numbered};
    use crate::gcs::{build_model, check_prop2};

    #[test]
    fn detective_model_extends_and_certificate_verifies() {
        let g = detective();
        let m = build_model(&g, &g.universe().atoms().clone()).unwrap();
        match extension_oracle(&m).unwrap() {
            Extension::Extendable(cert) => assert!(cert.verify(&m)),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn detective_is_consistent_under_every_valuation() {
        let verdict = agm_consistency_bruteforce(&detective(), 2).unwrap();
        assert!(verdict.is_consistent(), "{verdict:?}");
    }

    #[test]
    fn clause_one_b_violation_has_a_counter_model() {
        let u = numbered(3);
        let e = ev(3, &[1, 3]);
        let k = ev(3, &[1, 2]);
        let g = Gcs::new(u.clone(), [u.full()], [e], [u.empty()], [(u.full(), k), (u.empty(), k), (e, ev(3, &[1]))])
            .unwrap();
        assert!(!check_prop2(&g).unwrap().holds());
        match agm_consistency_bruteforce(&g, 2).unwrap() {
            Consistency::Inconsistent { counter_model, blocked } => {
                assert_eq!(blocked.event, e);
                assert_eq!(blocked.reason, Infeasibility::AllowableChangesBeliefs);
                assert!(!extension_oracle(&counter_model).unwrap().is_extendable());
            }
            other => panic!("expected counter-model, got {other:?}"),
        }
    }

    #[test]
    fn minimal_event_family_is_consistent() {
        let u = numbered(3);
        let k = ev(3, &[2]);
        let g = Gcs::new(u.clone(), [u.full()], [], [u.empty()], [(u.full(), k), (u.empty(), k)]).unwrap();
        assert!(agm_consistency_bruteforce(&g, 2).unwrap().is_consistent());
        let m = build_model(&g, &AtomSet::default()).unwrap_err();
        assert!(matches!(m, GcsError::Logic(_)));
    }

    #[test]
    fn renaming_quotient_keeps_one_per_orbit() {
        // 2 states, 2 atoms: 16 valuations; swapping p and q exchanges 1 and 2
        let reps = valuations_up_to_renaming(2, 2);
        let mut orbits = std::collections::BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                let swapped = (permute_index(a, &[1, 0], 2), permute_index(b, &[1, 0], 2));
                orbits.insert(std::cmp::min((a, b), swapped));
            }
        }
        assert_eq!(reps.len(), orbits.len());
        assert_eq!(permute_index(0b10, &[1, 0], 2), 0b01);
    }

    #[test]
    fn default_budget_separates_states() {
        assert_eq!(default_atom_budget(1), 1);
        assert_eq!(default_atom_budget(2), 1);
        assert_eq!(default_atom_budget(3), 2);
        assert_eq!(default_atom_budget(4), 2);
        assert_eq!(default_atom_budget(5), 3);
    }
}
