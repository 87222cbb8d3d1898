use std::collections::HashSet;

use super::{AtomSet, Formula, LogicError, PointSet, MAX_POINTS};

/// Default bound on the number of atoms of a canonical universe.
pub const DEFAULT_ATOM_LIMIT: usize = 4;

/// A named point together with the atoms true at it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: String,
    /// Bit `i` is the truth value of the `i`-th declared atom.
    pub assignment: u64,
}

impl Point {
    pub fn new(id: impl Into<String>, assignment: u64) -> Point {
        Point { id: id.into(), assignment }
    }
}

/// Finite set of points, each carrying a valuation of the declared atoms.
///
/// Points may repeat a valuation and need not cover every valuation; the
/// exhaustive, duplicate-free case is built by [`Universe::canonical`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    atoms: AtomSet,
    points: Vec<Point>,
    /// Truth set of each atom.
    atom_sets: Vec<PointSet>,
}

impl Universe {
    pub fn new(atoms: AtomSet, points: Vec<Point>) -> Result<Universe, LogicError> {
        if points.is_empty() {
            return Err(LogicError::EmptyUniverse);
        }
        if points.len() > MAX_POINTS {
            return Err(LogicError::LimitExceeded {
                what: "points",
                requested: points.len(),
                limit: MAX_POINTS,
            });
        }
        if atoms.len() > 64 {
            return Err(LogicError::LimitExceeded { what: "atoms", requested: atoms.len(), limit: 64 });
        }
        let mut seen = HashSet::new();
        for p in &points {
            if p.id.is_empty() || p.id.contains(',') {
                return Err(LogicError::InvalidPointId(p.id.clone()));
            }
            if !seen.insert(p.id.as_str()) {
                return Err(LogicError::DuplicatePoint(p.id.clone()));
            }
            if atoms.len() < 64 && p.assignment >> atoms.len() != 0 {
                return Err(LogicError::AssignmentOutOfRange(p.id.clone()));
            }
        }
        let atom_sets = (0..atoms.len())
            .map(|a| {
                PointSet::from_indices(
                    points.iter().enumerate().filter(|(_, p)| p.assignment >> a & 1 == 1).map(|(i, _)| i),
                    points.len(),
                )
            })
            .collect();
        Ok(Universe { atoms, points, atom_sets })
    }

    /// Builds a universe from `(id, true atoms)` pairs.
    pub fn from_true_atoms<S: AsRef<str>>(
        atoms: AtomSet,
        states: &[(S, Vec<S>)],
    ) -> Result<Universe, LogicError> {
        let mut points = Vec::with_capacity(states.len());
        for (id, true_atoms) in states {
            let mut assignment = 0u64;
            for name in true_atoms {
                let a = atoms.index_of(name.as_ref()).ok_or_else(|| LogicError::UnknownAtom {
                    name: name.as_ref().to_string(),
                    position: None,
                })?;
                assignment |= 1 << a;
            }
            points.push(Point::new(id.as_ref(), assignment));
        }
        Universe::new(atoms, points)
    }

    /// All `2^n` valuations of `atoms`, named `w0 .. w{2^n-1}`.
    ///
    /// `wk` makes the `i`-th atom true iff bit `n-1-i` of `k` is set, so the
    /// first declared atom is the most significant digit of the count.
    pub fn canonical(atoms: &AtomSet) -> Result<Universe, LogicError> {
        Universe::canonical_with_limit(atoms, DEFAULT_ATOM_LIMIT)
    }

    pub fn canonical_with_limit(atoms: &AtomSet, limit: usize) -> Result<Universe, LogicError> {
        let n = atoms.len();
        if n == 0 {
            return Err(LogicError::EmptyUniverse);
        }
        let limit = limit.min(6);
        if n > limit {
            return Err(LogicError::LimitExceeded { what: "atoms", requested: n, limit });
        }
        let points = (0..1u64 << n)
            .map(|k| {
                let assignment = (0..n).filter(|i| k >> (n - 1 - i) & 1 == 1).fold(0u64, |acc, i| acc | 1 << i);
                Point::new(format!("w{k}"), assignment)
            })
            .collect();
        Universe::new(atoms.clone(), points)
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn empty(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    /// Every proposition (subset of points), ordered by mask.
    pub fn propositions(&self) -> impl Iterator<Item = PointSet> {
        PointSet::all(self.len())
    }

    /// True when every valuation of the atoms occurs exactly once.
    pub fn is_canonical(&self) -> bool {
        let n = self.atoms.len();
        n > 0 && n <= 6 && self.len() == 1 << n && {
            let distinct: HashSet<u64> = self.points.iter().map(|p| p.assignment).collect();
            distinct.len() == self.len()
        }
    }

    /// Truth set of an atom; `None` if the atom is not declared.
    pub fn atom_set(&self, name: &str) -> Option<PointSet> {
        self.atoms.index_of(name).map(|i| self.atom_sets[i])
    }

    /// Brace-delimited list of the point ids in `set`, e.g. `{a,b}`.
    pub fn describe(&self, set: PointSet) -> String {
        let ids: Vec<&str> = set.iter().map(|i| self.points[i].id.as_str()).collect();
        format!("{{{}}}", ids.join(","))
    }

    /// Member ids sorted lexicographically and comma-joined; the key format
    /// of scenario files.
    pub fn event_key(&self, set: PointSet) -> String {
        let mut ids: Vec<&str> = set.iter().map(|i| self.points[i].id.as_str()).collect();
        ids.sort_unstable();
        ids.join(",")
    }
}

/// Points of `u` satisfying `f`.
pub fn truth_set(f: &Formula, u: &Universe) -> Result<PointSet, LogicError> {
    Ok(match f {
        Formula::Atom(name) => u
            .atom_set(name)
            .ok_or_else(|| LogicError::UnknownAtom { name: name.clone(), position: None })?,
        Formula::Not(g) => truth_set(g, u)?.complement(),
        Formula::Or(a, b) => truth_set(a, u)? | truth_set(b, u)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Tautology,
    Contradiction,
    Contingent,
}

fn canonical_of(u: &Universe) -> Result<std::borrow::Cow<'_, Universe>, LogicError> {
    if u.is_canonical() {
        Ok(std::borrow::Cow::Borrowed(u))
    } else {
        Ok(std::borrow::Cow::Owned(Universe::canonical_with_limit(u.atoms(), 6)?))
    }
}

/// Classifies `f` over every valuation of the atoms declared by `u`.
pub fn classify(f: &Formula, u: &Universe) -> Result<Classification, LogicError> {
    let canonical = canonical_of(u)?;
    let set = truth_set(f, &canonical)?;
    Ok(if set.is_full() {
        Classification::Tautology
    } else if set.is_empty() {
        Classification::Contradiction
    } else {
        Classification::Contingent
    })
}

/// Whether `⊢ f ↔ g`, decided on the canonical universe of `u`'s atoms.
pub fn are_equivalent(f: &Formula, g: &Formula, u: &Universe) -> Result<bool, LogicError> {
    let canonical = canonical_of(u)?;
    Ok(truth_set(f, &canonical)? == truth_set(g, &canonical)?)
}

/// A formula whose truth set on `u` is exactly `set`, rendered in the infix
/// syntax (`&` binding tighter than `|`). Built as a DNF whose terms are
/// greedily shortened; `None` when the valuation cannot separate `set` from
/// its complement or when no atoms are declared.
pub fn represent(set: PointSet, u: &Universe) -> Option<String> {
    let atoms = u.atoms();
    let first = atoms.names().first()?;
    if set.is_empty() {
        return Some(format!("{first} & ~{first}"));
    }
    if set.is_full() {
        return Some(format!("{first} | ~{first}"));
    }
    let n = atoms.len();
    // A term is a list of (atom index, polarity) literals.
    let term_set = |lits: &[(usize, bool)]| {
        lits.iter().fold(u.full(), |acc, &(a, pos)| {
            let s = u.atom_set(&atoms.names()[a]).unwrap_or(u.empty());
            acc & if pos { s } else { !s }
        })
    };
    let mut covered = u.empty();
    let mut terms: Vec<Vec<(usize, bool)>> = Vec::new();
    for i in set.iter() {
        if covered.contains(i) {
            continue;
        }
        let assignment = u.points()[i].assignment;
        let mut lits: Vec<(usize, bool)> = (0..n).map(|a| (a, assignment >> a & 1 == 1)).collect();
        if !term_set(&lits).is_subset(set) {
            return None;
        }
        let mut k = 0;
        while k < lits.len() {
            let mut shorter = lits.clone();
            shorter.remove(k);
            if term_set(&shorter).is_subset(set) {
                lits = shorter;
            } else {
                k += 1;
            }
        }
        covered = covered | term_set(&lits);
        terms.push(lits);
    }
    let render = |lits: &Vec<(usize, bool)>| {
        lits.iter()
            .map(|&(a, pos)| format!("{}{}", if pos { "" } else { "~" }, atoms.names()[a]))
            .collect::<Vec<_>>()
            .join(" & ")
    };
    Some(terms.iter().map(render).collect::<Vec<_>>().join(" | "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn atoms(names: &[&str]) -> AtomSet {
        AtomSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_sizes_and_order() {
        let u = Universe::canonical(&atoms(&["p"])).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u.points()[0], Point::new("w0", 0));
        assert_eq!(u.points()[1], Point::new("w1", 1));
        assert_eq!(Universe::canonical(&atoms(&["p", "q"])).unwrap().len(), 4);
        let u3 = Universe::canonical(&atoms(&["p", "q", "r"])).unwrap();
        assert_eq!(u3.len(), 8);
        // w1 = p false, q false, r true
        assert_eq!(u3.points()[1].assignment, 0b100);
        assert!(u3.is_canonical());
    }

    #[test]
    fn canonical_limit() {
        let five = atoms(&["a", "b", "c", "d", "e"]);
        assert!(matches!(Universe::canonical(&five), Err(LogicError::LimitExceeded { .. })));
        assert_eq!(Universe::canonical_with_limit(&five, 5).unwrap().len(), 32);
    }

    #[test]
    fn truth_sets() {
        let a = atoms(&["p", "q"]);
        let u = Universe::canonical(&a).unwrap();
        let ts = |s: &str| truth_set(&parse_formula(s, &a).unwrap(), &u).unwrap();
        // w0 = (p false, q false)
        assert_eq!(ts("p | q"), PointSet::from_indices([1, 2, 3], 4));
        assert_eq!(ts("p & ~p"), u.empty());
        assert_eq!(ts("p <-> q"), PointSet::from_indices([0, 3], 4));
    }

    #[test]
    fn classification() {
        let a = atoms(&["p", "q"]);
        let u = Universe::canonical(&a).unwrap();
        let f = |s: &str| parse_formula(s, &a).unwrap();
        assert_eq!(classify(&f("p | ~p"), &u).unwrap(), Classification::Tautology);
        assert_eq!(classify(&f("p & ~p"), &u).unwrap(), Classification::Contradiction);
        assert_eq!(classify(&f("p"), &u).unwrap(), Classification::Contingent);
        assert!(are_equivalent(&f("p -> q"), &f("~p | q"), &u).unwrap());
        assert!(!are_equivalent(&f("p -> q"), &f("q -> p"), &u).unwrap());
    }

    #[test]
    fn classification_ignores_non_canonical_points() {
        // One point only: "p" holds everywhere there, yet p is not a tautology.
        let a = atoms(&["p"]);
        let u = Universe::new(a.clone(), vec![Point::new("x", 1)]).unwrap();
        let p = parse_formula("p", &a).unwrap();
        assert!(truth_set(&p, &u).unwrap().is_full());
        assert_eq!(classify(&p, &u).unwrap(), Classification::Contingent);
    }

    #[test]
    fn atom_mismatch() {
        let u = Universe::canonical(&atoms(&["p"])).unwrap();
        assert!(matches!(
            truth_set(&Formula::atom("q"), &u),
            Err(LogicError::UnknownAtom { .. })
        ));
    }

    #[test]
    fn universe_validation() {
        let a = atoms(&["p"]);
        assert!(matches!(Universe::new(a.clone(), vec![]), Err(LogicError::EmptyUniverse)));
        assert!(matches!(
            Universe::new(a.clone(), vec![Point::new("x", 0), Point::new("x", 1)]),
            Err(LogicError::DuplicatePoint(_))
        ));
        assert!(matches!(
            Universe::new(a, vec![Point::new("x", 2)]),
            Err(LogicError::AssignmentOutOfRange(_))
        ));
    }

    #[test]
    fn representation_round_trips_on_canonical() {
        let a = atoms(&["p", "q", "r"]);
        let u = Universe::canonical(&a).unwrap();
        for set in u.propositions() {
            let text = represent(set, &u).expect("canonical universes separate every set");
            let f = parse_formula(&text, &a).unwrap();
            assert_eq!(truth_set(&f, &u).unwrap(), set, "{text}");
        }
        assert_eq!(represent(PointSet::from_indices([4, 5, 6, 7], 8), &u).unwrap(), "p");
    }

    #[test]
    fn representation_fails_without_separation() {
        let a = atoms(&["p"]);
        let u = Universe::new(a, vec![Point::new("x", 1), Point::new("y", 1)]).unwrap();
        assert_eq!(represent(PointSet::singleton(0, 2), &u), None);
    }

    #[test]
    fn event_keys_sort_ids() {
        let a = atoms(&["p"]);
        let u = Universe::new(a, vec![Point::new("b", 0), Point::new("a", 1)]).unwrap();
        assert_eq!(u.event_key(u.full()), "a,b");
        assert_eq!(u.describe(u.full()), "{b,a}");
        assert_eq!(u.event_key(u.empty()), "");
    }
}
