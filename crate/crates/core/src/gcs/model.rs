use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Gcs, GcsError};
use crate::belief::BeliefSet;
use crate::logic::{truth_set, AtomSet, Formula, LogicError, Point, PointSet, Universe};
use crate::revision::{Credibility, CredibilityLabeling};

/// Bound on the atoms of a model; the labeling has `2^(2^n)` entries.
pub const MAX_MODEL_ATOMS: usize = 4;

/// An interpretation of a [`Gcs`]: a valuation of `atoms` over its states and
/// a credibility labeling of the formulas over those atoms.
///
/// Formulas are handled through their truth sets on the canonical universe
/// of the atoms (`canonical`); `omega` is the state space carrying the
/// valuation, and `image` maps a canonical proposition to the event it
/// denotes there.
#[derive(Clone, PartialEq, Eq)]
pub struct Model {
    gcs: Gcs,
    omega: Arc<Universe>,
    canonical: Arc<Universe>,
    /// Canonical point (valuation) realized at each state.
    valuation: Vec<usize>,
    labeling: CredibilityLabeling,
}

impl std::fmt::Debug for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Model {{ atoms: {:?}, states: [", self.canonical.atoms().names())?;
        for (i, p) in self.omega.points().iter().enumerate() {
            let truths: Vec<&str> =
                self.canonical.atoms().iter().enumerate().filter(|(a, _)| p.assignment >> a & 1 == 1).map(|(_, n)| n).collect();
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{{{}}}", p.id, truths.join(","))?;
        }
        write!(f, "] }}")
    }
}

/// Canonical point index of an assignment (bit `i` = atom `i`) over `n` atoms.
pub(crate) fn canonical_index(assignment: u64, n: usize) -> usize {
    (0..n).filter(|i| assignment >> i & 1 == 1).fold(0, |acc, i| acc | 1 << (n - 1 - i))
}

fn assignment_of(index: usize, n: usize) -> u64 {
    (0..n).filter(|i| index >> (n - 1 - i) & 1 == 1).fold(0u64, |acc, i| acc | 1 << i)
}

impl Model {
    /// Interprets `g` with each state sent to the canonical point
    /// `valuation[state]` over `atoms`.
    pub fn with_valuation(g: &Gcs, atoms: AtomSet, valuation: Vec<usize>) -> Result<Model, GcsError> {
        let n = atoms.len();
        if n > MAX_MODEL_ATOMS {
            return Err(GcsError::TooLarge { what: "atoms", requested: n, limit: MAX_MODEL_ATOMS });
        }
        let canonical = Arc::new(Universe::canonical_with_limit(&atoms, MAX_MODEL_ATOMS)?);
        if valuation.len() != g.universe().len() || valuation.iter().any(|&v| v >= canonical.len()) {
            return Err(GcsError::Logic(LogicError::AssignmentOutOfRange("valuation".into())));
        }
        let points = g
            .universe()
            .points()
            .iter()
            .zip(&valuation)
            .map(|(p, &v)| Point::new(p.id.clone(), assignment_of(v, n)))
            .collect();
        let omega = Arc::new(Universe::new(atoms, points)?);
        let image = |p: PointSet| {
            PointSet::from_indices((0..valuation.len()).filter(|&w| p.contains(valuation[w])), valuation.len())
        };
        let labeling = CredibilityLabeling::from_fn(canonical.clone(), |p| match g.family(image(p)) {
            Some(family) => family,
            None if p.is_full() => Credibility::Credible,
            None => Credibility::Rejected,
        })
        .map_err(GcsError::Labeling)?;
        Ok(Model { gcs: g.with_universe(omega.clone()), omega, canonical, valuation, labeling })
    }

    pub fn gcs(&self) -> &Gcs {
        &self.gcs
    }

    /// The states with the model's valuation.
    pub fn omega(&self) -> &Arc<Universe> {
        &self.omega
    }

    pub fn canonical(&self) -> &Arc<Universe> {
        &self.canonical
    }

    pub fn atoms(&self) -> &AtomSet {
        self.canonical.atoms()
    }

    pub fn valuation(&self) -> &[usize] {
        &self.valuation
    }

    pub fn labeling(&self) -> &CredibilityLabeling {
        &self.labeling
    }

    /// `||φ||` on the states, for the canonical proposition `p`.
    pub fn image(&self, p: PointSet) -> PointSet {
        PointSet::from_indices(
            (0..self.valuation.len()).filter(|&w| p.contains(self.valuation[w])),
            self.valuation.len(),
        )
    }

    /// Canonical points realized somewhere in `states`.
    pub fn project(&self, states: PointSet) -> PointSet {
        PointSet::from_indices(states.iter().map(|w| self.valuation[w]), self.canonical.len())
    }

    /// Whether formulas with truth set `p` are potential information.
    pub fn is_information(&self, p: PointSet) -> bool {
        self.gcs.family(self.image(p)).is_some()
    }

    /// Initial beliefs as canonical points: the valuations of `f(Ω)`.
    pub fn initial_points(&self) -> PointSet {
        self.project(self.gcs.initial())
    }

    /// The canonical points of `B(φ)` for information `φ` with truth set `p`.
    pub fn revised_points(&self, p: PointSet) -> Option<PointSet> {
        self.gcs.choice(self.image(p)).map(|fe| self.project(fe))
    }

    /// Labels forced by the families agree with the labeling everywhere.
    pub fn audit(&self) -> bool {
        self.canonical
            .propositions()
            .all(|p| self.gcs.family(self.image(p)).map_or(true, |fam| self.labeling.label(p) == fam))
    }
}

/// Interprets `g` using the states' own truth values for `atoms`.
pub fn build_model(g: &Gcs, atoms: &AtomSet) -> Result<Model, GcsError> {
    g.require_valid()?;
    let declared = g.universe().atoms();
    let indices = atoms
        .iter()
        .map(|a| declared.index_of(a).ok_or_else(|| GcsError::UnknownAtom(a.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let valuation = g
        .universe()
        .points()
        .iter()
        .map(|p| {
            let projected = indices.iter().enumerate().fold(0u64, |acc, (j, &i)| acc | (p.assignment >> i & 1) << j);
            canonical_index(projected, atoms.len())
        })
        .collect();
    Model::with_valuation(g, atoms.clone(), valuation)
}

/// The partial revision function a model induces on the states:
/// `K = Th(f(Ω))` and `B(φ) = Th(f(||φ||))` whenever `||φ||` is an event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRevision {
    pub initial: BeliefSet,
    /// Keyed by the event `||φ||`.
    pub entries: BTreeMap<PointSet, BeliefSet>,
}

impl PartialRevision {
    /// Events that some formula denotes.
    pub fn information(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.entries.keys().copied()
    }

    /// `B(φ)`, or `None` when `φ` is not potential information.
    pub fn revise(&self, f: &Formula) -> Result<Option<&BeliefSet>, LogicError> {
        let event = truth_set(f, self.initial.universe())?;
        Ok(self.entries.get(&event))
    }
}

pub fn induced_beliefs(m: &Model) -> PartialRevision {
    let omega = m.omega().clone();
    let g = m.gcs();
    let initial = BeliefSet::from_points(g.initial(), omega.clone());
    let mut entries = BTreeMap::new();
    for p in m.canonical().propositions() {
        let event = m.image(p);
        if let Some(fe) = g.choice(event) {
            if g.family(event).is_some() {
                entries.entry(event).or_insert_with(|| BeliefSet::from_points(fe, omega.clone()));
            }
        }
    }
    PartialRevision { initial, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcs::tests::detective;
    use crate::logic::parse_formula;

    fn detective_model() -> Model {
        let g = detective();
        let atoms = g.universe().atoms().clone();
        build_model(&g, &atoms).unwrap()
    }

    #[test]
    fn ann_is_allowable() {
        let m = detective_model();
        let ann = truth_set(&parse_formula("ann", m.atoms()).unwrap(), m.canonical()).unwrap();
        assert_eq!(m.image(ann), PointSet::singleton(0, 3));
        assert_eq!(m.labeling().label(ann), Credibility::Allowable);
        assert!(m.audit());
    }

    #[test]
    fn forced_and_default_labels() {
        let m = detective_model();
        let c = m.canonical();
        assert_eq!(m.labeling().label(c.full()), Credibility::Credible);
        // "bob" denotes {b}, which is not an event
        let bob = truth_set(&parse_formula("bob", m.atoms()).unwrap(), c).unwrap();
        assert!(!m.is_information(bob));
        assert_eq!(m.labeling().label(bob), Credibility::Rejected);
        // "ann & bob" holds nowhere, so it denotes the rejected empty event
        let both = truth_set(&parse_formula("ann & bob", m.atoms()).unwrap(), c).unwrap();
        assert!(m.image(both).is_empty());
        assert!(m.is_information(both));
    }

    #[test]
    fn induced_beliefs_of_detective() {
        let m = detective_model();
        let pr = induced_beliefs(&m);
        let f = |s: &str| parse_formula(s, m.atoms()).unwrap();
        assert!(pr.initial.contains(&f("~ann")).unwrap());
        assert!(pr.information().any(|e| e == PointSet::singleton(0, 3)));
        let after = pr.revise(&f("ann")).unwrap().expect("ann is information");
        assert!(!after.contains(&f("ann")).unwrap());
        assert!(!after.contains(&f("~ann")).unwrap());
        assert!(pr.revise(&f("bob")).unwrap().is_none());
    }

    #[test]
    fn projection_of_non_separating_valuation() {
        let g = detective();
        // only "ann" interpreted: b and c share a valuation
        let m = build_model(&g, &AtomSet::new(["ann"]).unwrap()).unwrap();
        assert_eq!(m.valuation(), &[1, 0, 0]);
        assert_eq!(m.initial_points(), PointSet::singleton(0, 2));
        assert!(matches!(build_model(&g, &AtomSet::new(["carla"]).unwrap()), Err(GcsError::UnknownAtom(_))));
    }
}
