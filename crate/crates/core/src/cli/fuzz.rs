//! Seeded round-trip suites for the two characterizations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Check, Report};
use crate::gcs::{agm_consistency_bruteforce, check_prop2, default_atom_budget, enumerate_gcs, random_gcs, Gcs};
use crate::logic::{AtomSet, PointSet, Universe};
use crate::revision::{
    build_filtered, check_filtered, enumerate_labelings, enumerate_selections, enumerate_tables, random_labeling,
    random_selection, random_subset, random_table, recover_basic, revision_from_selection, CredibilityLabeling,
    RevisionTable,
};

pub const MAX_FUZZ_ATOMS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cases {
    All,
    Random(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Suite {
    pub name: &'static str,
    pub cases: usize,
    /// Cases on the positive side of the equivalence being tested.
    pub positive: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Suite {
        Suite { name, ..Suite::default() }
    }

    fn record(&mut self, positive: bool, failure: Option<String>) {
        self.cases += 1;
        self.positive += usize::from(positive);
        if let Some(f) = failure {
            self.failures += 1;
            self.first_failure.get_or_insert(f);
        }
    }
}

fn atom_universe(n: usize) -> Arc<Universe> {
    let names = ["p", "q", "r"];
    let atoms = AtomSet::new(names.iter().take(n).copied()).expect("fixed names");
    Arc::new(Universe::canonical(&atoms).expect("within the atom limit"))
}

/// Number of states used by the structure suite for `atoms` atoms.
pub fn prop2_states(atoms: usize) -> usize {
    (atoms + 1).min(crate::gcs::MAX_BRUTEFORCE_POINTS)
}

/// Filtering a basic revision satisfies the filter clauses, and recovery
/// inverts it.
pub fn build_case(star: &RevisionTable, c: &CredibilityLabeling) -> Option<String> {
    let filtered = match build_filtered(star, c) {
        Ok(t) => t,
        Err(e) => return Some(format!("build_filtered rejected a basic revision: {e}")),
    };
    let report = check_filtered(&filtered, c);
    if let Some(v) = report.failures().next() {
        let at = v.witness.as_ref().map(|w| format!("{:?}", w.propositions)).unwrap_or_default();
        return Some(format!("{} fails at {at} for initial {:?}", v.postulate, star.initial()));
    }
    match recover_basic(&filtered, c) {
        Ok(back) if build_filtered(&back, c).as_ref() == Ok(&filtered) => None,
        Ok(_) => Some(format!("rebuild differs for initial {:?}", star.initial())),
        Err(e) => Some(format!("recovery failed on a filtered table: {e}")),
    }
}

/// A table passes the filter clauses exactly when some basic revision
/// filters to it, and then the recovered one rebuilds it exactly.
/// Returns whether the table passed, and a failure description.
pub fn recover_case(t: &RevisionTable, c: &CredibilityLabeling) -> (bool, Option<String>) {
    let passes = check_filtered(t, c).holds();
    let failure = match (passes, recover_basic(t, c)) {
        (true, Ok(star)) if build_filtered(&star, c).as_ref() == Ok(t) => None,
        (true, Ok(_)) => Some(format!("rebuild differs for initial {:?}", t.initial())),
        (true, Err(e)) => Some(format!("table passes the filter clauses but {e}")),
        (false, Ok(_)) => Some(format!("table fails the filter clauses but was recovered, initial {:?}", t.initial())),
        (false, Err(_)) => None,
    };
    (passes, failure)
}

/// The direct characterization agrees with the search over models.
pub fn prop2_case(g: &Gcs) -> (bool, Option<String>) {
    let direct = check_prop2(g).map(|r| r.holds());
    let states = g.universe().len();
    let searched = agm_consistency_bruteforce(g, default_atom_budget(states)).map(|v| v.is_consistent());
    match (direct, searched) {
        (Ok(a), Ok(b)) if a == b => (a, None),
        (Ok(a), Ok(b)) => (a, Some(format!("direct check says {a}, model search says {b} for {g:?}"))),
        (Err(e), _) | (_, Err(e)) => (false, Some(format!("{e} for {g:?}"))),
    }
}

fn mutate<R: Rng>(rng: &mut R, t: &RevisionTable) -> RevisionTable {
    let u = t.universe();
    let e = PointSet::from_bits(rng.gen_range(0..1u64 << u.len()), u.len());
    t.with_entry(e, random_subset(rng, u.full()))
}

pub fn run_suites(atoms: usize, cases: Cases, seed: u64) -> Vec<Suite> {
    let u = atom_universe(atoms);
    let mut build = Suite::new("filter then check");
    let mut recover = Suite::new("check <=> recover");
    let mut prop2 = Suite::new("direct <=> models");
    match cases {
        Cases::All => {
            let labelings: Vec<CredibilityLabeling> = enumerate_labelings(&u).expect("small universe").collect();
            for initial in u.full().subsets().skip(1) {
                for s in enumerate_selections(&u, initial).expect("small universe") {
                    let star = revision_from_selection(&s);
                    for c in &labelings {
                        build.record(true, build_case(&star, c));
                    }
                }
            }
            for t in enumerate_tables(&u).expect("small universe") {
                for c in &labelings {
                    let (passes, failure) = recover_case(&t, c);
                    recover.record(passes, failure);
                }
            }
            for g in enumerate_gcs(prop2_states(atoms)).expect("small universe") {
                let (holds, failure) = prop2_case(&g);
                prop2.record(holds, failure);
            }
        }
        Cases::Random(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..n {
                let star = revision_from_selection(&random_selection(&mut rng, &u));
                let c = random_labeling(&mut rng, &u);
                build.record(true, build_case(&star, &c));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            for _ in 0..n {
                let c = random_labeling(&mut rng, &u);
                let t = match rng.gen_range(0..3) {
                    0 => random_table(&mut rng, &u),
                    k => {
                        let star = revision_from_selection(&random_selection(&mut rng, &u));
                        let filtered = build_filtered(&star, &c).expect("selection tables are basic");
                        if k == 1 {
                            filtered
                        } else {
                            mutate(&mut rng, &filtered)
                        }
                    }
                };
                let (passes, failure) = recover_case(&t, &c);
                recover.record(passes, failure);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
            let states = prop2_states(atoms);
            for _ in 0..n {
                let g = random_gcs(&mut rng, states, 0.8);
                let (holds, failure) = prop2_case(&g);
                prop2.record(holds, failure);
            }
        }
    }
    vec![build, recover, prop2]
}

pub fn fuzz_report(atoms: usize, cases: Cases, seed: u64) -> Report {
    let suites = run_suites(atoms, cases, seed);
    let mode = match cases {
        Cases::All => "exhaustive".to_string(),
        Cases::Random(n) => format!("random, {n} cases, seed {seed}"),
    };
    let mut notes = vec![
        format!("atoms: {atoms} ({mode}); structures over {} states", prop2_states(atoms)),
        format!("{:<20} {:>8} {:>8} {:>8}", "suite", "cases", "positive", "failures"),
    ];
    let mut checks = Vec::new();
    for s in &suites {
        notes.push(format!("{:<20} {:>8} {:>8} {:>8}", s.name, s.cases, s.positive, s.failures));
        let check = Check::flag(s.name, s.failures == 0);
        checks.push(match &s.first_failure {
            Some(f) => check.with_info(format!("first failure: {f}")),
            None => check,
        });
    }
    Report::new("fuzz", notes, checks)
}
