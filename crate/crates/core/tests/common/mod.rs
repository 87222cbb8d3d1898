#![allow(dead_code)]

use filtra::logic::Formula;
use rand::Rng;

/// A formula of exactly `depth` over `atoms`.
pub fn formula_of_depth<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 {
        return Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    if rng.gen_bool(0.4) {
        return Formula::not(formula_of_depth(rng, atoms, depth - 1));
    }
    let deep = formula_of_depth(rng, atoms, depth - 1);
    let shallow = rng.gen_range(0..depth);
    let other = formula_of_depth(rng, atoms, shallow);
    if rng.gen_bool(0.5) {
        Formula::or(deep, other)
    } else {
        Formula::or(other, deep)
    }
}

/// Assignments of `atoms` as name lookups, one per row of the truth table.
pub fn rows(atoms: &[&str]) -> Vec<Vec<(String, bool)>> {
    (0..1usize << atoms.len())
        .map(|row| atoms.iter().enumerate().map(|(i, a)| (a.to_string(), row >> i & 1 == 1)).collect())
        .collect()
}

pub fn holds(f: &Formula, row: &[(String, bool)]) -> bool {
    f.eval(&|name: &str| row.iter().find(|(a, _)| a == name).map(|(_, v)| *v).expect("atom in row"))
}

/// Truth-table entailment: every row satisfying all premises satisfies `phi`.
pub fn entails(premises: &[Formula], phi: &Formula, atoms: &[&str]) -> bool {
    rows(atoms).iter().all(|row| !premises.iter().all(|p| holds(p, row)) || holds(phi, row))
}
