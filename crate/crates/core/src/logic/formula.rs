use std::collections::HashSet;
use std::fmt;

use super::LogicError;

/// Propositional formula over `¬` and `∨`.
///
/// Conjunction, implication and equivalence are not part of the tree; the
/// constructors below (and the parser) rewrite them into the two primitives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// `a ∧ b` as `¬(¬a ∨ ¬b)`.
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::or(Formula::not(a), Formula::not(b)))
    }

    /// `a → b` as `¬a ∨ b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// `a ↔ b` as `(a → b) ∧ (b → a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    /// Evaluates under an assignment given as a lookup on atom names.
    pub fn eval(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(name) => value(name),
            Formula::Not(f) => !f.eval(value),
            Formula::Or(a, b) => a.eval(value) || b.eval(value),
        }
    }

    /// Distinct atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<&str> {
        fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a str>, out: &mut Vec<&'a str>) {
            match f {
                Formula::Atom(name) => {
                    if seen.insert(name) {
                        out.push(name);
                    }
                }
                Formula::Not(g) => walk(g, seen, out),
                Formula::Or(a, b) => {
                    walk(a, seen, out);
                    walk(b, seen, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut HashSet::new(), &mut out);
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// Prints in the fully parenthesized canonical form accepted by
/// [`parse_formula`](super::parse_formula).
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Not(g) => write!(f, "(~{g})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Finite, ordered set of atom names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AtomSet {
    names: Vec<String>,
}

impl AtomSet {
    pub fn new<I, S>(names: I) -> Result<AtomSet, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(LogicError::InvalidAtomName(name));
            }
            if out.contains(&name) {
                return Err(LogicError::DuplicateAtom(name));
            }
            out.push(name);
        }
        Ok(AtomSet { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

/// Letters, digits and underscore, starting with a letter.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printer_is_fully_parenthesized() {
        let f = Formula::or(Formula::atom("p"), Formula::atom("q"));
        assert_eq!(print_formula(&f), "(p | q)");
        assert_eq!(print_formula(&Formula::not(Formula::atom("p"))), "(~p)");
    }

    #[test]
    fn atom_set_rejects_bad_names() {
        assert!(matches!(AtomSet::new(["p", "p"]), Err(LogicError::DuplicateAtom(_))));
        assert!(matches!(AtomSet::new(["1p"]), Err(LogicError::InvalidAtomName(_))));
        assert!(matches!(AtomSet::new([""]), Err(LogicError::InvalidAtomName(_))));
        let atoms = AtomSet::new(["p", "q_2"]).unwrap();
        assert_eq!(atoms.index_of("q_2"), Some(1));
    }

    #[test]
    fn derived_connectives_desugar() {
        let p = || Formula::atom("p");
        let q = || Formula::atom("q");
        assert_eq!(
            Formula::and(p(), q()),
            Formula::not(Formula::or(Formula::not(p()), Formula::not(q())))
        );
        assert_eq!(Formula::implies(p(), q()), Formula::or(Formula::not(p()), q()));
    }
}
