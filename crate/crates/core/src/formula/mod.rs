//! Formulas of propositional intuitionistic logic extended with a local
//! (tensor) disjunction `\/` and a global (inquisitive) disjunction `\\/`.

mod enumerate;
pub(crate) mod parse;
mod render;

pub use enumerate::{count_formulas, enumerate_formulas, formulas_up_to, FormulaEnumerator, Shape};
pub use parse::{parse, parse_interning, ParseError};
pub use render::render;

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// An atom, identified by its index in a [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(pub u16);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered list of atom names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    names: Vec<String>,
}

const DEFAULT_NAMES: [&str; 8] = ["p", "q", "r", "s", "a", "b", "c", "d"];

impl Signature {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        Signature {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// `p, q, r, s, a, b, c, d` for `n <= 8`, otherwise `p0, p1, ...`.
    pub fn standard(n: usize) -> Self {
        if n <= DEFAULT_NAMES.len() {
            Signature::new(DEFAULT_NAMES[..n].iter().copied())
        } else {
            Signature::new((0..n).map(|i| format!("p{i}")))
        }
    }

    /// `p0, p1, ..., p{n-1}`.
    pub fn numbered(n: usize) -> Self {
        Signature::new((0..n).map(|i| format!("p{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: Atom) -> &str {
        &self.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Atom(i as u16))
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> {
        (0..self.names.len()).map(|i| Atom(i as u16))
    }

    /// Adds `name` if absent and returns its atom.
    pub fn intern(&mut self, name: &str) -> Atom {
        match self.lookup(name) {
            Some(a) => a,
            None => {
                self.names.push(name.to_string());
                Atom((self.names.len() - 1) as u16)
            }
        }
    }
}

/// The binary connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    LocalOr,
    GlobalOr,
    Impl,
}

impl Connective {
    pub const ALL: [Connective; 4] = [
        Connective::And,
        Connective::LocalOr,
        Connective::GlobalOr,
        Connective::Impl,
    ];

    /// Connectives of the standard (global-disjunction-free) fragment.
    pub const STANDARD: [Connective; 3] = [Connective::And, Connective::LocalOr, Connective::Impl];

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "/\\",
            Connective::LocalOr => "\\/",
            Connective::GlobalOr => "\\\\/",
            Connective::Impl => "->",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Atom(Atom),
    And(Box<Formula>, Box<Formula>),
    LocalOr(Box<Formula>, Box<Formula>),
    GlobalOr(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(i: usize) -> Formula {
        Formula::Atom(Atom(i as u16))
    }

    pub fn binary(op: Connective, a: Formula, b: Formula) -> Formula {
        let (a, b) = (Box::new(a), Box::new(b));
        match op {
            Connective::And => Formula::And(a, b),
            Connective::LocalOr => Formula::LocalOr(a, b),
            Connective::GlobalOr => Formula::GlobalOr(a, b),
            Connective::Impl => Formula::Impl(a, b),
        }
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::And, a, b)
    }

    pub fn lor(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::LocalOr, a, b)
    }

    pub fn gor(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::GlobalOr, a, b)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::Impl, a, b)
    }

    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `bot -> bot`.
    pub fn top() -> Formula {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    /// Left-nested conjunction; the empty conjunction is `top`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested local disjunction; the empty one is `bot`.
    pub fn disj_local<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::lor).unwrap_or(Formula::Bot)
    }

    /// Left-nested global disjunction; the empty one is `bot`.
    pub fn disj_global<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::gor).unwrap_or(Formula::Bot)
    }

    /// The top connective and its operands, if binary.
    pub fn split(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::Bot | Formula::Atom(_) => None,
            Formula::And(a, b) => Some((Connective::And, a, b)),
            Formula::LocalOr(a, b) => Some((Connective::LocalOr, a, b)),
            Formula::GlobalOr(a, b) => Some((Connective::GlobalOr, a, b)),
            Formula::Impl(a, b) => Some((Connective::Impl, a, b)),
        }
    }

    pub fn depth(&self) -> usize {
        match self.split() {
            None => 0,
            Some((_, a, b)) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self.split() {
            None => 1,
            Some((_, a, b)) => 1 + a.size() + b.size(),
        }
    }

    /// Free of the global disjunction.
    pub fn is_standard(&self) -> bool {
        match self.split() {
            None => true,
            Some((Connective::GlobalOr, _, _)) => false,
            Some((_, a, b)) => a.is_standard() && b.is_standard(),
        }
    }

    /// Free of the local disjunction.
    pub fn is_local_or_free(&self) -> bool {
        match self.split() {
            None => true,
            Some((Connective::LocalOr, _, _)) => false,
            Some((_, a, b)) => a.is_local_or_free() && b.is_local_or_free(),
        }
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(a) => out.push(*a),
            _ => {
                let (_, a, b) = self.split().unwrap();
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Largest atom index plus one.
    pub fn atom_bound(&self) -> usize {
        self.atoms().last().map_or(0, |a| a.index() + 1)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> Display<'a> {
        Display { f: self, sig }
    }
}

pub struct Display<'a> {
    f: &'a Formula,
    sig: &'a Signature,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.f, self.sig))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("atom index {0} is outside the target signature")]
    AtomOutsideSignature(usize),
}

/// A map from atoms to formulas. Atoms without an image are left alone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Atom, Formula>,
}

impl Substitution {
    /// Checks that every image only mentions atoms of `target`.
    pub fn new<I: IntoIterator<Item = (Atom, Formula)>>(
        pairs: I,
        target: &Signature,
    ) -> Result<Self, SubstitutionError> {
        let map: BTreeMap<Atom, Formula> = pairs.into_iter().collect();
        for img in map.values() {
            if let Some(a) = img.atoms().into_iter().find(|a| a.index() >= target.len()) {
                return Err(SubstitutionError::AtomOutsideSignature(a.index()));
            }
        }
        Ok(Substitution { map })
    }

    /// Every image is a standard formula.
    pub fn is_standard(&self) -> bool {
        self.map.values().all(Formula::is_standard)
    }

    pub fn get(&self, a: Atom) -> Option<&Formula> {
        self.map.get(&a)
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Bot => Formula::Bot,
            Formula::Atom(a) => self.map.get(a).cloned().unwrap_or(Formula::Atom(*a)),
            _ => {
                let (op, a, b) = f.split().unwrap();
                Formula::binary(op, self.apply(a), self.apply(b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_fragment() {
        let sig = Signature::standard(2);
        let f = parse("p \\/ ~p", &sig).unwrap();
        assert!(f.is_standard());
        let g = parse("p \\\\/ q", &sig).unwrap();
        assert!(!g.is_standard());
        assert_eq!(g.depth(), 1);
        assert_eq!(f.size(), 5);
    }

    #[test]
    fn substitution_flags_standardness() {
        let sig = Signature::standard(2);
        let p = Atom(0);
        let s = Substitution::new([(p, parse("q \\\\/ ~q", &sig).unwrap())], &sig).unwrap();
        assert!(!s.is_standard());
        let out = s.apply(&parse("p -> p", &sig).unwrap());
        assert_eq!(render(&out, &sig), "q \\\\/ ~q -> q \\\\/ ~q");
        let s2 = Substitution::new([(p, parse("~q", &sig).unwrap())], &sig).unwrap();
        assert!(s2.is_standard());
    }

    #[test]
    fn substitution_rejects_foreign_atoms() {
        let small = Signature::standard(1);
        let err = Substitution::new([(Atom(0), Formula::atom(3))], &small).unwrap_err();
        assert_eq!(err, SubstitutionError::AtomOutsideSignature(3));
    }

    #[test]
    fn empty_big_operators() {
        assert_eq!(Formula::disj_local(vec![]), Formula::Bot);
        assert_eq!(Formula::conj(vec![]), Formula::top());
    }
}
