use crate::formula::{parse, Formula, Signature};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// Axiom schemas of the team Hilbert system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7a,
    A7b,
    A7c,
    A7d,
    A7e,
    A7f,
    A7g,
    A7h,
    A7i,
    A8,
}

const META: [&str; 4] = ["phi", "psi", "chi", "alpha"];
const ALPHA: usize = 3;

impl AxiomId {
    pub const ALL: [AxiomId; 16] = [
        AxiomId::A1,
        AxiomId::A2,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A6,
        AxiomId::A7a,
        AxiomId::A7b,
        AxiomId::A7c,
        AxiomId::A7d,
        AxiomId::A7e,
        AxiomId::A7f,
        AxiomId::A7g,
        AxiomId::A7h,
        AxiomId::A7i,
        AxiomId::A8,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AxiomId::A1 => "1",
            AxiomId::A2 => "2",
            AxiomId::A3 => "3",
            AxiomId::A4 => "4",
            AxiomId::A5 => "5",
            AxiomId::A6 => "6",
            AxiomId::A7a => "7a",
            AxiomId::A7b => "7b",
            AxiomId::A7c => "7c",
            AxiomId::A7d => "7d",
            AxiomId::A7e => "7e",
            AxiomId::A7f => "7f",
            AxiomId::A7g => "7g",
            AxiomId::A7h => "7h",
            AxiomId::A7i => "7i",
            AxiomId::A8 => "8",
        }
    }

    /// The schema in concrete syntax over `phi`, `psi`, `chi`, `alpha`.
    pub fn schema_text(self) -> &'static str {
        match self {
            AxiomId::A1 => "phi -> phi \\/ psi",
            AxiomId::A2 => "(phi -> alpha) -> (psi -> alpha) -> phi \\/ psi -> alpha",
            AxiomId::A3 => "(phi -> chi) -> phi \\/ psi -> chi \\/ psi",
            AxiomId::A4 => "phi \\/ psi -> psi \\/ phi",
            AxiomId::A5 => "(phi \\/ psi) \\/ chi -> phi \\/ (psi \\/ chi)",
            AxiomId::A6 => "phi \\/ (psi \\\\/ chi) -> (phi \\/ psi) \\\\/ (phi \\/ chi)",
            AxiomId::A7a => "phi -> psi -> phi",
            AxiomId::A7b => "(phi -> psi -> chi) -> (phi -> psi) -> phi -> chi",
            AxiomId::A7c => "phi /\\ psi -> phi",
            AxiomId::A7d => "phi /\\ psi -> psi",
            AxiomId::A7e => "phi -> psi -> phi /\\ psi",
            AxiomId::A7f => "phi -> phi \\\\/ psi",
            AxiomId::A7g => "psi -> phi \\\\/ psi",
            AxiomId::A7h => "(phi -> chi) -> (psi -> chi) -> phi \\\\/ psi -> chi",
            AxiomId::A7i => "bot -> phi",
            AxiomId::A8 => "(alpha -> phi \\\\/ psi) -> (alpha -> phi) \\\\/ (alpha -> psi)",
        }
    }

    /// The schema as a formula whose atoms are the metavariables.
    pub fn schema(self) -> &'static Formula {
        static SCHEMAS: OnceLock<Vec<Formula>> = OnceLock::new();
        let all = SCHEMAS.get_or_init(|| {
            let sig = Self::metavariables();
            AxiomId::ALL
                .iter()
                .map(|a| parse(a.schema_text(), &sig).expect("schema text parses"))
                .collect()
        });
        &all[self as usize]
    }

    pub fn metavariables() -> Signature {
        Signature::new(META)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.label() == s)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

/// A schema together with the metavariable bindings that produce the
/// formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomMatch {
    pub id: AxiomId,
    /// Bindings for `phi`, `psi`, `chi`, `alpha`; unused ones are `None`.
    pub bindings: [Option<Formula>; 4],
}

impl AxiomMatch {
    pub fn binding(&self, name: &str) -> Option<&Formula> {
        META.iter().position(|m| *m == name).and_then(|i| self.bindings[i].as_ref())
    }
}

fn unify(pat: &Formula, f: &Formula, b: &mut [Option<Formula>; 4]) -> bool {
    match (pat, f) {
        (Formula::Atom(m), _) => match &b[m.index()] {
            Some(bound) => bound == f,
            None => {
                b[m.index()] = Some(f.clone());
                true
            }
        },
        (Formula::Bot, Formula::Bot) => true,
        _ => match (pat.split(), f.split()) {
            (Some((o1, a1, b1)), Some((o2, a2, b2))) => o1 == o2 && unify(a1, a2, b) && unify(b1, b2, b),
            _ => false,
        },
    }
}

/// Every schema `φ` instantiates. `alpha` must be bound to a standard
/// formula.
pub fn match_axiom(f: &Formula) -> Vec<AxiomMatch> {
    AxiomId::ALL
        .into_iter()
        .filter_map(|id| {
            let mut bindings: [Option<Formula>; 4] = Default::default();
            if !unify(id.schema(), f, &mut bindings) {
                return None;
            }
            if bindings[ALPHA].as_ref().is_some_and(|a| !a.is_standard()) {
                return None;
            }
            Some(AxiomMatch { id, bindings })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s, &Signature::standard(8)).unwrap()
    }

    fn ids(s: &str) -> Vec<AxiomId> {
        match_axiom(&f(s)).into_iter().map(|m| m.id).collect()
    }

    #[test]
    fn split_instances() {
        let m = match_axiom(&f("(p -> q \\\\/ r) -> (p -> q) \\\\/ (p -> r)"));
        let split = m.iter().find(|m| m.id == AxiomId::A8).unwrap();
        assert_eq!(split.binding("alpha"), Some(&f("p")));
        assert!(ids("((s -> a) -> q \\\\/ r) -> ((s -> a) -> q) \\\\/ ((s -> a) -> r)").contains(&AxiomId::A8));
        assert!(!ids("(a \\\\/ b -> q \\\\/ r) -> (a \\\\/ b -> q) \\\\/ (a \\\\/ b -> r)").contains(&AxiomId::A8));
    }

    #[test]
    fn bindings_must_agree() {
        assert_eq!(ids("p /\\ q -> p"), vec![AxiomId::A7c]);
        assert!(ids("p /\\ q -> r").is_empty());
        assert_eq!(ids("bot -> p \\\\/ q"), vec![AxiomId::A7i]);
    }

    #[test]
    fn labels_round_trip() {
        for a in AxiomId::ALL {
            assert_eq!(a.label().parse::<AxiomId>().unwrap(), a);
            let _ = a.schema();
        }
    }

    #[test]
    fn overlapping_schemas() {
        assert_eq!(ids("p -> q -> p"), vec![AxiomId::A7a]);
        let v = ids("(p -> bot) -> (q -> bot) -> p \\/ q -> bot");
        assert!(v.contains(&AxiomId::A2));
    }
}
