use super::axioms::{match_axiom, AxiomId};
use crate::formula::{parse_interning, Formula, ParseError, Signature};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomId),
    /// Modus ponens from two earlier steps, 1-based, in either order.
    ModusPonens(usize, usize),
    Premise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// A derivation file: declared premises, the steps, and the signature
/// collected while parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDerivation {
    pub signature: Signature,
    pub premises: Vec<Formula>,
    pub derivation: Derivation,
}

fn parse_justification(src: &str, line: usize) -> Result<Justification, DerivationError> {
    let words: Vec<&str> = src.split_whitespace().collect();
    let bad = |msg: &str| DerivationError::Syntax {
        line,
        msg: msg.to_string(),
    };
    match words.as_slice() {
        ["premise"] => Ok(Justification::Premise),
        ["axiom", k] => k.parse().map(Justification::Axiom).map_err(|e: String| bad(&e)),
        ["MP", i, j] => {
            let i = i.parse().map_err(|_| bad("MP index is not a number"))?;
            let j = j.parse().map_err(|_| bad("MP index is not a number"))?;
            Ok(Justification::ModusPonens(i, j))
        }
        _ => Err(bad("expected `axiom <k>`, `MP <i> <j>` or `premise`")),
    }
}

/// Reads the line format `<formula> ; axiom <k> | MP <i> <j> | premise`.
///
/// Lines `@premise <formula>` declare premises, `#` starts a comment and
/// blank lines are skipped. Atom names are collected as they appear.
pub fn parse_derivation(text: &str) -> Result<ParsedDerivation, DerivationError> {
    let mut sig = Signature::new(Vec::<String>::new());
    let mut premises = Vec::new();
    let mut steps = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("@premise") {
            let f = parse_interning(rest, &mut sig).map_err(|source| DerivationError::Formula { line, source })?;
            premises.push(f);
            continue;
        }
        let (lhs, rhs) = body.rsplit_once(';').ok_or(DerivationError::Syntax {
            line,
            msg: "missing `;` before the justification".into(),
        })?;
        let formula = parse_interning(lhs, &mut sig).map_err(|source| DerivationError::Formula { line, source })?;
        let justification = parse_justification(rhs, line)?;
        steps.push(Step { formula, justification });
    }
    Ok(ParsedDerivation {
        signature: sig,
        premises,
        derivation: Derivation { steps },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadStep {
    /// 1-based step number.
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationCheck {
    pub steps: usize,
    pub first_bad: Option<BadStep>,
}

impl DerivationCheck {
    pub fn valid(&self) -> bool {
        self.first_bad.is_none()
    }
}

fn check_step(steps: &[Step], k: usize, premises: &[Formula]) -> Result<(), String> {
    let step = &steps[k];
    match step.justification {
        Justification::Premise => {
            if premises.contains(&step.formula) {
                Ok(())
            } else {
                Err("formula is not a declared premise".into())
            }
        }
        Justification::Axiom(id) => {
            if match_axiom(&step.formula).iter().any(|m| m.id == id) {
                Ok(())
            } else {
                Err(format!("not an instance of axiom {id}"))
            }
        }
        Justification::ModusPonens(i, j) => {
            for idx in [i, j] {
                if idx == 0 || idx > k {
                    return Err(format!("MP cites step {idx}, which is not an earlier step"));
                }
            }
            let (a, b) = (&steps[i - 1].formula, &steps[j - 1].formula);
            let from = |minor: &Formula, major: &Formula| {
                matches!(major, Formula::Impl(x, y) if **x == *minor && **y == step.formula)
            };
            if from(a, b) || from(b, a) {
                Ok(())
            } else {
                Err(format!("steps {i} and {j} do not yield this formula by MP"))
            }
        }
    }
}

/// Checks each step in order and reports the first unjustified one.
pub fn check_derivation(d: &Derivation, premises: &[Formula]) -> DerivationCheck {
    let first_bad = (0..d.steps.len()).find_map(|k| {
        check_step(&d.steps, k, premises)
            .err()
            .map(|reason| BadStep { step: k + 1, reason })
    });
    DerivationCheck {
        steps: d.steps.len(),
        first_bad,
    }
}
