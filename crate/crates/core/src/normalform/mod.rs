//! Disjunctive normal forms over `⫽`, axiom recognition and derivation
//! checking.

mod axioms;
mod derivation;

pub use axioms::{match_axiom, AxiomId, AxiomMatch};
pub use derivation::{
    check_derivation, parse_derivation, Derivation, DerivationCheck, DerivationError, Justification, ParsedDerivation,
    Step,
};

use crate::bits::{Team, WorldSet};
use crate::formula::{Formula, Signature};
use crate::kripke::{enumerate_models, KripkeError, KripkeModel, MAX_ENUM_WORLDS};
use crate::team::{TeamError, TeamEvaluator};
use std::collections::BTreeSet;
use thiserror::Error;

/// Default bound on the number of disjuncts produced by [`to_dnf`].
pub const DNF_BUDGET: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("normal form needs {needed} disjuncts, budget is {budget}")]
    Budget { needed: u128, budget: usize },
    #[error("model cap {cap} exceeds the enumeration limit {limit}")]
    Cap { cap: usize, limit: usize },
    #[error(transparent)]
    Team(#[from] TeamError),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// A finite set of standard formulas read as their global disjunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DnfForm {
    members: BTreeSet<Formula>,
}

impl DnfForm {
    pub fn members(&self) -> &BTreeSet<Formula> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.members.iter()
    }

    /// The left-nested `⫽` of the members.
    pub fn to_formula(&self) -> Formula {
        Formula::disj_global(self.members.iter().cloned())
    }

    fn singleton(f: Formula) -> Self {
        DnfForm {
            members: BTreeSet::from([f]),
        }
    }
}

impl FromIterator<Formula> for DnfForm {
    fn from_iter<I: IntoIterator<Item = Formula>>(it: I) -> Self {
        DnfForm {
            members: it.into_iter().collect(),
        }
    }
}

pub fn to_dnf(f: &Formula) -> Result<DnfForm, NormalFormError> {
    to_dnf_with_budget(f, DNF_BUDGET)
}

pub fn to_dnf_with_budget(f: &Formula, budget: usize) -> Result<DnfForm, NormalFormError> {
    if f.is_standard() {
        return Ok(DnfForm::singleton(f.clone()));
    }
    let guard = |needed: u128| {
        if needed > budget as u128 {
            Err(NormalFormError::Budget { needed, budget })
        } else {
            Ok(())
        }
    };
    let (op, a, b) = f.split().expect("non-standard formulas are compound");
    let da = to_dnf_with_budget(a, budget)?;
    let db = to_dnf_with_budget(b, budget)?;
    use crate::formula::Connective::*;
    match op {
        GlobalOr => {
            let out: DnfForm = da.members.union(&db.members).cloned().collect();
            guard(out.len() as u128)?;
            Ok(out)
        }
        And | LocalOr => {
            guard(da.len() as u128 * db.len() as u128)?;
            Ok(da
                .iter()
                .flat_map(|x| db.iter().map(move |y| Formula::binary(op, x.clone(), y.clone())))
                .collect())
        }
        Impl => {
            let lhs: Vec<&Formula> = da.iter().collect();
            let rhs: Vec<&Formula> = db.iter().collect();
            let needed = (rhs.len() as u128).checked_pow(lhs.len() as u32).unwrap_or(u128::MAX);
            guard(needed)?;
            // Each choice function `i ↦ f(i)` gives the disjunct `⋀ᵢ (αᵢ → β_f(i))`.
            let mut choice = vec![0usize; lhs.len()];
            let mut out = BTreeSet::new();
            loop {
                let conj = lhs
                    .iter()
                    .zip(&choice)
                    .map(|(&x, &j)| Formula::imp(x.clone(), rhs[j].clone()))
                    .reduce(Formula::and)
                    .expect("dnf sets are nonempty");
                out.insert(conj);
                let mut i = 0;
                loop {
                    if i == choice.len() {
                        return Ok(DnfForm { members: out });
                    }
                    choice[i] += 1;
                    if choice[i] < rhs.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

/// A model and team on which two formulas disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivCounterexample {
    pub model: KripkeModel,
    pub team: Team,
    /// Whether the first formula holds on the team.
    pub left_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivReport {
    pub models_checked: usize,
    pub counterexample: Option<EquivCounterexample>,
}

impl EquivReport {
    pub fn equivalent(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compares team extents on every model with at most `cap` worlds over
/// the atoms of both formulas.
pub fn semantic_equiv(phi: &Formula, psi: &Formula, cap: usize) -> Result<EquivReport, NormalFormError> {
    if cap > MAX_ENUM_WORLDS {
        return Err(NormalFormError::Cap {
            cap,
            limit: MAX_ENUM_WORLDS,
        });
    }
    let sig = Signature::standard(phi.atom_bound().max(psi.atom_bound()));
    let models = enumerate_models(cap, &sig, false)?;
    semantic_equiv_on(&models, phi, psi)
}

/// [`semantic_equiv`] over a caller-supplied model list.
pub fn semantic_equiv_on(models: &[KripkeModel], phi: &Formula, psi: &Formula) -> Result<EquivReport, NormalFormError> {
    for m in models {
        let mut ev = TeamEvaluator::new(m)?;
        let a = ev.extent(phi)?;
        let b = ev.extent(psi)?;
        if a != b {
            let code = a.difference(&b).union(&b.difference(&a)).iter().next().unwrap();
            return Ok(EquivReport {
                models_checked: models.len(),
                counterexample: Some(EquivCounterexample {
                    model: m.clone(),
                    team: WorldSet(code as u64),
                    left_holds: a.contains(code),
                }),
            });
        }
    }
    Ok(EquivReport {
        models_checked: models.len(),
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s, &Signature::standard(3)).unwrap()
    }

    fn set(xs: &[&str]) -> DnfForm {
        xs.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(to_dnf(&f("p \\\\/ q")).unwrap(), set(&["p", "q"]));
        assert_eq!(to_dnf(&f("~p -> q \\\\/ r")).unwrap(), set(&["~p -> q", "~p -> r"]));
        let a = f("(p -> q) \\/ ~r");
        assert_eq!(to_dnf(&a).unwrap(), set(&["(p -> q) \\/ ~r"]));
    }

    #[test]
    fn implication_with_split_antecedent() {
        let d = to_dnf(&f("p \\\\/ q -> r \\\\/ bot")).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.members().contains(&f("(p -> r) /\\ (q -> bot)")));
        assert!(semantic_equiv(&d.to_formula(), &f("p \\\\/ q -> r \\\\/ bot"), 3).unwrap().equivalent());
    }

    #[test]
    fn budget_guard() {
        let g = f("(p \\\\/ q) /\\ (q \\\\/ r) -> p \\\\/ r");
        assert!(matches!(to_dnf_with_budget(&g, 3), Err(NormalFormError::Budget { .. })));
    }

    #[test]
    fn local_and_global_disjunction_differ() {
        let r = semantic_equiv(&f("p \\/ q"), &f("p \\\\/ q"), 2).unwrap();
        let cx = r.counterexample.unwrap();
        assert!(cx.left_holds);
        assert!(cx.model.frame().is_discrete());
        assert_eq!(cx.team.len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(semantic_equiv(&f("p"), &f("p"), 9), Err(NormalFormError::Cap { .. })));
    }
}
