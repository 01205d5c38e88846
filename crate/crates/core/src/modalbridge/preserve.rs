use super::{eval_ik, full_powerset_model, powerset_model, ModalError, ModalFormula};
use crate::bits::{Team, TeamSet, WorldSet};
use crate::formula::{Connective, Formula};
use crate::kripke::KripkeModel;
use crate::team::{Extent, ExtentAlgebra, StandardSemantics};
use rustc_hash::FxHashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Translation {
    /// `τ` into `M°`, nonempty teams, local-disjunction-free formulas.
    Tau,
    /// Bold `τ` into `M•`, all teams, all formulas.
    BoldTau,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationMismatch {
    pub translation: Translation,
    pub formula: Formula,
    pub team: Team,
    pub team_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub depth: usize,
    /// Distinct pairs of team extent and modal extent met under `τ`.
    pub tau_classes: usize,
    pub bold_classes: usize,
    /// Team and point comparisons made.
    pub comparisons: usize,
    /// `M, ∅ ⊨ ⊥` and `M•, ∅ ⊩ 𝟎`.
    pub empty_team_bot: bool,
    pub mismatches: Vec<PreservationMismatch>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.empty_team_bot && self.mismatches.is_empty()
    }
}

type Key = (Extent, WorldSet);

/// Distinct keys of formulas up to `depth`, each with the first formula
/// found for it.
fn closure(
    leaves: Vec<(Formula, Key)>,
    ops: &[Connective],
    depth: usize,
    combine: impl Fn(Connective, &Key, &Key) -> Key,
) -> Vec<(Formula, Key)> {
    let mut seen: FxHashMap<Key, ()> = FxHashMap::default();
    let mut all: Vec<(Formula, Key)> = Vec::new();
    for (f, k) in leaves {
        if seen.insert(k.clone(), ()).is_none() {
            all.push((f, k));
        }
    }
    for _ in 0..depth {
        let prev_len = all.len();
        for &op in ops {
            for i in 0..prev_len {
                for j in 0..prev_len {
                    let k = combine(op, &all[i].1, &all[j].1);
                    if seen.insert(k.clone(), ()).is_none() {
                        let f = Formula::binary(op, all[i].0.clone(), all[j].0.clone());
                        all.push((f, k));
                    }
                }
            }
        }
    }
    all
}

/// Compares `M, t ⊨ φ` with the translated formula at `t` in `M°` and
/// `M•`, for every formula over the model's atoms up to `depth`.
///
/// Both sides are compositional, so it suffices to close the pairs of
/// extents under the connectives; each class keeps a witness formula.
pub fn check_preservation(m: &KripkeModel, depth: usize) -> Result<PreservationReport, ModalError> {
    let sem = StandardSemantics::new(m)?;
    let circ = powerset_model(m)?;
    let full = full_powerset_model(m)?;
    let n_teams = 1usize << m.len();
    let atoms: Vec<Formula> = m.signature().atoms().map(Formula::Atom).collect();
    let mut mismatches = Vec::new();
    let mut comparisons = 0;

    let leaves = |zero: WorldSet, modal_atom: &dyn Fn(usize) -> WorldSet| {
        std::iter::once((Formula::Bot, (sem.bot(), zero)))
            .chain(atoms.iter().enumerate().map(|(i, f)| {
                let Formula::Atom(a) = f else { unreachable!() };
                (f.clone(), (sem.atom(*a), modal_atom(i)))
            }))
            .collect::<Vec<_>>()
    };

    let circ_atom = |i: usize| circ.valuation(crate::formula::Atom(i as u16));
    let tau = closure(
        leaves(WorldSet::EMPTY, &circ_atom),
        &[Connective::And, Connective::GlobalOr, Connective::Impl],
        depth,
        |op, a, b| {
            let t = sem.combine(op, &a.0, &b.0);
            let x = match op {
                Connective::And => WorldSet(a.1 .0 & b.1 .0),
                Connective::GlobalOr => WorldSet(a.1 .0 | b.1 .0),
                Connective::Impl => circ.box_ext(circ.imp_ext(a.1, b.1)),
                Connective::LocalOr => unreachable!(),
            };
            (t, x)
        },
    );
    for (f, (team, modal)) in &tau {
        for c in 1..n_teams {
            comparisons += 1;
            if team.contains(c) != modal.contains(c - 1) {
                mismatches.push(PreservationMismatch {
                    translation: Translation::Tau,
                    formula: f.clone(),
                    team: WorldSet(c as u64),
                    team_holds: team.contains(c),
                });
                break;
            }
        }
    }

    let fb = full.base();
    let full_atom = |i: usize| fb.valuation(crate::formula::Atom(i as u16));
    let bold = closure(
        leaves(WorldSet::singleton(full.zero()), &full_atom),
        &Connective::ALL,
        depth,
        |op, a, b| {
            let t = sem.combine(op, &a.0, &b.0);
            let x = match op {
                Connective::And => WorldSet(a.1 .0 & b.1 .0),
                Connective::GlobalOr => WorldSet(a.1 .0 | b.1 .0),
                Connective::Impl => fb.box_ext(fb.imp_ext(a.1, b.1)),
                Connective::LocalOr => full.tensor_ext(a.1, b.1),
            };
            (t, x)
        },
    );
    for (f, (team, modal)) in &bold {
        for c in 0..n_teams {
            comparisons += 1;
            if team.contains(c) != modal.contains(c) {
                mismatches.push(PreservationMismatch {
                    translation: Translation::BoldTau,
                    formula: f.clone(),
                    team: WorldSet(c as u64),
                    team_holds: team.contains(c),
                });
                break;
            }
        }
    }

    let bot_team: TeamSet = sem.bot();
    let empty_team_bot = bot_team.contains(0) && eval_ik(&full, 0, &ModalFormula::Zero)?;
    Ok(PreservationReport {
        depth,
        tau_classes: tau.len(),
        bold_classes: bold.len(),
        comparisons,
        empty_team_bot,
        mismatches,
    })
}
