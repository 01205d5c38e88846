use super::{is_distributive, is_join_closed, GeneralFrame, GeneralSemantics};
use crate::bits::{TeamSet, WorldSet};
use crate::formula::{Atom, Connective, Formula, Signature};
use crate::grid::{extent_closure, map, Exec};
use crate::kripke::valuations;
use crate::normalform::AxiomId;
use crate::team::ExtentAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DfFailure {
    /// An axiom instance over grid extents is not valid.
    Axiom { id: AxiomId, valuation: Vec<WorldSet> },
    /// A standard extent is not closed under `⋓`.
    JoinClosure { valuation: Vec<WorldSet> },
    /// `φ ∨ φ → φ` valid and join closure of `φ` disagree.
    Idempotence { valuation: Vec<WorldSet> },
    /// `t ≽∘R° r`, `t ≽∘R° s` but not `R[t] ≽ r ⋓ s`.
    Upper { t: usize, r: usize, s: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfReport {
    pub distributive: bool,
    pub valuations: usize,
    /// Largest number of distinct grid extents seen in one model.
    pub max_extents: usize,
    pub failures: Vec<DfFailure>,
}

impl DfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn schema_valid(alg: &GeneralSemantics<'_>, id: AxiomId, all: &[TeamSet], standard: &[TeamSet]) -> bool {
    let schema = id.schema();
    let used: Vec<usize> = schema.atoms().iter().map(|a| a.index()).collect();
    let pools: Vec<&[TeamSet]> = (0..4)
        .map(|i| {
            if !used.contains(&i) {
                &all[..1]
            } else if i == 3 {
                standard
            } else {
                all
            }
        })
        .collect();
    let mut idx = [0usize; 4];
    loop {
        let pick: Vec<&TeamSet> = (0..4).map(|i| &pools[i][idx[i]]).collect();
        let e = alg.extent_with(schema, &|a: Atom| pick[a.index()].clone());
        if !e.is_full() {
            return false;
        }
        let mut i = 0;
        loop {
            if i == 4 {
                return true;
            }
            idx[i] += 1;
            if idx[i] < pools[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Checks, for every persistent valuation of `n_atoms` atoms, that the
/// axiom schemas hold with metavariables ranging over the extents of all
/// formulas of depth at most `depth`, that standard extents are closed
/// under `⋓`, and that `φ ∨ φ → φ` is valid exactly for the `⋓`-closed
/// extents. Also checks `R[t] ≽ r ⋓ s` for `r, s` above `t`.
///
/// Meant for distributive frames; on other frames the failures list what
/// breaks.
pub fn check_df_recovery(frame: &GeneralFrame, n_atoms: usize, depth: usize, exec: Exec) -> DfReport {
    let j = frame.join_table();
    let mut failures = Vec::new();
    'g: for t in 0..frame.n_teams() {
        for r in frame.successors(t).iter() {
            for s in frame.successors(t).iter() {
                if !j.leq(j.join(r, s), frame.image(t)) {
                    failures.push(DfFailure::Upper { t, r, s });
                    break 'g;
                }
            }
        }
    }
    let sig = Signature::standard(n_atoms);
    let vals = valuations(frame.frame(), &sig);
    let results = map(exec, &vals, |val| {
        let alg = GeneralSemantics::new(frame, val);
        let leaves = |alg: &GeneralSemantics<'_>| {
            std::iter::once(alg.bot())
                .chain((0..n_atoms).map(|i| alg.atom(Atom(i as u16))))
                .collect::<Vec<_>>()
        };
        let all = extent_closure(&alg, leaves(&alg), &Connective::ALL, depth);
        let standard = extent_closure(&alg, leaves(&alg), &Connective::STANDARD, depth);
        let mut out = Vec::new();
        for id in AxiomId::ALL {
            if !schema_valid(&alg, id, &all, &standard) {
                out.push(DfFailure::Axiom {
                    id,
                    valuation: val.clone(),
                });
            }
        }
        if !standard.iter().all(|e| is_join_closed(frame, e)) {
            out.push(DfFailure::JoinClosure { valuation: val.clone() });
        }
        let idem_agrees = all.iter().all(|e| {
            let idem = alg.implies(&alg.local_or(e, e), e);
            idem.is_full() == is_join_closed(frame, e)
        });
        if !idem_agrees {
            out.push(DfFailure::Idempotence { valuation: val.clone() });
        }
        (all.len(), out)
    });
    let max_extents = results.iter().map(|r| r.0).max().unwrap_or(0);
    failures.extend(results.into_iter().flat_map(|r| r.1));
    DfReport {
        distributive: is_distributive(j),
        valuations: vals.len(),
        max_extents,
        failures,
    }
}

/// Extent of `f` with atom `i` read as `ext[i]`.
pub fn extent_under(alg: &GeneralSemantics<'_>, f: &Formula, ext: &[TeamSet]) -> TeamSet {
    alg.extent_with(f, &|a: Atom| ext[a.index()].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genframes::builtin;
    use crate::kripke::KripkeFrame;

    #[test]
    fn union_frames_recover_everything() {
        for f in [KripkeFrame::chain(2), KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).unwrap()] {
            let g = GeneralFrame::standard(f).unwrap();
            let r = check_df_recovery(&g, 1, 1, Exec::Sequential);
            assert!(r.distributive && r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn m5_frame_breaks_axioms_two_and_three() {
        let m = builtin("lattice_m5").unwrap();
        let r = check_df_recovery(m.frame(), 1, 1, Exec::Sequential);
        assert!(!r.distributive);
        let ids: Vec<AxiomId> = r
            .failures
            .iter()
            .filter_map(|f| match f {
                DfFailure::Axiom { id, .. } => Some(*id),
                _ => None,
            })
            .collect();
        assert!(ids.contains(&AxiomId::A2));
        assert!(ids.contains(&AxiomId::A3));
        assert!(r.failures.iter().any(|f| matches!(f, DfFailure::JoinClosure { .. })));
        assert!(!r.failures.iter().any(|f| matches!(f, DfFailure::Idempotence { .. })));
    }
}
