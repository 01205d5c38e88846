//! The exhaustive checks behind the acceptance criteria, each returning a
//! one-line verdict.

mod general;
mod standard;
mod universal;

use crate::bits::WorldSet;
use crate::formula::Signature;
use crate::genframes::{curated_join_tables, valid_join_tables, GeneralFrame, JoinTable};
use crate::grid::Exec;
use crate::kripke::{dedup_isomorphic, enumerate_models, KripkeFrame, KripkeModel};
use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

/// Outcome of one criterion: `Ok` or `Err` with a summary either way.
pub(crate) type Outcome = Result<String, String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    /// All checks held.
    pub ok: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    /// Checks held and the run stayed within its time limit.
    pub fn passed(&self) -> bool {
        self.ok && self.elapsed <= self.limit
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {}: {} ({:.2}s of {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

type Runner = fn(Exec) -> Outcome;

struct Criterion {
    id: u8,
    name: &'static str,
    limit_secs: u64,
    run: Runner,
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, name: "flatness", limit_secs: 60, run: standard::flatness },
    Criterion { id: 2, name: "persistence and empty team", limit_secs: 120, run: persistence },
    Criterion { id: 3, name: "normal form", limit_secs: 120, run: standard::normal_form },
    Criterion { id: 4, name: "de Jongh theorem", limit_secs: 60, run: universal::de_jongh },
    Criterion { id: 5, name: "formula identities", limit_secs: 30, run: universal::identities },
    Criterion { id: 6, name: "Jankov characterization", limit_secs: 600, run: universal::jankov },
    Criterion { id: 7, name: "counterexamples", limit_secs: 10, run: general::counterexamples },
    Criterion { id: 8, name: "distributive recovery", limit_secs: 300, run: general::df_recovery },
    Criterion { id: 9, name: "distributivity", limit_secs: 60, run: general::distributivity },
    Criterion { id: 10, name: "translation preservation", limit_secs: 120, run: standard::translation },
    Criterion { id: 11, name: "Hilbert soundness", limit_secs: 60, run: standard::hilbert },
    Criterion { id: 12, name: "standard coincidence", limit_secs: 60, run: standard::coincidence },
];

fn persistence(exec: Exec) -> Outcome {
    let a = standard::persistence(exec);
    let b = general::persistence(exec);
    match (a, b) {
        (Ok(a), Ok(b)) => Ok(format!("{a}; {b}")),
        (a, b) => Err(format!("{}; {}", a.unwrap_or_else(|e| e), b.unwrap_or_else(|e| e))),
    }
}

/// Ids of all criteria, in order.
pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.id)
}

/// Runs one criterion. `None` for an unknown id.
pub fn run_criterion(id: u8, exec: Exec) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let out = (c.run)(exec);
    let elapsed = start.elapsed();
    let (ok, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionResult {
        id: c.id,
        name: c.name,
        ok,
        detail,
        elapsed,
        limit: Duration::from_secs(c.limit_secs),
    })
}

pub fn run_all(exec: Exec) -> Vec<CriterionResult> {
    criterion_ids().filter_map(|id| run_criterion(id, exec)).collect()
}

/// Models with up to `cap` worlds over `atoms` atoms, one per
/// isomorphism class.
pub fn model_grid(cap: usize, atoms: usize) -> Vec<KripkeModel> {
    dedup_isomorphic(enumerate_models(cap, &Signature::standard(atoms), false).expect("cap within enumeration limit"))
}

/// Frames with exactly `n` points, one per isomorphism class.
pub fn frames_up_to_iso(n: usize) -> Vec<KripkeFrame> {
    model_grid(n, 0)
        .into_iter()
        .filter(|m| m.len() == n)
        .map(|m| m.frame().clone())
        .collect()
}

/// Validated general frames with at most three worlds: on frames with a
/// nontrivial order every valid join table; on discrete frames, where
/// every semilattice is valid and only its isomorphism type matters, one
/// table per lattice class. Union tables are always included.
pub fn general_frame_catalog() -> &'static [GeneralFrame] {
    static CATALOG: OnceLock<Vec<GeneralFrame>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=3 {
            for frame in frames_up_to_iso(n) {
                let mut tables: Vec<JoinTable> = vec![JoinTable::union(n)];
                if frame.is_discrete() {
                    tables.extend(curated_join_tables(n).into_iter().map(|c| c.table));
                } else {
                    tables.extend(valid_join_tables(&frame));
                }
                let mut seen = Vec::<JoinTable>::new();
                for t in tables {
                    if seen.contains(&t) {
                        continue;
                    }
                    seen.push(t.clone());
                    out.push(GeneralFrame::new(frame.clone(), t).expect("catalog tables are valid"));
                }
            }
        }
        out
    })
}

/// Packs models into disjoint unions of at most 64 worlds. Each part
/// records the model index and the offset of its worlds.
pub(crate) fn pack_models(models: &[KripkeModel]) -> Vec<(KripkeModel, Vec<(usize, usize)>)> {
    let mut out: Vec<(KripkeModel, Vec<(usize, usize)>)> = Vec::new();
    for (i, m) in models.iter().enumerate() {
        match out.last_mut() {
            Some((u, parts)) if u.len() + m.len() <= 64 => {
                parts.push((i, u.len()));
                *u = u.disjoint_union(m).expect("same signature");
            }
            _ => out.push((m.clone(), vec![(i, 0)])),
        }
    }
    out
}

/// The worlds of part `offset..offset + len` of a packed extent.
pub(crate) fn unpack(e: WorldSet, offset: usize, len: usize) -> WorldSet {
    WorldSet((e.0 >> offset) & ((1u64 << len) - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| frames_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn packing_round_trips() {
        let ms = model_grid(3, 1);
        let packed = pack_models(&ms);
        assert_eq!(packed.iter().map(|p| p.1.len()).sum::<usize>(), ms.len());
        for (u, parts) in &packed {
            for &(i, off) in parts {
                for a in ms[i].signature().atoms() {
                    assert_eq!(unpack(u.valuation(a), off, ms[i].len()), ms[i].valuation(a));
                }
            }
        }
    }
}
