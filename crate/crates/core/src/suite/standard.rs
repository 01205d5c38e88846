use super::{model_grid, pack_models, unpack, Outcome};
use crate::bits::TeamSet;
use crate::formula::{count_formulas, formulas_up_to, Atom, Connective, Formula, Signature};
use crate::genframes::{GeneralFrame, GeneralModel};
use crate::grid::{extent_closure, find_map, map, Exec};
use crate::kripke::KripkeModel;
use crate::modalbridge::{
    check_preservation, extent_ik, full_powerset_model, powerset_model, translate_bold_tau, translate_tau,
};
use crate::normalform::{check_derivation, match_axiom, parse_derivation, to_dnf, AxiomId};
use crate::team::{check_extent_property, world_extent, CoverSemantics, ExtentAlgebra, Paired, Property, StandardSemantics};

fn leaves<A: ExtentAlgebra>(alg: &A, atoms: usize) -> Vec<A::Ext> {
    std::iter::once(alg.bot())
        .chain((0..atoms).map(|i| alg.atom(Atom(i as u16))))
        .collect()
}

/// Grids of models: one atom up to three worlds, two atoms up to three.
fn grids() -> Vec<(usize, Vec<KripkeModel>)> {
    vec![(1, model_grid(3, 1)), (2, model_grid(3, 2))]
}

pub(super) fn flatness(exec: Exec) -> Outcome {
    let mut summary = Vec::new();
    for (atoms, models) in grids() {
        let bad = find_map(exec, &models, |m| {
            let alg = Paired(StandardSemantics::new(m).ok()?, CoverSemantics::new(m).ok()?);
            extent_closure(&alg, leaves(&alg, atoms), &Connective::STANDARD, 3)
                .into_iter()
                .find_map(|(a, b)| {
                    if a != b {
                        Some(format!("evaluators disagree on {:?}", m.frame().strict_pairs()))
                    } else {
                        check_extent_property(m, &a, Property::Flat)
                            .counterexample
                            .map(|w| format!("not flat: {w:?} on {:?}", m.frame().strict_pairs()))
                    }
                })
        });
        if let Some(b) = bad {
            return Err(b);
        }
        let n = count_formulas(&Signature::standard(atoms), 3, true);
        summary.push(format!("{atoms} atom(s): {} models, {n} formulas", models.len()));
    }
    Ok(summary.join(", "))
}

pub(super) fn persistence(exec: Exec) -> Outcome {
    let mut checked = 0;
    for (atoms, models) in grids() {
        let results = map(exec, &models, |m| {
            let alg = Paired(StandardSemantics::new(m).unwrap(), CoverSemantics::new(m).unwrap());
            let all = extent_closure(&alg, leaves(&alg, atoms), &Connective::ALL, 3);
            let n = all.len();
            let bad = all.into_iter().find_map(|(a, b)| {
                if a != b {
                    return Some("evaluators disagree".to_string());
                }
                [Property::Persistent, Property::EmptyTeam]
                    .into_iter()
                    .find_map(|p| check_extent_property(m, &a, p).counterexample)
                    .map(|w| format!("{w:?} on {:?}", m.frame().strict_pairs()))
            });
            (n, bad)
        });
        if let Some(b) = results.iter().find_map(|r| r.1.clone()) {
            return Err(format!("standard: {b}"));
        }
        checked += results.iter().map(|r| r.0).sum::<usize>();
    }
    Ok(format!("standard: {checked} extents persistent and contain the empty team"))
}

/// Checks `to_dnf(f)` against the team extents `ext` of `f` on `models`.
/// Members are standard, hence flat, so a team satisfies the normal form
/// iff it lies inside the world extent of some member; world extents are
/// taken on disjoint unions of the models.
struct DnfChecker<'a> {
    models: &'a [KripkeModel],
    packed: Vec<(KripkeModel, Vec<(usize, usize)>)>,
}

impl DnfChecker<'_> {
    fn check(&self, f: &Formula, ext: &[TeamSet]) -> Result<usize, String> {
        let d = to_dnf(f).map_err(|e| e.to_string())?;
        let mut fams: Vec<TeamSet> = self.models.iter().map(|m| TeamSet::empty(m.len())).collect();
        for mem in d.iter() {
            if !mem.is_standard() {
                return Err(format!("non-standard member in {f:?}"));
            }
            for (u, parts) in &self.packed {
                let w = world_extent(u, mem).map_err(|e| e.to_string())?;
                for &(i, off) in parts {
                    fams[i].insert(unpack(w, off, self.models[i].len()).code());
                }
            }
        }
        for (i, fam) in fams.iter().enumerate() {
            if fam.down_closure() != ext[i] {
                return Err(format!("normal form of {f:?} differs on model {i}"));
            }
        }
        Ok(d.len())
    }
}

fn dnf_grid(atoms: usize, cap: usize, full_depth: usize, exec: Exec) -> Result<(usize, usize), String> {
    let sig = Signature::standard(atoms);
    let models = model_grid(cap, atoms);
    let sems: Vec<StandardSemantics> = models.iter().map(|m| StandardSemantics::new(m).unwrap()).collect();
    let checker = DnfChecker {
        models: &models,
        packed: pack_models(&models),
    };
    let base = formulas_up_to(&sig, full_depth - 1, false);
    let ext: Vec<Vec<TeamSet>> = base.iter().map(|f| sems.iter().map(|s| s.extent(f)).collect()).collect();
    for (f, e) in base.iter().zip(&ext) {
        checker.check(f, e)?;
    }
    let jobs: Vec<(Connective, usize)> = Connective::ALL
        .iter()
        .flat_map(|&op| (0..base.len()).map(move |i| (op, i)))
        .collect();
    let results = map(exec, &jobs, |&(op, i)| {
        let mut members = 0;
        for j in 0..base.len() {
            let f = Formula::binary(op, base[i].clone(), base[j].clone());
            let e: Vec<TeamSet> = sems
                .iter()
                .enumerate()
                .map(|(k, s)| s.combine(op, &ext[i][k], &ext[j][k]))
                .collect();
            members += checker.check(&f, &e)?;
        }
        Ok::<usize, String>(members)
    });
    for r in results {
        r?;
    }
    Ok((base.len() + jobs.len() * base.len(), models.len()))
}

pub(super) fn normal_form(exec: Exec) -> Outcome {
    let (f1, m1) = dnf_grid(1, 3, 3, exec)?;
    let (f2, m2) = dnf_grid(2, 3, 2, exec)?;
    Ok(format!(
        "{f1} formulas of depth <= 3 over 1 atom on {m1} models, {f2} of depth <= 2 over 2 atoms on {m2} models"
    ))
}

pub(super) fn translation(exec: Exec) -> Outcome {
    let mut summary = Vec::new();
    for (atoms, models) in grids() {
        let reports = map(exec, &models, |m| check_preservation(m, 3).map_err(|e| e.to_string()));
        let mut classes = 0;
        for r in reports {
            let r = r?;
            if !r.passed() {
                return Err(format!("mismatch: {:?}", r.mismatches.first()));
            }
            classes += r.tau_classes + r.bold_classes;
        }
        summary.push(format!("{atoms} atom(s): {} models, {classes} extent classes", models.len()));
    }
    // Explicit translations of every formula of depth <= 2 over one atom,
    // against the literal team clauses.
    let sig = Signature::standard(1);
    let fs = formulas_up_to(&sig, 2, false);
    let models = model_grid(3, 1);
    let bad = find_map(exec, &models, |m| {
        let cover = CoverSemantics::new(m).unwrap();
        let circ = powerset_model(m).unwrap();
        let full = full_powerset_model(m).unwrap();
        let n = 1usize << m.len();
        fs.iter().find_map(|f| {
            let team = cover.extent(f);
            let bold = extent_ik(&full, &translate_bold_tau(f)).unwrap();
            if (0..n).any(|c| team.contains(c) != bold.contains(c)) {
                return Some(format!("bold translation of {}", f.display(&sig)));
            }
            let t = translate_tau(f).ok()?;
            let e = extent_ik(&circ, &t).unwrap();
            (1..n)
                .any(|c| team.contains(c) != e.contains(c - 1))
                .then(|| format!("translation of {}", f.display(&sig)))
        })
    });
    if let Some(b) = bad {
        return Err(b);
    }
    summary.push(format!("{} explicit formulas", fs.len()));
    Ok(summary.join(", "))
}

fn instantiate(f: &Formula, with: &[Formula]) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Atom(a) => with[a.index()].clone(),
        _ => {
            let (op, x, y) = f.split().unwrap();
            Formula::binary(op, instantiate(x, with), instantiate(y, with))
        }
    }
}

/// Every tuple over `pool` for the metavariables of `id`.
fn instances(id: AxiomId, pool: &[Formula]) -> Vec<Vec<Formula>> {
    let used: Vec<usize> = id.schema().atoms().iter().map(|a| a.index()).collect();
    let mut out = vec![vec![Formula::Bot; 4]];
    for v in used {
        out = out
            .into_iter()
            .flat_map(|t| {
                pool.iter().map(move |f| {
                    let mut t = t.clone();
                    t[v] = f.clone();
                    t
                })
            })
            .collect();
    }
    out
}

macro_rules! corpus {
    ($kind:literal: $($name:literal),* $(,)?) => {
        [$(($name, include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/derivations/", $kind, "/", $name, ".txt")))),*]
    };
}

pub(crate) const VALID_CORPUS: [(&str, &str); 20] = corpus!("valid":
    "and_intro", "and_swap", "distribute", "ex_falso", "global_elim", "global_intro_left",
    "global_intro_right", "identity", "identity_global", "local_assoc", "local_elim_standard",
    "local_intro", "local_monotone", "local_swap", "modus_ponens", "split_compound_antecedent",
    "split_then_elim", "split_use", "syllogism", "weakening",
);

pub(crate) const BROKEN_CORPUS: [(&str, &str); 10] = corpus!("broken":
    "affirming_consequent", "global_swap_as_local", "local_elim_nonstandard_alpha",
    "local_intro_as_global", "mp_forward_reference", "mp_mismatch", "mp_zero_index",
    "split_nonstandard_alpha", "undeclared_premise", "wrong_axiom_label",
);

fn expected_bad_step(text: &str) -> Option<usize> {
    text.lines().find_map(|l| l.trim().strip_prefix("# expect-bad ")?.trim().parse().ok())
}

pub(super) fn hilbert(exec: Exec) -> Outcome {
    let mut total = 0;
    let mut rejected = 0;
    // Metavariables range over formulas of depth <= 1 in one atom, and
    // over the bare leaves in two atoms.
    let plans = [(1, 1), (2, 0)];
    for (atoms, depth) in plans {
        let sig = Signature::standard(atoms);
        let pool = formulas_up_to(&sig, depth, false);
        let models = model_grid(3, atoms);
        let covers: Vec<CoverSemantics> = models.iter().map(|m| CoverSemantics::new(m).unwrap()).collect();
        for id in AxiomId::ALL {
            let tuples = instances(id, &pool);
            let bad = find_map(exec, &tuples, |t| {
                let f = instantiate(id.schema(), t);
                let standard_alpha = t[3].is_standard();
                let matched = match_axiom(&f).iter().any(|m| m.id == id);
                let needs_alpha = matches!(id, AxiomId::A2 | AxiomId::A8);
                if matched != (standard_alpha || !needs_alpha) {
                    return Some(format!("axiom {id}: matcher verdict {matched} on {}", f.display(&sig)));
                }
                if !matched {
                    return None;
                }
                covers
                    .iter()
                    .any(|c| !c.extent(&f).is_full())
                    .then(|| format!("axiom {id}: instance {} not valid", f.display(&sig)))
            });
            if let Some(b) = bad {
                return Err(b);
            }
            let n = tuples.len();
            let skipped = if matches!(id, AxiomId::A2 | AxiomId::A8) {
                tuples.iter().filter(|t| !t[3].is_standard()).count()
            } else {
                0
            };
            total += n - skipped;
            rejected += skipped;
        }
    }
    for (name, text) in VALID_CORPUS {
        let d = parse_derivation(text).map_err(|e| format!("{name}: {e}"))?;
        let c = check_derivation(&d.derivation, &d.premises);
        if !c.valid() {
            return Err(format!("{name} rejected at {:?}", c.first_bad));
        }
    }
    for (name, text) in BROKEN_CORPUS {
        let expected = expected_bad_step(text).ok_or(format!("{name}: no expected step"))?;
        let d = parse_derivation(text).map_err(|e| format!("{name}: {e}"))?;
        let c = check_derivation(&d.derivation, &d.premises);
        match &c.first_bad {
            Some(b) if b.step == expected => {}
            other => return Err(format!("{name}: expected step {expected}, got {other:?}")),
        }
    }
    Ok(format!(
        "{total} matched instances valid, {rejected} non-standard alpha instances unmatched, corpus {}/{} accepted and {}/{} rejected",
        VALID_CORPUS.len(),
        VALID_CORPUS.len(),
        BROKEN_CORPUS.len(),
        BROKEN_CORPUS.len()
    ))
}

pub(super) fn coincidence(exec: Exec) -> Outcome {
    let mut summary = Vec::new();
    for (atoms, models) in grids() {
        let bad = find_map(exec, &models, |m| {
            let g = GeneralFrame::standard(m.frame().clone()).ok()?;
            let gm = GeneralModel::new(g, m.signature().clone(), m.valuations().to_vec()).ok()?;
            let alg = Paired(StandardSemantics::new(m).unwrap(), gm.semantics());
            extent_closure(&alg, leaves(&alg, atoms), &Connective::ALL, 3)
                .into_iter()
                .any(|(a, b)| a != b)
                .then(|| format!("extents differ on {:?}", m.frame().strict_pairs()))
        });
        if let Some(b) = bad {
            return Err(b);
        }
        let n = count_formulas(&Signature::standard(atoms), 3, false);
        summary.push(format!("{atoms} atom(s): {} models, {n} formulas", models.len()));
    }
    Ok(summary.join(", "))
}
