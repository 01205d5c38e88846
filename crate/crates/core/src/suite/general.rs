use super::{general_frame_catalog, Outcome};
use crate::formula::{Atom, Connective, Signature};
use crate::genframes::{
    builtin, check_df_recovery, curated_join_tables, find_m5_n5, is_distributive, is_persistent_extent,
    run_counterexamples, GeneralSemantics, JoinTable, SublatticeKind,
};
use crate::grid::{extent_closure, find_map, map, Exec};
use crate::kripke::valuations;
use crate::team::ExtentAlgebra;

pub(super) fn counterexamples(_exec: Exec) -> Outcome {
    let r = run_counterexamples();
    let out = match r.failures().next() {
        None if r.passed() => Ok(format!("{} counterexample steps reproduced", r.checks.len())),
        None => Err("no checks ran".into()),
        Some(c) => Err(format!("{}: {} (expected {}, got {})", c.model, c.claim, c.expected, c.actual)),
    };
    out
}

pub(super) fn persistence(exec: Exec) -> Outcome {
    let cat = general_frame_catalog();
    let mut jobs = Vec::new();
    for (i, g) in cat.iter().enumerate() {
        for atoms in 1..=2 {
            for val in valuations(g.frame(), &Signature::standard(atoms)) {
                jobs.push((i, val));
            }
        }
    }
    let bad = find_map(exec, &jobs, |(i, val)| {
        let g = &cat[*i];
        let alg = GeneralSemantics::new(g, val);
        let leaves = std::iter::once(alg.bot())
            .chain((0..val.len()).map(|a| alg.atom(Atom(a as u16))))
            .collect();
        extent_closure(&alg, leaves, &Connective::ALL, 3)
            .into_iter()
            .any(|e| !e.contains(0) || !is_persistent_extent(g, &e))
            .then(|| format!("frame {:?} with table {:?}", g.frame().strict_pairs(), g.join_table().rows()))
    });
    match bad {
        Some(b) => Err(format!("general: {b}")),
        None => Ok(format!("general: {} frames, {} models", cat.len(), jobs.len())),
    }
}

pub(super) fn df_recovery(exec: Exec) -> Outcome {
    let frames: Vec<_> = general_frame_catalog()
        .iter()
        .filter(|g| is_distributive(g.join_table()))
        .collect();
    let non_union = frames.iter().filter(|g| !g.join_table().is_union()).count();
    let mut models = 0;
    for g in &frames {
        for (atoms, depth) in [(1, 3), (2, 2)] {
            let r = check_df_recovery(g, atoms, depth, exec);
            if !r.passed() {
                return Err(format!(
                    "frame {:?} with table {:?}: {:?}",
                    g.frame().strict_pairs(),
                    g.join_table().rows(),
                    r.failures.first()
                ));
            }
            models += r.valuations;
        }
    }
    Ok(format!(
        "{} distributive frames ({non_union} with non-union joins), {models} models",
        frames.len()
    ))
}

pub(super) fn distributivity(exec: Exec) -> Outcome {
    let mut tables: Vec<JoinTable> = general_frame_catalog().iter().map(|g| g.join_table().clone()).collect();
    tables.extend((1..=3).flat_map(curated_join_tables).map(|c| c.table));
    let bad = map(exec, &tables, |t| is_distributive(t) == find_m5_n5(t).is_none())
        .iter()
        .position(|ok| !ok);
    if let Some(i) = bad {
        return Err(format!("table {:?}", tables[i].rows()));
    }
    let negatives = tables.iter().filter(|t| !is_distributive(t)).count();
    for (name, kind) in [("lattice_m5", SublatticeKind::M5), ("lattice_n5", SublatticeKind::N5)] {
        let j = builtin(name).map_err(|e| e.to_string())?.frame().join_table().clone();
        let w = find_m5_n5(&j);
        if is_distributive(&j) || w.map(|w| w.kind) != Some(kind) {
            return Err(format!("{name}: expected a {kind:?} sublattice, found {w:?}"));
        }
    }
    Ok(format!(
        "{} tables, {negatives} non-distributive, both example tables rejected",
        tables.len() + 2
    ))
}
