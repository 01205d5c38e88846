use super::{frames_up_to_iso, Outcome};
use crate::formula::{parse, Formula, Signature};
use crate::grid::{map, Exec};
use crate::kripke::{pmorphic_image_of_generated_subframe, KripkeFrame};
use crate::normalform::semantic_equiv;
use crate::universal::{build_universal, check_dejongh_theorem, check_jankov_characterization, rn_polynomial, DeJonghTable};

pub(super) fn de_jongh(exec: Exec) -> Outcome {
    let cases = [(1, 4), (2, 2)];
    let reports = map(exec, &cases, |&(n, d)| {
        let u = build_universal(n, d).map_err(|e| e.to_string())?;
        Ok::<_, String>((n, d, u.len(), check_dejongh_theorem(&u)))
    });
    let mut summary = Vec::new();
    for r in reports {
        let (n, d, size, rep) = r?;
        if !rep.holds() {
            return Err(format!("U({n}) depth {d}: {:?}", rep.violations.first()));
        }
        summary.push(format!("U({n}) depth {d}: {size} nodes, {} pairs", rep.pairs_checked));
    }
    Ok(summary.join(", "))
}

pub(super) fn identities(_exec: Exec) -> Outcome {
    let sig = Signature::standard(1);
    let u = build_universal(1, 4).map_err(|e| e.to_string())?;
    let mut table = DeJonghTable::new(u.arena());
    let psi = |table: &mut DeJonghTable, w: usize| table.pair(w).psi;
    let f = |src: &str| parse(src, &sig).expect("identity parses");
    let g5 = rn_polynomial(5).ok_or("g5 unavailable")?;
    let (p2, p3, p4) = (psi(&mut table, 2), psi(&mut table, 3), psi(&mut table, 4));
    let cases: Vec<(&str, Formula, Formula)> = vec![
        ("psi_w2", p2, f("~~p -> p")),
        ("psi_w3", p3.clone(), f("(~~p -> p) -> p \\/ ~p")),
        ("psi_w3 & psi_w4", Formula::and(p3, p4.clone()), f("~p \\/ ~~p")),
        ("g5", g5.clone(), f("((~~p -> p) -> p \\/ ~p) -> ~p \\/ ~~p")),
        ("g5 = psi_w4", g5, p4),
    ];
    for (name, a, b) in &cases {
        let r = semantic_equiv(a, b, 3).map_err(|e| e.to_string())?;
        if !r.equivalent() {
            return Err(format!("{name} fails: {:?}", r.counterexample));
        }
    }
    Ok(format!("{} identities on all models with at most 3 worlds", cases.len()))
}

fn rooted_frames(max: usize) -> Vec<KripkeFrame> {
    (1..=max)
        .flat_map(frames_up_to_iso)
        .filter(|f| f.root().is_some())
        .collect()
}

/// The three frames of the Jankov example: a two-point chain, a fork and
/// a fork with one branch extended.
pub fn jankov_example_frames() -> [KripkeFrame; 3] {
    [
        KripkeFrame::chain(2),
        KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).expect("fork"),
        KripkeFrame::from_order(4, &[(0, 1), (0, 2), (1, 3)]).expect("extended fork"),
    ]
}

pub(super) fn jankov(exec: Exec) -> Outcome {
    let fs = rooted_frames(4);
    let pairs: Vec<(usize, usize)> = (0..fs.len())
        .flat_map(|i| (0..fs.len()).map(move |j| (i, j)))
        .collect();
    let results = map(exec, &pairs, |&(i, j)| {
        check_jankov_characterization(&fs[i], &fs[j]).map(|r| (r.consistent(), r.is_image()))
    });
    let mut images = 0;
    for (k, r) in results.into_iter().enumerate() {
        let (ok, image) = r.map_err(|e| e.to_string())?;
        if !ok {
            let (i, j) = pairs[k];
            return Err(format!("{:?} against {:?}", fs[i].strict_pairs(), fs[j].strict_pairs()));
        }
        images += image as usize;
    }
    let [f, g, h] = jankov_example_frames();
    let expect = [
        (&f, &g, true),
        (&f, &h, true),
        (&g, &h, true),
        (&h, &g, false),
        (&h, &f, false),
        (&g, &f, false),
    ];
    for (a, b, want) in expect {
        let r = check_jankov_characterization(a, b).map_err(|e| e.to_string())?;
        let direct = pmorphic_image_of_generated_subframe(a, b).is_some();
        if r.is_image() != want || r.g_refutes() != want || direct != want {
            return Err(format!("example pair {:?} in {:?}", a.strict_pairs(), b.strict_pairs()));
        }
    }
    Ok(format!(
        "{} rooted frames with at most 4 points, {} pairs, {images} images, example triple confirmed",
        fs.len(),
        pairs.len()
    ))
}
