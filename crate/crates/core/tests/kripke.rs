use proptest::prelude::*;
use teamkit::bits::WorldSet;
use teamkit::formula::{formulas_up_to, Signature};
use teamkit::kripke::{
    canonical_form, check_image_lemma, dedup_isomorphic, enumerate_frames, enumerate_models, frame_p_morphisms,
    model_p_morphisms, upsets, valuations, KripkeFrame, KripkeModel,
};
use teamkit::kripke::io::{model_to_json, parse_model_json};
use teamkit::team::eval_world;

/// Forth, back and surjectivity, straight from the definition.
fn is_p_morphism(src: &KripkeFrame, tgt: &KripkeFrame, map: &[usize]) -> bool {
    let forth = (0..src.len()).all(|w| src.successors(w).iter().all(|v| tgt.related(map[w], map[v])));
    let back = (0..src.len()).all(|w| {
        tgt.successors(map[w])
            .iter()
            .all(|u| src.successors(w).iter().any(|v| map[v] == u))
    });
    let onto = (0..tgt.len()).all(|u| map.contains(&u));
    forth && back && onto
}

fn all_maps(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = code % k;
                code /= k;
                d
            })
            .collect()
    })
}

fn frames_up_to_iso(n: usize) -> Vec<KripkeFrame> {
    dedup_isomorphic(enumerate_models(n, &Signature::standard(0), false).unwrap())
        .into_iter()
        .map(|m| m.frame().clone())
        .collect()
}

#[test]
fn frame_counts() {
    let labeled: Vec<usize> = (1..=4).map(|k| enumerate_frames(k, false).unwrap().len()).collect();
    assert_eq!(labeled, [1, 4, 23, 242]);
    assert_eq!(frames_up_to_iso(4).len(), 1 + 2 + 5 + 16);
    assert_eq!(enumerate_frames(4, true).unwrap().iter().filter(|f| f.len() == 4).count(), 4 * 19);
    assert!(enumerate_frames(6, false).is_err());
}

#[test]
fn p_morphism_search_is_sound_and_complete() {
    let sources = enumerate_frames(4, false).unwrap();
    let targets = enumerate_frames(3, false).unwrap();
    for s in &sources {
        for t in &targets {
            let found = frame_p_morphisms(s, t);
            for map in &found {
                assert!(is_p_morphism(s, t, map), "{:?} -> {:?}: {map:?}", s.strict_pairs(), t.strict_pairs());
            }
            let brute = all_maps(s.len(), t.len()).filter(|m| is_p_morphism(s, t, m)).count();
            assert_eq!(found.len(), brute, "{:?} -> {:?}", s.strict_pairs(), t.strict_pairs());
        }
    }
}

#[test]
fn model_p_morphisms_preserve_colors_and_truth() {
    let sig = Signature::standard(1);
    let formulas = formulas_up_to(&sig, 2, true);
    let models = dedup_isomorphic(enumerate_models(3, &sig, false).unwrap());
    let mut maps = 0;
    for a in &models {
        for b in models.iter().filter(|b| b.len() <= a.len()) {
            for map in model_p_morphisms(a, b) {
                maps += 1;
                assert!(is_p_morphism(a.frame(), b.frame(), &map));
                assert!((0..a.len()).all(|w| a.color(w) == b.color(map[w])));
                for f in &formulas {
                    for (w, &v) in map.iter().enumerate() {
                        assert_eq!(eval_world(a, w, f).unwrap(), eval_world(b, v, f).unwrap());
                    }
                }
            }
        }
    }
    assert!(maps > models.len());
}

#[test]
fn image_lemma_directions_agree() {
    let frames = frames_up_to_iso(4);
    let mut holds = 0;
    for f in &frames {
        for g in &frames {
            let r = check_image_lemma(f, g);
            assert!(r.agree(), "{:?} in {:?}", f.strict_pairs(), g.strict_pairs());
            if let Some(w) = &r.image_of_subframe {
                holds += 1;
                assert!(g.is_upset(w.upset));
                let (sub, _) = g.restrict(w.upset);
                assert!(is_p_morphism(&sub, f, &w.map));
            }
            if let Some(q) = &r.subframe_of_image {
                assert_eq!(q.block.len(), g.len());
                assert_eq!(q.iso.len(), f.len());
            }
        }
    }
    assert!(holds >= frames.len());
}

#[test]
fn upsets_and_valuations() {
    for f in enumerate_frames(4, false).unwrap() {
        let ups = upsets(&f);
        let brute = (0..1u64 << f.len()).map(WorldSet).filter(|&s| f.is_upset(s)).count();
        assert_eq!(ups.len(), brute);
        assert!(ups.iter().all(|&u| f.is_upset(u)));
        assert_eq!(valuations(&f, &Signature::standard(2)).len(), brute * brute);
    }
}

fn model_strategy() -> impl Strategy<Value = KripkeModel> {
    let models = enumerate_models(4, &Signature::standard(2), false).unwrap();
    (0..models.len()).prop_map(move |i| models[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_submodel_is_idempotent(m in model_strategy(), w in 0usize..4) {
        let w = w % m.len();
        let (g, map) = m.generated(w);
        prop_assert_eq!(map.iter().copied().collect::<WorldSet>(), m.frame().successors(w));
        let root = g.frame().root().unwrap();
        prop_assert_eq!(map[root], w);
        let (again, ident) = g.generated(root);
        prop_assert_eq!(ident, (0..g.len()).collect::<Vec<_>>());
        prop_assert_eq!(again, g.clone());
        for f in formulas_up_to(m.signature(), 2, true) {
            for (i, &v) in map.iter().enumerate() {
                prop_assert_eq!(eval_world(&g, i, &f).unwrap(), eval_world(&m, v, &f).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trips(m in model_strategy()) {
        prop_assert_eq!(parse_model_json(&model_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn canonical_form_ignores_relabeling(m in model_strategy(), seed in any::<u64>()) {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let pairs: Vec<(usize, usize)> = m.frame().strict_pairs().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let frame = KripkeFrame::from_order(n, &pairs).unwrap();
        let val = m.valuations().iter().map(|v| v.iter().map(|w| perm[w]).collect()).collect();
        let relabeled = KripkeModel::new(frame, m.signature().clone(), val).unwrap();
        prop_assert_eq!(canonical_form(&relabeled), canonical_form(&m));
    }
}
