use proptest::prelude::*;
use teamkit::bits::WorldSet;
use teamkit::formula::{formulas_up_to, parse, Connective, Formula, Signature};
use teamkit::genframes::{
    builtin, builtin_names, curated_join_tables, find_m5_n5, is_distributive, is_join_closed, is_persistent_extent,
    run_counterexamples, GeneralFrame, GeneralModel, JoinTable, SublatticeKind,
};
use teamkit::kripke::{enumerate_frames, valuations, KripkeFrame};
use teamkit::suite::general_frame_catalog;
use teamkit::team::{lift_relation, TeamEvaluator};

fn leq(j: &JoinTable, a: usize, b: usize) -> bool {
    j.join(a, b) == b
}

/// `t R° s` from the definition.
fn lifted(f: &KripkeFrame, t: usize, s: usize) -> bool {
    let (t, s) = (WorldSet(t as u64), WorldSet(s as u64));
    t.iter().all(|w| s.iter().any(|v| f.related(w, v))) && s.iter().all(|v| t.iter().any(|w| f.related(w, v)))
}

/// Generalized team satisfaction by recursion on the clauses.
fn gsat(g: &GeneralFrame, val: &[WorldSet], t: usize, f: &Formula) -> bool {
    let j = g.join_table();
    let n = j.size();
    match f {
        Formula::Bot => t == 0,
        Formula::Atom(a) => leq(j, t, val[a.index()].code()),
        Formula::And(a, b) => gsat(g, val, t, a) && gsat(g, val, t, b),
        Formula::GlobalOr(a, b) => gsat(g, val, t, a) || gsat(g, val, t, b),
        Formula::LocalOr(a, b) => (0..n).any(|s| {
            gsat(g, val, s, a) && (0..n).any(|r| leq(j, t, j.join(s, r)) && gsat(g, val, r, b))
        }),
        Formula::Impl(a, b) => (0..n).filter(|&u| leq(j, u, t)).all(|u| {
            (0..n)
                .filter(|&s| lifted(g.frame(), u, s))
                .all(|s| !gsat(g, val, s, a) || gsat(g, val, s, b))
        }),
    }
}

/// Lattice distributivity `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`, with meets
/// found by search.
fn distributive_by_identity(j: &JoinTable) -> bool {
    let n = j.size();
    let meet = |a: usize, b: usize| {
        (0..n)
            .filter(|&c| leq(j, c, a) && leq(j, c, b))
            .max_by_key(|&c| (0..n).filter(|&d| leq(j, d, c)).count())
            .unwrap()
    };
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| meet(x, j.join(y, z)) == j.join(meet(x, y), meet(x, z)))))
}

fn tables() -> Vec<JoinTable> {
    let mut out: Vec<JoinTable> = general_frame_catalog().iter().map(|g| g.join_table().clone()).collect();
    out.extend((1..=3).flat_map(curated_join_tables).map(|c| c.table));
    out
}

#[test]
fn distributivity_matches_the_identity_and_sublattices() {
    let (mut yes, mut no) = (0, 0);
    for j in tables() {
        let d = is_distributive(&j);
        assert_eq!(d, distributive_by_identity(&j), "{:?}", j.rows());
        assert_eq!(d, find_m5_n5(&j).is_none());
        if let Some(w) = find_m5_n5(&j) {
            let e = w.elements();
            for &a in &e {
                for &b in &e {
                    assert!(e.contains(&j.join(a, b)));
                }
            }
        }
        if d {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 0 && no > 0);
}

#[test]
fn clause_oracle_agrees_on_small_catalog_frames() {
    let sig = Signature::standard(1);
    let formulas = formulas_up_to(&sig, 2, false);
    for g in general_frame_catalog().iter().filter(|g| g.n_worlds() <= 2) {
        for val in valuations(g.frame(), &sig) {
            let m = GeneralModel::new(g.clone(), sig.clone(), val.clone()).unwrap();
            for f in &formulas {
                let e = m.extent(f).unwrap();
                for t in 0..g.n_teams() {
                    assert_eq!(e.contains(t), gsat(g, &val, t, f), "{} at {t}", f.display(&sig));
                }
            }
        }
    }
}

#[test]
fn builtin_counterexamples() {
    let report = run_counterexamples();
    assert!(report.passed(), "{:?}", report.failures().next());
    let at = |name: &str, team: usize, src: &str| {
        let m = builtin(name).unwrap();
        gsat(m.frame(), m.kripke().valuations(), team, &parse(src, m.signature()).unwrap())
    };
    for name in ["ce_axiom3_m5", "ce_axiom3_n5"] {
        let m = builtin(name).unwrap();
        let f = parse("(p -> p') -> p \\/ q -> p' \\/ q", m.signature()).unwrap();
        assert!(!m.extent(&f).unwrap().is_full(), "{name}");
        assert!((0..m.frame().n_teams()).any(|t| !gsat(m.frame(), m.kripke().valuations(), t, &f)));
    }
    for name in ["ce_join_m5", "ce_join_n5"] {
        let m = builtin(name).unwrap();
        let pq = m.extent(&parse("p -> q", m.signature()).unwrap()).unwrap();
        assert!(!is_join_closed(m.frame(), &pq), "{name}");
        let idem = parse("(p -> q) \\/ (p -> q) -> p -> q", m.signature()).unwrap();
        assert!(!m.extent(&idem).unwrap().is_full(), "{name}");
    }
    assert!(at("ce_split_m5", 0b011, "(p -> q) -> a \\\\/ b"));
    assert!(!at("ce_split_m5", 0b011, "((p -> q) -> a \\\\/ b) -> ((p -> q) -> a) \\\\/ ((p -> q) -> b)"));
    assert!(!at("ce_split_n5", 0b100, "((p -> q) -> a \\\\/ b) -> ((p -> q) -> a) \\\\/ ((p -> q) -> b)"));
    let kinds: Vec<_> = ["lattice_m5", "lattice_n5"]
        .iter()
        .map(|n| find_m5_n5(builtin(n).unwrap().frame().join_table()).unwrap().kind)
        .collect();
    assert_eq!(kinds, [SublatticeKind::M5, SublatticeKind::N5]);
    assert!(builtin_names().iter().all(|n| builtin(n).unwrap().frame().validate().valid()));
    assert!(builtin("nope").is_err());
}

#[test]
fn lifted_relation_is_a_preorder() {
    for f in enumerate_frames(4, false).unwrap() {
        let r = lift_relation(&f).unwrap();
        assert!(r.is_reflexive() && r.is_transitive(), "{:?}", f.strict_pairs());
        for t in 0..1usize << f.len() {
            for s in 0..1usize << f.len() {
                assert_eq!(r.related(WorldSet(t as u64), WorldSet(s as u64)), lifted(&f, t, s));
            }
        }
    }
}

/// Two distinct teams of a three-point chain related both ways.
#[test]
fn lifted_relation_is_not_antisymmetric() {
    let chain = KripkeFrame::chain(3);
    let (a, b) = (0b101, 0b111);
    assert!(lifted(&chain, a, b) && lifted(&chain, b, a));
    assert!(!lift_relation(&chain).unwrap().is_antisymmetric());
    assert!(lift_relation(&KripkeFrame::discrete(3)).unwrap().is_antisymmetric());
}

fn formula(atoms: usize, depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::Bot), (0..atoms).prop_map(Formula::atom)];
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        (0..4usize, inner.clone(), inner).prop_map(|(op, a, b)| Formula::binary(Connective::ALL[op], a, b))
    })
}

fn catalog_model() -> impl Strategy<Value = GeneralModel> {
    let sig = Signature::standard(2);
    let models: Vec<GeneralModel> = general_frame_catalog()
        .iter()
        .flat_map(|g| {
            let sig = sig.clone();
            valuations(g.frame(), &sig).into_iter().map(move |v| GeneralModel::new(g.clone(), sig.clone(), v).unwrap())
        })
        .collect();
    (0..models.len()).prop_map(move |i| models[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generalized_extents_are_persistent(m in catalog_model(), f in formula(2, 4)) {
        let e = m.extent(&f).unwrap();
        prop_assert!(e.contains(0));
        prop_assert!(is_persistent_extent(m.frame(), &e));
        prop_assert!(e.iter().all(|t| m.frame().join_table().below(t).is_subset(&e)));
    }

    #[test]
    fn generalized_clauses_match_oracle(m in catalog_model(), f in formula(2, 3)) {
        let e = m.extent(&f).unwrap();
        for t in 0..m.frame().n_teams() {
            prop_assert_eq!(e.contains(t), gsat(m.frame(), m.kripke().valuations(), t, &f));
        }
    }

    #[test]
    fn standard_frames_give_team_semantics(m in catalog_model(), f in formula(2, 4)) {
        let k = m.kripke();
        let std = GeneralModel::new(
            GeneralFrame::standard(k.frame().clone()).unwrap(),
            k.signature().clone(),
            k.valuations().to_vec(),
        )
        .unwrap();
        prop_assert_eq!(std.extent(&f).unwrap(), TeamEvaluator::new(k).unwrap().extent(&f).unwrap());
    }
}
