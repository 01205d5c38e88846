use proptest::prelude::*;
use std::fs;
use std::path::PathBuf;
use teamkit::formula::{Connective, Formula, Signature};
use teamkit::kripke::{enumerate_models, KripkeModel};
use teamkit::normalform::{
    check_derivation, match_axiom, parse_derivation, semantic_equiv_on, to_dnf, Justification,
};
use teamkit::team::{CoverSemantics, ExtentAlgebra};

fn corpus(kind: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/derivations").join(kind);
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

/// Valid on every team of every model, computed with the literal clauses.
fn team_valid(models: &[KripkeModel], f: &Formula) -> bool {
    models.iter().all(|m| CoverSemantics::new(m).unwrap().extent(f).is_full())
}

fn models_for(sig: &Signature, cap: usize) -> Vec<KripkeModel> {
    enumerate_models(cap, sig, false).unwrap()
}

#[test]
fn valid_corpus_checks() {
    let files = corpus("valid");
    assert_eq!(files.len(), 20);
    for (name, text) in files {
        let d = parse_derivation(&text).unwrap();
        let c = check_derivation(&d.derivation, &d.premises);
        assert!(c.valid(), "{name}: {:?}", c.first_bad);
    }
}

#[test]
fn broken_corpus_rejected_at_expected_step() {
    let files = corpus("broken");
    assert_eq!(files.len(), 10);
    for (name, text) in files {
        let expect: usize = text
            .lines()
            .find_map(|l| l.strip_prefix("# expect-bad "))
            .unwrap()
            .trim()
            .parse()
            .unwrap();
        let d = parse_derivation(&text).unwrap();
        let c = check_derivation(&d.derivation, &d.premises);
        assert_eq!(c.first_bad.map(|b| b.step), Some(expect), "{name}");
    }
}

#[test]
fn axiom_steps_are_team_valid() {
    for (name, text) in corpus("valid") {
        let d = parse_derivation(&text).unwrap();
        let models = models_for(&d.signature, 3);
        for s in &d.derivation.steps {
            if let Justification::Axiom(_) = s.justification {
                assert!(team_valid(&models, &s.formula), "{name}: {}", s.formula.display(&d.signature));
            }
        }
        if d.premises.is_empty() {
            assert!(team_valid(&models, d.derivation.conclusion().unwrap()), "{name}");
        }
    }
}

#[test]
fn nonstandard_split_instance_is_invalid() {
    let d = parse_derivation(&fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/derivations/broken/split_nonstandard_alpha.txt"),
    )
    .unwrap())
    .unwrap();
    let f = &d.derivation.steps[0].formula;
    assert!(!team_valid(&models_for(&d.signature, 3), f));
}

fn formula(atoms: usize, depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::Bot), (0..atoms).prop_map(Formula::atom)];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        (0..4usize, inner.clone(), inner).prop_map(|(op, a, b)| Formula::binary(Connective::ALL[op], a, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dnf_members_standard_and_equivalent(f in formula(2, 3)) {
        let d = to_dnf(&f).unwrap();
        prop_assert!(d.iter().all(Formula::is_standard));
        let models = models_for(&Signature::standard(2), 2);
        prop_assert!(semantic_equiv_on(&models, &f, &d.to_formula()).unwrap().equivalent());
    }

    #[test]
    fn dnf_idempotent(f in formula(2, 3)) {
        let d = to_dnf(&f).unwrap();
        for m in d.iter() {
            let again = to_dnf(m).unwrap();
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(again.iter().next().unwrap(), m);
        }
        let twice = to_dnf(&d.to_formula()).unwrap();
        prop_assert_eq!(twice, d);
    }

    #[test]
    fn matched_axioms_are_team_valid(
        a in formula(2, 1), b in formula(2, 1), c in formula(2, 1), alpha in formula(2, 1), which in 0..16usize
    ) {
        let id = teamkit::normalform::AxiomId::ALL[which];
        let sub = |f: &Formula| -> Formula { instantiate(f, &[a.clone(), b.clone(), c.clone(), alpha.clone()]) };
        let inst = sub(id.schema());
        let hits = match_axiom(&inst);
        if hits.iter().any(|m| m.id == id) {
            prop_assert!(team_valid(&models_for(&Signature::standard(2), 3), &inst));
        } else {
            prop_assert!(!alpha.is_standard());
        }
    }
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
