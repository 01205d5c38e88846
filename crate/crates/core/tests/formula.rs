use proptest::prelude::*;
use std::collections::HashSet;
use teamkit::formula::{
    count_formulas, enumerate_formulas, formulas_up_to, parse, parse_interning, render, Atom, Connective, Formula,
    Signature, Substitution,
};

/// Every parenthesis written out, with `~x` left as `x -> bot`.
fn fully_bracketed(f: &Formula, sig: &Signature) -> String {
    match f.split() {
        None => render(f, sig),
        Some((op, a, b)) => format!("({} {} {})", fully_bracketed(a, sig), op.symbol(), fully_bracketed(b, sig)),
    }
}

/// Formula sets built bottom-up as sets of distinct trees.
fn brute_force(sig: &Signature, depth: usize, ops: &[Connective]) -> HashSet<Formula> {
    let leaves: Vec<Formula> = std::iter::once(Formula::Bot).chain(sig.atoms().map(Formula::Atom)).collect();
    let mut all: HashSet<Formula> = leaves.iter().cloned().collect();
    for _ in 0..depth {
        let prev: Vec<Formula> = all.iter().cloned().collect();
        let mut next: HashSet<Formula> = leaves.iter().cloned().collect();
        for &op in ops {
            for a in &prev {
                for b in &prev {
                    next.insert(Formula::binary(op, a.clone(), b.clone()));
                }
            }
        }
        all = next;
    }
    all
}

#[test]
fn enumeration_matches_brute_force() {
    for (atoms, depth, standard) in [(1, 2, false), (2, 2, false), (2, 2, true), (0, 3, true)] {
        let sig = Signature::standard(atoms);
        let ops: &[Connective] = if standard { &Connective::STANDARD } else { &Connective::ALL };
        let expected = brute_force(&sig, depth, ops);
        let listed = formulas_up_to(&sig, depth, standard);
        let distinct: HashSet<Formula> = listed.iter().cloned().collect();
        assert_eq!(distinct.len(), listed.len(), "duplicates at {atoms} atoms depth {depth}");
        assert_eq!(distinct, expected);
        assert_eq!(count_formulas(&sig, depth, standard), expected.len() as u128);
        assert!(listed.iter().all(|f| f.depth() <= depth));
        if standard {
            assert!(listed.iter().all(Formula::is_standard));
        }
    }
}

#[test]
fn render_round_trips_exhaustively() {
    let sig = Signature::standard(2);
    for f in enumerate_formulas(&sig, 2, false) {
        assert_eq!(parse(&render(&f, &sig), &sig).unwrap(), f);
        assert_eq!(parse(&fully_bracketed(&f, &sig), &sig).unwrap(), f);
    }
    let sig = Signature::standard(1);
    let mut n = 0;
    for f in enumerate_formulas(&sig, 3, true) {
        assert_eq!(parse(&render(&f, &sig), &sig).unwrap(), f, "{}", fully_bracketed(&f, &sig));
        n += 1;
    }
    assert_eq!(n as u128, count_formulas(&sig, 3, true));
}

#[test]
fn precedence_and_associativity() {
    let sig = Signature::standard(3);
    let p = |s: &str| parse(s, &sig).unwrap();
    let (a, b, c) = (Formula::atom(0), Formula::atom(1), Formula::atom(2));
    assert_eq!(p("p -> q -> r"), Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone())));
    assert_eq!(p("p /\\ q \\/ r"), Formula::lor(Formula::and(a.clone(), b.clone()), c.clone()));
    assert_eq!(p("p \\/ q \\\\/ r"), Formula::gor(Formula::lor(a.clone(), b.clone()), c.clone()));
    assert_eq!(p("p \\\\/ q -> r"), Formula::imp(Formula::gor(a.clone(), b.clone()), c.clone()));
    assert_eq!(p("~p"), Formula::imp(a.clone(), Formula::Bot));
    assert_eq!(p("~~p /\\ q"), Formula::and(Formula::not(Formula::not(a.clone())), b));
    assert!(parse("p /\\", &sig).is_err());
    assert!(parse("s", &sig).is_err());
    assert!(parse("(p", &sig).is_err());
}

#[test]
fn interning_collects_atoms_in_order() {
    let mut sig = Signature::new(Vec::<String>::new());
    let f = parse_interning("foo -> bar \\/ foo", &mut sig).unwrap();
    assert_eq!(sig.names(), ["foo", "bar"]);
    assert_eq!(f, Formula::imp(Formula::atom(0), Formula::lor(Formula::atom(1), Formula::atom(0))));
}

#[test]
fn substitution_outside_signature_is_rejected() {
    let sig = Signature::standard(1);
    assert!(Substitution::new([(Atom(0), Formula::atom(1))], &sig).is_err());
    let s = Substitution::new([(Atom(0), Formula::not(Formula::atom(0)))], &sig).unwrap();
    assert_eq!(s.apply(&Formula::atom(0)), Formula::not(Formula::atom(0)));
    assert_eq!(s.apply(&Formula::Bot), Formula::Bot);
}

fn formula(atoms: usize, depth: u32, ops: &'static [Connective]) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::Bot), (0..atoms).prop_map(Formula::atom)];
    leaf.prop_recursive(depth, 30, 2, move |inner| {
        (0..ops.len(), inner.clone(), inner).prop_map(move |(op, a, b)| Formula::binary(ops[op], a, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_round_trips_depth_four(f in formula(3, 4, &Connective::ALL)) {
        let sig = Signature::standard(3);
        prop_assert_eq!(parse(&render(&f, &sig), &sig).unwrap(), f);
    }

    #[test]
    fn standard_substitution_keeps_standard(
        f in formula(2, 4, &Connective::STANDARD),
        g in formula(2, 3, &Connective::STANDARD),
        h in formula(2, 3, &Connective::STANDARD),
    ) {
        let sig = Signature::standard(2);
        let s = Substitution::new([(Atom(0), g), (Atom(1), h)], &sig).unwrap();
        prop_assert!(s.is_standard());
        let out = s.apply(&f);
        prop_assert!(out.is_standard());
        prop_assert!(out.depth() >= f.depth());
    }

    #[test]
    fn global_or_in_image_shows_up(f in formula(1, 3, &Connective::STANDARD), g in formula(1, 2, &Connective::ALL)) {
        let sig = Signature::standard(1);
        let s = Substitution::new([(Atom(0), g.clone())], &sig).unwrap();
        let out = s.apply(&f);
        let uses_atom = f.atoms().contains(&Atom(0));
        prop_assert_eq!(out.is_standard(), !uses_atom || g.is_standard());
    }
}
