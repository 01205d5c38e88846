use super::{eval_gteam, GenFrameError, GeneralFrame, GeneralModel, JoinTable};
use crate::bits::WorldSet;
use crate::formula::{parse, Signature};
use crate::kripke::KripkeFrame;

/// Join table from covering pairs `(a, b)`, meaning `a ≺ b`, on the teams
/// of three worlds.
fn table_from_covers(covers: &[(usize, usize)]) -> JoinTable {
    let mut leq = [[false; 8]; 8];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in covers {
        leq[a][b] = true;
    }
    for k in 0..8 {
        for i in 0..8 {
            for j in 0..8 {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    JoinTable::from_order(3, |a, b| leq[a][b]).expect("catalog tables are lattices")
}

/// The eight-element lattice containing `M₅`, with `r = {0}`, `s = {1}`,
/// `t = {2}`, `r ⋓ s = {0,1}`, extra points `{0,2}` above `r` and `{1,2}`
/// above `t`, and `{0,1,2}` on top.
fn m5_table() -> JoinTable {
    table_from_covers(&[
        (0, 1),
        (0, 2),
        (0, 4),
        (1, 5),
        (1, 3),
        (2, 3),
        (4, 3),
        (4, 6),
        (5, 7),
        (3, 7),
        (6, 7),
    ])
}

/// The semilattice of the three-world example, over worlds `w = 0`,
/// `u = 1`, `v = 2`: `{w}, {u} ≺ {u,w}`, `{u,v}, {v,w} ≺ {u,v,w}`, and
/// both of those below `{v}`.
fn example_table() -> JoinTable {
    table_from_covers(&[(0, 1), (0, 2), (0, 6), (0, 5), (1, 3), (2, 3), (6, 7), (5, 7), (3, 4), (7, 4)])
}

/// Named teams of the highlighted sublattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SublatticeLabels {
    pub o: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub rs: usize,
}

impl SublatticeLabels {
    pub const M5: SublatticeLabels = SublatticeLabels {
        o: 0,
        r: 0b001,
        s: 0b010,
        t: 0b100,
        rs: 0b011,
    };
    /// On the example semilattice: `r = {u}`, `t = {u,w}`, `s = {u,v,w}`,
    /// `r ⋓ s = {v}`.
    pub const N5: SublatticeLabels = SublatticeLabels {
        o: 0,
        r: 0b010,
        s: 0b111,
        t: 0b011,
        rs: 0b100,
    };
}

const NAMES: [&str; 9] = [
    "example_frame",
    "lattice_m5",
    "lattice_n5",
    "ce_axiom3_m5",
    "ce_axiom3_n5",
    "ce_join_m5",
    "ce_join_n5",
    "ce_split_m5",
    "ce_split_n5",
];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

fn classical(table: JoinTable) -> GeneralFrame {
    GeneralFrame::new(KripkeFrame::discrete(3), table).expect("classical frames satisfy the conditions")
}

fn model(frame: GeneralFrame, atoms: &[&str], val: &[usize]) -> GeneralModel {
    let val = val.iter().map(|&c| WorldSet(c as u64)).collect();
    GeneralModel::new(frame, Signature::new(atoms.iter().copied()), val).expect("catalog valuations are persistent")
}

/// A model from the fixed catalog; see [`builtin_names`].
pub fn builtin(name: &str) -> Result<GeneralModel, GenFrameError> {
    let (m, n) = (SublatticeLabels::M5, SublatticeLabels::N5);
    let fm = || classical(m5_table());
    let fnn = || classical(example_table());
    Ok(match name {
        "example_frame" => {
            let f = KripkeFrame::from_order(3, &[(0, 1)])?;
            model(GeneralFrame::new(f, example_table())?, &[], &[])
        }
        "lattice_m5" => model(fm(), &[], &[]),
        "lattice_n5" => model(fnn(), &[], &[]),
        "ce_axiom3_m5" => model(fm(), &["p", "q", "p'"], &[m.r, m.s, m.o]),
        "ce_axiom3_n5" => model(fnn(), &["p", "q", "p'"], &[n.s, n.r, n.o]),
        "ce_join_m5" => model(fm(), &["p", "q"], &[m.t, m.o]),
        "ce_join_n5" => model(fnn(), &["p", "q"], &[n.t, n.r]),
        "ce_split_m5" => model(fm(), &["p", "q", "a", "b"], &[m.t, 0, m.r, m.s]),
        "ce_split_n5" => model(fnn(), &["p", "q", "a", "b"], &[n.t, n.r, n.r, n.s]),
        _ => return Err(GenFrameError::UnknownBuiltin(name.to_string())),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleCheck {
    pub model: &'static str,
    pub claim: String,
    pub expected: bool,
    pub actual: bool,
}

impl CounterexampleCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub checks: Vec<CounterexampleCheck>,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(CounterexampleCheck::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CounterexampleCheck> {
        self.checks.iter().filter(|c| !c.ok())
    }
}

struct Checker<'a> {
    name: &'static str,
    model: GeneralModel,
    out: &'a mut Vec<CounterexampleCheck>,
}

impl Checker<'_> {
    fn sat(&mut self, label: &str, team: usize, src: &str, expected: bool) {
        let f = parse(src, self.model.signature()).expect("catalog formulas parse");
        let actual = eval_gteam(&self.model, WorldSet(team as u64), &f).expect("catalog formulas evaluate");
        let verb = if expected { "|=" } else { "|/=" };
        self.out.push(CounterexampleCheck {
            model: self.name,
            claim: format!("{label} {verb} {src}"),
            expected,
            actual,
        });
    }

    fn fact(&mut self, claim: String, actual: bool) {
        self.out.push(CounterexampleCheck {
            model: self.name,
            claim,
            expected: true,
            actual,
        });
    }

    fn structure(&mut self, l: SublatticeLabels) {
        let g = self.model.frame();
        let j = g.join_table();
        let facts = [
            ("frame conditions (a)-(c) hold", g.validate().valid()),
            ("frame is not distributive", !super::is_distributive(j)),
            ("r join s is the labeled team", j.join(l.r, l.s) == l.rs),
            ("t is below r join s", j.leq(l.t, l.rs)),
        ];
        for (claim, holds) in facts {
            self.fact(claim.into(), holds);
        }
    }
}

/// Evaluates every step of the known failures of axiom (3), join
/// closure (with idempotence and the axiom (2) instance) and Split.
pub fn run_counterexamples() -> CounterexampleReport {
    let mut checks = Vec::new();
    for (name, l) in [("ce_axiom3_m5", SublatticeLabels::M5), ("ce_axiom3_n5", SublatticeLabels::N5)] {
        let mut c = Checker {
            name,
            model: builtin(name).unwrap(),
            out: &mut checks,
        };
        c.structure(l);
        c.sat("t", l.t, "p -> p'", true);
        c.sat("t", l.t, "p \\/ q", true);
        c.sat("t", l.t, "p' \\/ q", false);
        c.sat("t", l.t, "p \\/ q -> p' \\/ q", false);
        c.sat("t", l.t, "(p -> p') -> p \\/ q -> p' \\/ q", false);
    }
    for (name, l) in [("ce_join_m5", SublatticeLabels::M5), ("ce_join_n5", SublatticeLabels::N5)] {
        let mut c = Checker {
            name,
            model: builtin(name).unwrap(),
            out: &mut checks,
        };
        c.structure(l);
        c.sat("r", l.r, "p -> q", true);
        c.sat("s", l.s, "p -> q", true);
        c.sat("t", l.t, "p", true);
        c.sat("t", l.t, "q", false);
        c.sat("r join s", l.rs, "p -> q", false);
        c.sat("r join s", l.rs, "(p -> q) \\/ (p -> q)", true);
        c.sat("r join s", l.rs, "(p -> q) \\/ (p -> q) -> p -> q", false);
        c.sat(
            "r join s",
            l.rs,
            "((p -> q) -> p -> q) -> ((p -> q) -> p -> q) -> (p -> q) \\/ (p -> q) -> p -> q",
            false,
        );
    }
    for (name, l) in [("ce_split_m5", SublatticeLabels::M5), ("ce_split_n5", SublatticeLabels::N5)] {
        let model = builtin(name).unwrap();
        let pq = model.extent(&parse("p -> q", model.signature()).unwrap()).unwrap();
        let below: Vec<usize> = model
            .frame()
            .join_table()
            .below(l.rs)
            .intersection(&pq)
            .iter()
            .collect();
        let mut c = Checker {
            name,
            model,
            out: &mut checks,
        };
        c.structure(l);
        c.sat("r join s", l.rs, "(p -> q) -> a \\\\/ b", true);
        c.sat("r join s", l.rs, "(p -> q) -> a", false);
        c.sat("r join s", l.rs, "(p -> q) -> b", false);
        c.sat("r", l.r, "p -> q", true);
        c.sat("s", l.s, "p -> q", true);
        c.sat("s", l.s, "a", false);
        c.sat("r", l.r, "b", false);
        c.sat(
            "r join s",
            l.rs,
            "((p -> q) -> a \\\\/ b) -> ((p -> q) -> a) \\\\/ ((p -> q) -> b)",
            false,
        );
        if name == "ce_split_m5" {
            let mut expect = vec![l.o, l.r, l.s];
            expect.sort();
            c.fact(
                format!("teams below r join s satisfying p -> q are exactly o, r, s (found {below:?})"),
                below == expect,
            );
        }
    }
    CounterexampleReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genframes::{find_m5_n5, SublatticeKind};

    #[test]
    fn every_builtin_validates() {
        for name in builtin_names() {
            let m = builtin(name).unwrap();
            assert!(m.frame().validate().valid(), "{name}");
        }
        assert!(matches!(builtin("nope"), Err(GenFrameError::UnknownBuiltin(_))));
    }

    #[test]
    fn example_frame_shape() {
        let m = builtin("example_frame").unwrap();
        let g = m.frame();
        assert!(g.frame().related(0, 1) && !g.frame().related(0, 2));
        let j = g.join_table();
        assert_eq!(j.join(0b001, 0b010), 0b011);
        assert_eq!(j.join(0b110, 0b101), 0b111);
        assert_eq!(j.join(0b011, 0b111), 0b100);
        assert_eq!(g.image(0b001), 0b011);
    }

    #[test]
    fn sublattice_builtins() {
        let m5 = builtin("lattice_m5").unwrap();
        let w = find_m5_n5(m5.frame().join_table()).unwrap();
        assert_eq!(w.kind, SublatticeKind::M5);
        assert_eq!(w.elements(), [0, 0b001, 0b010, 0b100, 0b011]);
        let n5 = builtin("lattice_n5").unwrap();
        assert_eq!(find_m5_n5(n5.frame().join_table()).unwrap().kind, SublatticeKind::N5);
        let j = n5.frame().join_table();
        let l = SublatticeLabels::N5;
        assert!(j.leq(l.r, l.t) && j.meet(l.t, l.s) == l.o && j.join(l.t, l.s) == l.rs);
    }

    #[test]
    fn counterexample_steps_reproduce() {
        let r = run_counterexamples();
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
