//! General team frames: a Kripke frame together with a join-semilattice
//! on its teams, and the team semantics relative to it.

mod catalog;
mod io;
mod lattice;
mod recovery;

pub use catalog::{builtin, builtin_names, run_counterexamples, CounterexampleCheck, CounterexampleReport, SublatticeLabels};
pub use io::{general_frame_to_dot, general_model_to_json, parse_general_model_json, GeneralModelFile};
pub use lattice::{
    codes_by_size, curated_join_tables, distributivity_witness, enumerate_lattices, find_m5_n5, is_distributive,
    valid_join_tables, CuratedTable, DistributivityWitness, FiniteLattice, SublatticeKind, SublatticeWitness,
};
pub use recovery::{check_df_recovery, extent_under, DfFailure, DfReport};

use crate::bits::{Team, TeamSet, WorldSet};
use crate::formula::{Atom, Connective, Formula, Signature};
use crate::kripke::{KripkeError, KripkeFrame, KripkeModel};
use crate::team::{lift_relation, ExtentAlgebra, LiftedRelation, TeamError};
use thiserror::Error;

/// Largest number of worlds accepted for general frames.
pub const GENFRAME_CAP: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenFrameError {
    #[error("{worlds} worlds exceeds the general frame cap {cap}")]
    CapExceeded { worlds: usize, cap: usize },
    #[error("join table has {found} entries, expected {expected}")]
    WrongSize { found: usize, expected: usize },
    #[error("join table entry {0} is not a team code")]
    OutOfRange(usize),
    #[error("the empty team is not the identity: 0 join {0} is not {0}")]
    NotIdentity(usize),
    #[error("join is not idempotent at {0}")]
    NotIdempotent(usize),
    #[error("join is not commutative at ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("join is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("order has no least upper bound for ({0}, {1})")]
    NoJoin(usize, usize),
    #[error("frame condition fails: {0}")]
    Condition(String),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error(transparent)]
    Team(#[from] TeamError),
}

fn check_cap(n: usize) -> Result<(), GenFrameError> {
    if n > GENFRAME_CAP {
        Err(GenFrameError::CapExceeded {
            worlds: n,
            cap: GENFRAME_CAP,
        })
    } else {
        Ok(())
    }
}

/// A bounded join-semilattice on the teams of `n_worlds` worlds, stored as
/// a table over team codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinTable {
    n_worlds: usize,
    table: Vec<u8>,
    /// `below[t]` is `{s : s ≼ t}`.
    below: Vec<TeamSet>,
}

impl JoinTable {
    /// Validates the semilattice laws with `∅` as identity.
    pub fn new(n_worlds: usize, table: Vec<u8>) -> Result<Self, GenFrameError> {
        check_cap(n_worlds)?;
        let n = 1usize << n_worlds;
        if table.len() != n * n {
            return Err(GenFrameError::WrongSize {
                found: table.len(),
                expected: n * n,
            });
        }
        if let Some(&x) = table.iter().find(|&&x| x as usize >= n) {
            return Err(GenFrameError::OutOfRange(x as usize));
        }
        let j = |a: usize, b: usize| table[a * n + b] as usize;
        for t in 0..n {
            if j(0, t) != t {
                return Err(GenFrameError::NotIdentity(t));
            }
            if j(t, t) != t {
                return Err(GenFrameError::NotIdempotent(t));
            }
            for s in 0..t {
                if j(t, s) != j(s, t) {
                    return Err(GenFrameError::NotCommutative(t, s));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = j(a, b);
                for c in 0..n {
                    if j(ab, c) != j(a, j(b, c)) {
                        return Err(GenFrameError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self::from_valid(n_worlds, table))
    }

    fn from_valid(n_worlds: usize, table: Vec<u8>) -> Self {
        let n = 1usize << n_worlds;
        let below = (0..n)
            .map(|t| TeamSet::from_fn(n_worlds, |s| table[s.code() * n + t] as usize == t))
            .collect();
        JoinTable { n_worlds, table, below }
    }

    /// Set union.
    pub fn union(n_worlds: usize) -> Self {
        let n = 1usize << n_worlds;
        let table = (0..n * n).map(|i| ((i / n) | (i % n)) as u8).collect();
        Self::from_valid(n_worlds, table)
    }

    /// The join of a lattice order on team codes, where `leq(a, b)` means
    /// `a ≼ b`. The order must make `0` least and have all binary joins.
    pub fn from_order(n_worlds: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, GenFrameError> {
        check_cap(n_worlds)?;
        let n = 1usize << n_worlds;
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let ups: Vec<usize> = (0..n).filter(|&u| leq(a, u) && leq(b, u)).collect();
                let least = ups
                    .iter()
                    .copied()
                    .find(|&u| ups.iter().all(|&v| leq(u, v)))
                    .ok_or(GenFrameError::NoJoin(a, b))?;
                table[a * n + b] = least as u8;
            }
        }
        Self::new(n_worlds, table)
    }

    pub fn n_worlds(&self) -> usize {
        self.n_worlds
    }

    /// Number of teams.
    pub fn size(&self) -> usize {
        1 << self.n_worlds
    }

    pub fn join(&self, t: usize, s: usize) -> usize {
        self.table[t * self.size() + s] as usize
    }

    /// `t ≼ s`, i.e. `t ⋓ s = s`.
    pub fn leq(&self, t: usize, s: usize) -> bool {
        self.join(t, s) == s
    }

    pub fn below(&self, t: usize) -> &TeamSet {
        &self.below[t]
    }

    /// `t ⋔ s`, the join of all common lower bounds.
    pub fn meet(&self, t: usize, s: usize) -> usize {
        self.below[t].intersection(&self.below[s]).iter().fold(0, |acc, r| self.join(acc, r))
    }

    pub fn is_union(&self) -> bool {
        (0..self.size()).all(|t| (0..self.size()).all(|s| self.join(t, s) == t | s))
    }

    /// The raw table, row `t`, column `s`.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size()).map(|t| (0..self.size()).map(|s| self.join(t, s)).collect()).collect()
    }

    /// Covering pairs `(t, s)` with `t ≺ s` and nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for t in 0..n {
            for s in 0..n {
                if t != s && self.leq(t, s) && !(0..n).any(|u| u != t && u != s && self.leq(t, u) && self.leq(u, s)) {
                    out.push((t, s));
                }
            }
        }
        out
    }
}

/// A witness that one of the frame conditions fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionFailure {
    /// `t R° r`, `r ≽ s`, and no `t'` with `t ≽ t'` and `t' R° s`.
    A { t: usize, r: usize, s: usize },
    /// `t ≽∘R° s` but not `R[t] ≽ s`.
    B { t: usize, s: usize },
    /// `R[t] ⋓ R[s] ≠ R[t ⋓ s]`.
    C { t: usize, s: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameReport {
    pub a: Option<ConditionFailure>,
    pub b: Option<ConditionFailure>,
    pub c: Option<ConditionFailure>,
}

impl FrameReport {
    pub fn valid(&self) -> bool {
        self.a.is_none() && self.b.is_none() && self.c.is_none()
    }

    pub fn first_failure(&self) -> Option<&ConditionFailure> {
        self.a.as_ref().or(self.b.as_ref()).or(self.c.as_ref())
    }
}

/// A Kripke frame with a join table, plus the derived team relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralFrame {
    frame: KripkeFrame,
    join: JoinTable,
    lift: LiftedRelation,
    /// `comp[t]` is `{s : t ≽∘R° s}`.
    comp: Vec<TeamSet>,
    /// `R[t]` by code.
    image: Vec<usize>,
}

impl GeneralFrame {
    /// Builds the frame and checks conditions (a)-(c).
    pub fn new(frame: KripkeFrame, join: JoinTable) -> Result<Self, GenFrameError> {
        let g = Self::unchecked(frame, join)?;
        match g.validate().first_failure() {
            None => Ok(g),
            Some(f) => Err(GenFrameError::Condition(format!("{f:?}"))),
        }
    }

    /// Builds the derived tables without checking (a)-(c).
    pub fn unchecked(frame: KripkeFrame, join: JoinTable) -> Result<Self, GenFrameError> {
        check_cap(frame.len())?;
        if join.n_worlds() != frame.len() {
            return Err(GenFrameError::Malformed(format!(
                "join table is over {} worlds, frame has {}",
                join.n_worlds(),
                frame.len()
            )));
        }
        let lift = lift_relation(&frame)?;
        let n = join.size();
        let comp = (0..n)
            .map(|t| {
                join.below(t)
                    .iter()
                    .fold(TeamSet::empty(frame.len()), |acc, r| acc.union(lift.row(WorldSet(r as u64))))
            })
            .collect();
        let image = (0..n).map(|t| frame.image(WorldSet(t as u64)).code()).collect();
        Ok(GeneralFrame {
            frame,
            join,
            lift,
            comp,
            image,
        })
    }

    /// The standard frame: `≽` is `⊇` and `⋓` is `∪`.
    pub fn standard(frame: KripkeFrame) -> Result<Self, GenFrameError> {
        let n = frame.len();
        Self::new(frame, JoinTable::union(n))
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn join_table(&self) -> &JoinTable {
        &self.join
    }

    pub fn lifted(&self) -> &LiftedRelation {
        &self.lift
    }

    pub fn n_worlds(&self) -> usize {
        self.frame.len()
    }

    pub fn n_teams(&self) -> usize {
        self.join.size()
    }

    /// `{s : t ≽∘R° s}`.
    pub fn successors(&self, t: usize) -> &TeamSet {
        &self.comp[t]
    }

    pub fn image(&self, t: usize) -> usize {
        self.image[t]
    }

    /// Checks conditions (a)-(c) exhaustively and reports the first
    /// failure of each.
    pub fn validate(&self) -> FrameReport {
        let n = self.n_teams();
        let j = &self.join;
        let mut report = FrameReport::default();
        'a: for t in 0..n {
            for r in self.lift.row(WorldSet(t as u64)).iter() {
                for s in j.below(r).iter() {
                    if !self.comp[t].contains(s) {
                        report.a = Some(ConditionFailure::A { t, r, s });
                        break 'a;
                    }
                }
            }
        }
        'b: for t in 0..n {
            for s in self.comp[t].iter() {
                if !j.leq(s, self.image[t]) {
                    report.b = Some(ConditionFailure::B { t, s });
                    break 'b;
                }
            }
        }
        'c: for t in 0..n {
            for s in 0..n {
                if j.join(self.image[t], self.image[s]) != self.image[j.join(t, s)] {
                    report.c = Some(ConditionFailure::C { t, s });
                    break 'c;
                }
            }
        }
        report
    }

    pub fn is_classical(&self) -> bool {
        self.frame.is_discrete()
    }
}

/// A general frame with a persistent valuation on its Kripke frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralModel {
    frame: GeneralFrame,
    model: KripkeModel,
}

impl GeneralModel {
    pub fn new(frame: GeneralFrame, sig: Signature, val: Vec<WorldSet>) -> Result<Self, GenFrameError> {
        let model = KripkeModel::new(frame.frame().clone(), sig, val)?;
        Ok(GeneralModel { frame, model })
    }

    pub fn frame(&self) -> &GeneralFrame {
        &self.frame
    }

    pub fn kripke(&self) -> &KripkeModel {
        &self.model
    }

    pub fn signature(&self) -> &Signature {
        self.model.signature()
    }

    pub fn semantics(&self) -> GeneralSemantics<'_> {
        GeneralSemantics::new(&self.frame, self.model.valuations())
    }

    pub fn extent(&self, f: &Formula) -> Result<TeamSet, GenFrameError> {
        if let Some(a) = f.atoms().into_iter().find(|a| a.index() >= self.signature().len()) {
            return Err(TeamError::UnknownAtom(a.index()).into());
        }
        Ok(self.semantics().extent(f))
    }
}

/// The generalized clauses as an extent algebra over a general frame.
pub struct GeneralSemantics<'a> {
    frame: &'a GeneralFrame,
    val: &'a [WorldSet],
}

impl<'a> GeneralSemantics<'a> {
    pub fn new(frame: &'a GeneralFrame, val: &'a [WorldSet]) -> Self {
        GeneralSemantics { frame, val }
    }

    pub fn frame(&self) -> &'a GeneralFrame {
        self.frame
    }

    /// `{t : ∃s ∈ a, r ∈ b, t ≼ s ⋓ r}`.
    pub fn local_or(&self, a: &TeamSet, b: &TeamSet) -> TeamSet {
        let j = &self.frame.join;
        let mut tops = TeamSet::empty(self.frame.n_worlds());
        for s in a.iter() {
            for r in b.iter() {
                tops.insert(j.join(s, r));
            }
        }
        tops.iter()
            .fold(TeamSet::empty(self.frame.n_worlds()), |acc, u| acc.union(j.below(u)))
    }

    /// `{t : ∀s, t ≽∘R° s ∧ s ∈ a ⇒ s ∈ b}`.
    pub fn implies(&self, a: &TeamSet, b: &TeamSet) -> TeamSet {
        let bad = a.difference(b);
        TeamSet::from_fn(self.frame.n_worlds(), |t| {
            self.frame.comp[t.code()].intersection(&bad).is_empty()
        })
    }
}

impl ExtentAlgebra for GeneralSemantics<'_> {
    type Ext = TeamSet;

    fn bot(&self) -> TeamSet {
        TeamSet::from_codes(self.frame.n_worlds(), [0])
    }

    fn atom(&self, a: Atom) -> TeamSet {
        self.frame.join.below(self.val[a.index()].code()).clone()
    }

    fn combine(&self, op: Connective, a: &TeamSet, b: &TeamSet) -> TeamSet {
        match op {
            Connective::And => a.intersection(b),
            Connective::GlobalOr => a.union(b),
            Connective::LocalOr => self.local_or(a, b),
            Connective::Impl => self.implies(a, b),
        }
    }
}

/// `M, t ⊨ φ` under the generalized clauses.
pub fn eval_gteam(m: &GeneralModel, t: Team, f: &Formula) -> Result<bool, GenFrameError> {
    if !t.is_subset(m.frame().frame().worlds()) {
        return Err(TeamError::WorldOutOfRange((t - m.frame().frame().worlds()).first().unwrap()).into());
    }
    Ok(m.extent(f)?.contains_team(t))
}

/// Whether `e` contains `∅` and is closed under `≽∘R°`.
pub fn is_persistent_extent(frame: &GeneralFrame, e: &TeamSet) -> bool {
    e.contains(0) && e.iter().all(|t| frame.successors(t).is_subset(e))
}

/// Whether `e` is closed under `⋓`.
pub fn is_join_closed(frame: &GeneralFrame, e: &TeamSet) -> bool {
    let j = frame.join_table();
    e.iter().all(|t| e.iter().all(|s| e.contains(j.join(t, s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::team::eval_team;

    #[test]
    fn union_order_is_inclusion() {
        let j = JoinTable::union(3);
        for t in 0..8 {
            for s in 0..8 {
                assert_eq!(j.leq(t, s), t & !s == 0);
            }
        }
        assert!(j.is_union());
        assert_eq!(j.meet(0b011, 0b110), 0b010);
    }

    #[test]
    fn law_violations_are_reported() {
        let mut table: Vec<u8> = JoinTable::union(1).rows().concat().iter().map(|&x| x as u8).collect();
        table[3] = 0;
        assert_eq!(JoinTable::new(1, table).unwrap_err(), GenFrameError::NotIdempotent(1));
        assert!(matches!(JoinTable::new(1, vec![0, 1, 1]), Err(GenFrameError::WrongSize { .. })));
        assert!(matches!(JoinTable::new(1, vec![1, 1, 1, 1]), Err(GenFrameError::NotIdentity(0))));
    }

    #[test]
    fn union_frames_validate_for_any_relation() {
        for f in [
            KripkeFrame::chain(3),
            KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).unwrap(),
            KripkeFrame::from_order(3, &[(0, 2), (1, 2)]).unwrap(),
        ] {
            assert!(GeneralFrame::standard(f).is_ok());
        }
    }

    #[test]
    fn standard_frames_agree_with_team_semantics() {
        let f = KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).unwrap();
        let sig = Signature::standard(2);
        let val = vec![WorldSet(0b010), WorldSet(0b110)];
        let g = GeneralModel::new(GeneralFrame::standard(f.clone()).unwrap(), sig.clone(), val.clone()).unwrap();
        let m = KripkeModel::new(f, sig.clone(), val).unwrap();
        for src in ["p \\/ q -> q", "(p -> q) \\\\/ ~p", "~~p \\/ ~p", "p \\/ (q -> p)"] {
            let phi = crate::formula::parse(src, &sig).unwrap();
            for t in 0..8u64 {
                assert_eq!(eval_gteam(&g, WorldSet(t), &phi).unwrap(), eval_team(&m, WorldSet(t), &phi).unwrap());
            }
        }
    }
}
