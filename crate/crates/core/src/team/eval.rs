use super::{check_cap, compose_superset_lift, ExtentAlgebra, Extent, LiftedRelation, TeamError};
use crate::bits::{Team, TeamSet, WorldSet};
use crate::formula::{Atom, Connective, Formula};
use crate::kripke::KripkeModel;
use rustc_hash::FxHashMap;

fn atom_extent(m: &KripkeModel, a: Atom) -> Extent {
    let v = m.valuation(a);
    TeamSet::from_fn(m.len(), |t| t.is_subset(v))
}

fn bot_extent(n: usize) -> Extent {
    TeamSet::from_codes(n, [0])
}

/// Extents computed with `t ⊨ φ → ψ` read as "every subteam of `R[t]`
/// satisfying `φ` satisfies `ψ`", and local disjunction as the downward
/// closure of pairwise unions.
#[derive(Clone, Debug)]
pub struct StandardSemantics<'m> {
    model: &'m KripkeModel,
    image: Vec<WorldSet>,
}

impl<'m> StandardSemantics<'m> {
    pub fn new(model: &'m KripkeModel) -> Result<Self, TeamError> {
        check_cap(model.len())?;
        let image = (0..1u64 << model.len())
            .map(|t| model.frame().image(WorldSet(t)))
            .collect();
        Ok(StandardSemantics { model, image })
    }

    pub fn model(&self) -> &'m KripkeModel {
        self.model
    }

    pub fn n_worlds(&self) -> usize {
        self.model.len()
    }

    pub fn local_or(&self, a: &Extent, b: &Extent) -> Extent {
        let n = self.n_worlds();
        let (ma, mb) = (a.maximal(), b.maximal());
        let mut u = TeamSet::empty(n);
        for &x in &ma {
            for &y in &mb {
                u.insert(x | y);
            }
        }
        u.down_closure()
    }

    pub fn implies(&self, a: &Extent, b: &Extent) -> Extent {
        let bad = a.difference(b).up_closure();
        TeamSet::from_fn(self.n_worlds(), |t| !bad.contains_team(self.image[t.code()]))
    }
}

impl ExtentAlgebra for StandardSemantics<'_> {
    type Ext = Extent;

    fn bot(&self) -> Extent {
        bot_extent(self.n_worlds())
    }

    fn atom(&self, a: Atom) -> Extent {
        atom_extent(self.model, a)
    }

    fn combine(&self, op: Connective, a: &Extent, b: &Extent) -> Extent {
        match op {
            Connective::And => a.intersection(b),
            Connective::GlobalOr => a.union(b),
            Connective::LocalOr => self.local_or(a, b),
            Connective::Impl => self.implies(a, b),
        }
    }
}

/// Extents computed from the defining clauses: exact covers `t = s ∪ r`
/// for local disjunction and the tabulated `⊇∘R°` for implication.
#[derive(Clone, Debug)]
pub struct CoverSemantics<'m> {
    model: &'m KripkeModel,
    sup: LiftedRelation,
}

impl<'m> CoverSemantics<'m> {
    pub fn new(model: &'m KripkeModel) -> Result<Self, TeamError> {
        let sup = compose_superset_lift(model.frame())?;
        Ok(CoverSemantics { model, sup })
    }

    pub fn n_worlds(&self) -> usize {
        self.model.len()
    }
}

impl ExtentAlgebra for CoverSemantics<'_> {
    type Ext = Extent;

    fn bot(&self) -> Extent {
        bot_extent(self.n_worlds())
    }

    fn atom(&self, a: Atom) -> Extent {
        atom_extent(self.model, a)
    }

    fn combine(&self, op: Connective, a: &Extent, b: &Extent) -> Extent {
        let n = self.n_worlds();
        match op {
            Connective::And => a.intersection(b),
            Connective::GlobalOr => a.union(b),
            Connective::LocalOr => TeamSet::from_fn(n, |t| {
                t.subsets().any(|s| {
                    a.contains_team(s)
                        && s.subsets().any(|x| b.contains_team((t - s) | x))
                })
            }),
            Connective::Impl => TeamSet::from_fn(n, |t| {
                self.sup
                    .row(t)
                    .teams()
                    .all(|s| !a.contains_team(s) || b.contains_team(s))
            }),
        }
    }
}

/// Memoizing evaluator over one model.
pub struct TeamEvaluator<'m> {
    sem: StandardSemantics<'m>,
    memo: FxHashMap<Formula, Extent>,
}

impl<'m> TeamEvaluator<'m> {
    pub fn new(model: &'m KripkeModel) -> Result<Self, TeamError> {
        Ok(TeamEvaluator {
            sem: StandardSemantics::new(model)?,
            memo: FxHashMap::default(),
        })
    }

    pub fn semantics(&self) -> &StandardSemantics<'m> {
        &self.sem
    }

    pub fn extent(&mut self, f: &Formula) -> Result<Extent, TeamError> {
        if let Some(e) = self.memo.get(f) {
            return Ok(e.clone());
        }
        let e = match f {
            Formula::Bot => self.sem.bot(),
            Formula::Atom(a) => {
                if a.index() >= self.sem.model().signature().len() {
                    return Err(TeamError::UnknownAtom(a.index()));
                }
                self.sem.atom(*a)
            }
            _ => {
                let (op, a, b) = f.split().unwrap();
                let ea = self.extent(a)?;
                let eb = self.extent(b)?;
                self.sem.combine(op, &ea, &eb)
            }
        };
        self.memo.insert(f.clone(), e.clone());
        Ok(e)
    }

    pub fn eval(&mut self, t: Team, f: &Formula) -> Result<bool, TeamError> {
        if !t.is_subset(self.sem.model().frame().worlds()) {
            return Err(TeamError::WorldOutOfRange((t - self.sem.model().frame().worlds()).first().unwrap()));
        }
        Ok(self.extent(f)?.contains_team(t))
    }
}

fn check_atoms(m: &KripkeModel, f: &Formula) -> Result<(), TeamError> {
    match f.atoms().into_iter().find(|a| a.index() >= m.signature().len()) {
        Some(a) => Err(TeamError::UnknownAtom(a.index())),
        None => Ok(()),
    }
}

/// `M, t ⊨ φ`.
pub fn eval_team(m: &KripkeModel, t: Team, f: &Formula) -> Result<bool, TeamError> {
    TeamEvaluator::new(m)?.eval(t, f)
}

/// `M, t ⊨ φ`, computed from the defining clauses.
pub fn eval_team_strict_cover(m: &KripkeModel, t: Team, f: &Formula) -> Result<bool, TeamError> {
    check_atoms(m, f)?;
    if !t.is_subset(m.frame().worlds()) {
        return Err(TeamError::WorldOutOfRange((t - m.frame().worlds()).first().unwrap()));
    }
    Ok(CoverSemantics::new(m)?.extent(f).contains_team(t))
}

/// The worlds forcing a standard formula.
pub fn world_extent(m: &KripkeModel, f: &Formula) -> Result<WorldSet, TeamError> {
    if !f.is_standard() {
        return Err(TeamError::NotStandard);
    }
    check_atoms(m, f)?;
    Ok(world_ext(m, f))
}

fn world_ext(m: &KripkeModel, f: &Formula) -> WorldSet {
    match f {
        Formula::Bot => WorldSet::EMPTY,
        Formula::Atom(a) => m.valuation(*a),
        Formula::And(a, b) => world_ext(m, a) & world_ext(m, b),
        Formula::LocalOr(a, b) | Formula::GlobalOr(a, b) => world_ext(m, a) | world_ext(m, b),
        Formula::Impl(a, b) => {
            let (ea, eb) = (world_ext(m, a), world_ext(m, b));
            m.frame().worlds() - m.frame().preimage(ea - eb)
        }
    }
}

/// `M, w ⊨ α` for a standard formula.
pub fn eval_world(m: &KripkeModel, w: usize, f: &Formula) -> Result<bool, TeamError> {
    if w >= m.len() {
        return Err(TeamError::WorldOutOfRange(w));
    }
    Ok(world_extent(m, f)?.contains(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Signature};
    use crate::kripke::KripkeFrame;

    fn classical2() -> KripkeModel {
        KripkeModel::new(KripkeFrame::discrete(2), Signature::standard(1), vec![WorldSet::singleton(0)]).unwrap()
    }

    #[test]
    fn classical_excluded_middle() {
        let m = classical2();
        let sig = m.signature().clone();
        let both = WorldSet::full(2);
        assert!(eval_team(&m, both, &parse("p \\/ ~p", &sig).unwrap()).unwrap());
        assert!(!eval_team(&m, both, &parse("p \\\\/ ~p", &sig).unwrap()).unwrap());
        assert!(eval_team_strict_cover(&m, both, &parse("p \\/ ~p", &sig).unwrap()).unwrap());
    }

    #[test]
    fn chain_refutes_double_negation_elimination() {
        let sig = Signature::standard(1);
        let m = KripkeModel::new(KripkeFrame::chain(2), sig.clone(), vec![WorldSet::singleton(1)]).unwrap();
        let f = parse("~~p -> p", &sig).unwrap();
        assert!(!eval_world(&m, 0, &f).unwrap());
        assert!(eval_world(&m, 1, &f).unwrap());
        assert!(!eval_team(&m, WorldSet::singleton(0), &f).unwrap());
    }

    #[test]
    fn endpoint_with_color_one_forces_p() {
        let m = KripkeModel::new(KripkeFrame::discrete(1), Signature::standard(1), vec![WorldSet::singleton(0)]).unwrap();
        assert!(eval_world(&m, 0, &Formula::atom(0)).unwrap());
    }

    #[test]
    fn rejects_global_disjunction_at_worlds() {
        let m = classical2();
        let f = parse("p \\\\/ ~p", m.signature()).unwrap();
        assert_eq!(eval_world(&m, 0, &f), Err(TeamError::NotStandard));
    }

    #[test]
    fn empty_team_satisfies_everything() {
        let m = classical2();
        assert!(eval_team(&m, WorldSet::EMPTY, &Formula::Bot).unwrap());
    }
}
