use super::{ModalError, ModalFormula};
use crate::bits::WorldSet;
use crate::formula::{Atom, Signature};
use crate::kripke::KripkeModel;
use crate::team::lift_relation;
use std::fmt::Write;

/// Largest base model accepted by the powerset constructions.
pub const BRIDGE_CAP: usize = 5;

/// Sets of points are bitsets, so domains hold at most 64 points.
type Points = WorldSet;

/// A partial order `≽` and a relation `R` on one domain, with a
/// `≽`-persistent valuation, satisfying (F1) and (F2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiRelationModel {
    /// `below[w] = {v : w ≽ v}`.
    below: Vec<Points>,
    rel: Vec<Points>,
    pre: Vec<Points>,
    sig: Signature,
    val: Vec<Points>,
    labels: Vec<String>,
}

impl BiRelationModel {
    /// Validates the order, (F1), (F2) and persistence. `below[w]` lists
    /// the points `v` with `w ≽ v`; `rel[w]` lists the `R`-successors.
    pub fn new(
        below: Vec<WorldSet>,
        rel: Vec<WorldSet>,
        sig: Signature,
        val: Vec<WorldSet>,
        labels: Vec<String>,
    ) -> Result<Self, ModalError> {
        let m = Self::unchecked(below, rel, sig, val, labels)?;
        m.validate()?;
        Ok(m)
    }

    fn unchecked(
        below: Vec<WorldSet>,
        rel: Vec<WorldSet>,
        sig: Signature,
        val: Vec<WorldSet>,
        labels: Vec<String>,
    ) -> Result<Self, ModalError> {
        let n = below.len();
        if n == 0 || n > 64 {
            return Err(ModalError::DomainSize(n));
        }
        for (found, expected) in [(rel.len(), n), (labels.len(), n), (val.len(), sig.len())] {
            if found != expected {
                return Err(ModalError::WrongSize { found, expected });
            }
        }
        let dom = WorldSet::full(n);
        if let Some(bad) = below.iter().chain(&rel).chain(&val).find(|s| !s.is_subset(dom)) {
            return Err(ModalError::OutOfRange(bad.iter().find(|&x| x >= n).unwrap_or(n)));
        }
        let mut pre = vec![WorldSet::EMPTY; n];
        for (w, r) in rel.iter().enumerate() {
            for v in r.iter() {
                pre[v].insert(w);
            }
        }
        Ok(BiRelationModel {
            below,
            rel,
            pre,
            sig,
            val,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn points(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    /// `{v : w ≽ v}`.
    pub fn below(&self, w: usize) -> WorldSet {
        self.below[w]
    }

    pub fn geq(&self, w: usize, v: usize) -> bool {
        self.below[w].contains(v)
    }

    pub fn successors(&self, w: usize) -> WorldSet {
        self.rel[w]
    }

    pub fn related(&self, w: usize, v: usize) -> bool {
        self.rel[w].contains(v)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn valuation(&self, a: Atom) -> WorldSet {
        self.val[a.index()]
    }

    pub fn label(&self, w: usize) -> &str {
        &self.labels[w]
    }

    pub fn check_partial_order(&self) -> Result<(), ModalError> {
        for w in 0..self.len() {
            if !self.below[w].contains(w) {
                return Err(ModalError::NotPartialOrder { w, v: w });
            }
            for v in self.below[w].iter() {
                if (v != w && self.below[v].contains(w)) || !self.below[v].is_subset(self.below[w]) {
                    return Err(ModalError::NotPartialOrder { w, v });
                }
            }
        }
        Ok(())
    }

    /// `w ≽ w'` and `wRv` give some `v'` with `v ≽ v'` and `w'Rv'`.
    pub fn check_f1(&self) -> Result<(), ModalError> {
        for w in 0..self.len() {
            for w2 in self.below[w].iter() {
                for v in self.rel[w].iter() {
                    if !self.below[v].intersects(self.rel[w2]) {
                        return Err(ModalError::F1 { w, w2, v });
                    }
                }
            }
        }
        Ok(())
    }

    /// `wRv` and `v ≽ v'` give some `w'` with `w ≽ w'` and `w'Rv'`.
    pub fn check_f2(&self) -> Result<(), ModalError> {
        for w in 0..self.len() {
            for v in self.rel[w].iter() {
                for v2 in self.below[v].iter() {
                    if !self.below[w].intersects(self.pre[v2]) {
                        return Err(ModalError::F2 { w, v, v2 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_persistence(&self) -> Result<(), ModalError> {
        for a in self.sig.atoms() {
            let v = self.val[a.index()];
            for w in v.iter() {
                if let Some(x) = self.below[w].iter().find(|&x| !v.contains(x)) {
                    return Err(ModalError::NotPersistent {
                        atom: self.sig.name(a).to_string(),
                        w,
                        v: x,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ModalError> {
        self.check_partial_order()?;
        self.check_f1()?;
        self.check_f2()?;
        self.check_persistence()
    }

    pub fn relation_is_preorder(&self) -> bool {
        (0..self.len()).all(|w| {
            self.rel[w].contains(w) && self.rel[w].iter().all(|v| self.rel[v].is_subset(self.rel[w]))
        })
    }

    pub fn relation_is_partial_order(&self) -> bool {
        self.relation_is_preorder()
            && (0..self.len()).all(|w| self.rel[w].iter().all(|v| v == w || !self.rel[v].contains(w)))
    }

    fn filter(&self, f: impl Fn(usize) -> bool) -> WorldSet {
        WorldSet::from_iter_worlds((0..self.len()).filter(|&w| f(w)))
    }

    /// Extent of `φ → ψ` from the extents of `φ` and `ψ`.
    pub fn imp_ext(&self, a: WorldSet, b: WorldSet) -> WorldSet {
        let bad = WorldSet(a.0 & !b.0);
        self.filter(|w| !self.below[w].intersects(bad))
    }

    pub fn box_ext(&self, a: WorldSet) -> WorldSet {
        self.filter(|w| self.below[w].iter().all(|u| self.rel[u].is_subset(a)))
    }

    pub fn diamond_ext(&self, a: WorldSet) -> WorldSet {
        self.filter(|w| self.rel[w].intersects(a))
    }
}

/// A bi-relation model with a bounded join-semilattice whose order is
/// the converse of `≽`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensoredModel {
    base: BiRelationModel,
    join: Vec<u8>,
    zero: usize,
}

impl TensoredModel {
    /// `join[w][v]` is `w ⋓ v`. Checks the semilattice laws, that `zero`
    /// is the identity, and that `w ≽ v` iff `v ⋓ w = w`.
    pub fn new(base: BiRelationModel, join: Vec<Vec<usize>>, zero: usize) -> Result<Self, ModalError> {
        let n = base.len();
        if join.len() != n {
            return Err(ModalError::WrongSize {
                found: join.len(),
                expected: n,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &join {
            if row.len() != n {
                return Err(ModalError::WrongSize {
                    found: row.len(),
                    expected: n,
                });
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(ModalError::OutOfRange(x));
            }
            flat.extend(row.iter().map(|&x| x as u8));
        }
        if zero >= n {
            return Err(ModalError::OutOfRange(zero));
        }
        let m = TensoredModel { base, join: flat, zero };
        m.check_semilattice()?;
        Ok(m)
    }

    pub fn base(&self) -> &BiRelationModel {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn join(&self, w: usize, v: usize) -> usize {
        self.join[w * self.len() + v] as usize
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn check_semilattice(&self) -> Result<(), ModalError> {
        let n = self.len();
        let fail = |msg: String| Err(ModalError::Semilattice(msg));
        for a in 0..n {
            if self.join(a, a) != a {
                return fail(format!("{a} is not idempotent"));
            }
            if self.join(self.zero, a) != a {
                return fail(format!("{} is not an identity for {a}", self.zero));
            }
            for b in 0..n {
                if self.join(a, b) != self.join(b, a) {
                    return fail(format!("{a} and {b} do not commute"));
                }
                for c in 0..n {
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c)) {
                        return fail(format!("{a}, {b}, {c} do not associate"));
                    }
                }
                if self.base.geq(a, b) != (self.join(b, a) == a) {
                    return Err(ModalError::OrderMismatch { w: a, v: b });
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ModalError> {
        self.base.validate()?;
        self.check_semilattice()
    }

    /// Extent of `φ ⊗ ψ`: points below some `u ⋓ v` with `u ⊩ φ`, `v ⊩ ψ`.
    pub fn tensor_ext(&self, a: WorldSet, b: WorldSet) -> WorldSet {
        let mut out = WorldSet::EMPTY;
        for u in a.iter() {
            for v in b.iter() {
                out = WorldSet(out.0 | self.base.below(self.join(u, v)).0);
            }
        }
        out
    }
}

/// Either kind of model; tensor and zero need the semilattice.
pub trait IkModel {
    fn base(&self) -> &BiRelationModel;

    fn tensored(&self) -> Option<&TensoredModel>;
}

impl IkModel for BiRelationModel {
    fn base(&self) -> &BiRelationModel {
        self
    }

    fn tensored(&self) -> Option<&TensoredModel> {
        None
    }
}

impl IkModel for TensoredModel {
    fn base(&self) -> &BiRelationModel {
        &self.base
    }

    fn tensored(&self) -> Option<&TensoredModel> {
        Some(self)
    }
}

/// The set of points forcing `f`.
pub fn extent_ik<M: IkModel + ?Sized>(m: &M, f: &ModalFormula) -> Result<WorldSet, ModalError> {
    use ModalFormula::*;
    let b = m.base();
    let tensored = || m.tensored().ok_or(ModalError::TensorOnPlainModel);
    Ok(match f {
        Bot => WorldSet::EMPTY,
        Zero => WorldSet::singleton(tensored()?.zero()),
        Atom(a) => {
            if a.index() >= b.signature().len() {
                return Err(ModalError::UnknownAtom(a.index()));
            }
            b.valuation(*a)
        }
        And(x, y) => WorldSet(extent_ik(m, x)?.0 & extent_ik(m, y)?.0),
        Or(x, y) => WorldSet(extent_ik(m, x)?.0 | extent_ik(m, y)?.0),
        Impl(x, y) => b.imp_ext(extent_ik(m, x)?, extent_ik(m, y)?),
        Box(x) => b.box_ext(extent_ik(m, x)?),
        Diamond(x) => b.diamond_ext(extent_ik(m, x)?),
        Tensor(x, y) => {
            let t = tensored()?;
            t.tensor_ext(extent_ik(m, x)?, extent_ik(m, y)?)
        }
    })
}

/// `M, w ⊩ f`.
pub fn eval_ik<M: IkModel + ?Sized>(m: &M, w: usize, f: &ModalFormula) -> Result<bool, ModalError> {
    if w >= m.base().len() {
        return Err(ModalError::OutOfRange(w));
    }
    Ok(extent_ik(m, f)?.contains(w))
}

fn check_bridge_cap(m: &KripkeModel) -> Result<(), ModalError> {
    if m.len() > BRIDGE_CAP {
        Err(ModalError::CapExceeded {
            worlds: m.len(),
            cap: BRIDGE_CAP,
        })
    } else {
        Ok(())
    }
}

/// Tables over the teams with codes in `codes`, indexed by position.
fn powerset_parts(m: &KripkeModel, codes: &[u64]) -> Result<BiRelationModel, ModalError> {
    let lift = lift_relation(m.frame())?;
    let index = |sel: &dyn Fn(WorldSet) -> bool| {
        WorldSet::from_iter_worlds(codes.iter().enumerate().filter(|&(_, &c)| sel(WorldSet(c))).map(|(i, _)| i))
    };
    let teams: Vec<WorldSet> = codes.iter().map(|&c| WorldSet(c)).collect();
    let below = teams.iter().map(|&t| index(&|s| s.is_subset(t))).collect();
    let rel = teams.iter().map(|&t| index(&|s| lift.related(t, s))).collect();
    let val = m.valuations().iter().map(|&v| index(&|s| s.is_subset(v))).collect();
    let labels = teams.iter().map(|t| t.to_string()).collect();
    BiRelationModel::new(below, rel, m.signature().clone(), val, labels)
}

/// `M°`: nonempty teams ordered by `⊇`, with the lifted relation. Team
/// with code `c` is point `c - 1`.
pub fn powerset_model(m: &KripkeModel) -> Result<BiRelationModel, ModalError> {
    check_bridge_cap(m)?;
    let codes: Vec<u64> = (1..1u64 << m.len()).collect();
    powerset_parts(m, &codes)
}

/// `M•`: all teams, with union as join and `∅` as zero. Team with code
/// `c` is point `c`.
pub fn full_powerset_model(m: &KripkeModel) -> Result<TensoredModel, ModalError> {
    check_bridge_cap(m)?;
    let size = 1usize << m.len();
    let codes: Vec<u64> = (0..size as u64).collect();
    let base = powerset_parts(m, &codes)?;
    let join = (0..size).map(|a| (0..size).map(|b| a | b).collect()).collect();
    TensoredModel::new(base, join, 0)
}

/// Graphviz drawing: `≽` covers as undirected edges with the smaller
/// point above, `R` as dashed arrows (reflexive pairs omitted).
pub fn bi_relation_to_dot(m: &BiRelationModel) -> String {
    let mut s = String::from("digraph birelation {\n  rankdir=BT;\n");
    for w in 0..m.len() {
        let _ = writeln!(s, "  w{w} [label=\"{}\"];", m.label(w));
    }
    for w in 0..m.len() {
        for v in m.below(w).iter() {
            let cover = v != w && !m.below(w).iter().any(|u| u != w && u != v && m.geq(u, v));
            if cover {
                let _ = writeln!(s, "  w{w} -> w{v} [dir=none];");
            }
        }
    }
    for w in 0..m.len() {
        for v in m.successors(w).iter().filter(|&v| v != w) {
            let _ = writeln!(s, "  w{w} -> w{v} [style=dashed, constraint=false];");
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::KripkeFrame;

    fn chain_model() -> KripkeModel {
        KripkeModel::new(KripkeFrame::chain(2), Signature::standard(1), vec![WorldSet::singleton(1)]).unwrap()
    }

    #[test]
    fn sizes() {
        let m = chain_model();
        assert_eq!(powerset_model(&m).unwrap().len(), 3);
        assert_eq!(full_powerset_model(&m).unwrap().len(), 4);
    }

    #[test]
    fn zero_is_empty_team() {
        let m = full_powerset_model(&chain_model()).unwrap();
        assert_eq!(m.zero(), 0);
        assert!(eval_ik(&m, 0, &ModalFormula::Zero).unwrap());
        assert!(!eval_ik(&m, 1, &ModalFormula::Zero).unwrap());
    }

    #[test]
    fn tensor_needs_semilattice() {
        let m = powerset_model(&chain_model()).unwrap();
        assert_eq!(
            eval_ik(&m, 0, &ModalFormula::Zero).unwrap_err(),
            ModalError::TensorOnPlainModel
        );
    }

    #[test]
    fn rejects_f2_failure() {
        // 0 ≽ 1 and 0 R 0 only; 2 R 0 needs a point below 2 seeing 1.
        let below = vec![WorldSet(0b011), WorldSet(0b010), WorldSet(0b100)];
        let rel = vec![WorldSet(0b001), WorldSet(0b010), WorldSet(0b101)];
        let err = BiRelationModel::new(below, rel, Signature::standard(0), vec![], vec!["a".into(), "b".into(), "c".into()]);
        assert!(matches!(err, Err(ModalError::F2 { w: 2, v: 0, v2: 1 })));
    }

    #[test]
    fn dot_shape() {
        let dot = bi_relation_to_dot(powerset_model(&chain_model()).unwrap().base());
        assert!(dot.contains("dir=none"));
        assert!(dot.contains("style=dashed"));
    }
}
