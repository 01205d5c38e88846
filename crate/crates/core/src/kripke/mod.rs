//! Finite intuitionistic Kripke frames and models.

mod enumerate;
pub mod io;
mod pmorph;

pub use enumerate::{canonical_form, dedup_isomorphic, enumerate_frames, enumerate_models, upsets, valuations, MAX_ENUM_WORLDS};
pub use pmorph::{
    check_image_lemma, find_p_morphisms, frame_p_morphisms, generated_subframe_of_pmorphic_image,
    model_p_morphisms, pmorphic_image_of_generated_subframe, ImageLemmaCheck, QuotientWitness,
    SubframeWitness,
};

use crate::bits::{WorldSet, MAX_WORLDS};
use crate::formula::{Atom, Signature};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KripkeError {
    #[error("frame has {0} worlds, more than the supported {MAX_WORLDS}")]
    TooManyWorlds(usize),
    #[error("world {0} is out of range")]
    WorldOutOfRange(usize),
    #[error("invalid model: {0}")]
    Invalid(Violation),
    #[error("enumeration cap exceeded: {requested} worlds requested, cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("valuation has {found} atoms but the signature has {expected}")]
    SignatureMismatch { expected: usize, found: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// A violated frame or model condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WorldOutOfRange(usize),
    NotReflexive(usize),
    NotTransitive(usize, usize, usize),
    NotAntisymmetric(usize, usize),
    NotPersistent { atom: String, from: usize, to: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WorldOutOfRange(w) => write!(f, "world {w} out of range"),
            Violation::NotReflexive(w) => write!(f, "not reflexive at {w}"),
            Violation::NotTransitive(a, b, c) => {
                write!(f, "not transitive: {a}R{b} and {b}R{c} but not {a}R{c}")
            }
            Violation::NotAntisymmetric(a, b) => {
                write!(f, "not antisymmetric: {a}R{b} and {b}R{a}")
            }
            Violation::NotPersistent { atom, from, to } => {
                write!(f, "{atom} not persistent: true at {from}, false at {to} with {from}R{to}")
            }
        }
    }
}

/// A finite partial order `(W, R)`; `wRv` means `v` is a successor of `w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KripkeFrame {
    up: Vec<WorldSet>,
    down: Vec<WorldSet>,
}

impl fmt::Debug for KripkeFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KripkeFrame")
            .field("worlds", &self.len())
            .field("strict", &self.strict_pairs())
            .finish()
    }
}

/// Checks the partial order axioms on a successor table.
fn order_violations(up: &[WorldSet]) -> Vec<Violation> {
    let n = up.len();
    let mut out = Vec::new();
    for w in 0..n {
        if !up[w].contains(w) {
            out.push(Violation::NotReflexive(w));
        }
    }
    for a in 0..n {
        for b in up[a].iter() {
            for c in up[b].iter() {
                if !up[a].contains(c) {
                    out.push(Violation::NotTransitive(a, b, c));
                }
            }
            if a < b && up[b].contains(a) {
                out.push(Violation::NotAntisymmetric(a, b));
            }
        }
    }
    out
}

impl KripkeFrame {
    fn from_up(up: Vec<WorldSet>) -> Self {
        let n = up.len();
        let mut down = vec![WorldSet::EMPTY; n];
        for (w, s) in up.iter().enumerate() {
            for v in s.iter() {
                down[v].insert(w);
            }
        }
        KripkeFrame { up, down }
    }

    fn check_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<(), KripkeError> {
        if n > MAX_WORLDS {
            return Err(KripkeError::TooManyWorlds(n));
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(KripkeError::WorldOutOfRange(a.max(b)));
            }
        }
        Ok(())
    }

    /// Uses `pairs` as the full relation; it must already be a partial order.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self, KripkeError> {
        Self::check_pairs(n, pairs)?;
        let mut up = vec![WorldSet::EMPTY; n];
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        if let Some(v) = order_violations(&up).into_iter().next() {
            return Err(KripkeError::Invalid(v));
        }
        Ok(Self::from_up(up))
    }

    /// Takes the reflexive-transitive closure of `pairs`, then checks
    /// antisymmetry.
    pub fn from_order(n: usize, pairs: &[(usize, usize)]) -> Result<Self, KripkeError> {
        Self::check_pairs(n, pairs)?;
        let mut up: Vec<WorldSet> = (0..n).map(WorldSet::singleton).collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut acc = up[a];
                for b in up[a].iter() {
                    acc = acc | up[b];
                }
                if acc != up[a] {
                    up[a] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(v) = order_violations(&up).into_iter().next() {
            return Err(KripkeError::Invalid(v));
        }
        Ok(Self::from_up(up))
    }

    /// `n` pairwise incomparable points.
    pub fn discrete(n: usize) -> Self {
        Self::from_up((0..n).map(WorldSet::singleton).collect())
    }

    /// The chain `0 R 1 R ... R n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_up((0..n).map(|w| WorldSet::full(n) - WorldSet::full(w)).collect())
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    /// `R[w]`, including `w`.
    pub fn successors(&self, w: usize) -> WorldSet {
        self.up[w]
    }

    pub fn predecessors(&self, w: usize) -> WorldSet {
        self.down[w]
    }

    pub fn related(&self, w: usize, v: usize) -> bool {
        self.up[w].contains(v)
    }

    /// `R[t]`.
    pub fn image(&self, t: WorldSet) -> WorldSet {
        t.iter().fold(WorldSet::EMPTY, |acc, w| acc | self.up[w])
    }

    /// `R^{-1}[t]`.
    pub fn preimage(&self, t: WorldSet) -> WorldSet {
        t.iter().fold(WorldSet::EMPTY, |acc, w| acc | self.down[w])
    }

    pub fn is_upset(&self, t: WorldSet) -> bool {
        self.image(t) == t
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|w| (self.up[w] - WorldSet::singleton(w)).iter().map(move |v| (w, v)))
            .collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|w| self.up[w].iter().map(move |v| (w, v)))
            .collect()
    }

    /// Minimal strict successors.
    pub fn immediate_successors(&self, w: usize) -> WorldSet {
        let strict = self.up[w] - WorldSet::singleton(w);
        strict
            .iter()
            .filter(|&v| {
                !strict
                    .iter()
                    .any(|u| u != v && self.up[u].contains(v))
            })
            .collect()
    }

    /// Points without strict successors.
    pub fn endpoints(&self) -> WorldSet {
        (0..self.len()).filter(|&w| self.up[w].len() == 1).collect()
    }

    /// The unique point seeing every point, if any.
    pub fn root(&self) -> Option<usize> {
        let all = self.worlds();
        (0..self.len()).find(|&w| self.up[w] == all)
    }

    /// Length of the longest chain starting at `w`, counting points.
    pub fn height(&self, w: usize) -> usize {
        1 + self
            .immediate_successors(w)
            .iter()
            .map(|v| self.height(v))
            .max()
            .unwrap_or(0)
    }

    /// Worlds sorted so that strict successors come first.
    pub fn top_down_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&w| (self.up[w].len(), w));
        order
    }

    /// The subframe on `keep` (which should be an upset), renumbered in
    /// increasing order. Also returns the new-to-old index map.
    pub fn restrict(&self, keep: WorldSet) -> (KripkeFrame, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut inv = vec![usize::MAX; self.len()];
        for (i, &w) in map.iter().enumerate() {
            inv[w] = i;
        }
        let up = map
            .iter()
            .map(|&w| (self.up[w] & keep).iter().map(|v| inv[v]).collect())
            .collect();
        (KripkeFrame::from_up(up), map)
    }

    /// The subframe generated by `w`.
    pub fn generated(&self, w: usize) -> (KripkeFrame, Vec<usize>) {
        self.restrict(self.up[w])
    }

    pub fn disjoint_union(&self, other: &KripkeFrame) -> Result<KripkeFrame, KripkeError> {
        let n = self.len();
        if n + other.len() > MAX_WORLDS {
            return Err(KripkeError::TooManyWorlds(n + other.len()));
        }
        let up = self
            .up
            .iter()
            .copied()
            .chain(other.up.iter().map(|s| WorldSet(s.0 << n)))
            .collect();
        Ok(KripkeFrame::from_up(up))
    }

    /// Whether `R` is the identity.
    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|w| self.up[w].len() == 1)
    }
}

/// The set of atoms true at a world, as a bitmask over atom indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Color(pub u32);

impl Color {
    pub fn has(self, a: usize) -> bool {
        self.0 >> a & 1 == 1
    }

    /// Pointwise order: every atom true in `self` is true in `other`.
    pub fn le(self, other: Color) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn lt(self, other: Color) -> bool {
        self.le(other) && self != other
    }

    /// The bit string `c_1 ... c_n`.
    pub fn bits(self, n: usize) -> String {
        (0..n).map(|i| if self.has(i) { '1' } else { '0' }).collect()
    }
}

/// A frame with a persistent valuation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KripkeModel {
    frame: KripkeFrame,
    sig: Signature,
    val: Vec<WorldSet>,
}

impl fmt::Debug for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let val: Vec<String> = self
            .sig
            .atoms()
            .map(|a| format!("{}={}", self.sig.name(a), self.val[a.index()]))
            .collect();
        f.debug_struct("KripkeModel")
            .field("worlds", &self.frame.len())
            .field("strict", &self.frame.strict_pairs())
            .field("valuation", &val)
            .finish()
    }
}

impl KripkeModel {
    /// `valuation[i]` is the extension of atom `i` of `sig`.
    pub fn new(frame: KripkeFrame, sig: Signature, valuation: Vec<WorldSet>) -> Result<Self, KripkeError> {
        if valuation.len() != sig.len() {
            return Err(KripkeError::SignatureMismatch {
                expected: sig.len(),
                found: valuation.len(),
            });
        }
        let all = frame.worlds();
        for (i, s) in valuation.iter().enumerate() {
            if !s.is_subset(all) {
                return Err(KripkeError::WorldOutOfRange(
                    (*s - all).first().unwrap_or(i),
                ));
            }
            if let Some(w) = s.iter().find(|&w| !frame.successors(w).is_subset(*s)) {
                let to = (frame.successors(w) - *s).first().unwrap();
                return Err(KripkeError::Invalid(Violation::NotPersistent {
                    atom: sig.names()[i].clone(),
                    from: w,
                    to,
                }));
            }
        }
        Ok(KripkeModel {
            frame,
            sig,
            val: valuation,
        })
    }

    /// Builds a model from color assignments.
    pub fn from_colors(frame: KripkeFrame, sig: Signature, colors: &[Color]) -> Result<Self, KripkeError> {
        let val = (0..sig.len())
            .map(|a| (0..frame.len()).filter(|&w| colors[w].has(a)).collect())
            .collect();
        KripkeModel::new(frame, sig, val)
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    /// `V(a)`.
    pub fn valuation(&self, a: Atom) -> WorldSet {
        self.val.get(a.index()).copied().unwrap_or(WorldSet::EMPTY)
    }

    pub fn valuations(&self) -> &[WorldSet] {
        &self.val
    }

    pub fn color(&self, w: usize) -> Color {
        Color(
            self.val
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(w))
                .fold(0, |acc, (i, _)| acc | 1 << i),
        )
    }

    pub fn colors(&self) -> Vec<Color> {
        (0..self.len()).map(|w| self.color(w)).collect()
    }

    /// Restriction to an upset, with the new-to-old index map.
    pub fn restrict(&self, keep: WorldSet) -> (KripkeModel, Vec<usize>) {
        let (frame, map) = self.frame.restrict(keep);
        let val = self
            .val
            .iter()
            .map(|s| map.iter().enumerate().filter(|(_, &w)| s.contains(w)).map(|(i, _)| i).collect())
            .collect();
        (
            KripkeModel {
                frame,
                sig: self.sig.clone(),
                val,
            },
            map,
        )
    }

    /// The submodel generated by `w`, worlds renumbered in increasing order.
    pub fn generated(&self, w: usize) -> (KripkeModel, Vec<usize>) {
        self.restrict(self.frame.successors(w))
    }

    /// Disjoint union; the second model's worlds are shifted by `self.len()`.
    /// Both models must share the signature.
    pub fn disjoint_union(&self, other: &KripkeModel) -> Result<KripkeModel, KripkeError> {
        if self.sig != other.sig {
            return Err(KripkeError::SignatureMismatch {
                expected: self.sig.len(),
                found: other.sig.len(),
            });
        }
        let frame = self.frame.disjoint_union(&other.frame)?;
        let n = self.len();
        let val = self
            .val
            .iter()
            .zip(other.val.iter())
            .map(|(a, b)| *a | WorldSet(b.0 << n))
            .collect();
        Ok(KripkeModel {
            frame,
            sig: self.sig.clone(),
            val,
        })
    }
}

/// Unchecked model data, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawModel {
    pub worlds: usize,
    pub relation: Vec<(usize, usize)>,
    pub valuation: Vec<(String, Vec<usize>)>,
}

/// Every violated condition of a raw model, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks reflexivity, transitivity, antisymmetry and persistence of the
/// relation exactly as given.
pub fn validate_model(raw: &RawModel) -> ValidationReport {
    let n = raw.worlds;
    let mut violations = Vec::new();
    if n > MAX_WORLDS {
        violations.push(Violation::WorldOutOfRange(n));
        return ValidationReport { violations };
    }
    let mut up = vec![WorldSet::EMPTY; n];
    for &(a, b) in &raw.relation {
        if a >= n || b >= n {
            violations.push(Violation::WorldOutOfRange(a.max(b)));
        } else {
            up[a].insert(b);
        }
    }
    violations.extend(order_violations(&up));
    for (name, ws) in &raw.valuation {
        let mut set = WorldSet::EMPTY;
        for &w in ws {
            if w >= n {
                violations.push(Violation::WorldOutOfRange(w));
            } else {
                set.insert(w);
            }
        }
        for w in set.iter() {
            for v in (up[w] - set).iter() {
                violations.push(Violation::NotPersistent {
                    atom: name.clone(),
                    from: w,
                    to: v,
                });
            }
        }
    }
    ValidationReport { violations }
}

impl RawModel {
    /// Builds the model if it passes [`validate_model`].
    pub fn build(&self) -> Result<KripkeModel, KripkeError> {
        if let Some(v) = validate_model(self).violations.into_iter().next() {
            return Err(KripkeError::Invalid(v));
        }
        let frame = KripkeFrame::from_relation(self.worlds, &self.relation)?;
        let sig = Signature::new(self.valuation.iter().map(|(n, _)| n.clone()));
        let val = self
            .valuation
            .iter()
            .map(|(_, ws)| ws.iter().copied().collect())
            .collect();
        KripkeModel::new(frame, sig, val)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_on_load() {
        let f = KripkeFrame::from_order(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(f.related(0, 2));
        assert_eq!(f.immediate_successors(0), WorldSet::singleton(1));
        assert_eq!(f.root(), Some(0));
        assert_eq!(f.height(0), 3);
        assert!(matches!(
            KripkeFrame::from_order(2, &[(0, 1), (1, 0)]),
            Err(KripkeError::Invalid(Violation::NotAntisymmetric(0, 1)))
        ));
    }

    #[test]
    fn persistence_violation_is_reported() {
        let raw = RawModel {
            worlds: 2,
            relation: vec![(0, 0), (1, 1), (0, 1)],
            valuation: vec![("p".into(), vec![0])],
        };
        let rep = validate_model(&raw);
        assert_eq!(
            rep.violations,
            vec![Violation::NotPersistent {
                atom: "p".into(),
                from: 0,
                to: 1
            }]
        );
        assert!(raw.build().is_err());
    }

    #[test]
    fn non_poset_is_reported() {
        let raw = RawModel {
            worlds: 2,
            relation: vec![(0, 1)],
            valuation: vec![],
        };
        let rep = validate_model(&raw);
        assert!(rep.violations.contains(&Violation::NotReflexive(0)));
        assert!(rep.violations.contains(&Violation::NotReflexive(1)));
    }

    #[test]
    fn generated_submodel_is_idempotent() {
        let f = KripkeFrame::from_order(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        let m = KripkeModel::new(f, Signature::standard(1), vec![WorldSet::from_iter([1, 3])]).unwrap();
        let (g, map) = m.generated(2);
        assert_eq!(map, vec![2, 3]);
        let root = map.iter().position(|&w| w == 2).unwrap();
        let (g2, map2) = g.generated(root);
        assert_eq!(g, g2);
        assert_eq!(map2, vec![0, 1]);
    }

    #[test]
    fn disjoint_union_shifts_second() {
        let a = KripkeModel::new(KripkeFrame::chain(2), Signature::standard(1), vec![WorldSet::singleton(1)]).unwrap();
        let u = a.disjoint_union(&a).unwrap();
        assert_eq!(u.len(), 4);
        assert!(u.frame().related(2, 3));
        assert!(!u.frame().related(1, 2));
        assert_eq!(u.valuations()[0], WorldSet::from_iter([1, 3]));
    }
}
