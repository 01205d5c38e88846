//! Finite truncations of the n-universal model of intuitionistic logic,
//! de Jongh formulas, Jankov characterizations and Rieger-Nishimura
//! polynomials.
//!
//! Nodes live in a [`UniversalArena`], keyed by their color and their set of
//! immediate successors. The arena can be filled layer by layer
//! ([`build_universal`]) or on demand by locating a finite model inside the
//! universal model ([`UniversalArena::locate`]).

mod dejongh;
mod jankov;
mod rn;

pub use dejongh::{check_dejongh_theorem, de_jongh, DeJonghPair, DeJonghReport, DeJonghTable, DeJonghViolation};
pub use jankov::{
    check_jankov_characterization, jankov_formula, refuting_valuation, JankovFormula, JankovReport,
    JANKOV_CAP,
};
pub use rn::{rn_f_polynomial, rn_polynomial, RN_CAP};

use crate::bits::MAX_WORLDS;
use crate::formula::Signature;
use crate::kripke::{Color, KripkeError, KripkeFrame, KripkeModel};
use rustc_hash::FxHashMap;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("depth {depth} exceeds the cap {cap} for {n} atom(s)")]
    DepthCap { n: usize, depth: usize, cap: usize },
    #[error("only 1 or 2 atoms are supported for full truncations, got {0}")]
    AtomCap(usize),
    #[error("truncation would exceed {0} nodes")]
    NodeBudget(usize),
    #[error("frame has {size} points, more than the cap {cap}")]
    FrameCap { size: usize, cap: usize },
    #[error("frame is not rooted")]
    NotRooted,
    #[error("model signature has {found} atoms, arena expects {expected}")]
    Signature { expected: usize, found: usize },
    #[error("no node with color {color} above {succ:?}")]
    NoSuchNode { color: String, succ: Vec<usize> },
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// How the second layer rule treats single-node sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Sets of at least two incomparable nodes; singletons come from the
    /// strict color-decrease rule only.
    Standard,
    /// Singleton sets are also admitted, with colors `c <= col(w)`. Nodes
    /// that coincide with existing ones are merged.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UNode {
    pub color: Color,
    /// Immediate successors, sorted.
    pub succ: Vec<usize>,
    /// 1-based layer.
    pub layer: usize,
    /// All successors including the node itself, sorted.
    up: Vec<usize>,
}

impl UNode {
    pub fn upset(&self) -> &[usize] {
        &self.up
    }
}

#[derive(Clone, Debug)]
pub struct UniversalArena {
    n: usize,
    mode: Construction,
    nodes: Vec<UNode>,
    index: FxHashMap<(Color, Vec<usize>), usize>,
}

impl UniversalArena {
    pub fn new(n: usize, mode: Construction) -> Self {
        UniversalArena {
            n,
            mode,
            nodes: Vec::new(),
            index: FxHashMap::default(),
        }
    }

    pub fn n_atoms(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Construction {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> &UNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[UNode] {
        &self.nodes
    }

    /// `a R b`.
    pub fn sees(&self, a: usize, b: usize) -> bool {
        self.nodes[a].up.binary_search(&b).is_ok()
    }

    pub fn lookup(&self, color: Color, succ: &[usize]) -> Option<usize> {
        self.index.get(&(color, succ.to_vec())).copied()
    }

    /// Minimal elements of `set` under `R`, sorted and deduplicated.
    pub fn minimal(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| b != a && self.sees(b, a)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether the layer rules produce a node with this color and these
    /// immediate successors.
    pub fn admissible(&self, color: Color, succ: &[usize]) -> bool {
        let antichain = succ
            .iter()
            .all(|&a| succ.iter().all(|&b| a == b || !self.sees(a, b)));
        let below_all = succ.iter().all(|&s| color.le(self.nodes[s].color));
        match succ {
            [] => true,
            [s] => match self.mode {
                Construction::Standard => color.lt(self.nodes[*s].color),
                Construction::Literal => color.le(self.nodes[*s].color),
            },
            _ => antichain && below_all,
        }
    }

    /// Returns the node with the given key, creating it if needed. The
    /// boolean is true when the node is new.
    pub fn get_or_insert(&mut self, color: Color, mut succ: Vec<usize>) -> Result<(usize, bool), UniversalError> {
        succ.sort_unstable();
        succ.dedup();
        if let Some(id) = self.lookup(color, &succ) {
            return Ok((id, false));
        }
        if !self.admissible(color, &succ) {
            return Err(UniversalError::NoSuchNode {
                color: color.bits(self.n),
                succ,
            });
        }
        let id = self.nodes.len();
        let mut up = vec![id];
        for &s in &succ {
            up.extend_from_slice(&self.nodes[s].up);
        }
        up.sort_unstable();
        up.dedup();
        let layer = 1 + succ.iter().map(|&s| self.nodes[s].layer).max().unwrap_or(0);
        self.index.insert((color, succ.clone()), id);
        self.nodes.push(UNode {
            color,
            succ,
            layer,
            up,
        });
        Ok((id, true))
    }

    /// Maps every world of a finite model onto a node so that the map is a
    /// p-morphism onto a generated submodel. Nodes are created on demand.
    pub fn locate(&mut self, m: &KripkeModel) -> Result<Vec<usize>, UniversalError> {
        if m.signature().len() != self.n {
            return Err(UniversalError::Signature {
                expected: self.n,
                found: m.signature().len(),
            });
        }
        let mut map = vec![usize::MAX; m.len()];
        for w in m.frame().top_down_order() {
            let images: Vec<usize> = m.frame().immediate_successors(w).iter().map(|v| map[v]).collect();
            let a = self.minimal(&images);
            let col = m.color(w);
            map[w] = match a.as_slice() {
                [only] if self.nodes[*only].color == col => *only,
                _ => self.get_or_insert(col, a)?.0,
            };
        }
        Ok(map)
    }

    /// The Kripke model on all arena nodes.
    pub fn to_model(&self) -> Result<KripkeModel, UniversalError> {
        if self.len() > MAX_WORLDS {
            return Err(UniversalError::NodeBudget(MAX_WORLDS));
        }
        let pairs: Vec<(usize, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, nd)| nd.up.iter().map(move |&j| (i, j)))
            .collect();
        let frame = KripkeFrame::from_relation(self.len(), &pairs)?;
        let colors: Vec<Color> = self.nodes.iter().map(|nd| nd.color).collect();
        Ok(KripkeModel::from_colors(frame, Signature::standard(self.n), &colors)?)
    }
}

/// Largest truncation depth per atom count.
pub fn depth_cap(n: usize) -> usize {
    match n {
        1 => 8,
        2 => 3,
        _ => 0,
    }
}

/// A layered truncation of the n-universal model.
#[derive(Clone, Debug)]
pub struct UniversalModel {
    arena: UniversalArena,
    layers: Vec<Vec<usize>>,
    model: KripkeModel,
}

impl UniversalModel {
    pub fn arena(&self) -> &UniversalArena {
        &self.arena
    }

    pub fn model(&self) -> &KripkeModel {
        &self.model
    }

    pub fn n_atoms(&self) -> usize {
        self.arena.n
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Node ids of layer `k` (1-based).
    pub fn layer(&self, k: usize) -> &[usize] {
        &self.layers[k - 1]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.arena.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arena.is_empty()
    }

    /// Graphviz rendering with one rank per layer.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph universal {\n  rankdir=BT;\n");
        for (k, layer) in self.layers.iter().enumerate() {
            let _ = write!(s, "  {{ rank=same; ");
            for &id in layer {
                let _ = write!(s, "w{id}; ");
            }
            let _ = writeln!(s, "}} // layer {}", k + 1);
        }
        for (id, nd) in self.arena.nodes.iter().enumerate() {
            let _ = writeln!(s, "  w{id} [label=\"w{id}\\n{}\"];", nd.color.bits(self.arena.n));
        }
        for (id, nd) in self.arena.nodes.iter().enumerate() {
            for &v in &nd.succ {
                let _ = writeln!(s, "  w{id} -> w{v} [arrowhead=none];");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Pairwise incomparable subsets of `pool` with at least `min_size`
/// elements and at least one element in `required`, in lexicographic order.
fn antichains(
    arena: &UniversalArena,
    pool: &[usize],
    required: &[usize],
    min_size: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<(), UniversalError>,
) -> Result<(), UniversalError> {
    fn go(
        arena: &UniversalArena,
        pool: &[usize],
        required: &[usize],
        min_size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<(), UniversalError>,
    ) -> Result<(), UniversalError> {
        if cur.len() >= min_size && cur.iter().any(|x| required.contains(x)) {
            f(cur)?;
        }
        for i in start..pool.len() {
            let x = pool[i];
            if cur.iter().all(|&y| !arena.sees(x, y) && !arena.sees(y, x)) {
                cur.push(x);
                go(arena, pool, required, min_size, i + 1, cur, f)?;
                cur.pop();
            }
        }
        Ok(())
    }
    go(arena, pool, required, min_size, 0, &mut Vec::new(), f)
}

/// Default node budget for full truncations; equals the world limit of
/// [`KripkeFrame`].
pub const NODE_BUDGET: usize = MAX_WORLDS;

/// Builds the first `depth` layers of `U(n)`.
pub fn build_universal(n: usize, depth: usize) -> Result<UniversalModel, UniversalError> {
    build_universal_with(n, depth, Construction::Standard)
}

pub fn build_universal_with(n: usize, depth: usize, mode: Construction) -> Result<UniversalModel, UniversalError> {
    if n == 0 || n > 2 {
        return Err(UniversalError::AtomCap(n));
    }
    if depth > depth_cap(n) {
        return Err(UniversalError::DepthCap {
            n,
            depth,
            cap: depth_cap(n),
        });
    }
    let mut arena = UniversalArena::new(n, mode);
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let colors_desc: Vec<Color> = (0..1u32 << n).rev().map(Color).collect();
    if depth == 0 {
        let model = arena.to_model()?;
        return Ok(UniversalModel { arena, layers, model });
    }
    let first = colors_desc
        .iter()
        .map(|&c| arena.get_or_insert(c, vec![]).map(|r| r.0))
        .collect::<Result<Vec<_>, _>>()?;
    layers.push(first);
    let check = |arena: &UniversalArena| {
        if arena.len() > NODE_BUDGET {
            Err(UniversalError::NodeBudget(NODE_BUDGET))
        } else {
            Ok(())
        }
    };
    for _ in 1..depth {
        let last = layers.last().unwrap().clone();
        let mut next = Vec::new();
        for &w in &last {
            let cw = arena.nodes[w].color;
            for &c in colors_desc.iter().filter(|c| c.lt(cw)) {
                let (id, new) = arena.get_or_insert(c, vec![w])?;
                if new {
                    next.push(id);
                }
            }
            check(&arena)?;
        }
        let pool: Vec<usize> = (0..arena.len()).filter(|&i| arena.nodes[i].layer <= layers.len()).collect();
        let min_size = match mode {
            Construction::Standard => 2,
            Construction::Literal => 1,
        };
        let mut found: Vec<Vec<usize>> = Vec::new();
        antichains(&arena, &pool, &last, min_size, &mut |a| {
            found.push(a.to_vec());
            if found.len() > NODE_BUDGET {
                Err(UniversalError::NodeBudget(NODE_BUDGET))
            } else {
                Ok(())
            }
        })?;
        for a in found {
            let meet = a.iter().fold(Color((1 << n) - 1), |acc, &x| Color(acc.0 & arena.nodes[x].color.0));
            for &c in colors_desc.iter().filter(|c| c.le(meet)) {
                let (id, new) = arena.get_or_insert(c, a.clone())?;
                if new {
                    next.push(id);
                }
            }
            check(&arena)?;
        }
        layers.push(next);
    }
    let model = arena.to_model()?;
    Ok(UniversalModel { arena, layers, model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::WorldSet;

    #[test]
    fn first_layer() {
        let u = build_universal(1, 1).unwrap();
        assert_eq!(u.layer_sizes(), vec![2]);
        assert_eq!(u.arena().node(0).color, Color(1));
        assert_eq!(u.arena().node(1).color, Color(0));
    }

    #[test]
    fn ladder_shape() {
        let u = build_universal(1, 4).unwrap();
        assert_eq!(u.layer_sizes(), vec![2, 2, 2, 2]);
        let succ: Vec<Vec<usize>> = (2..8).map(|i| u.arena().node(i).succ.clone()).collect();
        assert_eq!(
            succ,
            vec![vec![0], vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]]
        );
    }

    #[test]
    fn two_atom_layers() {
        let u = build_universal(2, 2).unwrap();
        assert_eq!(u.layer_sizes(), vec![4, 18]);
        assert!(matches!(build_universal(2, 3), Err(UniversalError::NodeBudget(_))));
        assert!(matches!(build_universal(2, 4), Err(UniversalError::DepthCap { .. })));
        assert!(matches!(build_universal(1, 9), Err(UniversalError::DepthCap { .. })));
    }

    #[test]
    fn literal_mode_differs() {
        let std = build_universal(1, 3).unwrap();
        let lit = build_universal_with(1, 3, Construction::Literal).unwrap();
        assert!(lit.len() > std.len());
    }

    #[test]
    fn locate_chain() {
        let u = build_universal(1, 3).unwrap();
        let mut arena = u.arena().clone();
        let m = KripkeModel::new(KripkeFrame::chain(2), Signature::standard(1), vec![WorldSet::singleton(1)]).unwrap();
        let map = arena.locate(&m).unwrap();
        assert_eq!(map, vec![2, 0]);
        assert_eq!(arena.len(), u.len());
    }
}
