use super::{UniversalArena, UniversalModel};
use crate::formula::Formula;
use crate::team::world_extent;
use rustc_hash::FxHashMap;

/// The de Jongh formulas of a node: `φ_w` defines its upset and `ψ_w`
/// is refuted exactly below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeJonghPair {
    pub node: usize,
    pub phi: Formula,
    pub psi: Formula,
}

/// Memoized de Jongh formulas over one arena.
pub struct DeJonghTable<'a> {
    arena: &'a UniversalArena,
    memo: FxHashMap<usize, (Formula, Formula)>,
}

impl<'a> DeJonghTable<'a> {
    pub fn new(arena: &'a UniversalArena) -> Self {
        DeJonghTable {
            arena,
            memo: FxHashMap::default(),
        }
    }

    pub fn pair(&mut self, w: usize) -> DeJonghPair {
        let (phi, psi) = self.formulas(w);
        DeJonghPair { node: w, phi, psi }
    }

    fn formulas(&mut self, w: usize) -> (Formula, Formula) {
        if let Some(p) = self.memo.get(&w) {
            return p.clone();
        }
        let node = self.arena.node(w).clone();
        let n = self.arena.n_atoms();
        let true_atoms: Vec<Formula> = (0..n).filter(|&i| node.color.has(i)).map(Formula::atom).collect();
        let out = if node.succ.is_empty() {
            let negs = (0..n).filter(|&i| !node.color.has(i)).map(|i| Formula::not(Formula::atom(i)));
            let phi = Formula::conj(true_atoms.into_iter().chain(negs));
            let psi = Formula::not(phi.clone());
            (phi, psi)
        } else {
            let succ: Vec<(Formula, Formula)> = node.succ.iter().map(|&v| self.formulas(v)).collect();
            let np = (0..n).filter(|&i| {
                !node.color.has(i) && node.succ.iter().all(|&v| self.arena.node(v).color.has(i))
            });
            let antecedent = Formula::disj_local(
                np.map(Formula::atom)
                    .chain(succ.iter().map(|(_, psi)| psi.clone())),
            );
            let succ_phis = Formula::disj_local(succ.iter().map(|(phi, _)| phi.clone()));
            let body = Formula::imp(antecedent, succ_phis.clone());
            let phi = Formula::conj(true_atoms.into_iter().chain(std::iter::once(body)));
            let psi = Formula::imp(phi.clone(), succ_phis);
            (phi, psi)
        };
        self.memo.insert(w, out.clone());
        out
    }
}

pub fn de_jongh(arena: &UniversalArena, w: usize) -> DeJonghPair {
    DeJonghTable::new(arena).pair(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeJonghViolation {
    pub w: usize,
    pub u: usize,
    /// `true` for the `φ` clause, `false` for the `ψ` clause.
    pub phi_clause: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeJonghReport {
    pub pairs_checked: usize,
    pub violations: Vec<DeJonghViolation>,
}

impl DeJonghReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For all nodes `w, u`: `u ⊨ φ_w` iff `wRu`, and `u ⊭ ψ_w` iff `uRw`.
pub fn check_dejongh_theorem(u: &UniversalModel) -> DeJonghReport {
    let arena = u.arena();
    let m = u.model();
    let mut table = DeJonghTable::new(arena);
    let mut violations = Vec::new();
    let n = arena.len();
    for w in 0..n {
        let pair = table.pair(w);
        let phi_ext = world_extent(m, &pair.phi).expect("de Jongh formulas are standard");
        let psi_ext = world_extent(m, &pair.psi).expect("de Jongh formulas are standard");
        for x in 0..n {
            if phi_ext.contains(x) != arena.sees(w, x) {
                violations.push(DeJonghViolation { w, u: x, phi_clause: true });
            }
            if !psi_ext.contains(x) != arena.sees(x, w) {
                violations.push(DeJonghViolation { w, u: x, phi_clause: false });
            }
        }
    }
    DeJonghReport {
        pairs_checked: n * n,
        violations,
    }
}
