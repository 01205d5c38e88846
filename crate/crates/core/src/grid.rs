//! Exhaustive-grid helpers: extent closure and a data-parallel map with a
//! sequential fallback.

use crate::formula::Connective;
use crate::team::ExtentAlgebra;
use rustc_hash::FxHashSet;

/// How grid work is scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, otherwise runs
    /// sequentially.
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// The first item (in order) for which `f` returns `Some`.
pub fn find_map<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Distinct extents of the formulas of depth at most `depth` built from
/// `leaves` with `ops`, grouped by the least depth at which they occur.
///
/// Extents are compositional, so this is exactly the set of extents of
/// the formula grid, without enumerating the formulas themselves.
pub fn extent_layers<A: ExtentAlgebra>(
    alg: &A,
    leaves: Vec<A::Ext>,
    ops: &[Connective],
    depth: usize,
) -> Vec<Vec<A::Ext>> {
    let mut seen: FxHashSet<A::Ext> = FxHashSet::default();
    let mut all: Vec<A::Ext> = Vec::new();
    let mut layers = Vec::new();
    let first: Vec<A::Ext> = leaves.into_iter().filter(|e| seen.insert(e.clone())).collect();
    all.extend(first.iter().cloned());
    layers.push(first);
    for _ in 0..depth {
        let mut next = Vec::new();
        let prev = all.clone();
        for &op in ops {
            for a in &prev {
                for b in &prev {
                    let e = alg.combine(op, a, b);
                    if seen.insert(e.clone()) {
                        next.push(e);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layers.push(next);
    }
    layers
}

/// All distinct extents of the grid, flattened.
pub fn extent_closure<A: ExtentAlgebra>(alg: &A, leaves: Vec<A::Ext>, ops: &[Connective], depth: usize) -> Vec<A::Ext> {
    extent_layers(alg, leaves, ops, depth).into_iter().flatten().collect()
}
