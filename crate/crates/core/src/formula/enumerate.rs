use super::{Connective, Formula, Signature};

/// Leaves: `bot` followed by the atoms of the signature.
fn leaves(sig: &Signature) -> Vec<Formula> {
    std::iter::once(Formula::Bot)
        .chain(sig.atoms().map(Formula::Atom))
        .collect()
}

fn connectives(standard_only: bool) -> &'static [Connective] {
    if standard_only {
        &Connective::STANDARD
    } else {
        &Connective::ALL
    }
}

/// All formulas of depth at most `depth`, materialized.
pub fn formulas_up_to(sig: &Signature, depth: usize, standard_only: bool) -> Vec<Formula> {
    enumerate_formulas(sig, depth, standard_only).collect()
}

/// Number of formulas of depth at most `depth`.
pub fn count_formulas(sig: &Signature, depth: usize, standard_only: bool) -> u128 {
    let l = sig.len() as u128 + 1;
    let k = connectives(standard_only).len() as u128;
    let mut a = l;
    for _ in 0..depth {
        a = l + k * a * a;
    }
    a
}

/// Streams every formula of depth at most `depth` exactly once.
///
/// The order is deterministic: leaves first, then for each connective in
/// declaration order, every pair `(a, b)` of formulas of depth at most
/// `depth - 1`, with `a` varying slowest. The shallower layer is kept in
/// memory; the outermost layer is produced lazily.
pub fn enumerate_formulas(sig: &Signature, depth: usize, standard_only: bool) -> FormulaEnumerator {
    let leaves = leaves(sig);
    let prev = if depth == 0 {
        Vec::new()
    } else {
        formulas_up_to(sig, depth - 1, standard_only)
    };
    FormulaEnumerator {
        leaves,
        prev,
        ops: connectives(standard_only),
        depth,
        state: 0,
    }
}

pub struct FormulaEnumerator {
    leaves: Vec<Formula>,
    prev: Vec<Formula>,
    ops: &'static [Connective],
    depth: usize,
    state: usize,
}

impl FormulaEnumerator {
    /// The formulas of depth at most `depth - 1` combined at the top level.
    pub fn operands(&self) -> &[Formula] {
        &self.prev
    }

    pub fn connectives(&self) -> &'static [Connective] {
        self.ops
    }

    pub fn leaves(&self) -> &[Formula] {
        &self.leaves
    }

    /// Total number of items.
    pub fn total(&self) -> usize {
        if self.depth == 0 {
            self.leaves.len()
        } else {
            self.leaves.len() + self.ops.len() * self.prev.len() * self.prev.len()
        }
    }

    /// The structure of item `i`: a leaf, or a connective applied to two
    /// operand indices.
    pub fn shape(&self, i: usize) -> Shape {
        if i < self.leaves.len() {
            return Shape::Leaf(i);
        }
        let j = i - self.leaves.len();
        let m = self.prev.len();
        Shape::Node(self.ops[j / (m * m)], (j / m) % m, j % m)
    }

    pub fn build(&self, shape: Shape) -> Formula {
        match shape {
            Shape::Leaf(i) => self.leaves[i].clone(),
            Shape::Node(op, a, b) => Formula::binary(op, self.prev[a].clone(), self.prev[b].clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf(usize),
    Node(Connective, usize, usize),
}

impl Iterator for FormulaEnumerator {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        if self.state >= self.total() {
            return None;
        }
        let f = self.build(self.shape(self.state));
        self.state += 1;
        Some(f)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.total() - self.state;
        (r, Some(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // Independent count: number of binary trees of height <= d with l leaf
    // labels and k node labels, computed by summing exact heights.
    fn count_by_height(l: u128, k: u128, d: usize) -> u128 {
        let mut exact = vec![l];
        let mut upto = vec![l];
        for h in 1..=d {
            let below = upto[h - 1];
            let below2 = if h >= 2 { upto[h - 2] } else { 0 };
            let e = k * (below * below - below2 * below2);
            exact.push(e);
            upto.push(upto[h - 1] + e);
        }
        upto[d]
    }

    #[test]
    fn counts_match_height_sums() {
        for atoms in 1..=2 {
            let sig = Signature::standard(atoms);
            for depth in 0..=3 {
                for std_only in [false, true] {
                    let k = if std_only { 3 } else { 4 };
                    assert_eq!(
                        count_formulas(&sig, depth, std_only),
                        count_by_height(atoms as u128 + 1, k, depth)
                    );
                }
            }
        }
        assert_eq!(count_formulas(&Signature::standard(1), 2, false), 1298);
    }

    #[test]
    fn enumeration_is_exact_and_duplicate_free() {
        let sig = Signature::standard(1);
        for std_only in [false, true] {
            let all: Vec<Formula> = enumerate_formulas(&sig, 2, std_only).collect();
            assert_eq!(all.len() as u128, count_formulas(&sig, 2, std_only));
            let set: HashSet<&Formula> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.iter().all(|f| f.depth() <= 2));
            if std_only {
                assert!(all.iter().all(Formula::is_standard));
            }
        }
    }
}
