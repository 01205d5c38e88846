use super::{GenFrameError, JoinTable};
use crate::kripke::KripkeFrame;
use rustc_hash::FxHashSet;

/// A finite lattice on `0..n` with `0` least, `n - 1` greatest, and every
/// `i ≤ j` implying `i <= j` as integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    n: usize,
    /// `up[i]` has bit `j` set when `i ≤ j`.
    up: Vec<u64>,
}

impl FiniteLattice {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let ub = self.up[i] & self.up[j];
        (0..self.n)
            .find(|&u| ub >> u & 1 == 1 && ub & !self.up[u] == 0)
            .expect("lattice has joins")
    }

    /// Transfers the lattice to the teams of `n_worlds` worlds along
    /// `codes`, which sends element `i` to team code `codes[i]` and must
    /// send `0` to the empty team.
    pub fn join_table_with(&self, n_worlds: usize, codes: &[usize]) -> Result<JoinTable, GenFrameError> {
        let size = 1usize << n_worlds;
        if self.n != size || codes.len() != size || codes[0] != 0 {
            return Err(GenFrameError::Malformed("bijection does not fit the lattice".into()));
        }
        let mut table = vec![0u8; size * size];
        for a in 0..size {
            for b in 0..size {
                table[codes[a] * size + codes[b]] = codes[self.join(a, b)] as u8;
            }
        }
        JoinTable::new(n_worlds, table)
    }

    /// [`Self::join_table_with`] along the fixed bijection that lists team
    /// codes by size, then by value.
    pub fn join_table(&self, n_worlds: usize) -> Result<JoinTable, GenFrameError> {
        self.join_table_with(n_worlds, &codes_by_size(n_worlds))
    }
}

/// Team codes of `n_worlds` worlds ordered by cardinality, then value.
pub fn codes_by_size(n_worlds: usize) -> Vec<usize> {
    let mut codes: Vec<usize> = (0..1usize << n_worlds).collect();
    codes.sort_by_key(|&c| (c.count_ones(), c));
    codes
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Naturally labeled posets on `m` points, as strict down-sets.
fn natural_posets(m: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(m: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let k = cur.len();
        if k == m {
            out.push(cur.clone());
            return;
        }
        for d in 0u64..(1 << k) {
            let closed = (0..k).filter(|&i| d >> i & 1 == 1).all(|i| cur[i] & !d == 0);
            if closed {
                cur.push(d);
                go(m, cur, out);
                cur.pop();
            }
        }
    }
    go(m, &mut cur, &mut out);
    out
}

/// All lattices with `size` elements, one per isomorphism class.
pub fn enumerate_lattices(size: usize) -> Vec<FiniteLattice> {
    assert!((1..=10).contains(&size), "lattice size out of range");
    if size == 1 {
        return vec![FiniteLattice { n: 1, up: vec![1] }];
    }
    let m = size - 2;
    let top = size - 1;
    let interior: Vec<usize> = (0..m).collect();
    let perms = permutations(&interior);
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    for down in natural_posets(m) {
        // Element i + 1 of the lattice is interior point i.
        let mut up = vec![0u64; size];
        up[0] = (1u64 << size) - 1;
        up[top] = 1 << top;
        for i in 0..m {
            up[i + 1] |= 1 << (i + 1) | 1 << top;
            for j in 0..m {
                if down[j] >> i & 1 == 1 {
                    up[i + 1] |= 1 << (j + 1);
                }
            }
        }
        // The generated down-sets are closed, so `up` is already transitive.
        let lat = FiniteLattice { n: size, up };
        let has_joins = (1..=m).all(|a| {
            (1..=m).all(|b| {
                let ub = lat.up[a] & lat.up[b];
                (0..size).any(|u| ub >> u & 1 == 1 && ub & !lat.up[u] == 0)
            })
        });
        if !has_joins {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut k = 0u64;
                for a in 0..m {
                    for b in 0..m {
                        k = k << 1 | lat.leq(p[a] + 1, p[b] + 1) as u64;
                    }
                }
                k
            })
            .min()
            .unwrap_or(0);
        if seen.insert(key) {
            out.push(lat);
        }
    }
    out
}

/// A join table paired with a short description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuratedTable {
    pub name: String,
    pub table: JoinTable,
}

/// One join table per isomorphism class of lattices on the teams of
/// `n_worlds` worlds, along the fixed size-then-value bijection.
pub fn curated_join_tables(n_worlds: usize) -> Vec<CuratedTable> {
    enumerate_lattices(1 << n_worlds)
        .into_iter()
        .enumerate()
        .map(|(i, l)| CuratedTable {
            name: format!("lattice{}_{i}", 1 << n_worlds),
            table: l.join_table(n_worlds).expect("enumerated lattices are valid"),
        })
        .collect()
}

/// Every join table on the teams of `frame` that satisfies the frame
/// conditions, up to equality of tables. Intended for non-classical
/// frames, where few tables qualify.
pub fn valid_join_tables(frame: &KripkeFrame) -> Vec<JoinTable> {
    let nw = frame.len();
    let size = 1usize << nw;
    let image: Vec<usize> = (0..size).map(|t| frame.image(crate::bits::WorldSet(t as u64)).code()).collect();
    let rest: Vec<usize> = (1..size).collect();
    let perms = permutations(&rest);
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    let mut table = vec![0u8; size * size];
    for lat in enumerate_lattices(size) {
        let joins: Vec<usize> = (0..size * size).map(|i| lat.join(i / size, i % size)).collect();
        for p in &perms {
            let code = |i: usize| if i == 0 { 0 } else { p[i - 1] };
            for a in 0..size {
                for b in 0..size {
                    table[code(a) * size + code(b)] = code(joins[a * size + b]) as u8;
                }
            }
            let j = |t: usize, s: usize| table[t * size + s] as usize;
            let cond_c = (0..size).all(|t| (0..size).all(|s| j(image[t], image[s]) == image[j(t, s)]));
            if !cond_c || !seen.insert(table.clone()) {
                continue;
            }
            let jt = JoinTable::from_valid(nw, table.clone());
            if let Ok(g) = super::GeneralFrame::unchecked(frame.clone(), jt.clone()) {
                if g.validate().valid() {
                    out.push(jt);
                }
            }
        }
    }
    out
}

/// `t ≼ r ⋓ s` with no decomposition `t = r' ⋓ s'`, `r' ≼ r`, `s' ≼ s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistributivityWitness {
    pub t: usize,
    pub r: usize,
    pub s: usize,
}

/// Checks the distributivity condition of the semilattice directly.
pub fn distributivity_witness(j: &JoinTable) -> Option<DistributivityWitness> {
    let n = j.size();
    for r in 0..n {
        for s in 0..n {
            let mut reach = crate::bits::TeamSet::empty(j.n_worlds());
            for r2 in j.below(r).iter() {
                for s2 in j.below(s).iter() {
                    reach.insert(j.join(r2, s2));
                }
            }
            if let Some(t) = j.below(j.join(r, s)).difference(&reach).iter().next() {
                return Some(DistributivityWitness { t, r, s });
            }
        }
    }
    None
}

pub fn is_distributive(j: &JoinTable) -> bool {
    distributivity_witness(j).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SublatticeKind {
    M5,
    N5,
}

/// Five teams forming a copy of `M₅` or `N₅` under `⋓` and `⋔`.
///
/// For `M₅`, `middle` holds the three pairwise incomparable elements; for
/// `N₅` it holds `x ≺ y` followed by the element incomparable to both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SublatticeWitness {
    pub kind: SublatticeKind,
    pub bottom: usize,
    pub top: usize,
    pub middle: [usize; 3],
}

impl SublatticeWitness {
    pub fn elements(&self) -> [usize; 5] {
        [self.bottom, self.middle[0], self.middle[1], self.middle[2], self.top]
    }
}

/// Searches for an `M₅` or `N₅` sublattice, trying `M₅` first.
pub fn find_m5_n5(j: &JoinTable) -> Option<SublatticeWitness> {
    let n = j.size();
    for x in 0..n {
        for y in x + 1..n {
            let top = j.join(x, y);
            let bottom = j.meet(x, y);
            if top == x || top == y {
                continue;
            }
            for z in y + 1..n {
                if j.join(x, z) == top && j.join(y, z) == top && j.meet(x, z) == bottom && j.meet(y, z) == bottom {
                    return Some(SublatticeWitness {
                        kind: SublatticeKind::M5,
                        bottom,
                        top,
                        middle: [x, y, z],
                    });
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x == y || !j.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if j.join(x, z) == j.join(y, z) && j.meet(x, z) == j.meet(y, z) {
                    return Some(SublatticeWitness {
                        kind: SublatticeKind::N5,
                        bottom: j.meet(x, z),
                        top: j.join(x, z),
                        middle: [x, y, z],
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=8).map(|k| enumerate_lattices(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53, 222]);
    }

    #[test]
    fn boolean_lattice_is_distributive() {
        let j = JoinTable::union(3);
        assert!(is_distributive(&j));
        assert!(find_m5_n5(&j).is_none());
    }

    #[test]
    fn four_element_lattices_are_distributive() {
        for l in enumerate_lattices(4) {
            let j = l.join_table(2).unwrap();
            assert!(is_distributive(&j));
        }
    }

    #[test]
    fn five_element_lattices_via_sublattice_search() {
        // Stack a 3-chain on top of each 5-element lattice: distributivity
        // is unchanged, and exactly M5 and N5 fail it.
        let mut bad = 0;
        for l in enumerate_lattices(5) {
            let j = JoinTable::from_order(3, |a, b| match (a < 5, b < 5) {
                (true, true) => l.leq(a, b),
                (true, false) => true,
                (false, true) => false,
                (false, false) => a <= b,
            })
            .unwrap();
            assert_eq!(is_distributive(&j), find_m5_n5(&j).is_none());
            if !is_distributive(&j) {
                bad += 1;
            }
        }
        assert_eq!(bad, 2);
    }

    #[test]
    fn chain_frame_admits_some_non_union_tables() {
        let tables = valid_join_tables(&KripkeFrame::chain(2));
        assert!(tables.iter().any(JoinTable::is_union));
        assert!(!tables.is_empty());
    }
}
