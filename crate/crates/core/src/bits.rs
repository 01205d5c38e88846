//! Compact set types used throughout the crate.
//!
//! [`WorldSet`] is a set of worlds of a frame with at most 64 points.
//! A team is just a [`WorldSet`]. [`TeamSet`] is a set of teams, i.e. a
//! subset of the powerset of a (small) set of worlds, and serves as the
//! extent of a formula.

use smallvec::SmallVec;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Maximum number of worlds a frame may have.
pub const MAX_WORLDS: usize = 64;

/// A set of worlds, stored as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WorldSet(pub u64);

/// A team is a set of worlds.
pub type Team = WorldSet;

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(w: usize) -> Self {
        WorldSet(1u64 << w)
    }

    pub fn from_iter_worlds<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = WorldSet::EMPTY;
        for w in it {
            s.insert(w);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The team code, usable as an index into powerset tables.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, w: usize) -> bool {
        w < 64 && self.0 >> w & 1 == 1
    }

    pub fn insert(&mut self, w: usize) {
        self.0 |= 1u64 << w;
    }

    pub fn remove(&mut self, w: usize) {
        self.0 &= !(1u64 << w);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: WorldSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> WorldIter {
        WorldIter(self.0)
    }

    /// All subsets of `self`, in increasing code order.
    pub fn subsets(self) -> SubsetIter {
        SubsetIter {
            mask: self.0,
            cur: 0,
            done: false,
        }
    }
}

impl BitOr for WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: WorldSet) -> WorldSet {
        WorldSet(self.0 | rhs.0)
    }
}

impl BitAnd for WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: WorldSet) -> WorldSet {
        WorldSet(self.0 & rhs.0)
    }
}

impl Sub for WorldSet {
    type Output = WorldSet;
    fn sub(self, rhs: WorldSet) -> WorldSet {
        WorldSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        WorldSet::from_iter_worlds(iter)
    }
}

pub struct WorldIter(u64);

impl Iterator for WorldIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let w = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(w)
    }
}

pub struct SubsetIter {
    mask: u64,
    cur: u64,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = WorldSet;
    fn next(&mut self) -> Option<WorldSet> {
        if self.done {
            return None;
        }
        let out = WorldSet(self.cur);
        if self.cur == self.mask {
            self.done = true;
        } else {
            self.cur = (self.cur.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

/// A set of teams over `n` worlds, i.e. a bitset indexed by team codes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TeamSet {
    n_worlds: u8,
    words: SmallVec<[u64; 1]>,
}

impl TeamSet {
    fn n_words(n_worlds: usize) -> usize {
        (1usize << n_worlds).div_ceil(64)
    }

    pub fn empty(n_worlds: usize) -> Self {
        TeamSet {
            n_worlds: n_worlds as u8,
            words: SmallVec::from_elem(0, Self::n_words(n_worlds)),
        }
    }

    pub fn full(n_worlds: usize) -> Self {
        let mut s = TeamSet {
            n_worlds: n_worlds as u8,
            words: SmallVec::from_elem(u64::MAX, Self::n_words(n_worlds)),
        };
        s.trim();
        s
    }

    pub fn from_codes<I: IntoIterator<Item = usize>>(n_worlds: usize, codes: I) -> Self {
        let mut s = TeamSet::empty(n_worlds);
        for c in codes {
            s.insert(c);
        }
        s
    }

    /// Builds a set from a predicate on teams.
    pub fn from_fn(n_worlds: usize, mut f: impl FnMut(Team) -> bool) -> Self {
        let mut s = TeamSet::empty(n_worlds);
        for c in 0..(1usize << n_worlds) {
            if f(WorldSet(c as u64)) {
                s.insert(c);
            }
        }
        s
    }

    fn trim(&mut self) {
        let bits = 1usize << self.n_worlds;
        if bits < 64 {
            self.words[0] &= (1u64 << bits) - 1;
        }
    }

    pub fn n_worlds(&self) -> usize {
        self.n_worlds as usize
    }

    /// Number of team codes, `2^n`.
    pub fn universe(&self) -> usize {
        1usize << self.n_worlds
    }

    pub fn contains(&self, code: usize) -> bool {
        self.words[code >> 6] >> (code & 63) & 1 == 1
    }

    pub fn contains_team(&self, t: Team) -> bool {
        self.contains(t.code())
    }

    pub fn insert(&mut self, code: usize) {
        self.words[code >> 6] |= 1u64 << (code & 63);
    }

    pub fn remove(&mut self, code: usize) {
        self.words[code >> 6] &= !(1u64 << (code & 63));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == TeamSet::full(self.n_worlds())
    }

    pub fn is_subset(&self, other: &TeamSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            WorldIter(w).map(move |b| i * 64 + b)
        })
    }

    pub fn teams(&self) -> impl Iterator<Item = Team> + '_ {
        self.iter().map(|c| WorldSet(c as u64))
    }

    fn zip_with(&self, other: &TeamSet, f: impl Fn(u64, u64) -> u64) -> TeamSet {
        TeamSet {
            n_worlds: self.n_worlds,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &TeamSet) -> TeamSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &TeamSet) -> TeamSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &TeamSet) -> TeamSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> TeamSet {
        let mut s = TeamSet {
            n_worlds: self.n_worlds,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    /// Closure under subsets.
    pub fn down_closure(&self) -> TeamSet {
        let mut s = self.clone();
        for c in (0..self.universe()).rev() {
            if s.contains(c) {
                for w in WorldIter(c as u64) {
                    s.insert(c & !(1 << w));
                }
            }
        }
        s
    }

    /// Closure under supersets.
    pub fn up_closure(&self) -> TeamSet {
        let mut s = self.clone();
        let n = self.n_worlds();
        for c in 0..self.universe() {
            if s.contains(c) {
                for w in 0..n {
                    s.insert(c | (1 << w));
                }
            }
        }
        s
    }

    /// Elements with no proper superset in the set.
    pub fn maximal(&self) -> Vec<usize> {
        let n = self.n_worlds();
        self.iter()
            .filter(|&c| (0..n).all(|w| c >> w & 1 == 1 || !self.contains(c | (1 << w))))
            .collect()
    }

    /// Whether the set is closed under subsets.
    pub fn is_down_closed(&self) -> bool {
        let n = self.n_worlds();
        self.iter()
            .all(|c| (0..n).all(|w| c >> w & 1 == 0 || self.contains(c & !(1 << w))))
    }
}

impl fmt::Debug for TeamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.teams()).finish()
    }
}

impl BitOr for &TeamSet {
    type Output = TeamSet;
    fn bitor(self, rhs: &TeamSet) -> TeamSet {
        self.union(rhs)
    }
}

impl BitAnd for &TeamSet {
    type Output = TeamSet;
    fn bitand(self, rhs: &TeamSet) -> TeamSet {
        self.intersection(rhs)
    }
}

impl Not for &TeamSet {
    type Output = TeamSet;
    fn not(self) -> TeamSet {
        self.complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = WorldSet(0b1011);
        let subs: Vec<u64> = s.subsets().map(|t| t.0).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(WorldSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn closures() {
        let s = TeamSet::from_codes(3, [0b110]);
        let d = s.down_closure();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![0, 2, 4, 6]);
        let u = s.up_closure();
        assert_eq!(u.iter().collect::<Vec<_>>(), vec![6, 7]);
        assert!(d.is_down_closed());
        assert_eq!(d.maximal(), vec![6]);
    }

    #[test]
    fn full_trims_small_universes() {
        assert_eq!(TeamSet::full(2).len(), 4);
        assert_eq!(TeamSet::full(7).len(), 128);
        assert_eq!(TeamSet::empty(2).complement().len(), 4);
    }
}
