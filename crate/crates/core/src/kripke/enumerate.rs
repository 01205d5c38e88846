use super::{KripkeError, KripkeFrame, KripkeModel};
use crate::bits::WorldSet;
use crate::formula::Signature;
use std::collections::HashSet;

/// Largest world count accepted by the exhaustive enumerators.
pub const MAX_ENUM_WORLDS: usize = 5;

fn check_cap(max_worlds: usize) -> Result<(), KripkeError> {
    if max_worlds > MAX_ENUM_WORLDS {
        Err(KripkeError::CapExceeded {
            requested: max_worlds,
            cap: MAX_ENUM_WORLDS,
        })
    } else {
        Ok(())
    }
}

/// All labeled partial orders on exactly `k` points.
fn posets(k: usize) -> Vec<KripkeFrame> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    'masks: for mask in 0u64..(1u64 << pairs.len()) {
        let mut up: Vec<WorldSet> = (0..k).map(WorldSet::singleton).collect();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if up[b].contains(a) {
                    continue 'masks;
                }
                up[a].insert(b);
            }
        }
        for a in 0..k {
            for b in up[a].iter() {
                if !up[b].is_subset(up[a]) {
                    continue 'masks;
                }
            }
        }
        out.push(KripkeFrame::from_up(up));
    }
    out
}

/// Every labeled frame with `1..=max_worlds` points, by size and then by
/// relation.
pub fn enumerate_frames(max_worlds: usize, rooted_only: bool) -> Result<Vec<KripkeFrame>, KripkeError> {
    check_cap(max_worlds)?;
    Ok((1..=max_worlds)
        .flat_map(posets)
        .filter(|f| !rooted_only || f.root().is_some())
        .collect())
}

/// All upsets of a frame, including the empty set, in a fixed order.
pub fn upsets(frame: &KripkeFrame) -> Vec<WorldSet> {
    let order = frame.top_down_order();
    let mut out = Vec::new();
    fn go(frame: &KripkeFrame, order: &[usize], i: usize, cur: WorldSet, out: &mut Vec<WorldSet>) {
        if i == order.len() {
            out.push(cur);
            return;
        }
        let w = order[i];
        go(frame, order, i + 1, cur, out);
        if frame.successors(w).is_subset(cur | WorldSet::singleton(w)) {
            go(frame, order, i + 1, cur | WorldSet::singleton(w), out);
        }
    }
    go(frame, &order, 0, WorldSet::EMPTY, &mut out);
    out.sort();
    out
}

/// All persistent valuations of `sig` on `frame`.
pub fn valuations(frame: &KripkeFrame, sig: &Signature) -> Vec<Vec<WorldSet>> {
    let ups = upsets(frame);
    let mut out = vec![Vec::new()];
    for _ in 0..sig.len() {
        out = out
            .into_iter()
            .flat_map(|v| {
                ups.iter().map(move |&u| {
                    let mut v = v.clone();
                    v.push(u);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every labeled model over `sig` with `1..=max_worlds` points.
/// Isomorphic copies are kept.
pub fn enumerate_models(
    max_worlds: usize,
    sig: &Signature,
    rooted_only: bool,
) -> Result<Vec<KripkeModel>, KripkeError> {
    let frames = enumerate_frames(max_worlds, rooted_only)?;
    let mut out = Vec::new();
    for f in frames {
        for val in valuations(&f, sig) {
            out.push(KripkeModel {
                frame: f.clone(),
                sig: sig.clone(),
                val,
            });
        }
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// An isomorphism invariant that separates non-isomorphic models:
/// the lexicographically least relabeling.
pub fn canonical_form(m: &KripkeModel) -> (usize, Vec<u64>) {
    let k = m.len();
    let mut best: Option<Vec<u64>> = None;
    for perm in permutations(k) {
        let relabel = |s: WorldSet| s.iter().fold(0u64, |acc, w| acc | 1 << perm[w]);
        let mut key = vec![0u64; k];
        for w in 0..k {
            key[perm[w]] = relabel(m.frame.successors(w));
        }
        key.extend(m.val.iter().map(|&s| relabel(s)));
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    (k, best.unwrap_or_default())
}

/// Keeps the first model of each isomorphism class.
pub fn dedup_isomorphic(models: Vec<KripkeModel>) -> Vec<KripkeModel> {
    let mut seen = HashSet::new();
    models
        .into_iter()
        .filter(|m| seen.insert(canonical_form(m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_poset_counts() {
        let counts: Vec<usize> = (1..=4).map(|k| posets(k).len()).collect();
        assert_eq!(counts, vec![1, 3, 19, 219]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_frames(6, false),
            Err(KripkeError::CapExceeded { requested: 6, cap: 5 })
        ));
    }

    #[test]
    fn upsets_of_fork() {
        let f = KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).unwrap();
        let u = upsets(&f);
        assert_eq!(u.len(), 5);
        assert!(u.iter().all(|&s| f.is_upset(s)));
    }

    #[test]
    fn model_counts_small() {
        // Frames with at most 3 points, one atom.
        let sig = Signature::standard(1);
        assert_eq!(enumerate_models(3, &sig, false).unwrap().len(), 110);
        let iso = dedup_isomorphic(enumerate_models(3, &sig, false).unwrap());
        assert!(iso.len() < 110);
    }
}
