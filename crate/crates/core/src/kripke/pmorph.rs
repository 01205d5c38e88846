use super::{upsets, Color, KripkeFrame, KripkeModel};
use crate::bits::WorldSet;

/// Surjective p-morphisms from `src` onto `tgt`, as world maps.
///
/// When `colors` is given, the maps must also preserve colors. At most
/// `limit` maps are returned.
pub fn find_p_morphisms(
    src: &KripkeFrame,
    tgt: &KripkeFrame,
    colors: Option<(&[Color], &[Color])>,
    limit: usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if src.len() < tgt.len() || limit == 0 {
        return out;
    }
    let order = src.top_down_order();
    let mut map = vec![usize::MAX; src.len()];
    search(src, tgt, colors, &order, 0, &mut map, &mut out, limit);
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    src: &KripkeFrame,
    tgt: &KripkeFrame,
    colors: Option<(&[Color], &[Color])>,
    order: &[usize],
    i: usize,
    map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if i == order.len() {
        let image: WorldSet = map.iter().copied().collect();
        if image == tgt.worlds() {
            out.push(map.clone());
        }
        return;
    }
    let w = order[i];
    // Strict successors are already mapped, so forth and back together say
    // that R[f(w)] is exactly f(R[w]).
    let strict = src.successors(w) - WorldSet::singleton(w);
    let succ_image: WorldSet = strict.iter().map(|v| map[v]).collect();
    for u in 0..tgt.len() {
        if let Some((cs, ct)) = colors {
            if cs[w] != ct[u] {
                continue;
            }
        }
        if tgt.successors(u) != succ_image | WorldSet::singleton(u) {
            continue;
        }
        map[w] = u;
        search(src, tgt, colors, order, i + 1, map, out, limit);
        map[w] = usize::MAX;
        if out.len() >= limit {
            return;
        }
    }
}

/// Surjective frame p-morphisms.
pub fn frame_p_morphisms(src: &KripkeFrame, tgt: &KripkeFrame) -> Vec<Vec<usize>> {
    find_p_morphisms(src, tgt, None, usize::MAX)
}

/// Surjective color-preserving p-morphisms between models.
pub fn model_p_morphisms(src: &KripkeModel, tgt: &KripkeModel) -> Vec<Vec<usize>> {
    let (cs, ct) = (src.colors(), tgt.colors());
    find_p_morphisms(src.frame(), tgt.frame(), Some((&cs, &ct)), usize::MAX)
}

/// A generated subframe of `g` together with a p-morphism onto `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubframeWitness {
    /// The upset of `g` generating the subframe.
    pub upset: WorldSet,
    /// `map[i]` is the image of the `i`-th world of `upset`.
    pub map: Vec<usize>,
}

/// Whether `f` is a p-morphic image of a generated subframe of `g`.
pub fn pmorphic_image_of_generated_subframe(f: &KripkeFrame, g: &KripkeFrame) -> Option<SubframeWitness> {
    let candidates: Vec<WorldSet> = if f.root().is_some() {
        // The preimage of a root generates a rooted subframe that suffices.
        let mut c: Vec<WorldSet> = (0..g.len()).map(|w| g.successors(w)).collect();
        c.sort();
        c.dedup();
        c
    } else {
        upsets(g).into_iter().filter(|u| !u.is_empty()).collect()
    };
    for upset in candidates {
        if upset.len() < f.len() {
            continue;
        }
        let (sub, _) = g.restrict(upset);
        if let Some(map) = find_p_morphisms(&sub, f, None, 1).pop() {
            return Some(SubframeWitness { upset, map });
        }
    }
    None
}

/// A quotient of `g` that is a p-morphic image, and an upset of it
/// isomorphic to `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    /// `block[w]` is the class of world `w` of `g`.
    pub block: Vec<usize>,
    /// Upset of the quotient (over class indices) isomorphic to `f`.
    pub upset: WorldSet,
    /// Isomorphism from the upset (renumbered) onto `f`.
    pub iso: Vec<usize>,
}

fn set_partitions(n: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn go(i: usize, n: usize, blocks: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if i == n {
            return f(cur);
        }
        for b in 0..=blocks {
            cur.push(b);
            let stop = go(i + 1, n, blocks.max(b + 1), cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(0, n, 0, &mut Vec::with_capacity(n), f);
}

/// The quotient frame if `block` induces a p-morphism onto a partial order.
fn quotient(g: &KripkeFrame, block: &[usize]) -> Option<KripkeFrame> {
    let k = block.iter().max().map_or(0, |m| m + 1);
    let mut up = vec![WorldSet::EMPTY; k];
    for w in 0..g.len() {
        for v in g.successors(w).iter() {
            up[block[w]].insert(block[v]);
        }
    }
    // Back condition per element, which also forces transitivity.
    for w in 0..g.len() {
        let img: WorldSet = g.successors(w).iter().map(|v| block[v]).collect();
        if img != up[block[w]] {
            return None;
        }
    }
    KripkeFrame::from_relation(k, &(0..k).flat_map(|a| up[a].iter().map(move |b| (a, b))).collect::<Vec<_>>()).ok()
}

/// Whether `f` is a generated subframe of a p-morphic image of `g`.
pub fn generated_subframe_of_pmorphic_image(f: &KripkeFrame, g: &KripkeFrame) -> Option<QuotientWitness> {
    let mut found = None;
    set_partitions(g.len(), &mut |block| {
        let Some(h) = quotient(g, block) else {
            return false;
        };
        for upset in upsets(&h) {
            if upset.len() != f.len() {
                continue;
            }
            let (sub, _) = h.restrict(upset);
            if let Some(iso) = find_p_morphisms(&sub, f, None, 1).pop() {
                found = Some(QuotientWitness {
                    block: block.to_vec(),
                    upset,
                    iso,
                });
                return true;
            }
        }
        false
    });
    found
}

/// Both formulations of "f embeds into g up to p-morphism", side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageLemmaCheck {
    pub image_of_subframe: Option<SubframeWitness>,
    pub subframe_of_image: Option<QuotientWitness>,
}

impl ImageLemmaCheck {
    pub fn agree(&self) -> bool {
        self.image_of_subframe.is_some() == self.subframe_of_image.is_some()
    }

    pub fn holds(&self) -> bool {
        self.image_of_subframe.is_some()
    }
}

pub fn check_image_lemma(f: &KripkeFrame, g: &KripkeFrame) -> ImageLemmaCheck {
    ImageLemmaCheck {
        image_of_subframe: pmorphic_image_of_generated_subframe(f, g),
        subframe_of_image: generated_subframe_of_pmorphic_image(f, g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Signature;

    fn fork() -> KripkeFrame {
        KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn fork_onto_chain() {
        let chain = KripkeFrame::chain(2);
        let maps = frame_p_morphisms(&fork(), &chain);
        // Both tops collapse onto the top of the chain.
        assert_eq!(maps, vec![vec![0, 1, 1]]);
        assert!(frame_p_morphisms(&chain, &fork()).is_empty());
    }

    #[test]
    fn colors_restrict_maps() {
        let sig = Signature::standard(1);
        let src = KripkeModel::new(fork(), sig.clone(), vec![WorldSet::singleton(1)]).unwrap();
        let tgt = KripkeModel::new(KripkeFrame::chain(2), sig, vec![WorldSet::singleton(1)]).unwrap();
        assert!(model_p_morphisms(&src, &tgt).is_empty());
    }

    #[test]
    fn lemma_on_small_frames() {
        let two = KripkeFrame::chain(2);
        let three = KripkeFrame::chain(3);
        let chk = check_image_lemma(&two, &three);
        assert!(chk.holds() && chk.agree());
        let chk = check_image_lemma(&fork(), &three);
        assert!(!chk.holds() && chk.agree());
        let chk = check_image_lemma(&two, &KripkeFrame::discrete(2));
        assert!(!chk.holds() && chk.agree());
    }

    #[test]
    fn partitions_counted_by_bell_numbers() {
        let mut n = 0;
        set_partitions(5, &mut |_| {
            n += 1;
            false
        });
        assert_eq!(n, 52);
    }
}
