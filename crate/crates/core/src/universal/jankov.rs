use super::{Construction, DeJonghTable, UniversalArena, UniversalError};
use crate::bits::WorldSet;
use crate::formula::{Formula, Signature};
use crate::kripke::{pmorphic_image_of_generated_subframe, upsets, KripkeFrame, KripkeModel, SubframeWitness};
use crate::team::world_extent;

/// Largest frame accepted by the Jankov routines.
pub const JANKOV_CAP: usize = 6;

fn check_size(f: &KripkeFrame) -> Result<(), UniversalError> {
    if f.len() > JANKOV_CAP {
        Err(UniversalError::FrameCap {
            size: f.len(),
            cap: JANKOV_CAP,
        })
    } else {
        Ok(())
    }
}

/// The Jankov-de Jongh formula of a finite rooted frame, over one fresh
/// atom `p{w}` per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JankovFormula {
    pub formula: Formula,
    pub signature: Signature,
    /// Node of the universal model the root is sent to.
    pub root_node: usize,
}

/// Colors the frame with `V(p_w) = R(w)`, locates it in `U(|F|)` and
/// returns `ψ` of the image of the root.
pub fn jankov_formula(f: &KripkeFrame) -> Result<JankovFormula, UniversalError> {
    check_size(f)?;
    let root = f.root().ok_or(UniversalError::NotRooted)?;
    let n = f.len();
    let sig = Signature::numbered(n);
    let val = (0..n).map(|w| f.successors(w)).collect();
    let model = KripkeModel::new(f.clone(), sig.clone(), val)?;
    let mut arena = UniversalArena::new(n, Construction::Standard);
    let map = arena.locate(&model)?;
    let root_node = map[root];
    let formula = DeJonghTable::new(&arena).pair(root_node).psi;
    Ok(JankovFormula {
        formula,
        signature: sig,
        root_node,
    })
}

/// A persistent valuation on `frame` under which some world refutes the
/// standard formula `f`.
pub fn refuting_valuation(frame: &KripkeFrame, f: &Formula, sig: &Signature) -> Option<KripkeModel> {
    let ups = upsets(frame);
    let k = sig.len();
    let mut idx = vec![0usize; k];
    loop {
        let val: Vec<WorldSet> = idx.iter().map(|&i| ups[i]).collect();
        let m = KripkeModel::new(frame.clone(), sig.clone(), val).expect("upsets are persistent");
        if world_extent(&m, f).expect("standard formula") != frame.worlds() {
            return Some(m);
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            idx[i] += 1;
            if idx[i] < ups.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JankovReport {
    /// A valuation on `g` refuting `χ(f)`, if any.
    pub refutation: Option<KripkeModel>,
    /// A generated subframe of `g` mapped onto `f`, if any.
    pub image: Option<SubframeWitness>,
}

impl JankovReport {
    pub fn g_refutes(&self) -> bool {
        self.refutation.is_some()
    }

    pub fn is_image(&self) -> bool {
        self.image.is_some()
    }

    /// Both sides agree.
    pub fn consistent(&self) -> bool {
        self.g_refutes() == self.is_image()
    }
}

/// Compares `g ⊭ χ(f)` with "f is a p-morphic image of a generated
/// subframe of g".
pub fn check_jankov_characterization(f: &KripkeFrame, g: &KripkeFrame) -> Result<JankovReport, UniversalError> {
    check_size(g)?;
    let chi = jankov_formula(f)?;
    Ok(JankovReport {
        refutation: refuting_valuation(g, &chi.formula, &chi.signature),
        image: pmorphic_image_of_generated_subframe(f, g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_refutes_own_formula() {
        for f in [
            KripkeFrame::chain(2),
            KripkeFrame::from_order(3, &[(0, 1), (0, 2)]).unwrap(),
        ] {
            let chi = jankov_formula(&f).unwrap();
            assert!(refuting_valuation(&f, &chi.formula, &chi.signature).is_some());
        }
    }

    #[test]
    fn chain_against_point() {
        let r = check_jankov_characterization(&KripkeFrame::chain(2), &KripkeFrame::discrete(1)).unwrap();
        assert!(!r.g_refutes() && !r.is_image());
    }

    #[test]
    fn rejects_unrooted() {
        assert_eq!(jankov_formula(&KripkeFrame::discrete(2)).unwrap_err(), UniversalError::NotRooted);
    }
}
