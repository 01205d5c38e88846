//! Team semantics over Kripke models.
//!
//! Formulas are evaluated bottom-up into extents: the set of all teams
//! satisfying them. Two independent algebras compute extents, one through
//! the powerset characterization of implication ([`StandardSemantics`]) and
//! one through the literal cover and lifted-relation clauses
//! ([`CoverSemantics`]).

mod eval;
mod lift;
mod props;

pub use eval::{
    eval_team, eval_team_strict_cover, eval_world, world_extent, CoverSemantics, StandardSemantics,
    TeamEvaluator,
};
pub use lift::{compose_superset_lift, lift_relation, LiftKind, LiftedRelation};
pub use props::{
    check_extent_property, check_intermediate_soundness, check_property, dp_disjoint_union_harness,
    DpReport, FramePredicate, Property, PropertyCheck, PropertyWitness, SoundnessFailure,
    SoundnessReport,
};

use crate::bits::TeamSet;
use crate::formula::{Atom, Connective, Formula};
use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

/// Largest frame for which powerset tables are built.
pub const TEAM_CAP: usize = 12;

/// The extent of a formula: the set of teams satisfying it.
pub type Extent = TeamSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TeamError {
    #[error("model has {worlds} worlds, more than the team cap {cap}")]
    CapExceeded { worlds: usize, cap: usize },
    #[error("formula is not standard")]
    NotStandard,
    #[error("atom index {0} is not valued by the model")]
    UnknownAtom(usize),
    #[error("world {0} is out of range")]
    WorldOutOfRange(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Kripke(#[from] crate::kripke::KripkeError),
}

pub(crate) fn check_cap(worlds: usize) -> Result<(), TeamError> {
    if worlds > TEAM_CAP {
        Err(TeamError::CapExceeded {
            worlds,
            cap: TEAM_CAP,
        })
    } else {
        Ok(())
    }
}

/// A compositional interpretation of the connectives over some extent type.
pub trait ExtentAlgebra {
    type Ext: Clone + Eq + Hash + Debug;

    fn bot(&self) -> Self::Ext;

    fn atom(&self, a: Atom) -> Self::Ext;

    fn combine(&self, op: Connective, a: &Self::Ext, b: &Self::Ext) -> Self::Ext;

    /// Folds the algebra over `f`, interpreting atoms with `leaf`.
    fn extent_with(&self, f: &Formula, leaf: &dyn Fn(Atom) -> Self::Ext) -> Self::Ext {
        match f {
            Formula::Bot => self.bot(),
            Formula::Atom(a) => leaf(*a),
            _ => {
                let (op, a, b) = f.split().unwrap();
                let ea = self.extent_with(a, leaf);
                let eb = self.extent_with(b, leaf);
                self.combine(op, &ea, &eb)
            }
        }
    }

    fn extent(&self, f: &Formula) -> Self::Ext {
        self.extent_with(f, &|a| self.atom(a))
    }
}

/// Runs two algebras in lockstep.
pub struct Paired<A, B>(pub A, pub B);

impl<A: ExtentAlgebra, B: ExtentAlgebra> ExtentAlgebra for Paired<A, B> {
    type Ext = (A::Ext, B::Ext);

    fn bot(&self) -> Self::Ext {
        (self.0.bot(), self.1.bot())
    }

    fn atom(&self, a: Atom) -> Self::Ext {
        (self.0.atom(a), self.1.atom(a))
    }

    fn combine(&self, op: Connective, a: &Self::Ext, b: &Self::Ext) -> Self::Ext {
        (self.0.combine(op, &a.0, &b.0), self.1.combine(op, &a.1, &b.1))
    }
}
