//! Single-world intuitionistic modal semantics over powerset models, and
//! the translations of team formulas into it.

mod model;
mod preserve;
mod syntax;
mod translate;

pub use model::{
    bi_relation_to_dot, extent_ik, eval_ik, full_powerset_model, powerset_model, BiRelationModel, IkModel,
    TensoredModel, BRIDGE_CAP,
};
pub use preserve::{check_preservation, PreservationMismatch, PreservationReport, Translation};
pub use syntax::{parse_modal, render_modal};
pub use translate::{translate_bold_tau, translate_tau};

use crate::formula::{Atom, ParseError};
use crate::kripke::KripkeError;
use crate::team::TeamError;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFormula {
    Bot,
    /// The constant true exactly at the join identity.
    Zero,
    Atom(Atom),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Impl(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
    Diamond(Box<ModalFormula>),
    Tensor(Box<ModalFormula>, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn atom(i: usize) -> Self {
        ModalFormula::Atom(Atom(i as u16))
    }

    pub fn and(a: Self, b: Self) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Self, b: Self) -> Self {
        ModalFormula::Impl(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Self, b: Self) -> Self {
        ModalFormula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: Self) -> Self {
        ModalFormula::Box(Box::new(a))
    }

    pub fn diamond(a: Self) -> Self {
        ModalFormula::Diamond(Box::new(a))
    }

    pub fn not(a: Self) -> Self {
        Self::imp(a, ModalFormula::Bot)
    }

    pub fn top() -> Self {
        Self::not(ModalFormula::Bot)
    }

    /// Uses `⊗` or `𝟎`.
    pub fn needs_tensor(&self) -> bool {
        use ModalFormula::*;
        match self {
            Zero | Tensor(..) => true,
            Bot | Atom(_) => false,
            Box(a) | Diamond(a) => a.needs_tensor(),
            And(a, b) | Or(a, b) | Impl(a, b) => a.needs_tensor() || b.needs_tensor(),
        }
    }

    pub fn depth(&self) -> usize {
        use ModalFormula::*;
        match self {
            Bot | Zero | Atom(_) => 0,
            Box(a) | Diamond(a) => 1 + a.depth(),
            And(a, b) | Or(a, b) | Impl(a, b) | Tensor(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// One past the largest atom index.
    pub fn atom_bound(&self) -> usize {
        use ModalFormula::*;
        match self {
            Bot | Zero => 0,
            Atom(a) => a.index() + 1,
            Box(a) | Diamond(a) => a.atom_bound(),
            And(a, b) | Or(a, b) | Impl(a, b) | Tensor(a, b) => a.atom_bound().max(b.atom_bound()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModalError {
    #[error("{worlds} worlds exceeds the powerset cap {cap}")]
    CapExceeded { worlds: usize, cap: usize },
    #[error("domain of {0} points is empty or larger than 64")]
    DomainSize(usize),
    #[error("table has {found} rows, expected {expected}")]
    WrongSize { found: usize, expected: usize },
    #[error("point {0} is out of range")]
    OutOfRange(usize),
    #[error("order is not a partial order at {w}, {v}")]
    NotPartialOrder { w: usize, v: usize },
    #[error("F1 fails: {w} >= {w2} and {w} R {v}, but no successor of {w2} lies below {v}")]
    F1 { w: usize, w2: usize, v: usize },
    #[error("F2 fails: {w} R {v} and {v} >= {v2}, but no point below {w} sees {v2}")]
    F2 { w: usize, v: usize, v2: usize },
    #[error("valuation of {atom} is not persistent: {w} >= {v}")]
    NotPersistent { atom: String, w: usize, v: usize },
    #[error("join is not a bounded semilattice: {0}")]
    Semilattice(String),
    #[error("order is not the converse of the join order at {w}, {v}")]
    OrderMismatch { w: usize, v: usize },
    #[error("tensor or zero needs a tensored model")]
    TensorOnPlainModel,
    #[error("atom index {0} is not valued by the model")]
    UnknownAtom(usize),
    #[error("formula contains local disjunction")]
    LocalOr,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Team(#[from] TeamError),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}
