//! Team semantics for propositional intuitionistic logic with a local and a
//! global disjunction.

pub mod bits;
pub mod formula;
pub mod kripke;
pub mod team;
pub mod universal;
pub mod normalform;
pub mod grid;
pub mod genframes;
pub mod modalbridge;
pub mod suite;
