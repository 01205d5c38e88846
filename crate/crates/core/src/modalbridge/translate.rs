use super::{ModalError, ModalFormula};
use crate::formula::Formula;

/// `τ` on the local-disjunction-free fragment: `⫽` becomes `∨` and
/// `φ → ψ` becomes `□(φ → ψ)`.
pub fn translate_tau(f: &Formula) -> Result<ModalFormula, ModalError> {
    translate(f, false)
}

/// The bold translation of every formula: as `τ`, but `⊥` becomes `𝟎`
/// and `∨` becomes `⊗`.
pub fn translate_bold_tau(f: &Formula) -> ModalFormula {
    translate(f, true).expect("bold translation is total")
}

fn translate(f: &Formula, bold: bool) -> Result<ModalFormula, ModalError> {
    let go = |g: &Formula| translate(g, bold);
    Ok(match f {
        Formula::Bot if bold => ModalFormula::Zero,
        Formula::Bot => ModalFormula::Bot,
        Formula::Atom(a) => ModalFormula::Atom(*a),
        Formula::And(a, b) => ModalFormula::and(go(a)?, go(b)?),
        Formula::GlobalOr(a, b) => ModalFormula::or(go(a)?, go(b)?),
        Formula::LocalOr(a, b) if bold => ModalFormula::tensor(go(a)?, go(b)?),
        Formula::LocalOr(..) => return Err(ModalError::LocalOr),
        Formula::Impl(a, b) => ModalFormula::boxed(ModalFormula::imp(go(a)?, go(b)?)),
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse_modal;
    use super::*;
    use crate::formula::{parse, Signature};

    #[test]
    fn clauses() {
        let s = Signature::standard(2);
        let t = |src: &str| translate_tau(&parse(src, &s).unwrap());
        let b = |src: &str| translate_bold_tau(&parse(src, &s).unwrap());
        let m = |src: &str| parse_modal(src, &s).unwrap();
        assert_eq!(t("p -> q").unwrap(), m("[](p -> q)"));
        assert_eq!(t("p \\\\/ q").unwrap(), m("p \\/ q"));
        assert_eq!(t("bot").unwrap(), ModalFormula::Bot);
        assert_eq!(t("p \\/ q").unwrap_err(), ModalError::LocalOr);
        assert_eq!(b("p \\/ q"), m("p (*) q"));
        assert_eq!(b("~p"), m("[](p -> zero)"));
        assert_eq!(b("p /\\ q"), m("p /\\ q"));
        assert_eq!(b("bot"), ModalFormula::Zero);
    }
}
