use super::ModalFormula;
use crate::formula::parse::{lex, Cursor, Tok};
use crate::formula::{ParseError, Signature};

/// Parses a modal formula. Atoms must belong to `sig`.
///
/// Precedence, tightest first: `~`, `[]`, `<>` (prefix), `/\`, `(*)`,
/// `\/`, `->`. Implication associates to the right.
pub fn parse_modal(src: &str, sig: &Signature) -> Result<ModalFormula, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(lex(src)?),
        sig,
    };
    let f = p.implication()?;
    p.cur.finish()?;
    Ok(f)
}

struct Parser<'s> {
    cur: Cursor,
    sig: &'s Signature,
}

#[derive(Clone, Copy)]
enum Level {
    Or,
    Tensor,
    And,
}

impl Parser<'_> {
    fn implication(&mut self) -> Result<ModalFormula, ParseError> {
        let lhs = self.level(Level::Or)?;
        if self.cur.eat(&Tok::Arrow) {
            Ok(ModalFormula::imp(lhs, self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn level(&mut self, l: Level) -> Result<ModalFormula, ParseError> {
        let (tok, next, build): (Tok, Option<Level>, fn(ModalFormula, ModalFormula) -> ModalFormula) = match l {
            Level::Or => (Tok::LocalOr, Some(Level::Tensor), ModalFormula::or),
            Level::Tensor => (Tok::Tensor, Some(Level::And), ModalFormula::tensor),
            Level::And => (Tok::And, None, ModalFormula::and),
        };
        let sub = |p: &mut Self| match next {
            Some(n) => p.level(n),
            None => p.unary(),
        };
        let mut acc = sub(self)?;
        while self.cur.eat(&tok) {
            let rhs = sub(self)?;
            acc = build(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ModalFormula, ParseError> {
        let (pos, tok) = self.cur.next()?;
        match tok {
            Tok::Not => Ok(ModalFormula::not(self.unary()?)),
            Tok::BoxOp => Ok(ModalFormula::boxed(self.unary()?)),
            Tok::Diamond => Ok(ModalFormula::diamond(self.unary()?)),
            Tok::Bot => Ok(ModalFormula::Bot),
            Tok::Zero => Ok(ModalFormula::Zero),
            Tok::Ident(name) => self
                .sig
                .lookup(&name)
                .map(ModalFormula::Atom)
                .ok_or(ParseError::UnknownAtom { pos, name }),
            Tok::LParen => {
                let f = self.implication()?;
                self.cur.expect(&Tok::RParen)?;
                Ok(f)
            }
            other => Err(ParseError::Unexpected {
                pos,
                found: other.text(),
            }),
        }
    }
}

const P_IMPL: u8 = 1;
const P_OR: u8 = 2;
const P_TENSOR: u8 = 3;
const P_AND: u8 = 4;
const P_UNARY: u8 = 5;

fn prec(f: &ModalFormula) -> u8 {
    use ModalFormula::*;
    match f {
        Impl(_, b) if **b == Bot => P_UNARY,
        Impl(..) => P_IMPL,
        Or(..) => P_OR,
        Tensor(..) => P_TENSOR,
        And(..) => P_AND,
        _ => P_UNARY,
    }
}

/// Renders with minimal parentheses; `x -> bot` prints as `~x`.
pub fn render_modal(f: &ModalFormula, sig: &Signature) -> String {
    let mut out = String::new();
    write(f, sig, &mut out);
    out
}

fn wrapped(f: &ModalFormula, sig: &Signature, out: &mut String, wrap: bool) {
    if wrap {
        out.push('(');
        write(f, sig, out);
        out.push(')');
    } else {
        write(f, sig, out);
    }
}

fn write(f: &ModalFormula, sig: &Signature, out: &mut String) {
    use ModalFormula::*;
    let (sym, a, b) = match f {
        Bot => return out.push_str("bot"),
        Zero => return out.push_str("zero"),
        Atom(a) => return out.push_str(sig.name(*a)),
        Impl(a, b) if **b == Bot => {
            out.push('~');
            return wrapped(a, sig, out, prec(a) < P_UNARY);
        }
        Box(a) | Diamond(a) => {
            out.push_str(if matches!(f, Box(_)) { "[]" } else { "<>" });
            return wrapped(a, sig, out, prec(a) < P_UNARY);
        }
        And(a, b) => ("/\\", a, b),
        Or(a, b) => ("\\/", a, b),
        Tensor(a, b) => ("(*)", a, b),
        Impl(a, b) => ("->", a, b),
    };
    let p = prec(f);
    let (wl, wr) = if p == P_IMPL {
        (prec(a) <= p, prec(b) < p)
    } else {
        (prec(a) < p, prec(b) <= p)
    };
    wrapped(a, sig, out, wl);
    out.push(' ');
    out.push_str(sym);
    out.push(' ');
    wrapped(b, sig, out, wr);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let s = Signature::standard(3);
        let p = || ModalFormula::atom(0);
        let q = || ModalFormula::atom(1);
        let r = || ModalFormula::atom(2);
        assert_eq!(
            parse_modal("[]p /\\ q (*) r \\/ p", &s).unwrap(),
            ModalFormula::or(
                ModalFormula::tensor(ModalFormula::and(ModalFormula::boxed(p()), q()), r()),
                p()
            )
        );
        assert_eq!(
            parse_modal("<>~p -> zero", &s).unwrap(),
            ModalFormula::imp(ModalFormula::diamond(ModalFormula::not(p())), ModalFormula::Zero)
        );
        assert!(parse_modal("p \\\\/ q", &s).is_err());
    }

    #[test]
    fn round_trip() {
        let s = Signature::standard(3);
        for src in [
            "[](p -> q)",
            "p (*) q \\/ r",
            "(p \\/ q) (*) r",
            "[][]p -> <>(q /\\ r)",
            "~[](p -> zero)",
            "(p -> q) -> r",
            "p -> q -> r",
            "p (*) (q (*) r)",
        ] {
            let f = parse_modal(src, &s).unwrap();
            let text = render_modal(&f, &s);
            assert_eq!(parse_modal(&text, &s).unwrap(), f, "{src} -> {text}");
        }
        assert_eq!(render_modal(&parse_modal("(p (*) q) (*) r", &s).unwrap(), &s), "p (*) q (*) r");
    }
}
