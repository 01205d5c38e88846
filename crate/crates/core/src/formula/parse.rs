use super::{Connective, Formula, Signature};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    BadChar { pos: usize, ch: char },
    #[error("unexpected token {found:?} at offset {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown atom {name:?} at offset {pos}")]
    UnknownAtom { pos: usize, name: String },
}

/// Tokens shared by the team and modal grammars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Bot,
    Zero,
    Not,
    And,
    LocalOr,
    GlobalOr,
    Arrow,
    Tensor,
    BoxOp,
    Diamond,
    LParen,
    RParen,
}

impl Tok {
    pub(crate) fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Bot => "bot".into(),
            Tok::Zero => "zero".into(),
            Tok::Not => "~".into(),
            Tok::And => "/\\".into(),
            Tok::LocalOr => "\\/".into(),
            Tok::GlobalOr => "\\\\/".into(),
            Tok::Arrow => "->".into(),
            Tok::Tensor => "(*)".into(),
            Tok::BoxOp => "[]".into(),
            Tok::Diamond => "<>".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let rest = &src[i..];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = if rest.starts_with("\\\\/") {
            (Tok::GlobalOr, 3)
        } else if rest.starts_with("\\/") {
            (Tok::LocalOr, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("(*)") {
            (Tok::Tensor, 3)
        } else if rest.starts_with("[]") {
            (Tok::BoxOp, 2)
        } else if rest.starts_with("<>") {
            (Tok::Diamond, 2)
        } else if c == b'~' {
            (Tok::Not, 1)
        } else if c == b'(' {
            (Tok::LParen, 1)
        } else if c == b')' {
            (Tok::RParen, 1)
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let len = rest
                .bytes()
                .take_while(|&d| d.is_ascii_alphanumeric() || d == b'_' || d == b'\'')
                .count();
            let word = &rest[..len];
            let tok = match word {
                "bot" => Tok::Bot,
                "zero" => Tok::Zero,
                _ => Tok::Ident(word.to_string()),
            };
            (tok, len)
        } else {
            return Err(ParseError::BadChar {
                pos: i,
                ch: rest.chars().next().unwrap(),
            });
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(toks: Vec<(usize, Tok)>) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    pub(crate) fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((p, t)) => ParseError::Unexpected {
                pos: *p,
                found: t.text(),
            },
            None => ParseError::UnexpectedEnd,
        }
    }

    pub(crate) fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }
}

/// Parses a formula whose atoms must all belong to `sig`.
///
/// Precedence, tightest first: `~`, `/\`, `\/`, `\\/`, `->`. Implication
/// associates to the right, the other binary connectives to the left.
pub fn parse(src: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(lex(src)?),
        sig,
    };
    let f = p.implication()?;
    p.cur.finish()?;
    Ok(f)
}

/// Parses a formula, adding unseen atom names to `sig` in order of first
/// occurrence.
pub fn parse_interning(src: &str, sig: &mut Signature) -> Result<Formula, ParseError> {
    for (_, t) in lex(src)? {
        if let Tok::Ident(name) = t {
            sig.intern(&name);
        }
    }
    parse(src, sig)
}

struct Parser<'s> {
    cur: Cursor,
    sig: &'s Signature,
}

impl Parser<'_> {
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.left_assoc(Tok::GlobalOr, Connective::GlobalOr)?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn left_assoc(&mut self, tok: Tok, op: Connective) -> Result<Formula, ParseError> {
        let next = |p: &mut Self| match op {
            Connective::GlobalOr => p.left_assoc(Tok::LocalOr, Connective::LocalOr),
            Connective::LocalOr => p.left_assoc(Tok::And, Connective::And),
            _ => p.unary(),
        };
        let mut acc = next(self)?;
        while self.cur.eat(&tok) {
            let rhs = next(self)?;
            acc = Formula::binary(op, acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let (pos, tok) = self.cur.next()?;
        match tok {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::Bot => Ok(Formula::Bot),
            Tok::Ident(name) => self
                .sig
                .lookup(&name)
                .map(Formula::Atom)
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

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::standard(3)
    }

    #[test]
    fn precedence_and_associativity() {
        let s = sig();
        let p = || Formula::atom(0);
        let q = || Formula::atom(1);
        let r = || Formula::atom(2);
        assert_eq!(
            parse("p -> q -> r", &s).unwrap(),
            Formula::imp(p(), Formula::imp(q(), r()))
        );
        assert_eq!(
            parse("p \\/ q /\\ r", &s).unwrap(),
            Formula::lor(p(), Formula::and(q(), r()))
        );
        assert_eq!(
            parse("p \\\\/ q \\/ r", &s).unwrap(),
            Formula::gor(p(), Formula::lor(q(), r()))
        );
        assert_eq!(
            parse("p /\\ q /\\ r", &s).unwrap(),
            Formula::and(Formula::and(p(), q()), r())
        );
        assert_eq!(parse("~~p", &s).unwrap(), Formula::not(Formula::not(p())));
        assert_eq!(
            parse("~p /\\ q", &s).unwrap(),
            Formula::and(Formula::not(p()), q())
        );
    }

    #[test]
    fn errors() {
        let s = sig();
        assert!(matches!(parse("p ->", &s), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(
            parse("p -> x", &s),
            Err(ParseError::UnknownAtom { pos: 5, .. })
        ));
        assert!(matches!(parse("p ) q", &s), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse("p $ q", &s), Err(ParseError::BadChar { .. })));
        assert!(matches!(parse("[]p", &s), Err(ParseError::Unexpected { .. })));
    }

    #[test]
    fn primed_atoms() {
        let s = Signature::new(["p", "p'"]);
        assert_eq!(parse("p' -> p", &s).unwrap(), Formula::imp(Formula::atom(1), Formula::atom(0)));
    }
}
