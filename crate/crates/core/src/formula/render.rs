use super::{Connective, Formula, Signature};

// Binding strength: larger binds tighter.
const P_IMPL: u8 = 1;
const P_GOR: u8 = 2;
const P_LOR: u8 = 3;
const P_AND: u8 = 4;
const P_ATOM: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Bot | Formula::Atom(_) => P_ATOM,
        Formula::Impl(_, b) if **b == Formula::Bot => P_ATOM,
        Formula::Impl(..) => P_IMPL,
        Formula::GlobalOr(..) => P_GOR,
        Formula::LocalOr(..) => P_LOR,
        Formula::And(..) => P_AND,
    }
}

/// Renders with the minimal parentheses needed to parse back to the same
/// tree. `x -> bot` is printed as `~x`.
pub fn render(f: &Formula, sig: &Signature) -> String {
    let mut out = String::new();
    write(f, sig, &mut out);
    out
}

fn write_wrapped(f: &Formula, sig: &Signature, out: &mut String, wrap: bool) {
    if wrap {
        out.push('(');
        write(f, sig, out);
        out.push(')');
    } else {
        write(f, sig, out);
    }
}

fn write(f: &Formula, sig: &Signature, out: &mut String) {
    match f {
        Formula::Bot => out.push_str("bot"),
        Formula::Atom(a) => out.push_str(sig.name(*a)),
        Formula::Impl(a, b) if **b == Formula::Bot => {
            out.push('~');
            write_wrapped(a, sig, out, prec(a) < P_ATOM);
        }
        _ => {
            let (op, a, b) = f.split().unwrap();
            let p = prec(f);
            let (wrap_l, wrap_r) = if op == Connective::Impl {
                (prec(a) <= p, prec(b) < p)
            } else {
                (prec(a) < p, prec(b) <= p)
            };
            write_wrapped(a, sig, out, wrap_l);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_wrapped(b, sig, out, wrap_r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn renders_minimally() {
        let s = Signature::standard(2);
        for src in [
            "p \\\\/ q",
            "p \\/ ~p",
            "(p -> q) -> p",
            "p -> q -> p",
            "~(p /\\ q)",
            "~~p -> p",
            "(p \\/ q) /\\ q",
            "p \\/ (q \\/ p)",
            "(p \\\\/ q) \\/ p",
            "~bot",
            "~(p -> q)",
        ] {
            let f = parse(src, &s).unwrap();
            assert_eq!(render(&f, &s), src);
        }
    }
}
