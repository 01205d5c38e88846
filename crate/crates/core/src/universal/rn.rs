use crate::formula::Formula;

/// Largest index accepted by the polynomial builders.
pub const RN_CAP: usize = 24;

fn p() -> Formula {
    Formula::atom(0)
}

/// The Rieger-Nishimura polynomial `g_k(p)`. Returns `None` above the cap.
pub fn rn_polynomial(k: usize) -> Option<Formula> {
    if k > RN_CAP {
        return None;
    }
    let mut g = vec![
        p(),
        Formula::not(p()),
        Formula::not(Formula::not(p())),
        Formula::imp(Formula::not(Formula::not(p())), p()),
    ];
    while g.len() <= k {
        let n = g.len() - 4;
        let next = Formula::imp(g[n + 3].clone(), Formula::lor(g[n].clone(), g[n + 1].clone()));
        g.push(next);
    }
    Some(g.swap_remove(k))
}

/// The companion polynomial `f_k(p)` for `k >= 1`.
pub fn rn_f_polynomial(k: usize) -> Option<Formula> {
    match k {
        0 => None,
        1 => Some(Formula::lor(p(), Formula::not(p()))),
        _ => Some(Formula::lor(rn_polynomial(k)?, rn_polynomial(k - 1)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Signature};

    #[test]
    fn small_indices() {
        let s = Signature::standard(1);
        assert_eq!(rn_polynomial(3).unwrap(), parse("~~p -> p", &s).unwrap());
        assert_eq!(
            rn_polynomial(5).unwrap(),
            parse("((~~p -> p) -> p \\/ ~p) -> ~p \\/ ~~p", &s).unwrap()
        );
        assert_eq!(rn_f_polynomial(2).unwrap(), parse("~~p \\/ ~p", &s).unwrap());
        assert!(rn_polynomial(RN_CAP + 1).is_none());
    }
}
