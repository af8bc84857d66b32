//! Object expressions such as `E+B`, `E[-2]` or `cone(h)+B[1]`.
//!
//! A term is an object name or `cone(m)` for a basis morphism `m: X → Y` of
//! degree `k`, read as the cone of `m: X[−k] → Y`. Any term may carry a
//! shift `[n]`. Terms are joined by `+` into a direct sum.

use crate::complex::{cone, direct_sum, shift, GradedMorphism, Presentation, TwistedComplex};
use crate::error::{Error, Result};
use crate::presentation::LinComb;

pub fn parse_expr(p: &Presentation, text: &str) -> Result<TwistedComplex> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Input("empty object expression".into()));
    }
    compact
        .split('+')
        .try_fold(TwistedComplex::zero(p.clone()), |acc, term| direct_sum(&acc, &parse_term(p, term)?))
}

fn parse_term(p: &Presentation, term: &str) -> Result<TwistedComplex> {
    let bad = || Error::Input(format!("cannot parse term `{term}`"));
    let (atom, n) = match term.strip_suffix(']') {
        Some(head) => {
            let (atom, num) = head.rsplit_once('[').ok_or_else(bad)?;
            (atom, num.parse::<i64>().map_err(|_| bad())?)
        }
        None => (term, 0),
    };
    if atom.is_empty() {
        return Err(bad());
    }
    let x = match atom.strip_prefix("cone(").and_then(|r| r.strip_suffix(')')) {
        Some(name) => {
            let m = p.hom_by_name(name)?;
            let hb = p.hom(m);
            let src = TwistedComplex::generator(p.clone(), hb.src, -hb.degree);
            let dst = TwistedComplex::generator(p.clone(), hb.dst, 0);
            let f = GradedMorphism::new(src, dst, 0, vec![((0, 0), LinComb::basis(m, p.field()))])?;
            cone(&f)?
        }
        None if atom.contains(['(', ')', '[', ']']) => return Err(bad()),
        None => TwistedComplex::generator(p.clone(), p.object_by_name(atom)?, 0),
    };
    Ok(shift(&x, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::builtin_model;

    #[test]
    fn parses_sums_shifts_and_cones() {
        let p = builtin_model("orthogonal-p1").unwrap();
        assert_eq!(parse_expr(&p, "E + B").unwrap().display_slots(), "(E,0) (B,0)");
        assert_eq!(parse_expr(&p, "E[-2]").unwrap().display_slots(), "(E,-2)");
        assert_eq!(parse_expr(&p, "cone(h)").unwrap().display_slots(), "(E,-1) (E,0)");
        assert_eq!(parse_expr(&p, "cone(h)[1]+B").unwrap().display_slots(), "(E,0) (E,1) (B,0)");
        assert_eq!(parse_expr(&p, "cone(id_E)").unwrap().len(), 2);
    }

    #[test]
    fn rejects_garbage() {
        let p = builtin_model("orthogonal-p1").unwrap();
        for bad in ["", "E+", "E[x]", "E[-2", "cone(h", "X", "cone(q)", "E(1)"] {
            assert!(parse_expr(&p, bad).is_err(), "{bad}");
        }
    }
}
