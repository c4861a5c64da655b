//! The exact scalar kernel: rationals, multivariate polynomials over a
//! declared symbol scope, a triangular tower of square roots, and fractions
//! with nonzero-certified denominators.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod scope;
pub mod subst;
pub mod unipoly;

pub use field::FieldElement;
pub use monomial::{Monomial, Sym};
pub use parse::{parse_expr, parse_polynomial, SignAssignment};
pub use poly::{rat, rat_int, Polynomial, Rat};
pub use scope::{ConstraintSystem, SymbolKind};
pub use subst::{substitute, Instantiation};
pub use unipoly::{Bound, UniPoly};

use num_traits::{One, Signed};

/// Renders a rational without a trailing `/1`.
pub fn render_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Human-readable polynomial, largest internal monomial first.
pub fn render_poly(p: &Polynomial, cs: &ConstraintSystem) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (idx, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(render_rat(&abs));
        }
        for (s, e) in m.iter() {
            let name = cs.symbol_name(s);
            if e == 1 {
                factors.push(name.to_string());
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Human-readable fraction.
pub fn render_field_element(fe: &FieldElement, cs: &ConstraintSystem) -> String {
    let n = render_poly(fe.numerator(), cs);
    match fe.denominator().as_constant() {
        Some(d) if d.is_one() => n,
        _ => format!("({})/({})", n, render_poly(fe.denominator(), cs)),
    }
}
