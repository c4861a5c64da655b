//! Polynomial ideals over the rationals: Buchberger's algorithm with lex and
//! grevlex orders, normal forms, ideal membership, and extraction of
//! saturated integer generators from tensor components.

pub mod buchberger;
pub mod gpoly;

pub use buchberger::{
    autoreduce, buchberger, buchberger_seq, buchberger_with, is_member, normal_form,
    s_polynomial, Budget, DivisionStep, GbOutcome, GroebnerBasis, Transcript,
};
pub use gpoly::{from_kernel, to_kernel, Expv, GPoly, OrderKind};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{
    parse_polynomial, ConstraintSystem, FieldElement, Polynomial, SignAssignment, Sym,
};

/// A polynomial system: named variables (most significant first), an order,
/// ideal generators, and the nonzero hypotheses used for saturation.
#[derive(Debug, Clone)]
pub struct PolySystem {
    pub variables: Vec<String>,
    pub order: OrderKind,
    pub generators: Vec<GPoly>,
    pub nonzero: Vec<GPoly>,
}

#[derive(Deserialize)]
struct PolySystemFile {
    variables: Vec<String>,
    order: String,
    generators: Vec<String>,
    #[serde(default)]
    nonzero: Vec<String>,
}

impl PolySystem {
    pub fn new(variables: Vec<String>, order: OrderKind) -> Self {
        PolySystem { variables, order, generators: Vec::new(), nonzero: Vec::new() }
    }

    /// Loads the JSON document `{"variables", "order", "generators", "nonzero"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PolySystemFile = serde_json::from_str(text)?;
        let order = OrderKind::parse(&raw.order)?;
        let mut sys = PolySystem::new(raw.variables, order);
        let (cs, syms) = sys.scope()?;
        for g in &raw.generators {
            let p = parse_polynomial(g, &cs, &SignAssignment::new())?;
            let gp = from_kernel(&p, &syms, order, &cs)?.primitive();
            if !gp.is_zero() && !sys.generators.contains(&gp) {
                sys.generators.push(gp);
            }
        }
        for g in &raw.nonzero {
            let p = parse_polynomial(g, &cs, &SignAssignment::new())?;
            sys.nonzero.push(from_kernel(&p, &syms, order, &cs)?.primitive());
        }
        Ok(sys)
    }

    /// A kernel scope containing exactly the system variables.
    pub fn scope(&self) -> Result<(ConstraintSystem, Vec<Sym>)> {
        let mut cs = ConstraintSystem::new();
        let mut syms = Vec::with_capacity(self.variables.len());
        for v in &self.variables {
            syms.push(cs.declare_parameter(v, false, false)?);
        }
        Ok((cs, syms))
    }

    /// Parses an expression in this system's variables into the dense layer.
    pub fn parse_poly(&self, expr: &str) -> Result<GPoly> {
        let (cs, syms) = self.scope()?;
        let p = parse_polynomial(expr, &cs, &SignAssignment::new())?;
        from_kernel(&p, &syms, self.order, &cs)
    }

    pub fn groebner(&self, budget: &Budget) -> GbOutcome {
        buchberger(&self.generators, self.order, budget)
    }

    pub fn is_member(&self, p: &GPoly, budget: &Budget) -> Result<bool> {
        is_member(p, &self.generators, self.order, budget)
    }
}

/// Builds the ideal generated by the numerators of the given tensor
/// components, saturated by the declared-nonzero polynomials: each numerator
/// is divided exactly by every nonzero hypothesis (and by nonzero symbol
/// factors) as long as it stays divisible, then content-cleared. Denominators
/// must be recognized nonzero.
pub fn ideal_from_components(
    components: &[FieldElement],
    cs: &ConstraintSystem,
    variables: &[Sym],
    order: OrderKind,
) -> Result<PolySystem> {
    let names: Vec<String> = variables
        .iter()
        .map(|&s| cs.symbol_name(s).to_string())
        .collect();
    let mut sys = PolySystem::new(names, order);
    for fe in components {
        if !cs.is_recognized_nonzero(fe.denominator()) {
            return Err(Error::DenominatorNotNonzero(crate::exact::render_poly(
                fe.denominator(),
                cs,
            )));
        }
        let mut num = cs.reduce(fe.numerator());
        if num.is_zero() {
            continue;
        }
        // strip monomial factors in nonzero-flagged symbols
        let mc = num.monomial_content();
        let mut strip = crate::exact::Monomial::one();
        for (s, e) in mc.iter() {
            if cs.symbol_nonzero(s) {
                strip = strip.mul(&crate::exact::Monomial::var_pow(s, e));
            }
        }
        if !strip.is_one() {
            num = Polynomial::from_terms(
                num.terms().map(|(m, c)| (m.div(&strip).unwrap(), c.clone())),
            );
        }
        // saturate by the declared nonzero polynomials
        loop {
            let mut progressed = false;
            for g in cs.nonzero_declarations() {
                while let Some(q) = num.exact_div(g) {
                    num = q;
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        let gp = from_kernel(&num.primitive_part(), variables, order, cs)?.primitive();
        if !gp.is_zero() && !sys.generators.contains(&gp) {
            sys.generators.push(gp);
        }
    }
    for g in cs.nonzero_declarations() {
        if let Ok(gp) = from_kernel(g, variables, order, cs) {
            sys.nonzero.push(gp.primitive());
        }
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys2(order: OrderKind) -> PolySystem {
        PolySystem::new(vec!["x".into(), "y".into()], order)
    }

    #[test]
    fn s_polynomial_oracle() {
        // S(xy - 1, y^2 - 1) over lex x>y is x - y (up to overall sign)
        let sys = sys2(OrderKind::Lex);
        let f = sys.parse_poly("x*y - 1").unwrap();
        let g = sys.parse_poly("y^2 - 1").unwrap();
        let s = s_polynomial(&f, &g, OrderKind::Lex).unwrap();
        let expect = sys.parse_poly("x - y").unwrap().primitive();
        assert_eq!(s, expect);
        // S(f, f) = 0
        assert!(s_polynomial(&f, &f, OrderKind::Lex).unwrap().is_zero());
        // monomials with disjoint support
        let x = sys.parse_poly("x").unwrap();
        let y = sys.parse_poly("y").unwrap();
        assert!(s_polynomial(&x, &y, OrderKind::Lex).unwrap().is_zero());
    }

    #[test]
    fn normal_form_oracle() {
        let sys = sys2(OrderKind::Lex);
        let x = sys.parse_poly("x").unwrap();
        let p = sys.parse_poly("x^2*y").unwrap();
        assert!(normal_form(&p, &[x], OrderKind::Lex, None).is_zero());

        let basis = vec![sys.parse_poly("x - y").unwrap()];
        let q = sys.parse_poly("x*y - 1").unwrap();
        let r = normal_form(&q, &basis, OrderKind::Lex, None);
        assert_eq!(r, sys.parse_poly("y^2 - 1").unwrap().primitive());

        // constant 1 is already reduced modulo {x-1, y-1}
        let basis2 = vec![sys.parse_poly("x - 1").unwrap(), sys.parse_poly("y - 1").unwrap()];
        let one = sys.parse_poly("1").unwrap();
        assert_eq!(normal_form(&one, &basis2, OrderKind::Lex, None), one);
    }

    #[test]
    fn buchberger_oracle() {
        // {x} stays {x}
        let mut sys = sys2(OrderKind::Lex);
        sys.generators.push(sys.parse_poly("x").unwrap());
        let gb = sys.groebner(&Budget::default());
        assert_eq!(gb.completed().unwrap().basis, vec![sys.parse_poly("x").unwrap()]);

        // {xy - 1, y^2 - 1} -> reduced basis {x - y, y^2 - 1}
        let mut sys = sys2(OrderKind::Lex);
        sys.generators.push(sys.parse_poly("x*y - 1").unwrap());
        sys.generators.push(sys.parse_poly("y^2 - 1").unwrap());
        let gb = sys.groebner(&Budget::default());
        let basis = &gb.completed().unwrap().basis;
        let expect = vec![
            sys.parse_poly("x - y").unwrap(),
            sys.parse_poly("y^2 - 1").unwrap(),
        ];
        assert_eq!(basis, &expect);
    }

    #[test]
    fn membership_oracle() {
        let mut sys = sys2(OrderKind::Lex);
        sys.generators.push(sys.parse_poly("x").unwrap());
        let p = sys.parse_poly("x^2*y").unwrap();
        assert!(sys.is_member(&p, &Budget::default()).unwrap());
        let q = sys.parse_poly("y").unwrap();
        assert!(!sys.is_member(&q, &Budget::default()).unwrap());
    }

    #[test]
    fn strategies_agree_on_reduced_basis() {
        // determinism: parallel batches and the sequential path give the
        // byte-identical canonical reduced basis
        let mut sys = PolySystem::new(
            vec!["x".into(), "y".into(), "z".into()],
            OrderKind::Grevlex,
        );
        for g in ["x^2 + y^2 + z^2 - 1", "x*y - z", "x - y + 2*z"] {
            sys.generators.push(sys.parse_poly(g).unwrap());
        }
        let a = buchberger(&sys.generators, sys.order, &Budget::default());
        let b = buchberger_seq(&sys.generators, sys.order, &Budget::default());
        assert_eq!(a.completed().unwrap().basis, b.completed().unwrap().basis);
    }

    #[test]
    fn lex_elimination_property() {
        // intersecting the lex basis of {xy-1, y^2-1} with Q[y] yields the
        // elimination ideal <y^2 - 1>
        let mut sys = sys2(OrderKind::Lex);
        sys.generators.push(sys.parse_poly("x*y - 1").unwrap());
        sys.generators.push(sys.parse_poly("y^2 - 1").unwrap());
        let gb = sys.groebner(&Budget::default());
        let in_subring: Vec<&GPoly> = gb
            .completed()
            .unwrap()
            .basis
            .iter()
            .filter(|g| g.terms.iter().all(|(e, _)| e[0] == 0))
            .collect();
        assert_eq!(in_subring, vec![&sys.parse_poly("y^2 - 1").unwrap()]);
    }

    #[test]
    fn transcript_reconstructs_cofactors() {
        let sys = sys2(OrderKind::Lex);
        let basis = vec![
            sys.parse_poly("x - y").unwrap(),
            sys.parse_poly("y^2 - 1").unwrap(),
        ];
        let p = sys.parse_poly("x^2*y - x").unwrap();
        let mut t = Transcript::default();
        let r = normal_form(&p, &basis, OrderKind::Lex, Some(&mut t));
        // scale * p = sum_i (step.scale * step.coefficient * monomial * g_i) + r
        let mut acc = r.clone();
        for step in &t.steps {
            let contrib =
                basis[step.basis_index].mul_term(&step.monomial, &(&step.scale * &step.coefficient));
            acc = acc.comb(
                &num_bigint::BigInt::from(1),
                &contrib,
                &smallvec::smallvec![0; 2],
                &num_bigint::BigInt::from(-1),
                OrderKind::Lex,
            );
            acc = GPoly::normalize(acc.terms, OrderKind::Lex);
        }
        assert_eq!(acc, p.scale(&t.scale));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{
            "variables": ["x", "y"],
            "order": "lex",
            "generators": ["x*y - 1", "y^2 - 1"],
            "nonzero": ["y"]
        }"#;
        let sys = PolySystem::from_json(text).unwrap();
        assert_eq!(sys.generators.len(), 2);
        assert_eq!(sys.nonzero.len(), 1);
        let gb = sys.groebner(&Budget::default());
        assert_eq!(gb.completed().unwrap().basis.len(), 2);
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let mut sys = PolySystem::new(
            (1..=6).map(|i| format!("x{i}")).collect(),
            OrderKind::Lex,
        );
        // cyclic-ish dense system with a zero budget must bail out
        for g in [
            "x1 + x2 + x3 + x4 + x5 + x6",
            "x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x6 + x6*x1",
            "x1*x2*x3 + x2*x3*x4 + x3*x4*x5 + x4*x5*x6 + x5*x6*x1 + x6*x1*x2",
            "x1*x2*x3*x4*x5*x6 - 1",
        ] {
            sys.generators.push(sys.parse_poly(g).unwrap());
        }
        let out = sys.groebner(&Budget { wall_clock: std::time::Duration::ZERO, max_basis: 10 });
        assert!(out.completed().is_none());
        assert!(!out.basis().basis.is_empty());
    }
}
