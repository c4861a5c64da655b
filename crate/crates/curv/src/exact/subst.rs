use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::field::FieldElement;
use super::poly::{Polynomial, Rat};
use super::scope::{ConstraintSystem, SymbolKind};

/// Splits |n| = f² · m with m squarefree, by trial division.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut n = n.abs();
    let mut f = BigInt::one();
    let mut m = BigInt::one();
    let mut d = BigInt::from(2u32);
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= &d;
        }
        if e % 2 == 1 {
            m *= &d;
        }
        d += 1u32;
    }
    (f, m * n)
}

/// A parameter assignment mapped through a scope: builds the derived scope
/// (radicals re-based on the substituted radicands, perfect squares
/// eliminated) and translates values into it.
pub struct Instantiation {
    pub target: ConstraintSystem,
    map: Vec<FieldElement>,
}

impl Instantiation {
    pub fn new(src: &ConstraintSystem, assignment: &BTreeMap<String, Rat>) -> Result<Self> {
        for name in assignment.keys() {
            match src.lookup(name) {
                Some(s) if src.radicand(s).is_none() => {}
                _ => return Err(Error::UndeclaredSymbol(name.clone())),
            }
        }
        let mut target = ConstraintSystem::new();
        for sign in src.sign_names() {
            target.declare_sign(sign)?;
        }
        let mut inst = Instantiation { target, map: Vec::new() };
        for info in src.symbols() {
            let value = match &info.kind {
                SymbolKind::Parameter { nonzero, positive } => {
                    match assignment.get(&info.name) {
                        Some(c) => {
                            if *nonzero && c.is_zero() {
                                return Err(Error::OutOfRegion(format!(
                                    "{} must be nonzero",
                                    info.name
                                )));
                            }
                            if *positive && !c.is_positive() {
                                return Err(Error::OutOfRegion(format!(
                                    "{} must be positive",
                                    info.name
                                )));
                            }
                            FieldElement::from_rat(c.clone())
                        }
                        None => {
                            let s = inst
                                .target
                                .declare_parameter(&info.name, *nonzero, *positive)?;
                            FieldElement::var(s)
                        }
                    }
                }
                SymbolKind::Radical { radicand } => {
                    let image = inst.eval_poly(radicand)?;
                    inst.adjoin_sqrt(&info.name, &image)?
                }
            };
            inst.map.push(value);
        }
        // Carry the side conditions over, instantiated.
        for p in src.nonzero_declarations() {
            let img = inst.eval_poly(p)?;
            if img.is_zero(&inst.target) {
                return Err(Error::OutOfRegion(format!(
                    "declared-nonzero {} vanishes",
                    super::render_poly(p, src)
                )));
            }
            let n = img.numerator().clone();
            if n.as_constant().is_none() && !inst.target.is_parameter_free(&n) {
                inst.target.declare_nonzero(n);
            }
        }
        for p in src.positive_declarations() {
            let img = inst.eval_poly(p)?;
            let n = inst.target.reduce(img.numerator());
            let d = inst.target.reduce(img.denominator());
            if inst.target.is_parameter_free(&n) && inst.target.is_parameter_free(&d) {
                let sn = inst.target.sign_of(&n)?;
                let sd = inst.target.sign_of(&d)?;
                if sn * sd <= 0 {
                    return Err(Error::OutOfRegion(format!(
                        "declared-positive {} is not positive",
                        super::render_poly(p, src)
                    )));
                }
            } else {
                // sign of the denominator is not tracked for parametric
                // fractions; declarations are polynomial in practice
                inst.target.declare_positive(n);
            }
        }
        Ok(inst)
    }

    /// The square root of `image` as an element of the target tower,
    /// adjoining a radical when needed.
    fn adjoin_sqrt(&mut self, name: &str, image: &FieldElement) -> Result<FieldElement> {
        let num = self.target.reduce(image.numerator());
        let den = self.target.reduce(image.denominator());
        if num.is_zero() {
            return Ok(FieldElement::zero());
        }
        if let (Some(n), Some(d)) = (num.as_constant(), den.as_constant()) {
            let c = n / d;
            if c.is_negative() {
                return Err(Error::NegativeRadicand(name.to_string()));
            }
            // sqrt(p/q) = sqrt(p q)/q
            let pq = c.numer() * c.denom();
            let (f, m) = squarefree_split(&pq);
            let scale = Rat::new(f, c.denom().clone());
            if m.is_one() {
                return Ok(FieldElement::from_rat(scale));
            }
            let rad = self.radical_for(&format!("sqrt{m}"), Polynomial::constant(Rat::from_integer(m)))?;
            return Ok(rad.scale(&scale, &self.target));
        }
        // sqrt(n/d) = sqrt(n d)/d with polynomial radicand n·d.
        let radicand = num.mul(&den);
        let rad = self.radical_for(name, radicand)?;
        rad.div(&FieldElement::from_poly(den), &self.target)
    }

    /// Reuses an existing radical with the same radicand or declares one.
    fn radical_for(&mut self, name: &str, radicand: Polynomial) -> Result<FieldElement> {
        let radicand = self.target.reduce(&radicand);
        for (i, info) in self.target.symbols().iter().enumerate() {
            if let SymbolKind::Radical { radicand: r } = &info.kind {
                if *r == radicand {
                    return Ok(FieldElement::var(super::monomial::Sym(i as u32)));
                }
            }
        }
        let mut fresh = name.to_string();
        let mut k = 0;
        while self.target.lookup(&fresh).is_some() || self.target.is_sign(&fresh) {
            k += 1;
            fresh = format!("{name}_{k}");
        }
        if self.target.is_parameter_free(&radicand) {
            if self.target.sign_of(&radicand)? < 0 {
                return Err(Error::NegativeRadicand(name.to_string()));
            }
        }
        let s = self.target.declare_radical(&fresh, radicand)?;
        Ok(FieldElement::var(s))
    }

    /// Pushes a source polynomial through the symbol map.
    pub fn eval_poly(&self, p: &Polynomial) -> Result<FieldElement> {
        let mut acc = FieldElement::zero();
        for (m, c) in p.terms() {
            let mut t = FieldElement::from_rat(c.clone());
            for (s, e) in m.iter() {
                let base = self
                    .map
                    .get(s.0 as usize)
                    .ok_or_else(|| Error::UndeclaredSymbol(format!("symbol #{}", s.0)))?;
                t = t.mul(&base.pow(e as i32, &self.target)?, &self.target);
            }
            acc = acc.add(&t, &self.target);
        }
        Ok(acc)
    }

    /// Pushes a source field element through; errors when the instantiated
    /// denominator vanishes (the excluded locus) or cannot be certified.
    pub fn apply(&self, fe: &FieldElement) -> Result<FieldElement> {
        let num = self.eval_poly(fe.numerator())?;
        let den = self.eval_poly(fe.denominator())?;
        if den.is_zero(&self.target) {
            return Err(Error::ExcludedLocus);
        }
        num.div(&den, &self.target).map_err(|e| match e {
            Error::DivisionByZero => Error::ExcludedLocus,
            other => other,
        })
    }
}

/// One-shot substitution per the kernel contract: assign rational values to
/// some parameters, returning the derived scope and the mapped value.
pub fn substitute(
    fe: &FieldElement,
    cs: &ConstraintSystem,
    assignment: &BTreeMap<String, Rat>,
) -> Result<(ConstraintSystem, FieldElement)> {
    let inst = Instantiation::new(cs, assignment)?;
    let v = inst.apply(fe)?;
    Ok((inst.target, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::{parse_expr, SignAssignment};
    use crate::exact::poly::rat;

    fn assign(pairs: &[(&str, Rat)]) -> BTreeMap<String, Rat> {
        pairs.iter().map(|(n, v)| (n.to_string(), v.clone())).collect()
    }

    #[test]
    fn scalar_curvature_sample() {
        // tau(alpha) = 6 alpha^2 at alpha = 1/2 -> 3/2
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("alpha", false, false).unwrap();
        let tau = parse_expr("6*alpha^2", &cs, &SignAssignment::new()).unwrap();
        let (tcs, v) = substitute(&tau, &cs, &assign(&[("alpha", rat(1, 2))])).unwrap();
        assert!(v.equal(&FieldElement::from_rat(rat(3, 2)), &tcs));
    }

    #[test]
    fn homothetic_invariant_sample() {
        // (alpha^2 + 4)/9 at alpha = 0 -> 4/9
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("alpha", false, false).unwrap();
        let h = parse_expr("(alpha^2 + 4)/9", &cs, &SignAssignment::new()).unwrap();
        let (tcs, v) = substitute(&h, &cs, &assign(&[("alpha", rat(0, 1))])).unwrap();
        assert!(v.equal(&FieldElement::from_rat(rat(4, 9)), &tcs));
    }

    #[test]
    fn identity_assignment_is_noop() {
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("alpha", false, false).unwrap();
        cs.declare_radical(
            "s",
            parse_expr("alpha^2 + 1", &cs, &SignAssignment::new())
                .unwrap()
                .numerator()
                .clone(),
        )
        .unwrap();
        let v = parse_expr("(alpha + s)^2 / (3*s)", &cs, &SignAssignment::new()).unwrap();
        let (tcs, w) = substitute(&v, &cs, &BTreeMap::new()).unwrap();
        // same symbol layout, so direct comparison is meaningful
        let v2 = parse_expr("(alpha + s)^2 / (3*s)", &tcs, &SignAssignment::new()).unwrap();
        assert!(w.equal(&v2, &tcs));
    }

    #[test]
    fn perfect_square_radicand_collapses() {
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("alpha", false, false).unwrap();
        let rad = parse_expr("alpha^2 + 7", &cs, &SignAssignment::new()).unwrap();
        cs.declare_radical("r", rad.numerator().clone()).unwrap();
        let r = parse_expr("r", &cs, &SignAssignment::new()).unwrap();
        // alpha = 3: radicand 16, r -> 4 rationally
        let (tcs, v) = substitute(&r, &cs, &assign(&[("alpha", rat(3, 1))])).unwrap();
        assert!(v.equal(&FieldElement::from_int(4), &tcs));
        assert_eq!(tcs.num_symbols(), 0);
        // alpha = 1: radicand 8 = 2^2 * 2, r -> 2*sqrt2
        let (tcs2, v2) = substitute(&r, &cs, &assign(&[("alpha", rat(1, 1))])).unwrap();
        let sqrt2 = tcs2.lookup("sqrt2").unwrap();
        assert!(v2.equal(
            &FieldElement::var(sqrt2).scale(&rat(2, 1), &tcs2),
            &tcs2
        ));
    }

    #[test]
    fn negative_radicand_rejected() {
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("alpha", false, false).unwrap();
        let rad = parse_expr("alpha - 2", &cs, &SignAssignment::new()).unwrap();
        cs.declare_radical("r", rad.numerator().clone()).unwrap();
        let r = parse_expr("r + 1", &cs, &SignAssignment::new()).unwrap();
        assert!(matches!(
            substitute(&r, &cs, &assign(&[("alpha", rat(0, 1))])),
            Err(Error::NegativeRadicand(_))
        ));
    }

    #[test]
    fn excluded_locus_detected() {
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("alpha", false, false).unwrap();
        let am1 = parse_expr("alpha - 1", &cs, &SignAssignment::new()).unwrap();
        cs.declare_nonzero(am1.numerator().clone());
        let f = parse_expr("1/(alpha - 1)", &cs, &SignAssignment::new()).unwrap();
        assert!(matches!(
            substitute(&f, &cs, &assign(&[("alpha", rat(1, 1))])),
            Err(Error::OutOfRegion(_)) | Err(Error::ExcludedLocus)
        ));
    }

    #[test]
    fn shared_radicands_are_merged() {
        // two radicals that substitute to rational multiples of sqrt2 must
        // land on the same adjoined symbol so cross terms cancel
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("a", false, false).unwrap();
        let r1 = parse_expr("a", &cs, &SignAssignment::new()).unwrap();
        cs.declare_radical("r", r1.numerator().clone()).unwrap(); // r = sqrt(a)
        let r2 = parse_expr("8*a", &cs, &SignAssignment::new()).unwrap();
        cs.declare_radical("t", r2.numerator().clone()).unwrap(); // t = sqrt(8a) = 2 sqrt2 sqrt(a)
        // t^2 - 8 r^2 = 0 symbolically
        let z = parse_expr("t^2 - 8*r^2", &cs, &SignAssignment::new()).unwrap();
        assert!(z.is_zero(&cs));
        // at a = 2: r -> sqrt2, t -> 4, so t - 2*r^2 -> 0
        let w = parse_expr("t - 2*r^2", &cs, &SignAssignment::new()).unwrap();
        let (tcs, v) = substitute(&w, &cs, &assign(&[("a", rat(2, 1))])).unwrap();
        assert!(v.is_zero(&tcs));
    }
}
