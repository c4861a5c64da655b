use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::monomial::Sym;
use super::poly::{Polynomial, Rat};
use super::scope::ConstraintSystem;

/// An exact scalar: a fraction of polynomials in the scope's symbols,
/// normalized modulo the radical relations. Division requires the
/// denominator to be recognized nonzero by the scope.
#[derive(Debug, Clone)]
pub struct FieldElement {
    num: Polynomial,
    den: Polynomial,
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        FieldElement { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        FieldElement { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        FieldElement { num: p, den: Polynomial::one() }
    }

    pub fn var(s: Sym) -> Self {
        FieldElement::from_poly(Polynomial::var(s))
    }

    /// Builds a fraction, checking the denominator.
    pub fn fraction(num: Polynomial, den: Polynomial, cs: &ConstraintSystem) -> Result<Self> {
        if !cs.is_recognized_nonzero(&den) {
            return Err(Error::DenominatorNotNonzero(crate::exact::render_poly(&den, cs)));
        }
        Ok(FieldElement { num, den }.normalized(cs))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self, cs: &ConstraintSystem) -> bool {
        cs.reduce(&self.num).is_zero()
    }

    pub fn as_rat(&self, cs: &ConstraintSystem) -> Option<Rat> {
        let n = cs.reduce(&self.num).as_constant()?;
        let d = cs.reduce(&self.den).as_constant()?;
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    }

    /// Reduces both parts by the radical relations, cancels the rational
    /// content and any common monomial factor, and gives the denominator a
    /// positive leading coefficient. Cancelling a common nonzero polynomial
    /// factor is always valid in the fraction field; full multivariate gcd
    /// is deliberately not attempted.
    fn normalized(mut self, cs: &ConstraintSystem) -> Self {
        self.num = cs.reduce(&self.num);
        self.den = cs.reduce(&self.den);
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return self;
        }
        let m = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !m.is_one() {
            self.num = Polynomial::from_terms(
                self.num.terms().map(|(mm, c)| (mm.div(&m).unwrap(), c.clone())),
            );
            self.den = Polynomial::from_terms(
                self.den.terms().map(|(mm, c)| (mm.div(&m).unwrap(), c.clone())),
            );
        }
        let mut c = self.den.content();
        if self.den.lead_coeff().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            let inv = Rat::one() / &c;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        // Opportunistic exact cancellation of the whole denominator.
        if !self.den.as_constant().map(|d| d.is_one()).unwrap_or(false) {
            if let Some(q) = self.num.exact_div(&self.den) {
                self.num = q;
                self.den = Polynomial::one();
            }
        }
        self
    }

    pub fn add(&self, other: &FieldElement, cs: &ConstraintSystem) -> FieldElement {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        FieldElement { num, den }.normalized(cs)
    }

    pub fn sub(&self, other: &FieldElement, cs: &ConstraintSystem) -> FieldElement {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        FieldElement { num, den }.normalized(cs)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &FieldElement, cs: &ConstraintSystem) -> FieldElement {
        FieldElement {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .normalized(cs)
    }

    pub fn scale(&self, c: &Rat, cs: &ConstraintSystem) -> FieldElement {
        FieldElement { num: self.num.scale(c), den: self.den.clone() }.normalized(cs)
    }

    pub fn inv(&self, cs: &ConstraintSystem) -> Result<FieldElement> {
        if self.is_zero(cs) {
            return Err(Error::DivisionByZero);
        }
        if !cs.is_recognized_nonzero(&self.num) {
            return Err(Error::DenominatorNotNonzero(crate::exact::render_poly(&self.num, cs)));
        }
        Ok(FieldElement { num: self.den.clone(), den: self.num.clone() }.normalized(cs))
    }

    pub fn div(&self, other: &FieldElement, cs: &ConstraintSystem) -> Result<FieldElement> {
        Ok(self.mul(&other.inv(cs)?, cs))
    }

    pub fn pow(&self, e: i32, cs: &ConstraintSystem) -> Result<FieldElement> {
        let base = if e < 0 { self.inv(cs)? } else { self.clone() };
        let mut out = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base, cs);
        }
        Ok(out)
    }

    /// Equality in the fraction field of the quotient domain: cross-multiply
    /// and reduce.
    pub fn equal(&self, other: &FieldElement, cs: &ConstraintSystem) -> bool {
        let d = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        cs.reduce(&d).is_zero()
    }

    /// Exact sign for parameter-free values (numerator and denominator in
    /// the numeric tower).
    pub fn sign(&self, cs: &ConstraintSystem) -> Result<i32> {
        let sn = cs.sign_of(&self.num)?;
        let sd = cs.sign_of(&self.den)?;
        if sd == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(sn * sd)
    }

    pub fn is_recognized_nonzero(&self, cs: &ConstraintSystem) -> bool {
        cs.is_recognized_nonzero(&self.num)
    }
}
