use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Sym};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Multivariate polynomial over the rationals in scope symbols.
/// No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn var(s: Sym) -> Self {
        Polynomial::term(Monomial::var(s), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Sym) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Symbols occurring with positive exponent.
    pub fn symbols(&self) -> Vec<Sym> {
        let mut out: Vec<Sym> = Vec::new();
        for m in self.terms.keys() {
            for (s, _) in m.iter() {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes `value` for the symbol `s`.
    pub fn substitute_symbol(&self, s: Sym, value: &Polynomial) -> Polynomial {
        let mut powers: Vec<Polynomial> = vec![Polynomial::one()];
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let rest = Polynomial::term(m.with_exponent(s, 0), c.clone());
            out = out.add(&rest.mul(&powers[e]));
        }
        out
    }

    /// Largest term under the lex monomial order (a true multiplicative
    /// order, unlike the map's key order).
    fn lex_lead(&self) -> Option<(Monomial, Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| a.cmp_lex(b))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Exact multivariate division: `Some(q)` with `self = q * d` or `None`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.lex_lead().unwrap();
        let mut rem = self.clone();
        let mut quo = Polynomial::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.lex_lead().unwrap();
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let t = Polynomial::term(qm, qc);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num_integer::Integer::gcd(&num, c.numer());
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        if num.is_zero() {
            Rat::zero()
        } else {
            Rat::new(num.abs(), den)
        }
    }

    /// Common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        for m in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Coefficient of the largest monomial under the internal ordering.
    pub fn lead_coeff(&self) -> Rat {
        self.terms.values().next_back().cloned().unwrap_or_else(Rat::zero)
    }

    /// Divides out rational content and sign so that the result is an
    /// integer-primitive polynomial with positive leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut c = self.content();
        if self.lead_coeff().is_negative() {
            c = -c;
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k / &c)).collect(),
        }
    }

    /// Coefficients of `self` viewed as univariate in `s`, over the
    /// remaining symbols; index = exponent of `s`.
    pub fn coefficients_in(&self, s: Sym) -> Vec<Polynomial> {
        let deg = self.degree_in(s) as usize;
        let mut out = vec![Polynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(s) as usize;
            out[e].add_term(m.with_exponent(s, 0), c.clone());
        }
        out
    }

    /// True when every coefficient is positive and every monomial contains
    /// only even exponents: such a polynomial is nonnegative on all of R^n,
    /// and strictly positive when it has a positive constant term.
    pub fn is_even_positive(&self) -> bool {
        !self.is_zero()
            && self.terms.iter().all(|(m, c)| {
                c.is_positive() && m.iter().all(|(_, e)| e % 2 == 0)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Sym {
        Sym(0)
    }
    fn y() -> Sym {
        Sym(1)
    }

    #[test]
    fn arithmetic_basics() {
        let p = Polynomial::var(x()).add(&Polynomial::one()); // x + 1
        let q = Polynomial::var(x()).sub(&Polynomial::one()); // x - 1
        let prod = p.mul(&q);
        let expect = Polynomial::term(Monomial::var_pow(x(), 2), Rat::one())
            .sub(&Polynomial::one());
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_division() {
        let p = Polynomial::term(Monomial::var_pow(x(), 2), Rat::one())
            .sub(&Polynomial::term(Monomial::var_pow(y(), 2), Rat::one()));
        let d = Polynomial::var(x()).add(&Polynomial::var(y()));
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, Polynomial::var(x()).sub(&Polynomial::var(y())));
        let nd = Polynomial::var(x()).add(&Polynomial::one());
        assert!(p.exact_div(&nd).is_none());
    }

    #[test]
    fn primitive_part_normalizes() {
        let p = Polynomial::var(x()).scale(&rat(-4, 6)).add(&Polynomial::constant(rat(2, 3)));
        let pp = p.primitive_part();
        // -2/3 x + 2/3 -> x - 1
        assert_eq!(pp, Polynomial::var(x()).sub(&Polynomial::one()));
    }
}
