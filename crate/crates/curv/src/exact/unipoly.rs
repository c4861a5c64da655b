use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

use super::monomial::Sym;
use super::poly::{Polynomial, Rat};
use super::scope::ConstraintSystem;

/// Dense univariate polynomial over the rationals; `coeffs[i]` multiplies x^i.
/// The top coefficient is nonzero (zero polynomial has empty coeffs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

/// One end of a root-counting interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Extracts a univariate view of a multivariate polynomial; errors when
    /// more than one symbol occurs. A constant is accepted (degree 0).
    pub fn from_polynomial(p: &Polynomial, cs: &ConstraintSystem) -> Result<(Self, Option<Sym>)> {
        let syms = p.symbols();
        if syms.len() > 1 {
            return Err(Error::NotUnivariate(
                syms.iter().map(|s| cs.symbol_name(*s).to_string()).collect(),
            ));
        }
        match syms.first() {
            None => Ok((UniPoly::new(vec![p.as_constant().unwrap_or_else(Rat::zero)]), None)),
            Some(&s) => {
                let deg = p.degree_in(s) as usize;
                let mut coeffs = vec![Rat::zero(); deg + 1];
                for (m, c) in p.terms() {
                    coeffs[m.exponent(s) as usize] = c.clone();
                }
                Ok((UniPoly::new(coeffs), Some(s)))
            }
        }
    }

    pub fn to_polynomial(&self, s: Sym) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (super::monomial::Monomial::var_pow(s, i as u32), c.clone())),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let l = self.lead();
        UniPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    /// Euclidean remainder.
    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let q = r.lead() / d.lead();
            let mut coeffs = r.coeffs.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                coeffs[i + shift] = &coeffs[i + shift] - &(c * &q);
            }
            // force top cancellation even in the presence of arithmetic slips
            coeffs[r.degree()] = Rat::zero();
            r = UniPoly::new(coeffs);
        }
        r
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Divides out repeated factors: self / gcd(self, self').
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        self.exact_div(&g).monic()
    }

    /// Exact quotient; panics if the division is not exact (internal use).
    fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.degree() - d.degree() + 1];
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let c = r.lead() / d.lead();
            q[shift] = c.clone();
            let mut coeffs = r.coeffs.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                coeffs[i + shift] = &coeffs[i + shift] - &(dc * &c);
            }
            coeffs[r.degree()] = Rat::zero();
            r = UniPoly::new(coeffs);
        }
        assert!(r.is_zero(), "inexact univariate division");
        UniPoly::new(q)
    }

    fn sign_at(&self, b: &Bound) -> i32 {
        if self.is_zero() {
            return 0;
        }
        match b {
            Bound::Finite(x) => {
                let v = self.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Bound::PosInf => {
                if self.lead().is_positive() {
                    1
                } else {
                    -1
                }
            }
            Bound::NegInf => {
                let s = if self.lead().is_positive() { 1 } else { -1 };
                if self.degree() % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Number of distinct real roots in (lo, hi] via Sturm's theorem.
    /// The polynomial must be squarefree.
    pub fn sturm_root_count(&self, lo: &Bound, hi: &Bound) -> Result<usize> {
        if self.is_zero() || !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut chain: Vec<UniPoly> = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            chain.push(r);
        }
        chain.pop();
        let variations = |b: &Bound| -> usize {
            let mut count = 0;
            let mut prev = 0;
            for p in &chain {
                let s = p.sign_at(b);
                if s != 0 {
                    if prev != 0 && s != prev {
                        count += 1;
                    }
                    prev = s;
                }
            }
            count
        };
        let vl = variations(lo);
        let vh = variations(hi);
        Ok(vl.saturating_sub(vh))
    }
}

/// Monic gcd of two univariate views of multivariate polynomials; they must
/// share the single symbol (or be constants).
pub fn univariate_gcd(
    p: &Polynomial,
    q: &Polynomial,
    cs: &ConstraintSystem,
) -> Result<Polynomial> {
    let (up, sp) = UniPoly::from_polynomial(p, cs)?;
    let (uq, sq) = UniPoly::from_polynomial(q, cs)?;
    let sym = match (sp, sq) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::NotUnivariate(vec![
                cs.symbol_name(a).to_string(),
                cs.symbol_name(b).to_string(),
            ]))
        }
        (Some(a), _) | (_, Some(a)) => Some(a),
        (None, None) => None,
    };
    let g = up.gcd(&uq);
    match sym {
        Some(s) => Ok(g.to_polynomial(s)),
        None => Ok(if g.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial::one()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::monomial::Monomial;
    use crate::exact::poly::rat_int;

    fn upoly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    #[test]
    fn gcd_examples() {
        let mut cs = ConstraintSystem::new();
        let x = cs.declare_parameter("x", false, false).unwrap();
        // gcd(x^2 - 1, x - 1) = x - 1
        let p = Polynomial::term(Monomial::var_pow(x, 2), rat_int(1)).sub(&Polynomial::one());
        let q = Polynomial::var(x).sub(&Polynomial::one());
        assert_eq!(univariate_gcd(&p, &q, &cs).unwrap(), q);
        // gcd(x^2, x^3) = x^2
        let p2 = Polynomial::term(Monomial::var_pow(x, 2), rat_int(1));
        let p3 = Polynomial::term(Monomial::var_pow(x, 3), rat_int(1));
        assert_eq!(univariate_gcd(&p2, &p3, &cs).unwrap(), p2);
    }

    #[test]
    fn rejects_multivariate() {
        let mut cs = ConstraintSystem::new();
        let x = cs.declare_parameter("x", false, false).unwrap();
        let y = cs.declare_parameter("y", false, false).unwrap();
        let p = Polynomial::var(x).mul(&Polynomial::var(y));
        assert!(matches!(
            univariate_gcd(&p, &Polynomial::var(x), &cs),
            Err(Error::NotUnivariate(_))
        ));
    }

    #[test]
    fn sturm_counts() {
        // x^2 + 1: no real roots
        assert_eq!(
            upoly(&[1, 0, 1]).sturm_root_count(&Bound::NegInf, &Bound::PosInf).unwrap(),
            0
        );
        // x^2 - 2: one root in (0, inf)
        let p = upoly(&[-2, 0, 1]);
        assert_eq!(
            p.sturm_root_count(&Bound::Finite(Rat::zero()), &Bound::PosInf).unwrap(),
            1
        );
        assert_eq!(p.sturm_root_count(&Bound::NegInf, &Bound::PosInf).unwrap(), 2);
        // non-squarefree rejected
        assert!(upoly(&[1, 2, 1]).sturm_root_count(&Bound::NegInf, &Bound::PosInf).is_err());
        // (x-1)(x-2)(x-3) in (1, 3]: roots 2, 3 counted, 1 excluded (half-open)
        let c = upoly(&[-6, 11, -6, 1]);
        assert_eq!(
            c.sturm_root_count(
                &Bound::Finite(Rat::from_integer(1.into())),
                &Bound::Finite(Rat::from_integer(3.into()))
            )
            .unwrap(),
            2
        );
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = upoly(&[2, -3, 0, 1]);
        let sf = p.squarefree_part();
        // (x-1)(x+2) = x^2 + x - 2
        assert_eq!(sf, upoly(&[-2, 1, 1]).monic());
    }
}
