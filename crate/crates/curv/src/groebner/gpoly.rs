use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exact::{ConstraintSystem, Monomial, Polynomial, Rat, Sym};

/// Dense exponent vector over a fixed variable list.
pub type Expv = SmallVec<[u16; 8]>;

/// Monomial order for the Gröbner layer. The variable list fixes the
/// meaning of positions: index 0 is the biggest variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Leftmost nonzero entry of α−β positive ⟹ α > β.
    Lex,
    /// Total degree first; on ties the rightmost nonzero entry of α−β
    /// negative ⟹ α > β.
    Grevlex,
}

impl OrderKind {
    pub fn cmp(&self, a: &Expv, b: &Expv) -> Ordering {
        match self {
            OrderKind::Lex => {
                for i in 0..a.len().max(b.len()) {
                    let ea = a.get(i).copied().unwrap_or(0);
                    let eb = b.get(i).copied().unwrap_or(0);
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..a.len().max(b.len())).rev() {
                    let ea = a.get(i).copied().unwrap_or(0);
                    let eb = b.get(i).copied().unwrap_or(0);
                    if ea != eb {
                        // rightmost nonzero of a-b negative => a greater
                        return eb.cmp(&ea);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grevlex" => Ok(OrderKind::Grevlex),
            other => Err(Error::Invalid(format!("unknown order `{other}`"))),
        }
    }
}

pub fn expv_mul(a: &Expv, b: &Expv) -> Expv {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

pub fn expv_divides(a: &Expv, b: &Expv) -> bool {
    // does a divide b
    a.iter()
        .enumerate()
        .all(|(i, &e)| e <= b.get(i).copied().unwrap_or(0))
}

pub fn expv_div(b: &Expv, a: &Expv) -> Expv {
    (0..b.len())
        .map(|i| b[i] - a.get(i).copied().unwrap_or(0))
        .collect()
}

pub fn expv_lcm(a: &Expv, b: &Expv) -> Expv {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0).max(b.get(i).copied().unwrap_or(0)))
        .collect()
}

pub fn expv_deg(a: &Expv) -> u32 {
    a.iter().map(|&e| e as u32).sum()
}

pub fn expv_coprime(a: &Expv, b: &Expv) -> bool {
    (0..a.len().min(b.len())).all(|i| a[i] == 0 || b[i] == 0)
}

/// Integer-primitive polynomial with terms sorted descending under a fixed
/// order. The Gröbner layer never sees radicals or denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPoly {
    /// (exponent vector, coefficient), sorted descending, no zeros.
    pub terms: Vec<(Expv, BigInt)>,
}

impl GPoly {
    pub fn zero() -> Self {
        GPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &(Expv, BigInt) {
        &self.terms[0]
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| expv_deg(e)).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sorts, merges duplicates, drops zeros.
    pub fn normalize(mut terms: Vec<(Expv, BigInt)>, order: OrderKind) -> GPoly {
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        let mut out: Vec<(Expv, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 += c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((e, c));
            }
        }
        GPoly { terms: out }
    }

    /// Divides out the integer content and normalizes the leading sign.
    pub fn primitive(mut self) -> GPoly {
        if self.terms.is_empty() {
            return self;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
        self
    }

    pub fn scale(&self, k: &BigInt) -> GPoly {
        if k.is_zero() {
            return GPoly::zero();
        }
        GPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Expv, k: &BigInt) -> GPoly {
        if k.is_zero() {
            return GPoly::zero();
        }
        GPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (expv_mul(e, m), c * k))
                .collect(),
        }
    }

    /// self*a - other*(m*b), both inputs sorted under `order`.
    pub fn comb(&self, a: &BigInt, other: &GPoly, m: &Expv, b: &BigInt, order: OrderKind) -> GPoly {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let neg_b = -b.clone();
        while i < self.terms.len() && j < other.terms.len() {
            let ea = &self.terms[i].0;
            let eb = expv_mul(&other.terms[j].0, m);
            match order.cmp(ea, &eb) {
                Ordering::Greater => {
                    terms.push((ea.clone(), &self.terms[i].1 * a));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((eb, &other.terms[j].1 * &neg_b));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 * a + &other.terms[j].1 * &neg_b;
                    if !c.is_zero() {
                        terms.push((eb, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (e, c) in &self.terms[i..] {
            terms.push((e.clone(), c * a));
        }
        for (e, c) in &other.terms[j..] {
            terms.push((expv_mul(e, m), c * &neg_b));
        }
        GPoly { terms }
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
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
            if !abs.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(abs.to_string());
            }
            for (i, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    factors.push(vars[i].clone());
                } else if exp > 1 {
                    factors.push(format!("{}^{}", vars[i], exp));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Maps a kernel polynomial (no radicals) into the dense layer. The order of
/// `vars` fixes variable significance (vars[0] biggest).
pub fn from_kernel(
    p: &Polynomial,
    vars: &[Sym],
    order: OrderKind,
    cs: &ConstraintSystem,
) -> Result<GPoly> {
    let mut terms = Vec::with_capacity(p.num_terms());
    // common denominator
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    for (m, c) in p.terms() {
        let mut e: Expv = smallvec::smallvec![0; vars.len()];
        for (s, exp) in m.iter() {
            match vars.iter().position(|&v| v == s) {
                Some(i) => e[i] = exp as u16,
                None => {
                    return Err(Error::Invalid(format!(
                        "symbol `{}` is not a declared ideal variable",
                        cs.symbol_name(s)
                    )))
                }
            }
        }
        let k: Rat = c * Rat::from_integer(den.clone());
        debug_assert!(k.is_integer());
        terms.push((e, k.to_integer()));
    }
    Ok(GPoly::normalize(terms, order))
}

/// Maps a dense polynomial back into the kernel scope.
pub fn to_kernel(p: &GPoly, vars: &[Sym]) -> Polynomial {
    Polynomial::from_terms(p.terms.iter().map(|(e, c)| {
        let mut m = Monomial::one();
        for (i, &exp) in e.iter().enumerate() {
            if exp > 0 {
                m = m.mul(&Monomial::var_pow(vars[i], exp as u32));
            }
        }
        (m, Rat::from_integer(c.clone()))
    }))
}
