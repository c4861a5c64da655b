use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

use super::monomial::{Monomial, Sym};
use super::poly::{Polynomial, Rat};

/// What a declared symbol is.
#[derive(Debug, Clone)]
pub enum SymbolKind {
    /// A free parameter, optionally carrying nonzero / positive hypotheses.
    Parameter { nonzero: bool, positive: bool },
    /// A square root adjoined to the tower: the symbol squares to `radicand`,
    /// which may only mention earlier symbols. The root is the nonnegative one.
    Radical { radicand: Polynomial },
}

#[derive(Debug, Clone)]
pub struct SymbolInfo {
    pub name: String,
    pub kind: SymbolKind,
}

/// The scope every polynomial lives in: symbol declarations (parameters and
/// a triangular radical tower), sign-parameter names, and side conditions
/// (declared-nonzero and declared-positive polynomials).
///
/// Sign parameters are names only; they never enter the ring. Expressions
/// mentioning them are evaluated under an explicit ±1 assignment.
#[derive(Debug, Clone, Default)]
pub struct ConstraintSystem {
    symbols: Vec<SymbolInfo>,
    signs: Vec<String>,
    nonzero: Vec<Polynomial>,
    positive: Vec<Polynomial>,
}

impl ConstraintSystem {
    pub fn new() -> Self {
        ConstraintSystem::default()
    }

    pub fn symbols(&self) -> &[SymbolInfo] {
        &self.symbols
    }

    pub fn sign_names(&self) -> &[String] {
        &self.signs
    }

    pub fn nonzero_declarations(&self) -> &[Polynomial] {
        &self.nonzero
    }

    pub fn positive_declarations(&self) -> &[Polynomial] {
        &self.positive
    }

    pub fn symbol_name(&self, s: Sym) -> &str {
        &self.symbols[s.0 as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.symbols
            .iter()
            .position(|si| si.name == name)
            .map(|i| Sym(i as u32))
    }

    pub fn is_sign(&self, name: &str) -> bool {
        self.signs.iter().any(|s| s == name)
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.lookup(name).is_some() || self.is_sign(name) {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        Ok(())
    }

    pub fn declare_parameter(&mut self, name: &str, nonzero: bool, positive: bool) -> Result<Sym> {
        self.check_fresh(name)?;
        let s = Sym(self.symbols.len() as u32);
        self.symbols.push(SymbolInfo {
            name: name.to_string(),
            kind: SymbolKind::Parameter { nonzero: nonzero || positive, positive },
        });
        Ok(s)
    }

    /// Adjoins a square root of `radicand`. Triangularity: the radicand may
    /// only mention symbols already declared.
    pub fn declare_radical(&mut self, name: &str, radicand: Polynomial) -> Result<Sym> {
        self.check_fresh(name)?;
        let next = self.symbols.len() as u32;
        for s in radicand.symbols() {
            if s.0 >= next {
                return Err(Error::UndeclaredSymbol(format!("symbol #{}", s.0)));
            }
        }
        if radicand.is_zero() {
            return Err(Error::Invalid("radicand must be nonzero".into()));
        }
        let s = Sym(next);
        self.symbols.push(SymbolInfo {
            name: name.to_string(),
            kind: SymbolKind::Radical { radicand },
        });
        Ok(s)
    }

    pub fn declare_sign(&mut self, name: &str) -> Result<()> {
        self.check_fresh(name)?;
        self.signs.push(name.to_string());
        Ok(())
    }

    pub fn declare_nonzero(&mut self, p: Polynomial) {
        let p = self.reduce(&p).primitive_part();
        if p.as_constant().is_none() && !self.nonzero.contains(&p) {
            self.nonzero.push(p);
        }
    }

    pub fn declare_positive(&mut self, p: Polynomial) {
        let q = self.reduce(&p);
        self.declare_nonzero(q.clone());
        let q = q.primitive_part();
        if !self.positive.contains(&q) {
            self.positive.push(q);
        }
    }

    pub fn radicand(&self, s: Sym) -> Option<&Polynomial> {
        match &self.symbols[s.0 as usize].kind {
            SymbolKind::Radical { radicand } => Some(radicand),
            _ => None,
        }
    }

    /// Normal form modulo the radical relations r² = radicand: every radical
    /// symbol ends with exponent ≤ 1. Idempotent; a ring homomorphism onto
    /// normal forms.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut changed = false;
        for (m, c) in p.terms() {
            let mut rad_part = Polynomial::one();
            let mut base = m.clone();
            for (s, e) in m.iter() {
                if let Some(radicand) = self.radicand(s) {
                    if e >= 2 {
                        base = base.with_exponent(s, e % 2);
                        rad_part = rad_part.mul(&radicand.pow(e / 2));
                        changed = true;
                    }
                }
            }
            if rad_part.as_constant().map(|c| c == Rat::from_integer(1.into())).unwrap_or(false) {
                out.add_term(base, c.clone());
            } else {
                out = out.add(&Polynomial::term(base, c.clone()).mul(&rad_part));
            }
        }
        // Radicands may themselves contain radicals of lower index, so new
        // high exponents can appear; the tower is triangular, so this
        // terminates.
        if changed {
            self.reduce(&out)
        } else {
            out
        }
    }

    /// Whether `p` is recognized as nonzero on the constrained region:
    /// a nonzero constant, a parameter-free tower element of decided nonzero
    /// sign, or a product of nonzero-flagged symbols, radicals, and
    /// declared-nonzero polynomials (up to rational scale).
    pub fn is_recognized_nonzero(&self, p: &Polynomial) -> bool {
        let p = self.reduce(p);
        if p.is_zero() {
            return false;
        }
        if let Some(c) = p.as_constant() {
            return !c.is_zero();
        }
        if self.is_parameter_free(&p) {
            return self.sign_of(&p).map(|s| s != 0).unwrap_or(false);
        }
        // Strip the monomial part: each symbol in it must be nonzero.
        let mc = p.monomial_content();
        for (s, _) in mc.iter() {
            let ok = match &self.symbols[s.0 as usize].kind {
                SymbolKind::Parameter { nonzero, .. } => *nonzero,
                SymbolKind::Radical { radicand } => self.is_recognized_nonzero(&radicand.clone()),
            };
            if !ok {
                return false;
            }
        }
        let mut rest = Polynomial::from_terms(
            p.terms().map(|(m, c)| (m.div(&mc).unwrap(), c.clone())),
        );
        // Saturate by the declared-nonzero generators.
        loop {
            if rest.as_constant().map(|c| !c.is_zero()).unwrap_or(false) {
                return true;
            }
            if self.sign_of(&rest).map(|s| s != 0).unwrap_or(false) {
                return true;
            }
            let mut progressed = false;
            for g in &self.nonzero {
                while let Some(q) = rest.exact_div(g) {
                    rest = q;
                    progressed = true;
                }
            }
            if !progressed {
                return self.is_evidently_positive(&rest) || self.is_evidently_positive(&rest.neg());
            }
        }
    }

    /// A syntactic positivity certificate: every term is a positive-coefficient
    /// monomial that is a product of even powers, positive-flagged parameters,
    /// radicals, and declared-positive polynomials — plus a positive constant
    /// or at least one strictly positive term. Sound, far from complete.
    fn is_evidently_positive(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return false;
        }
        let mut rest = p.clone();
        for g in &self.positive {
            while let Some(q) = rest.exact_div(g) {
                rest = q;
            }
        }
        let mut has_strict = false;
        for (m, c) in rest.terms() {
            if !c.is_positive() {
                return false;
            }
            let mut strict = m.is_one();
            let mut ok = true;
            for (s, e) in m.iter() {
                if e % 2 == 0 {
                    continue;
                }
                match &self.symbols[s.0 as usize].kind {
                    SymbolKind::Parameter { positive, .. } => {
                        if *positive {
                            strict = true;
                        } else {
                            ok = false;
                        }
                    }
                    SymbolKind::Radical { .. } => {
                        // nonnegative root; strict only if radicand positive
                    }
                }
            }
            if !ok {
                return false;
            }
            if strict {
                has_strict = true;
            }
        }
        has_strict
    }

    /// True when every symbol reachable from `p` (through radicands) is a
    /// radical — i.e. `p` denotes a concrete real algebraic number.
    pub fn is_parameter_free(&self, p: &Polynomial) -> bool {
        p.symbols().iter().all(|&s| match &self.symbols[s.0 as usize].kind {
            SymbolKind::Parameter { .. } => false,
            SymbolKind::Radical { radicand } => self.is_parameter_free(radicand),
        })
    }

    /// Exact sign (−1, 0, +1) of a parameter-free tower element. Radicals
    /// denote nonnegative square roots. Errors when parameters occur or a
    /// radicand is negative.
    pub fn sign_of(&self, p: &Polynomial) -> Result<i32> {
        let p = self.reduce(p);
        if !self.is_parameter_free(&p) {
            return Err(Error::UndecidableSign(format!("{p:?}")));
        }
        self.sign_of_reduced(&p)
    }

    fn sign_of_reduced(&self, p: &Polynomial) -> Result<i32> {
        if p.is_zero() {
            return Ok(0);
        }
        if let Some(c) = p.as_constant() {
            return Ok(if c.is_positive() { 1 } else { -1 });
        }
        // Split on the highest radical present: p = a + b·r with a, b in the
        // tower below r.
        let r = *p.symbols().last().unwrap();
        let radicand = match self.radicand(r) {
            Some(c) => c.clone(),
            None => return Err(Error::UndecidableSign(format!("{p:?}"))),
        };
        let sr = self.sign_of_reduced(&self.reduce(&radicand))?;
        if sr < 0 {
            return Err(Error::NegativeRadicand(self.symbol_name(r).to_string()));
        }
        let parts = p.coefficients_in(r);
        let a = parts.first().cloned().unwrap_or_else(Polynomial::zero);
        let b = parts.get(1).cloned().unwrap_or_else(Polynomial::zero);
        let sa = self.sign_of_reduced(&a)?;
        let sb = if sr == 0 { 0 } else { self.sign_of_reduced(&b)? };
        if sb == 0 {
            return Ok(sa);
        }
        if sa == 0 {
            return Ok(sb);
        }
        if sa == sb {
            return Ok(sa);
        }
        // a and b·r have opposite signs: compare a² against b²·radicand.
        let d = a.mul(&a).sub(&b.mul(&b).mul(&radicand));
        let sd = self.sign_of_reduced(&self.reduce(&d))?;
        Ok(if sd == 0 { 0 } else { sd * sa })
    }

    /// Convenience: a monomial symbol as a polynomial in this scope.
    pub fn poly_var(&self, name: &str) -> Result<Polynomial> {
        self.lookup(name)
            .map(Polynomial::var)
            .ok_or_else(|| Error::UndeclaredSymbol(name.to_string()))
    }

    /// Whether `p` is certified positive where defined: either an evident
    /// syntactic certificate or a parameter-free positive sign.
    pub fn is_recognized_positive(&self, p: &Polynomial) -> bool {
        let p = self.reduce(p);
        if let Ok(s) = self.sign_of(&p) {
            return s > 0;
        }
        if self
            .positive
            .iter()
            .any(|g| g == &p.primitive_part() && p.lead_coeff().is_positive())
        {
            return true;
        }
        self.is_evidently_positive(&p)
    }

    pub fn nonzero_generators_for(&self) -> &[Polynomial] {
        &self.nonzero
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    /// Nonzero-flag helper used by the fraction layer for monomial symbols.
    pub fn symbol_nonzero(&self, s: Sym) -> bool {
        match &self.symbols[s.0 as usize].kind {
            SymbolKind::Parameter { nonzero, .. } => *nonzero,
            SymbolKind::Radical { radicand } => self.is_recognized_nonzero(&radicand.clone()),
        }
    }

    /// A monomial all of whose symbols are nonzero is itself nonzero.
    pub fn monomial_nonzero(&self, m: &Monomial) -> bool {
        m.iter().all(|(s, _)| self.symbol_nonzero(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{rat, rat_int};

    #[test]
    fn reduce_numeric_radicals() {
        let mut cs = ConstraintSystem::new();
        let r = cs.declare_radical("r", Polynomial::constant(rat_int(14))).unwrap();
        // r^2 + 3 -> 17
        let p = Polynomial::term(Monomial::var_pow(r, 2), rat_int(1))
            .add(&Polynomial::constant(rat_int(3)));
        assert_eq!(cs.reduce(&p), Polynomial::constant(rat_int(17)));

        let t = cs.declare_radical("t", Polynomial::constant(rat_int(11))).unwrap();
        // (r t)^2 -> 154
        let q = Polynomial::term(Monomial::var(r).mul(&Monomial::var(t)), rat_int(1));
        assert_eq!(cs.reduce(&q.mul(&q)), Polynomial::constant(rat_int(154)));
    }

    #[test]
    fn reduce_parametric_radical_odd_power() {
        let mut cs = ConstraintSystem::new();
        let a = cs.declare_parameter("alpha", false, false).unwrap();
        let radicand = Polynomial::term(Monomial::var_pow(a, 2), rat_int(1))
            .add(&Polynomial::one());
        let s = cs.declare_radical("s", radicand.clone()).unwrap();
        // s^3 -> (alpha^2 + 1) s
        let p = Polynomial::term(Monomial::var_pow(s, 3), rat_int(1));
        let expect = radicand.mul(&Polynomial::var(s));
        assert_eq!(cs.reduce(&p), expect);
        // idempotent
        assert_eq!(cs.reduce(&cs.reduce(&p)), cs.reduce(&p));
    }

    #[test]
    fn recognized_nonzero_by_saturation() {
        let mut cs = ConstraintSystem::new();
        let l1 = cs.declare_parameter("lambda_1", true, false).unwrap();
        let g3 = cs.declare_parameter("gamma_3", false, false).unwrap();
        let hyp = Polynomial::var(g3).sub(&Polynomial::one());
        cs.declare_nonzero(hyp.clone());
        // lambda_1^2 (gamma_3 - 1) is a product of nonzero things
        let p = Polynomial::term(Monomial::var_pow(l1, 2), rat_int(1)).mul(&hyp);
        assert!(cs.is_recognized_nonzero(&p));
        // gamma_3 alone is not
        assert!(!cs.is_recognized_nonzero(&Polynomial::var(g3)));
        // scaled declared generator
        assert!(cs.is_recognized_nonzero(&hyp.scale(&rat(-3, 7))));
    }

    #[test]
    fn sign_of_tower_elements() {
        let mut cs = ConstraintSystem::new();
        let r = cs.declare_radical("sqrt2", Polynomial::constant(rat_int(2))).unwrap();
        // 3 - 2*sqrt2 > 0 since 9 > 8
        let p = Polynomial::constant(rat_int(3))
            .sub(&Polynomial::var(r).scale(&rat_int(2)));
        assert_eq!(cs.sign_of(&p).unwrap(), 1);
        // sqrt2 - 2 < 0
        let q = Polynomial::var(r).sub(&Polynomial::constant(rat_int(2)));
        assert_eq!(cs.sign_of(&q).unwrap(), -1);
        // (1+sqrt2)^2 - (3+2 sqrt2) = 0
        let one_plus = Polynomial::one().add(&Polynomial::var(r));
        let z = one_plus
            .mul(&one_plus)
            .sub(&Polynomial::constant(rat_int(3)))
            .sub(&Polynomial::var(r).scale(&rat_int(2)));
        assert_eq!(cs.sign_of(&z).unwrap(), 0);
    }

    #[test]
    fn evident_positivity() {
        let mut cs = ConstraintSystem::new();
        let x = cs.declare_parameter("x", false, false).unwrap();
        let y = cs.declare_parameter("y", false, false).unwrap();
        // x^2 + 1 > 0 everywhere
        let p = Polynomial::term(Monomial::var_pow(x, 2), rat_int(1)).add(&Polynomial::one());
        assert!(cs.is_recognized_positive(&p));
        assert!(cs.is_recognized_nonzero(&p));
        // x^2 + y^2 is only nonnegative (vanishes at the origin)
        let q = Polynomial::term(Monomial::var_pow(x, 2), rat_int(1))
            .add(&Polynomial::term(Monomial::var_pow(y, 2), rat_int(1)));
        assert!(!cs.is_recognized_nonzero(&q));
    }
}
