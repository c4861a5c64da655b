use smallvec::SmallVec;

/// Index of a declared symbol within its scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u32);

/// A power product of scope symbols. Exponents are stored sparsely,
/// sorted by symbol index, with no explicit zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    entries: SmallVec<[(u32, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(s: Sym) -> Self {
        Self::var_pow(s, 1)
    }

    pub fn var_pow(s: Sym, e: u32) -> Self {
        let mut m = Monomial::default();
        if e > 0 {
            m.entries.push((s.0, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exponent(&self, s: Sym) -> u32 {
        self.entries
            .iter()
            .find(|(v, _)| *v == s.0)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.entries.iter().map(|(_, e)| e).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sym, u32)> + '_ {
        self.entries.iter().map(|&(v, e)| (Sym(v), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (va, ea) = self.entries[i];
            let (vb, eb) = other.entries[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        out.extend_from_slice(&other.entries[j..]);
        Monomial { entries: out }
    }

    /// Componentwise quotient, `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut i = 0;
        for &(v, e) in &other.entries {
            loop {
                if i >= self.entries.len() {
                    return None;
                }
                let (va, ea) = self.entries[i];
                if va < v {
                    out.push((va, ea));
                    i += 1;
                } else if va == v {
                    if ea < e {
                        return None;
                    }
                    if ea > e {
                        out.push((va, ea - e));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        Some(Monomial { entries: out })
    }

    /// Replaces the exponent of `s` (removing the entry when `e == 0`).
    pub fn with_exponent(&self, s: Sym, e: u32) -> Monomial {
        let mut out: SmallVec<[(u32, u32); 4]> = self
            .entries
            .iter()
            .copied()
            .filter(|(v, _)| *v != s.0)
            .collect();
        if e > 0 {
            let pos = out.partition_point(|(v, _)| *v < s.0);
            out.insert(pos, (s.0, e));
        }
        Monomial { entries: out }
    }

    /// Lexicographic comparison with lower symbol indices taking precedence
    /// (x₀ > x₁ > …). Unlike the derived `Ord` (which only serves as a map
    /// key order), this is a genuine multiplicative monomial order.
    pub fn cmp_lex(&self, other: &Monomial) -> std::cmp::Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.entries.get(i), other.entries.get(j)) {
                (None, None) => return std::cmp::Ordering::Equal,
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return std::cmp::Ordering::Greater;
                    }
                    if va > vb {
                        return std::cmp::Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    /// Componentwise gcd.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.entries {
            let eo = other.exponent(Sym(v));
            let g = e.min(eo);
            if g > 0 {
                out.push((v, g));
            }
        }
        Monomial { entries: out }
    }
}
