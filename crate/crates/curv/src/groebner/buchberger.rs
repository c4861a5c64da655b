use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};

use super::gpoly::{
    expv_coprime, expv_deg, expv_div, expv_divides, expv_lcm, Expv, GPoly, OrderKind,
};

/// Resource caps for a Buchberger run.
#[derive(Debug, Clone)]
pub struct Budget {
    pub wall_clock: Duration,
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        // 30 minute default, overridable through CURV_BUDGET_SECS.
        let secs = std::env::var("CURV_BUDGET_SECS")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .unwrap_or(1800);
        Budget { wall_clock: Duration::from_secs(secs), max_basis: 10_000 }
    }
}

impl Budget {
    pub fn seconds(secs: u64) -> Self {
        Budget { wall_clock: Duration::from_secs(secs), ..Budget::default() }
    }
}

/// A Gröbner basis (reduced and canonical unless the budget ran out).
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub basis: Vec<GPoly>,
    pub order: OrderKind,
    pub reduced: bool,
}

/// Outcome of a budgeted run: complete, or a partial basis that is still a
/// subset of the ideal (never silently wrong).
#[derive(Debug, Clone)]
pub enum GbOutcome {
    Complete(GroebnerBasis),
    BudgetExceeded(GroebnerBasis),
}

impl GbOutcome {
    pub fn completed(&self) -> Option<&GroebnerBasis> {
        match self {
            GbOutcome::Complete(g) => Some(g),
            GbOutcome::BudgetExceeded(_) => None,
        }
    }

    pub fn basis(&self) -> &GroebnerBasis {
        match self {
            GbOutcome::Complete(g) | GbOutcome::BudgetExceeded(g) => g,
        }
    }
}

/// One recorded division step: which basis element was used, with what
/// monomial multiplier, and the cross-multiplication factor applied to the
/// running remainder.
#[derive(Debug, Clone)]
pub struct DivisionStep {
    pub basis_index: usize,
    pub monomial: Expv,
    pub coefficient: BigInt,
    pub scale: BigInt,
}

/// Full division record: scale · p = Σ steps + remainder.
#[derive(Debug, Clone, Default)]
pub struct Transcript {
    pub steps: Vec<DivisionStep>,
    pub scale: BigInt,
}

/// S(f,g) = (lcm/lt f)·f − (lcm/lt g)·g, cleared to integer content 1.
pub fn s_polynomial(f: &GPoly, g: &GPoly, order: OrderKind) -> Result<GPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Invalid("s_polynomial of zero input".into()));
    }
    let (ef, cf) = f.lead();
    let (eg, cg) = g.lead();
    let l = expv_lcm(ef, eg);
    let gcd = cf.gcd(cg);
    let mf = expv_div(&l, ef);
    let mg = expv_div(&l, eg);
    let s = f
        .mul_term(&mf, &(cg / &gcd))
        .comb(&BigInt::from(1), g, &mg, &(cf / &gcd), order);
    Ok(s.primitive())
}

/// Multivariate division remainder: fully reduced (no remainder monomial is
/// divisible by any basis leading monomial), integer-primitive. Optionally
/// records the division transcript.
pub fn normal_form(
    p: &GPoly,
    basis: &[GPoly],
    order: OrderKind,
    mut transcript: Option<&mut Transcript>,
) -> GPoly {
    if let Some(t) = transcript.as_deref_mut() {
        t.scale = BigInt::from(1);
        t.steps.clear();
    }
    let mut rem = p.clone();
    let mut done: Vec<(Expv, BigInt)> = Vec::new();
    let mut steps: usize = 0;
    'outer: while !rem.is_zero() {
        let (em, cm) = rem.lead().clone();
        for (bi, g) in basis.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let (eg, cg) = g.lead();
            if expv_divides(eg, &em) {
                let m = expv_div(&em, eg);
                let gcd = cm.gcd(cg);
                let a = cg / &gcd; // multiply remainder (and tail) by this
                let b = cm / &gcd; // times m * g subtracted
                rem = rem.comb(&a, g, &m, &b, order);
                if !num_traits::One::is_one(&a) {
                    for (_, c) in &mut done {
                        *c *= &a;
                    }
                }
                if let Some(t) = transcript.as_deref_mut() {
                    for s in &mut t.steps {
                        s.scale *= &a;
                    }
                    t.scale *= &a;
                    t.steps.push(DivisionStep {
                        basis_index: bi,
                        monomial: m,
                        coefficient: b,
                        scale: BigInt::from(1),
                    });
                }
                // cross-multiplication swells the shared content; strip it
                // periodically (only when no faithful transcript is needed)
                steps += 1;
                if transcript.is_none() && steps % 16 == 0 {
                    let mut g = BigInt::from(0);
                    for (_, c) in done.iter().chain(rem.terms.iter()) {
                        g = g.gcd(c);
                        if num_traits::One::is_one(&g) {
                            break;
                        }
                    }
                    if !num_traits::One::is_one(&g) && !num_traits::Zero::is_zero(&g) {
                        for (_, c) in &mut done {
                            *c /= &g;
                        }
                        for (_, c) in &mut rem.terms {
                            *c /= &g;
                        }
                    }
                }
                continue 'outer;
            }
        }
        // leading term is irreducible: move it to the finished part
        done.push((em.clone(), cm.clone()));
        rem.terms.remove(0);
    }
    let out = GPoly { terms: done };
    if transcript.is_some() {
        // keep the scale faithful: do not clear content when a transcript
        // (scale·p = Σ cofactors + remainder) is requested
        out
    } else {
        out.primitive()
    }
}

fn over_deadline(start: Instant, budget: &Budget) -> bool {
    start.elapsed() > budget.wall_clock
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Expv,
    deg: u32,
}

fn make_pair(i: usize, j: usize, basis: &[GPoly]) -> Pair {
    let lcm = expv_lcm(&basis[i].lead().0, &basis[j].lead().0);
    let deg = expv_deg(&lcm);
    Pair { i, j, lcm, deg }
}

/// Buchberger's algorithm with the normal selection strategy, the coprime
/// (first) and chain (second) criteria, budgets, and batched reduction of
/// the selected S-polynomials. The final auto-reduction makes the output the
/// canonical reduced basis, independent of internal scheduling.
pub fn buchberger_with(
    generators: &[GPoly],
    order: OrderKind,
    budget: &Budget,
    parallel: bool,
) -> GbOutcome {
    let start = Instant::now();
    let mut basis: Vec<GPoly> = Vec::new();
    for g in generators {
        let g = g.clone().primitive();
        if !g.is_zero() && !basis.contains(&g) {
            basis.push(g);
        }
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push(make_pair(j, i, &basis));
        }
    }
    // pairs whose S-polynomial provably reduces to zero: actually reduced, or
    // discarded by the coprime criterion. Only these may justify a chain-
    // criterion discard — counting chain-discarded pairs as settled can
    // eliminate a needed pair through a circular justification.
    let mut settled: std::collections::HashSet<(usize, usize)> =
        std::collections::HashSet::new();

    while !pairs.is_empty() {
        if over_deadline(start, budget) || basis.len() > budget.max_basis {
            return GbOutcome::BudgetExceeded(GroebnerBasis {
                basis,
                order,
                reduced: false,
            });
        }
        // normal strategy: all pairs of minimal lcm degree form one batch
        let min_deg = pairs.iter().map(|p| p.deg).min().unwrap();
        let mut batch: Vec<Pair> = Vec::new();
        let mut rest: Vec<Pair> = Vec::new();
        for p in pairs.drain(..) {
            if p.deg == min_deg && batch.len() < 64 {
                batch.push(p);
            } else {
                rest.push(p);
            }
        }
        pairs = rest;

        let mut worth: Vec<&Pair> = Vec::new();
        for p in &batch {
            // first criterion: coprime leading monomials reduce to zero
            if expv_coprime(&basis[p.i].lead().0, &basis[p.j].lead().0) {
                settled.insert((p.i, p.j));
                continue;
            }
            // chain criterion: some k with lm(k) | lcm(i,j) and both
            // (i,k), (j,k) already settled
            let chained = (0..basis.len()).any(|k| {
                k != p.i
                    && k != p.j
                    && expv_divides(&basis[k].lead().0, &p.lcm)
                    && settled.contains(&(p.i.min(k), p.i.max(k)))
                    && settled.contains(&(p.j.min(k), p.j.max(k)))
            });
            if chained {
                settled.insert((p.i, p.j));
            } else {
                worth.push(p);
            }
        }

        // a batch can be slow; let its members observe the deadline too
        let timed_out = std::sync::atomic::AtomicBool::new(false);
        let reduce_one = |p: &&Pair| -> GPoly {
            if over_deadline(start, budget) {
                timed_out.store(true, std::sync::atomic::Ordering::Relaxed);
                return GPoly::zero();
            }
            match s_polynomial(&basis[p.i], &basis[p.j], order) {
                Ok(s) => normal_form(&s, &basis, order, None),
                Err(_) => GPoly::zero(),
            }
        };
        #[cfg(feature = "parallel")]
        let reduced: Vec<GPoly> = if parallel && worth.len() > 1 {
            use rayon::prelude::*;
            worth.par_iter().map(reduce_one).collect()
        } else {
            worth.iter().map(reduce_one).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let reduced: Vec<GPoly> = {
            let _ = parallel;
            worth.iter().map(reduce_one).collect()
        };

        if timed_out.load(std::sync::atomic::Ordering::Relaxed) {
            return GbOutcome::BudgetExceeded(GroebnerBasis {
                basis,
                order,
                reduced: false,
            });
        }
        // every reduced pair now has a zero S-polynomial remainder modulo the
        // basis (after its nonzero remainder, if any, is adjoined below)
        for p in &worth {
            settled.insert((p.i, p.j));
        }

        for r in reduced {
            if r.is_zero() {
                continue;
            }
            // the basis may have grown since the batch was reduced
            let r = normal_form(&r, &basis, order, None);
            if r.is_zero() {
                continue;
            }
            let new_idx = basis.len();
            basis.push(r);
            for i in 0..new_idx {
                pairs.push(make_pair(i, new_idx, &basis));
            }
        }
    }

    let basis = autoreduce(basis, order);
    GbOutcome::Complete(GroebnerBasis { basis, order, reduced: true })
}

/// Inter-reduces a basis into the canonical reduced one: drop elements whose
/// leading monomial is divisible by another's, fully reduce tails, sort, and
/// normalize to primitive-integer (monic up to content) form.
pub fn autoreduce(mut basis: Vec<GPoly>, order: OrderKind) -> Vec<GPoly> {
    // repeat until stable: reduction can change leading monomials
    loop {
        basis.retain(|g| !g.is_zero());
        basis.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
        let mut changed = false;
        let mut out: Vec<GPoly> = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others: Vec<GPoly> = basis[..i]
                .iter()
                .chain(basis[i + 1..].iter())
                .cloned()
                .collect();
            let r = normal_form(&basis[i], &others, order, None);
            if r != basis[i] {
                changed = true;
            }
            if !r.is_zero() {
                out.push(r);
            } else {
                changed = true;
            }
        }
        basis = out;
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| order.cmp(&b.lead().0, &a.lead().0));
    basis.into_iter().map(|g| g.primitive()).collect()
}

pub fn buchberger(generators: &[GPoly], order: OrderKind, budget: &Budget) -> GbOutcome {
    buchberger_with(generators, order, budget, true)
}

pub fn buchberger_seq(generators: &[GPoly], order: OrderKind, budget: &Budget) -> GbOutcome {
    buchberger_with(generators, order, budget, false)
}

/// Ideal membership: does p reduce to zero against the (computed) basis?
pub fn is_member(p: &GPoly, generators: &[GPoly], order: OrderKind, budget: &Budget) -> Result<bool> {
    match buchberger(generators, order, budget) {
        GbOutcome::Complete(gb) => Ok(normal_form(p, &gb.basis, order, None).is_zero()),
        GbOutcome::BudgetExceeded(gb) => {
            // a zero normal form against a partial basis is still a sound
            // membership certificate; otherwise the question stays open
            if normal_form(p, &gb.basis, order, None).is_zero() {
                Ok(true)
            } else {
                Err(Error::BudgetExceeded)
            }
        }
    }
}
