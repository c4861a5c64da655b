//! Replayable classification case scripts. Each script walks a branch
//! analysis step by step — printed tensor components, ideal memberships,
//! constraint substitutions, positivity certificates, and basis changes —
//! and reports a claim-by-claim verdict. Budget-limited steps come back
//! inconclusive; the script always runs to the end.

use std::collections::BTreeMap;

use crate::curvature::CurvatureData;
use crate::error::{Error, Result};
use crate::exact::{
    parse_expr, parse_polynomial, rat, ConstraintSystem, FieldElement, Polynomial, SignAssignment,
    Sym,
};
use crate::geomcheck::{nilpotency_index, predicate_flags, verify_wave_vector, WaveVector};
use crate::groebner::{
    ideal_from_components, normal_form, Budget, GPoly, GbOutcome, OrderKind, PolySystem,
};
use crate::harness::report::{Checker, Report};
use crate::harness::util::{algebra, diag4, fe, mat_eq, np_metric, po_metric};
use crate::liealg::MetricLieAlgebra;
use crate::linalg::Mat;

#[derive(Debug, Clone, Copy)]
pub struct CaseInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub classification: &'static str,
    /// Contains a step excluded from default runs for runtime reasons.
    pub long: bool,
}

const CASES: &[CaseInfo] = &[
    CaseInfo {
        id: "sec2.1.1",
        summary: "degenerate oscillator family, both extra kernel couplings zero",
        classification: "plane wave; conformal-flatness and symmetry loci identified",
        long: false,
    },
    CaseInfo {
        id: "sec2.1.2",
        summary: "degenerate oscillator family, one extra kernel coupling",
        classification: "locally conformally flat and locally symmetric",
        long: false,
    },
    CaseInfo {
        id: "sec2.1.3",
        summary: "degenerate oscillator family, generic kernel couplings",
        classification: "locally conformally flat and locally symmetric",
        long: false,
    },
    CaseInfo {
        id: "sec2.2.1",
        summary: "spacelike-degenerate family, both lower couplings zero",
        classification: "reduces to a catalog entry (or a plane-wave product)",
        long: false,
    },
    CaseInfo {
        id: "sec2.2.2",
        summary: "spacelike-degenerate family, middle coupling nonzero",
        classification: "reduces to a catalog entry (or a plane-wave product)",
        long: false,
    },
    CaseInfo {
        id: "sec2.2.3",
        summary: "spacelike-degenerate family, leading coupling nonzero",
        classification: "reduces to a catalog entry (or a plane-wave product)",
        long: true,
    },
    CaseInfo {
        id: "sec3.1",
        summary: "Riemannian oscillator family without diagonal shear: branch ideals",
        classification: "branch analysis feeding sec3.1.1-sec3.1.3",
        long: false,
    },
    CaseInfo {
        id: "sec3.1.1",
        summary: "Riemannian branch with vanishing derivation trace part",
        classification: "plane-wave product structure",
        long: false,
    },
    CaseInfo {
        id: "sec3.1.2",
        summary: "Riemannian branch with off-diagonal couplings only",
        classification: "no Bach-flat metric (positivity certificate)",
        long: false,
    },
    CaseInfo {
        id: "sec3.1.3",
        summary: "Riemannian branch with diagonal and central couplings",
        classification: "reduces to a catalog entry",
        long: false,
    },
    CaseInfo {
        id: "sec3.2",
        summary: "Riemannian oscillator family with diagonal shear: branch ideals",
        classification: "branch analysis feeding sec3.2.1-sec3.2.2",
        long: false,
    },
    CaseInfo {
        id: "sec3.2.1",
        summary: "sheared Riemannian branch without central coupling",
        classification: "no Bach-flat metric (positivity certificate)",
        long: false,
    },
    CaseInfo {
        id: "sec3.2.2",
        summary: "sheared Riemannian branch with central coupling",
        classification: "reduces to a catalog entry",
        long: false,
    },
    CaseInfo {
        id: "sec4.1.1",
        summary: "Lorentzian oscillator family (timelike center), no shear",
        classification: "no Bach-flat metric (positivity certificates)",
        long: false,
    },
    CaseInfo {
        id: "sec4.1.2",
        summary: "Lorentzian oscillator family (timelike center), with shear",
        classification: "no Bach-flat metric (positivity certificates)",
        long: false,
    },
    CaseInfo {
        id: "sec4.2.1",
        summary: "Lorentzian boost family, no diagonal part",
        classification: "plane-wave product structure",
        long: false,
    },
    CaseInfo {
        id: "sec4.2.2",
        summary: "Lorentzian boost family, diagonal part normalized",
        classification: "reduces to catalog entries (two branches)",
        long: false,
    },
    CaseInfo {
        id: "sec4.3.1",
        summary: "null-basis Lorentzian family, nilpotent diagonal part",
        classification: "reduces to catalog entries (two branches)",
        long: false,
    },
    CaseInfo {
        id: "sec4.3.2",
        summary: "null-basis Lorentzian family, semisimple diagonal part",
        classification: "reduces to catalog entries (three loci)",
        long: false,
    },
];

pub fn cases() -> &'static [CaseInfo] {
    CASES
}

pub fn case_info(id: &str) -> Option<&'static CaseInfo> {
    CASES.iter().find(|c| c.id == id)
}

/// Runs one case script. Steps that exceed the budget are reported as
/// inconclusive; `include_long` additionally enables steps excluded from
/// default runs for runtime reasons.
pub fn run_case(id: &str, budget: &Budget, include_long: bool) -> Result<Report> {
    let info = case_info(id).ok_or_else(|| Error::CaseNotFound(id.to_string()))?;
    let mut ck = Checker::new();
    match id {
        "sec2.1.1" => case_2_1_1(&mut ck)?,
        "sec2.1.2" => case_2_1_2(&mut ck)?,
        "sec2.1.3" => case_2_1_3(&mut ck)?,
        "sec2.2.1" => case_2_2_1(&mut ck)?,
        "sec2.2.2" => case_2_2_2(&mut ck, budget)?,
        "sec2.2.3" => case_2_2_3(&mut ck, budget, include_long)?,
        "sec3.1" => case_3_1(&mut ck, budget)?,
        "sec3.1.1" => case_3_1_1(&mut ck)?,
        "sec3.1.2" => case_3_1_2(&mut ck)?,
        "sec3.1.3" => case_3_1_3(&mut ck)?,
        "sec3.2" => case_3_2(&mut ck, budget)?,
        "sec3.2.1" => case_3_2_1(&mut ck, budget)?,
        "sec3.2.2" => case_3_2_2(&mut ck, budget)?,
        "sec4.1.1" => case_4_1_1(&mut ck, budget)?,
        "sec4.1.2" => case_4_1_2(&mut ck, budget)?,
        "sec4.2.1" => case_4_2_1(&mut ck, budget)?,
        "sec4.2.2" => case_4_2_2(&mut ck, budget)?,
        "sec4.3.1" => case_4_3_1(&mut ck)?,
        "sec4.3.2" => case_4_3_2(&mut ck)?,
        _ => unreachable!("registered case without a script"),
    }
    ck.note("classification", info.classification);
    Ok(Report::new(id, BTreeMap::new(), ck.finish()))
}

// ---------- shared machinery ----------

fn pe(cs: &ConstraintSystem, src: &str) -> Result<FieldElement> {
    parse_expr(src, cs, &SignAssignment::new())
}

fn pp(cs: &ConstraintSystem, src: &str) -> Result<Polynomial> {
    parse_polynomial(src, cs, &SignAssignment::new())
}

/// Declares parameters (name, nonzero-flag), then radicals (name, radicand
/// expression), then extra nonzero hypotheses, and assembles the brackets
/// from expression strings parsed in the resulting scope.
fn build(
    params: &[(&str, bool)],
    radicals: &[(&str, &str)],
    nonzero: &[&str],
    metric: Mat,
    brackets: &[(usize, usize, usize, &str)],
) -> Result<MetricLieAlgebra> {
    let mut cs = ConstraintSystem::new();
    for (name, nz) in params {
        cs.declare_parameter(name, *nz, false)?;
    }
    for (name, radicand) in radicals {
        let p = pp(&cs, radicand)?;
        cs.declare_radical(name, p)?;
    }
    for e in nonzero {
        let p = pp(&cs, e)?;
        cs.declare_nonzero(p);
    }
    let list: Vec<(usize, usize, usize, FieldElement)> = brackets
        .iter()
        .map(|(i, j, k, e)| Ok((*i, *j, *k, pe(&cs, e)?)))
        .collect::<Result<_>>()?;
    algebra(cs, metric, &list)
}

fn upper(m: &Mat) -> Vec<FieldElement> {
    let mut v = Vec::new();
    for i in 0..m.rows {
        for j in i..m.cols {
            v.push(m.at(i, j).clone());
        }
    }
    v
}

/// The ideal generated by the (saturated) Bach components in the named ring
/// variables, most significant first.
fn bach_ideal(
    a: &MetricLieAlgebra,
    cd: &CurvatureData,
    vars: &[&str],
    order: OrderKind,
) -> Result<PolySystem> {
    let syms: Vec<Sym> = vars
        .iter()
        .map(|v| {
            a.cs.lookup(v)
                .ok_or_else(|| Error::UndeclaredSymbol((*v).to_string()))
        })
        .collect::<Result<_>>()?;
    ideal_from_components(&upper(&cd.bach), &a.cs, &syms, order)
}

struct Gb {
    basis: Vec<GPoly>,
    order: OrderKind,
    complete: bool,
}

fn compute_gb(sys: &PolySystem, budget: &Budget) -> Gb {
    match sys.groebner(budget) {
        GbOutcome::Complete(g) => Gb { order: g.order, basis: g.basis, complete: true },
        GbOutcome::BudgetExceeded(g) => Gb { order: g.order, basis: g.basis, complete: false },
    }
}

/// Computes a Gröbner basis once, reports its cardinality (never asserted),
/// and checks each printed polynomial for ideal membership. A zero normal
/// form certifies membership even against a partial basis; a nonzero normal
/// form against a partial basis is inconclusive, not a failure.
fn membership_steps(
    ck: &mut Checker,
    label: &str,
    sys: &PolySystem,
    budget: &Budget,
    printed_size: Option<usize>,
    members: &[(&str, &str)],
) -> Result<()> {
    let gb = compute_gb(sys, budget);
    let printed = match printed_size {
        Some(n) => format!("; published basis has {n}"),
        None => String::new(),
    };
    ck.note(
        &format!("{label}-basis"),
        &format!(
            "{} polynomials ({}){printed}",
            gb.basis.len(),
            if gb.complete { "complete" } else { "budget exceeded" },
        ),
    );
    // membership is order-independent: when the published order's basis does
    // not finish within budget, a complete grevlex basis of the same ideal
    // still decides it
    let mut fallback: Option<Gb> = None;
    for (name, expr) in members {
        let p = sys.parse_poly(expr)?;
        let nf = normal_form(&p, &gb.basis, gb.order, None);
        if nf.is_zero() {
            ck.check(name, true);
            continue;
        }
        if gb.complete {
            ck.fail(name, "nonzero normal form against a complete basis");
            continue;
        }
        if sys.order != OrderKind::Grevlex {
            let fb = fallback.get_or_insert_with(|| {
                let gens: Vec<GPoly> = sys
                    .generators
                    .iter()
                    .map(|g| GPoly::normalize(g.terms.clone(), OrderKind::Grevlex))
                    .collect();
                let mut alt = PolySystem::new(
                    sys.variables.clone(),
                    OrderKind::Grevlex,
                );
                alt.generators = gens;
                compute_gb(&alt, budget)
            });
            if fb.complete {
                let q = GPoly::normalize(p.terms.clone(), OrderKind::Grevlex);
                let nf = normal_form(&q, &fb.basis, fb.order, None);
                if nf.is_zero() {
                    ck.check(name, true);
                } else {
                    ck.fail(name, "nonzero normal form against a complete grevlex basis");
                }
                continue;
            }
        }
        ck.inconclusive(name, "basis incomplete within budget");
    }
    Ok(())
}

/// Every entry outside `keep` (up to symmetry) vanishes.
fn only_entries(m: &Mat, keep: &[(usize, usize)], cs: &ConstraintSystem) -> bool {
    (0..m.rows).all(|i| {
        (0..m.cols).all(|j| {
            keep.contains(&(i, j)) || keep.contains(&(j, i)) || m.at(i, j).is_zero(cs)
        })
    })
}

fn entry_check(
    ck: &mut Checker,
    name: &str,
    m: &Mat,
    i: usize,
    j: usize,
    expr: &str,
    cs: &ConstraintSystem,
) -> Result<bool> {
    let want = pe(cs, expr)?;
    Ok(ck.check_detail(name, m.at(i, j).equal(&want, cs), "entry differs from printed value"))
}

/// Pulls the algebra through a basis change whose rows (new basis in the old
/// one) are given as expression strings.
fn apply_change(a: &MetricLieAlgebra, rows: &[[&str; 4]; 4]) -> Result<MetricLieAlgebra> {
    let mut t = Mat::zeros(4, 4);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            t.set(i, j, pe(&a.cs, e)?);
        }
    }
    a.apply_basis_change(&t)
}

/// Brackets match the expected table (entries not listed vanish) and, when
/// given, the pairing equals scale × reference.
fn table_matches(
    b: &MetricLieAlgebra,
    expected: &[(usize, usize, usize, &str)],
    metric: Option<(&str, &Mat)>,
) -> Result<bool> {
    let cs = &b.cs;
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in 0..4 {
                let want = match expected.iter().find(|(ei, ej, ek, _)| (*ei, *ej, *ek) == (i, j, k)) {
                    Some((_, _, _, e)) => pe(cs, e)?,
                    None => FieldElement::zero(),
                };
                if !b.bracket(i, j, k).equal(&want, cs) {
                    return Ok(false);
                }
            }
        }
    }
    if let Some((scale, reference)) = metric {
        let sc = pe(cs, scale)?;
        if !mat_eq(&b.metric, &reference.scale(&sc, cs), cs) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn change_check(
    ck: &mut Checker,
    name: &str,
    a: &MetricLieAlgebra,
    rows: &[[&str; 4]; 4],
    expected: &[(usize, usize, usize, &str)],
    metric: Option<(&str, &Mat)>,
) -> Result<MetricLieAlgebra> {
    let b = apply_change(a, rows)?;
    let ok = table_matches(&b, expected, metric)?;
    ck.check_detail(name, ok, "transformed brackets or pairing differ from printed form");
    Ok(b)
}

/// Verifies `target = c0 + Σ cᵢ·qᵢ²` exactly. Strict positivity needs
/// c0 > 0 or some positive term whose base is recognized nonzero.
fn sos_positive(
    ck: &mut Checker,
    name: &str,
    target: &FieldElement,
    c0: i64,
    terms: &[(i64, &str)],
    cs: &ConstraintSystem,
) -> Result<bool> {
    let mut acc = fe(c0);
    let mut strict = c0 > 0;
    for (c, q) in terms {
        let qv = pe(cs, q)?;
        if *c > 0 && qv.is_recognized_nonzero(cs) {
            strict = true;
        }
        acc = acc.add(&qv.mul(&qv, cs).scale(&rat(*c, 1), cs), cs);
    }
    let ok = strict && target.equal(&acc, cs);
    Ok(ck.check_detail(name, ok, "sum-of-squares certificate failed"))
}

/// x = y modulo the principal ideal (constraint): the numerator of x − y is
/// exactly divisible by the constraint polynomial.
fn equal_mod(
    x: &FieldElement,
    y: &FieldElement,
    constraint: &Polynomial,
    cs: &ConstraintSystem,
) -> bool {
    let num = cs.reduce(x.sub(y, cs).numerator());
    num.is_zero() || num.exact_div(constraint).is_some()
}

/// Coefficients of x as a polynomial in s (ascending); the denominator must
/// not involve s.
fn fe_coeffs_in(x: &FieldElement, s: Sym, cs: &ConstraintSystem) -> Result<Vec<FieldElement>> {
    x.numerator()
        .coefficients_in(s)
        .into_iter()
        .map(|p| FieldElement::fraction(p, x.denominator().clone(), cs))
        .collect()
}

// ---------- degenerate null families ----------

fn d11_norm(
    g1: &str,
    g2: &str,
    g5: &str,
    g1_nonzero: bool,
) -> Result<(MetricLieAlgebra, CurvatureData)> {
    let b130 = format!("-({g2})");
    let b232 = format!("({g1})+({g5})");
    let a = build(
        &[("g1", g1_nonzero), ("g2", false), ("g3", false), ("g5", false), ("g6", false)],
        &[],
        &[],
        po_metric(),
        &[
            (0, 1, 2, "1"),
            (0, 3, 0, g1),
            (0, 3, 1, g2),
            (0, 3, 2, "g3"),
            (1, 3, 0, b130.as_str()),
            (1, 3, 1, g5),
            (1, 3, 2, "g6"),
            (2, 3, 2, b232.as_str()),
        ],
    )?;
    let cd = CurvatureData::compute(&a)?;
    Ok((a, cd))
}

fn case_2_1_1(ck: &mut Checker) -> Result<()> {
    let a = build(
        &[
            ("l1", true),
            ("g1", false),
            ("g2", false),
            ("g3", false),
            ("g4", false),
            ("g5", false),
            ("g6", false),
        ],
        &[],
        &[],
        po_metric(),
        &[
            (0, 1, 2, "l1"),
            (0, 3, 0, "g1"),
            (0, 3, 1, "g2"),
            (0, 3, 2, "g3"),
            (1, 3, 0, "g4"),
            (1, 3, 1, "g5"),
            (1, 3, 2, "g6"),
            (2, 3, 2, "g1+g5"),
        ],
    )?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let cd = CurvatureData::compute(&a)?;
    ck.check("bach-flat-without-constraints", cd.bach_is_zero(&a.cs));
    ck.check("ricci-supported-in-last-slot", only_entries(&cd.ricci, &[(3, 3)], &a.cs));
    entry_check(ck, "ricci-44-printed", &cd.ricci, 3, 3, "1/2*(l1^2+4*g1*g5-(g2+g4)^2)", &a.cs)?;
    let v = verify_wave_vector(&a, &cd, &a.basis_vector(2))?;
    ck.check(
        "u3-null-recurrent",
        matches!(v.vector, WaveVector::Recurrent(_) | WaveVector::Parallel(_)),
    );
    ck.check("plane-wave", v.plane_wave);
    // rescaling by 1/λ₁ stays in the homothety class and normalizes λ₁ = 1
    let u = "1/l1";
    change_check(
        ck,
        "rescaling-normalizes-l1",
        &a,
        &[[u, "0", "0", "0"], ["0", u, "0", "0"], ["0", "0", u, "0"], ["0", "0", "0", u]],
        &[
            (0, 1, 2, "1"),
            (0, 3, 0, "g1/l1"),
            (0, 3, 1, "g2/l1"),
            (0, 3, 2, "g3/l1"),
            (1, 3, 0, "g4/l1"),
            (1, 3, 1, "g5/l1"),
            (1, 3, 2, "g6/l1"),
            (2, 3, 2, "(g1+g5)/l1"),
        ],
        Some(("1/l1^2", &po_metric())),
    )?;
    // normalized family (λ₁ = 1, γ₄ = −γ₂): conformal-flatness and local
    // symmetry hold exactly on the published loci
    let (a0, c0) = d11_norm("g1", "g2", "g5", false)?;
    let f0 = predicate_flags(&a0, &c0);
    ck.check("lcf-fails-generically", !f0.lcf);
    ck.check("locally-symmetric-fails-generically", !f0.locally_symmetric);
    let (a1, c1) = d11_norm("g1", "g2", "g1", false)?;
    ck.check("lcf-on-equal-diagonal-locus", predicate_flags(&a1, &c1).lcf);
    let (a2, c2) = d11_norm("g1", "-1/2", "g5", false)?;
    let f2 = predicate_flags(&a2, &c2);
    ck.check("lcf-on-half-rotation-locus", f2.lcf);
    ck.check("half-rotation-alone-not-symmetric", !f2.locally_symmetric);
    let (a3, c3) = d11_norm("0", "g2", "0", false)?;
    ck.check("locally-symmetric-diagonal-free", predicate_flags(&a3, &c3).locally_symmetric);
    let (a4, c4) = d11_norm("g1", "-1/2", "-g1", false)?;
    ck.check("locally-symmetric-tracefree-locus", predicate_flags(&a4, &c4).locally_symmetric);
    let (a5, c5) = d11_norm("g1", "-1/2", "-1/(4*g1)", true)?;
    ck.check("locally-symmetric-product-locus", predicate_flags(&a5, &c5).locally_symmetric);
    Ok(())
}

fn case_2_1_2(ck: &mut Checker) -> Result<()> {
    let fam = |g1: &str, g3: &str| -> Result<(MetricLieAlgebra, CurvatureData)> {
        let b030 = format!("({g1})*l3");
        let b032 = format!("(({g1})-g2)*l1");
        let a = build(
            &[
                ("l1", false),
                ("l3", true),
                ("g1", false),
                ("g2", false),
                ("g3", false),
                ("g4", false),
            ],
            &[],
            &[],
            po_metric(),
            &[
                (0, 1, 2, "l1"),
                (0, 3, 0, b030.as_str()),
                (0, 3, 2, b032.as_str()),
                (1, 2, 2, "l3"),
                (1, 3, 0, g3),
                (1, 3, 2, "g4"),
                (2, 3, 2, "g2*l3"),
            ],
        )?;
        let cd = CurvatureData::compute(&a)?;
        Ok((a, cd))
    };
    let (a, cd) = fam("g1", "g3")?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    ck.check("bach-supported-in-last-slot", only_entries(&cd.bach, &[(3, 3)], &a.cs));
    entry_check(ck, "b44-printed", &cd.bach, 3, 3, "1/4*(g1^2*l3^2+g3^2)*l3^2", &a.cs)?;
    let (a, cd) = fam("0", "0")?;
    ck.check("bach-flat-on-locus", cd.bach_is_zero(&a.cs));
    let f = predicate_flags(&a, &cd);
    ck.check("locally-conformally-flat", f.lcf);
    ck.check("locally-symmetric", f.locally_symmetric);
    Ok(())
}

fn case_2_1_3(ck: &mut Checker) -> Result<()> {
    let fam = |g1: &str, g3: &str| -> Result<(MetricLieAlgebra, CurvatureData)> {
        let b030 = format!("-({g1})*l2*l3");
        let b031 = format!("({g1})*l2^2");
        let b130 = format!("-({g3})*l3");
        let b131 = format!("({g3})*l2");
        let b132 = format!("({g1})*l1*l3-(({g3})-g4)*l1+g2*l3");
        let a = build(
            &[
                ("l1", false),
                ("l2", true),
                ("l3", false),
                ("g1", false),
                ("g2", false),
                ("g3", false),
                ("g4", false),
            ],
            &[],
            &[],
            po_metric(),
            &[
                (0, 1, 2, "l1"),
                (0, 2, 2, "l2"),
                (1, 2, 2, "l3"),
                (0, 3, 0, b030.as_str()),
                (0, 3, 1, b031.as_str()),
                (0, 3, 2, "g2*l2"),
                (1, 3, 0, b130.as_str()),
                (1, 3, 1, b131.as_str()),
                (1, 3, 2, b132.as_str()),
                (2, 3, 2, "g4*l2"),
            ],
        )?;
        let cd = CurvatureData::compute(&a)?;
        Ok((a, cd))
    };
    let (a, cd) = fam("g1", "g3")?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    ck.check("bach-supported-in-last-slot", only_entries(&cd.bach, &[(3, 3)], &a.cs));
    entry_check(ck, "b44-printed", &cd.bach, 3, 3, "1/4*(g1^2*l2^2+g3^2)*(l2^2+l3^2)^2", &a.cs)?;
    let (a, cd) = fam("0", "0")?;
    ck.check("bach-flat-on-locus", cd.bach_is_zero(&a.cs));
    let f = predicate_flags(&a, &cd);
    ck.check("locally-conformally-flat", f.lcf);
    ck.check("locally-symmetric", f.locally_symmetric);
    Ok(())
}

// ---------- degenerate spacelike families ----------

fn case_2_2_1(ck: &mut Checker) -> Result<()> {
    let fam = |g2: &str,
               g3: &str,
               g4: &str,
               g6: &str,
               g6nz: bool|
     -> Result<(MetricLieAlgebra, CurvatureData)> {
        let b232 = format!("g1-({g3})");
        let a = build(
            &[
                ("g1", false),
                ("g2", false),
                ("g3", false),
                ("g4", false),
                ("g5", false),
                ("g6", g6nz),
            ],
            &[],
            &[],
            po_metric(),
            &[
                (0, 3, 0, "g1"),
                (1, 2, 0, "1"),
                (1, 3, 0, g2),
                (1, 3, 1, g3),
                (1, 3, 2, g4),
                (2, 3, 0, "g5"),
                (2, 3, 1, g6),
                (2, 3, 2, b232.as_str()),
            ],
        )?;
        let cd = CurvatureData::compute(&a)?;
        Ok((a, cd))
    };
    let (a, cd) = fam("g2", "g3", "g4", "g6", false)?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    entry_check(ck, "b33-printed", &cd.bach, 2, 2, "1/12*(g6^2-8*g5^2+16*g2)", &a.cs)?;
    let (a, cd) = fam("(8*g5^2-g6^2)/16", "g3", "g4", "g6", false)?;
    entry_check(ck, "b12-printed", &cd.bach, 0, 1, "-1/4*g6^2*(3*g5*g6+2*g1-3*g3)", &a.cs)?;
    entry_check(
        ck,
        "b11-printed",
        &cd.bach,
        0,
        0,
        "-(21*g6^4+144*g5^2*g6^2+g5*g6*(64*g1-288*g3)-80*g1^2+240*g3^2-160*g1*g3+96*g4*g6)/128",
        &a.cs,
    )?;
    entry_check(
        ck,
        "b34-printed",
        &cd.bach,
        2,
        3,
        "(63*g6^4+144*g5^2*g6^2+g5*g6*(192*g1-192*g3)+80*g1^2+80*g3^2-160*g1*g3+32*g4*g6)/128",
        &a.cs,
    )?;
    // central-coupling branch: 48(B₁₁ + 3B₃₄) is strictly positive, so γ₆ = 0
    let (a, cd) = fam("(8*g5^2-g6^2)/16", "(3*g5*g6+2*g1)/3", "g4", "g6", true)?;
    let obstruction = cd
        .bach
        .at(0, 0)
        .add(&cd.bach.at(2, 3).scale(&rat(3, 1), &a.cs), &a.cs)
        .scale(&rat(48, 1), &a.cs);
    sos_positive(ck, "g6-branch-obstructed", &obstruction, 0, &[(40, "g1"), (63, "g6^2")], &a.cs)?;
    // γ₆ = 0: the remaining components collapse step by step
    let (a, cd) = fam("g5^2/2", "g3", "g4", "0", false)?;
    entry_check(ck, "b34-on-g6-zero", &cd.bach, 2, 3, "5/8*(g1-g3)^2", &a.cs)?;
    let (a, cd) = fam("g5^2/2", "g1", "g4", "0", false)?;
    entry_check(ck, "b24-printed", &cd.bach, 1, 3, "3/4*g1*(g1*g5+g4)", &a.cs)?;
    entry_check(ck, "b44-printed", &cd.bach, 3, 3, "-3/4*(g1*g5+g4)*(3*g1*g5+g4)", &a.cs)?;
    let (a, cd) = fam("g5^2/2", "g1", "-g1*g5", "0", false)?;
    ck.check("bach-flat-final-family", cd.bach_is_zero(&a.cs));
    // γ₁ ≠ 0: both sign branches land on the same catalog entry
    let mut ok = true;
    for z in [1i64, -1] {
        let rad = format!("({z})*g1");
        let a = build(
            &[("g1", true), ("g5", false)],
            &[("h", rad.as_str())],
            &[],
            po_metric(),
            &[
                (0, 3, 0, "g1"),
                (1, 2, 0, "1"),
                (1, 3, 0, "g5^2/2"),
                (1, 3, 1, "g1"),
                (1, 3, 2, "-g1*g5"),
                (2, 3, 0, "g5"),
            ],
        )?;
        let zs = z.to_string();
        let r21 = format!("({z})/h");
        let r22 = format!("-({z})*g5/h");
        let scale = format!("({z})/g1");
        let b = apply_change(
            &a,
            &[
                ["1/h", "0", "0", "0"],
                ["0", r21.as_str(), r22.as_str(), "0"],
                ["0", "0", zs.as_str(), "0"],
                ["0", "g5/g1", "-g5^2/(2*g1)", "1/g1"],
            ],
        )?;
        ok &= table_matches(
            &b,
            &[(0, 3, 0, "1"), (1, 2, 0, "1"), (1, 3, 1, "1")],
            Some((scale.as_str(), &po_metric())),
        )?;
    }
    ck.check_detail("reduces-to-thm1.D.i", ok, "transformed family differs from the catalog form");
    // γ₁ = 0: a plane-wave product
    let a = build(
        &[("g5", false)],
        &[],
        &[],
        po_metric(),
        &[(1, 2, 0, "1"), (1, 3, 0, "g5^2/2"), (2, 3, 0, "g5")],
    )?;
    let b = change_check(
        ck,
        "flat-diagonal-locus-is-h3xr-product",
        &a,
        &[
            ["1", "0", "0", "0"],
            ["0", "1", "-g5", "0"],
            ["0", "0", "1", "0"],
            ["0", "g5", "-g5^2/2", "1"],
        ],
        &[(1, 2, 0, "1")],
        Some(("1", &po_metric())),
    )?;
    let cd = CurvatureData::compute(&b)?;
    let v = verify_wave_vector(&b, &cd, &b.basis_vector(3))?;
    ck.check(
        "flat-diagonal-locus-plane-wave",
        matches!(v.vector, WaveVector::Parallel(_)) && v.plane_wave,
    );
    Ok(())
}

fn case_2_2_2(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let fam = |g2: &str, g3: &str, g4: &str| -> Result<(MetricLieAlgebra, CurvatureData)> {
        let b130 = format!("(g1-({g2}))*l3");
        let a = build(
            &[("l3", false), ("g1", false), ("g2", false), ("g3", false), ("g4", false)],
            &[],
            &[],
            po_metric(),
            &[
                (0, 2, 0, "1"),
                (0, 3, 0, "g1"),
                (1, 2, 0, "l3"),
                (1, 3, 0, b130.as_str()),
                (1, 3, 1, g2),
                (2, 3, 0, g3),
                (2, 3, 1, g4),
            ],
        )?;
        let cd = CurvatureData::compute(&a)?;
        Ok((a, cd))
    };
    let (a, cd) = fam("g2", "g3", "g4")?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let sys = bach_ideal(&a, &cd, &["l3", "g1", "g2", "g3", "g4"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex",
        &sys,
        budget,
        Some(48),
        &[
            ("membership-g1", "g4^5*(g3^2+g4^2)"),
            ("membership-g2", "(20*g3^2-7*g4^2)*(g3^2+g4^2)^2"),
        ],
    )?;
    let (a, cd) = fam("g2", "0", "0")?;
    entry_check(ck, "b33-printed", &cd.bach, 2, 2, "2/3*(g1-g2)*(2*l3^4+3*l3^2+1)", &a.cs)?;
    let (a, cd) = fam("g1", "0", "0")?;
    ck.check("bach-flat-final-family", cd.bach_is_zero(&a.cs));
    // γ₁ ≠ 0: rescale to the catalog entry, either sign
    let mut ok = true;
    for z in [1i64, -1] {
        let rad = format!("({z})*g1");
        let a = build(
            &[("l3", false), ("g1", true)],
            &[("h", rad.as_str())],
            &[],
            po_metric(),
            &[(0, 2, 0, "1"), (0, 3, 0, "g1"), (1, 2, 0, "l3"), (1, 3, 1, "g1")],
        )?;
        let zs = z.to_string();
        let t44 = format!("({z})/g1");
        let b = apply_change(
            &a,
            &[
                ["1/h", "0", "0", "0"],
                ["0", "1/h", "0", "0"],
                ["0", "0", "1", "0"],
                ["0", "0", "0", t44.as_str()],
            ],
        )?;
        ok &= table_matches(
            &b,
            &[(0, 2, 0, "1"), (0, 3, 0, zs.as_str()), (1, 2, 0, "l3"), (1, 3, 1, zs.as_str())],
            Some((t44.as_str(), &po_metric())),
        )?;
    }
    ck.check_detail("reduces-to-thm1.D.ii", ok, "transformed family differs from the catalog form");
    // flipping the sign of the second vector is an isometry exchanging ±λ₃
    let a = build(
        &[("l3", false)],
        &[],
        &[],
        po_metric(),
        &[(0, 2, 0, "1"), (0, 3, 0, "1"), (1, 2, 0, "l3"), (1, 3, 1, "1")],
    )?;
    change_check(
        ck,
        "isometry-flips-l3-sign",
        &a,
        &[["1", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        &[(0, 2, 0, "1"), (0, 3, 0, "1"), (1, 2, 0, "-l3"), (1, 3, 1, "1")],
        Some(("1", &po_metric())),
    )?;
    // γ₁ = 0: nilpotent Ricci operator and a null parallel field
    let a = build(&[("l3", false)], &[], &[], po_metric(), &[(0, 2, 0, "1"), (1, 2, 0, "l3")])?;
    let cd = CurvatureData::compute(&a)?;
    ck.check(
        "ricci-operator-2-step-nilpotent",
        nilpotency_index(&cd.ricci_operator, &a.cs) == Some(2),
    );
    let v = verify_wave_vector(&a, &cd, &a.basis_vector(3))?;
    ck.check(
        "null-parallel-plane-wave",
        matches!(v.vector, WaveVector::Parallel(_)) && v.plane_wave,
    );
    Ok(())
}

fn case_2_2_3(ck: &mut Checker, budget: &Budget, include_long: bool) -> Result<()> {
    let fam = |l2nz: bool,
               g3nz: bool,
               l2: &str,
               l3: &str,
               g1: &str,
               g2: &str,
               g3: &str,
               g4: &str|
     -> Result<(MetricLieAlgebra, CurvatureData)> {
        let b030 = format!("({g1})*l1");
        let b130 = format!("l1*({g2})");
        let b131 = format!("-({g3})*l1*({l2})");
        let b132 = format!("({g3})*l1^2");
        let b230 = format!("-(({g3})*({l2})*({l3})-({g2})*({l2})+(({g1})-({g4}))*({l3}))");
        let b231 = format!("-({g4})*({l2})");
        let b232 = format!("({g4})*l1");
        let a = build(
            &[
                ("l1", true),
                ("l2", l2nz),
                ("l3", false),
                ("g1", false),
                ("g2", false),
                ("g3", g3nz),
                ("g4", false),
            ],
            &[],
            &[],
            po_metric(),
            &[
                (0, 1, 0, "l1"),
                (0, 2, 0, l2),
                (0, 3, 0, b030.as_str()),
                (1, 2, 0, l3),
                (1, 3, 0, b130.as_str()),
                (1, 3, 1, b131.as_str()),
                (1, 3, 2, b132.as_str()),
                (2, 3, 0, b230.as_str()),
                (2, 3, 1, b231.as_str()),
                (2, 3, 2, b232.as_str()),
            ],
        )?;
        let cd = CurvatureData::compute(&a)?;
        Ok((a, cd))
    };
    let (a, cd) = fam(false, false, "l2", "l3", "g1", "g2", "g3", "g4")?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    if include_long {
        let sys = bach_ideal(&a, &cd, &["l1", "l2", "l3", "g1", "g2", "g3", "g4"], OrderKind::Grevlex)?;
        membership_steps(
            ck,
            "grevlex",
            &sys,
            budget,
            Some(2183),
            &[("membership-g", "g4^7*l1^5*(l2^2+l3^2)")],
        )?;
    } else {
        ck.inconclusive(
            "membership-g",
            "excluded from default runs (published computation exceeds 12 hours)",
        );
    }
    // λ₂ = λ₃ = 0 is obstructed outright
    let (a, cd) = fam(false, false, "0", "0", "g1", "g2", "g3", "g4")?;
    let b11 = cd.bach.at(0, 0);
    ck.check(
        "degenerate-kernel-branch-obstructed",
        b11.equal(&pe(&a.cs, "1/6*l1^4")?, &a.cs) && b11.is_recognized_nonzero(&a.cs),
    );
    // γ₄ = 0: second round of memberships
    let (a, cd) = fam(false, false, "l2", "l3", "g1", "g2", "g3", "0")?;
    let sys = bach_ideal(&a, &cd, &["g1", "g2", "g3", "l1", "l2", "l3"], OrderKind::Grevlex)?;
    membership_steps(
        ck,
        "grevlex-g4-zero",
        &sys,
        budget,
        Some(216),
        &[
            ("membership-gp1", "l1^4*(l1+2*g1*l2)*(l1+2*l2*(g3*l2+g1))"),
            ("membership-gp2", "l1^2*(l1+2*g1*l2)^2*(2*g2*l2^2-l1*l3)"),
            ("membership-gp3", "g3*l1^4*((l1+2*g1*l2)*(l1+2*g2*l3)+2*g3*l1*(l2^2+l3^2))"),
        ],
    )?;
    // on the locus λ₁ = −2γ₁λ₂ the third member degenerates to a γ₃² multiple
    {
        let cs = &a.cs;
        let gp3 = pp(cs, "g3*l1^4*((l1+2*g1*l2)*(l1+2*g2*l3)+2*g3*l1*(l2^2+l3^2))")?;
        let l1s = cs.lookup("l1").expect("declared");
        let locus = pp(cs, "-2*g1*l2")?;
        let expect = pp(cs, "2*g3^2*(-2*g1*l2)^5*(l2^2+l3^2)")?;
        ck.check(
            "gp3-on-locus-forces-g3-zero",
            gp3.substitute_symbol(l1s, &locus).sub(&expect).is_zero(),
        );
    }
    // γ₃ = 0 on that locus leaves a single quartic obstruction
    let (a, cd) = fam(true, false, "l2", "l3", "-l1/(2*l2)", "g2", "0", "0")?;
    entry_check(ck, "b11-on-locus-printed", &cd.bach, 0, 0, "-5*(2*g2*l2^2-l1*l3)^4/(96*l2^4)", &a.cs)?;
    // final two-parameter solution
    let (a, cd) = fam(
        true,
        false,
        "l2",
        "l3",
        "-(l1+2*g3*l2^2)/(2*l2)",
        "l1*l3/(2*l2^2)",
        "g3",
        "0",
    )?;
    ck.check("bach-flat-final-family", cd.bach_is_zero(&a.cs));
    ck.check(
        "final-family-printed",
        table_matches(
            &a,
            &[
                (0, 1, 0, "l1"),
                (0, 2, 0, "l2"),
                (0, 3, 0, "-l1*(l1+2*g3*l2^2)/(2*l2)"),
                (1, 2, 0, "l3"),
                (1, 3, 0, "l1^2*l3/(2*l2^2)"),
                (1, 3, 1, "-g3*l1*l2"),
                (1, 3, 2, "g3*l1^2"),
                (2, 3, 0, "l1*l3/l2"),
            ],
            Some(("1", &po_metric())),
        )?,
    );
    // γ₃ ≠ 0: rescale to the catalog entry, either sign of γ₃' = −γ₃λ₁λ₂²
    let mut ok = true;
    for z in [1i64, -1] {
        let (a, _) = fam(
            true,
            true,
            "l2",
            "l3",
            "-(l1+2*g3*l2^2)/(2*l2)",
            "l1*l3/(2*l2^2)",
            "g3",
            "0",
        )?;
        let mut a = a;
        let rad = format!("({z})*(-g3*l1*l2^2)");
        let radp = pp(&a.cs, rad.as_str())?;
        a.cs.declare_radical("h", radp)?;
        let q = format!("(({z})*(-g3*l1*l2^2))");
        let zs = z.to_string();
        let r22 = "-l1/(l2*h)";
        let t42 = format!("l1/{q}");
        let t43 = format!("-l1^2/(2*l2*{q})");
        let t44 = format!("l2/{q}");
        let scale = format!("1/{q}");
        let b = apply_change(
            &a,
            &[
                ["1/h", "0", "0", "0"],
                ["0", "1/h", r22, "0"],
                ["0", "0", "1/l2", "0"],
                ["0", t42.as_str(), t43.as_str(), t44.as_str()],
            ],
        )?;
        ok &= table_matches(
            &b,
            &[(0, 2, 0, "1"), (0, 3, 0, zs.as_str()), (1, 2, 0, "l3/l2"), (1, 3, 1, zs.as_str())],
            Some((scale.as_str(), &po_metric())),
        )?;
    }
    ck.check_detail("reduces-to-thm1.D.ii", ok, "transformed family differs from the catalog form");
    // γ₃ = 0: plane-wave product locus
    let (a, _) = fam(true, false, "l2", "l3", "-l1/(2*l2)", "l1*l3/(2*l2^2)", "0", "0")?;
    let b = change_check(
        ck,
        "flat-locus-reduces-to-thm3.D.ii",
        &a,
        &[
            ["1", "0", "0", "0"],
            ["0", "1", "-l1/l2", "0"],
            ["0", "0", "1/l2", "0"],
            ["0", "l1", "-l1^2/(2*l2)", "l2"],
        ],
        &[(0, 2, 0, "1"), (1, 2, 0, "l3/l2")],
        Some(("1", &po_metric())),
    )?;
    let cd = CurvatureData::compute(&b)?;
    ck.check(
        "ricci-operator-2-step-nilpotent",
        nilpotency_index(&cd.ricci_operator, &b.cs) == Some(2),
    );
    let v = verify_wave_vector(&b, &cd, &b.basis_vector(3))?;
    ck.check(
        "null-parallel-plane-wave",
        matches!(v.vector, WaveVector::Parallel(_)) && v.plane_wave,
    );
    Ok(())
}

// ---------- Riemannian transverse families ----------

/// Oscillator-type family: [e1,e2] = l·e3, [eᵢ,e4] given by the coupling
/// matrix g, [e3,e4] = (g[0]+g[4])·e3.
#[allow(clippy::too_many_arguments)]
fn osc_family(
    params: &[(&str, bool)],
    radicals: &[(&str, &str)],
    nonzero: &[&str],
    metric: Mat,
    l: &str,
    g: [&str; 6],
) -> Result<(MetricLieAlgebra, CurvatureData)> {
    let b232 = format!("({})+({})", g[0], g[4]);
    let a = build(
        params,
        radicals,
        nonzero,
        metric,
        &[
            (0, 1, 2, l),
            (0, 3, 0, g[0]),
            (0, 3, 1, g[1]),
            (0, 3, 2, g[2]),
            (1, 3, 0, g[3]),
            (1, 3, 1, g[4]),
            (1, 3, 2, g[5]),
            (2, 3, 2, b232.as_str()),
        ],
    )?;
    let cd = CurvatureData::compute(&a)?;
    Ok((a, cd))
}

fn case_3_1(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let free = [
        ("g1", false),
        ("g2", false),
        ("g3", false),
        ("g4", false),
        ("g6", false),
    ];
    let (a, cd) = osc_family(
        &free,
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "1",
        ["g1", "g2", "g3", "g4", "0", "g6"],
    )?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g6", "g1"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex",
        &sys,
        budget,
        Some(50),
        &[(
            "membership-g",
            "g1^4*g6^2*(g1^2+1)*(g1^2+2)*(g1^2+4)*(8*g1^2+5)*(16*g1^2+25)*(25*g1^2+1)",
        )],
    )?;
    // branch γ₁ = 0
    let (a, cd) = osc_family(
        &free,
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "1",
        ["0", "g2", "g3", "g4", "0", "g6"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g6"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex-g1-zero",
        &sys,
        budget,
        None,
        &[
            ("membership-gp1", "g4^4"),
            ("membership-gp2", "g2^2-8*g3^2+g4^2-8*g6^2+8"),
        ],
    )?;
    // branch γ₆ = 0
    let (a, cd) = osc_family(
        &free,
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "1",
        ["g1", "g2", "g3", "g4", "0", "0"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g1"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex-g6-zero",
        &sys,
        budget,
        None,
        &[
            ("membership-gpp1", "g3*g4^4"),
            ("membership-gpp2", "g1*g2*g3*(g1^2+1)"),
        ],
    )?;
    Ok(())
}

fn case_3_1_1(ck: &mut Checker) -> Result<()> {
    // γ₁ = γ₄ = 0 with the branch quadric γ₂² − 8γ₃² − 8γ₆² + 8 = 0
    let (a, cd) = osc_family(
        &[("g2", false), ("g3", false), ("g6", false)],
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "1",
        ["0", "g2", "g3", "0", "0", "g6"],
    )?;
    let quadric = pp(&a.cs, "g2^2-8*g3^2-8*g6^2+8")?;
    ck.check(
        "b11-printed-mod-quadric",
        equal_mod(
            &cd.bach.at(0, 0),
            &pe(&a.cs, "9/128*g2^2*(7*g2^2+16*g3^2)")?,
            &quadric,
            &a.cs,
        ),
    );
    // γ₂ = 0 forces γ₃² + γ₆² = 1; both center signs behave identically
    let mut bach_flat = true;
    let mut nilpotent = true;
    let mut wave = true;
    let mut product = true;
    for z in [1i64, -1] {
        let g6e = format!("({z})*w");
        let (a, cd) = osc_family(
            &[("g3", false)],
            &[("w", "1-g3^2")],
            &["1-g3^2"],
            diag4([1, 1, 1, -1]),
            "1",
            ["0", "0", "g3", "0", "0", g6e.as_str()],
        )?;
        bach_flat &= cd.bach_is_zero(&a.cs);
        nilpotent &= nilpotency_index(&cd.ricci_operator, &a.cs) == Some(2);
        let xi = vec![pe(&a.cs, g6e.as_str())?, pe(&a.cs, "-g3")?, fe(0), fe(1)];
        let v = verify_wave_vector(&a, &cd, &xi)?;
        wave &= matches!(v.vector, WaveVector::Parallel(_)) && v.plane_wave;
        // brackets in the adapted basis are those of a central extension
        // times a line (the pairing of the adapted basis is not diagonal)
        let t41 = g6e.clone();
        let b = apply_change(
            &a,
            &[
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "1", "0"],
                [t41.as_str(), "-g3", "0", "1"],
            ],
        )?;
        product &= table_matches(&b, &[(0, 1, 2, "1")], None)?;
    }
    ck.check("bach-flat-on-circle-locus", bach_flat);
    ck.check("ricci-operator-2-step-nilpotent", nilpotent);
    ck.check("null-parallel-plane-wave", wave);
    ck.check("bracket-level-product-structure", product);
    Ok(())
}

fn case_3_1_2(ck: &mut Checker) -> Result<()> {
    let (a, cd) = osc_family(
        &[("g1", true), ("g2", false), ("g4", false)],
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "1",
        ["g1", "g2", "0", "g4", "0", "0"],
    )?;
    entry_check(
        ck,
        "b33-printed",
        &cd.bach,
        2,
        2,
        "-1/24*((g2+g4)^2*(4*(g2+g4)^2-12*g2*g4+3)-g1^2*((g2+g4)^2+12*g2*g4-28)+20)",
        &a.cs,
    )?;
    entry_check(
        ck,
        "b44-printed",
        &cd.bach,
        3,
        3,
        "-1/24*((g2+g4)^2*(12*(g2+g4)^2-36*g2*g4+1)+g1^2*(13*(g2+g4)^2-36*g2*g4-4)-4)",
        &a.cs,
    )?;
    let target = cd
        .bach
        .at(2, 2)
        .add(&cd.bach.at(3, 3).scale(&rat(3, 1), &a.cs), &a.cs)
        .scale(&rat(-12, 1), &a.cs);
    sos_positive(
        ck,
        "no-bach-flat-metric",
        &target,
        4,
        &[
            (5, "(g2+g4)^2"),
            (15, "(g2+g4)*(g2-g4)"),
            (3, "g2+g4"),
            (4, "g1*(g2+g4)"),
            (15, "g1*(g2-g4)"),
            (8, "g1"),
        ],
        &a.cs,
    )?;
    Ok(())
}

fn case_3_1_3(ck: &mut Checker) -> Result<()> {
    let (a, cd) = osc_family(
        &[("g1", true), ("g3", true)],
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "1",
        ["g1", "0", "g3", "0", "0", "0"],
    )?;
    entry_check(ck, "b22-printed", &cd.bach, 1, 1, "-1/6*(3*g1^2+g3^2+3)*(g3^2-1)", &a.cs)?;
    // γ₃ = ±1: both signs Bach-flat, neither symmetric nor conformally flat
    let mut bach_flat = true;
    let mut rigid = true;
    for z in [1i64, -1] {
        let ze = z.to_string();
        let (a, cd) = osc_family(
            &[("g1", true)],
            &[],
            &[],
            diag4([1, 1, 1, -1]),
            "1",
            ["g1", "0", ze.as_str(), "0", "0", "0"],
        )?;
        bach_flat &= cd.bach_is_zero(&a.cs);
        let f = predicate_flags(&a, &cd);
        rigid &= !f.lcf && !f.locally_symmetric && !f.einstein;
    }
    ck.check("bach-flat-on-unit-locus", bach_flat);
    ck.check("not-symmetric-not-conformally-flat", rigid);
    // two isometries normalize the sign pair to ε = 1, γ₁ > 0
    let (a, _) = osc_family(
        &[("g1", true)],
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "1",
        ["g1", "0", "1", "0", "0", "0"],
    )?;
    change_check(
        ck,
        "isometry-flips-g1",
        &a,
        &[["-1", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "-1"]],
        &[(0, 1, 2, "1"), (0, 3, 0, "-g1"), (0, 3, 2, "1"), (2, 3, 2, "-g1")],
        Some(("1", &diag4([1, 1, 1, -1]))),
    )?;
    change_check(
        ck,
        "isometry-flips-both-signs",
        &a,
        &[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "-1"]],
        &[(0, 1, 2, "1"), (0, 3, 0, "-g1"), (0, 3, 2, "-1"), (2, 3, 2, "-g1")],
        Some(("1", &diag4([1, 1, 1, -1]))),
    )?;
    ck.check(
        "matches-thm1.R-form",
        table_matches(
            &a,
            &[(0, 1, 2, "1"), (0, 3, 0, "g1"), (0, 3, 2, "1"), (2, 3, 2, "g1")],
            Some(("1", &diag4([1, 1, 1, -1]))),
        )?,
    );
    Ok(())
}

const SEC3_2_G1: &str =
    "((12*g2+5*g4)*g3^2-(5*g2+12*g4)*g6^2-17*(g1-1)*g3*g6)*(lam^2+(g1+1)^2)*lam^10";

fn case_3_2(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let params = [
        ("lam", true),
        ("g1", false),
        ("g2", false),
        ("g3", false),
        ("g4", false),
        ("g6", false),
    ];
    let (a, cd) = osc_family(
        &params,
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "lam",
        ["g1", "g2", "g3", "g4", "1", "g6"],
    )?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let vars = ["g2", "g3", "g4", "g6", "g1", "lam"];
    let sys = bach_ideal(&a, &cd, &vars, OrderKind::Grevlex)?;
    membership_steps(ck, "grevlex", &sys, budget, Some(211), &[("membership-g1", SEC3_2_G1)])?;
    // append the first member and pass to a lex basis
    let mut sys = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    sys.generators.push(sys.parse_poly(SEC3_2_G1)?.primitive());
    membership_steps(
        ck,
        "lex-augmented",
        &sys,
        budget,
        None,
        &[(
            "membership-g2",
            "-g6*(lam^2-(g1+1)*g6^2)*(lam^2+(g1+1)^2)*(lam^2+25*(g1+1)^2)*(2*lam^2+(g1+1)^2)\
             *(4*lam^2+(g1+1)^2)*(5*lam^2+8*(g1+1)^2)*(25*lam^2+16*(g1+1)^2)",
        )],
    )?;
    Ok(())
}

fn case_3_2_1(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let params = [("lam", true), ("g1", false), ("g2", false), ("g3", false), ("g4", false)];
    // γ₆ = 0: central coupling dies first
    let (a, cd) = osc_family(
        &params,
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "lam",
        ["g1", "g2", "g3", "g4", "1", "0"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g1", "lam"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex",
        &sys,
        budget,
        None,
        &[(
            "membership-gp1",
            "g3*lam^6*(lam^2+4)*(5*lam^2+2)*(16*lam^2+7225)*(32*lam^2+9)*(256*lam^2+169)",
        )],
    )?;
    // γ₃ = 0
    let (a, cd) = osc_family(
        &params,
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "lam",
        ["g1", "g2", "0", "g4", "1", "0"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g4", "g1", "lam"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex-g3-zero",
        &sys,
        budget,
        None,
        &[(
            "membership-gp2",
            "-lam^2*(7*lam^2-2*(g1+1)^2)*(lam^2+(g1+1)^2)*(lam^2+2*(g1+1)^2)\
             *(4*lam^2+(g1+1)^2)*(5*lam^2+8*(g1+1)^2)",
        )],
    )?;
    // the surviving real factor 7λ² = 2(γ₁+1)² leads to a positive quartic
    let mut sys = bach_ideal(&a, &cd, &["g1", "lam", "g2", "g4"], OrderKind::Lex)?;
    sys.generators.push(sys.parse_poly("7*lam^2-2*(g1+1)^2")?.primitive());
    let q = "441*g2^4+2*g2^2*(641*g4^2+770)+(7*g4^2+22)*(63*g4^2+22)\
             -24*g2*g4*(35*g2^2+35*g4^2+88)";
    let gp3 = format!("(g4^2+1)^4*({q})");
    membership_steps(ck, "lex-constrained", &sys, budget, None, &[("membership-gp3", gp3.as_str())])?;
    sos_positive(
        ck,
        "no-bach-flat-metric",
        &pe(&a.cs, q)?,
        484,
        &[
            (420, "g2*(g2-g4)"),
            (420, "g4*(g2-g4)"),
            (1056, "g2-g4"),
            (21, "g2^2"),
            (442, "g2*g4"),
            (21, "g4^2"),
            (484, "g2"),
            (484, "g4"),
        ],
        &a.cs,
    )?;
    Ok(())
}

fn case_3_2_2(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let params = [
        ("lam", true),
        ("g1", false),
        ("g2", false),
        ("g3", false),
        ("g4", false),
        ("g6", true),
    ];
    let (a, cd) = osc_family(
        &params,
        &[],
        &[],
        diag4([1, 1, 1, -1]),
        "lam",
        ["g1", "g2", "g3", "g4", "1", "g6"],
    )?;
    let vars = ["g1", "g6", "g4", "g2", "g3", "lam"];
    let constraint = "lam^2-(g1+1)*g6^2";
    let mut sys = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    sys.generators.push(sys.parse_poly(constraint)?.primitive());
    let gpp1 = "-lam^6*(lam^2+1)*(4*lam^2+9)*(25*lam^2+4)*(45*lam^2+98)*(225*lam^2+256)\
                *(256*lam^2+1369)*(968*lam^2+1521)*(2304*lam^4+46441425*lam^2+1028805625)\
                *(3211264*lam^4+34731953*lam^2+35796289)*(g2^2*lam^2-(g2^2+1)*g3^2)";
    membership_steps(ck, "lex-constrained", &sys, budget, None, &[("membership-gpp1", gpp1)])?;
    let mut sys = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    for extra in [constraint, gpp1, SEC3_2_G1] {
        sys.generators.push(sys.parse_poly(extra)?.primitive());
    }
    membership_steps(
        ck,
        "lex-augmented",
        &sys,
        budget,
        None,
        &[
            ("membership-gpp2", "(g4-g2)*lam^4"),
            ("membership-gpp3", "(g2*g6-g3)*lam^4"),
            ("membership-gpp4", "(79*g1+11*g2^2-90*g2*g4)*lam^2"),
        ],
    )?;
    // the solved branch: γ₄ = γ₂, γ₃ = γ₂γ₆, γ₁ = γ₂², λ = εγ₆√(γ₂²+1)
    let mut bach_flat = true;
    let mut catalog = true;
    for z in [1i64, -1] {
        let lam = format!("({z})*g6*r");
        let (a, cd) = osc_family(
            &[("g2", false), ("g6", true)],
            &[("r", "g2^2+1")],
            &["g2^2+1"],
            diag4([1, 1, 1, -1]),
            lam.as_str(),
            ["g2^2", "g2", "g2*g6", "g2", "1", "g6"],
        )?;
        bach_flat &= cd.bach_is_zero(&a.cs);
        let t33 = format!("({z})/(g6*r)");
        let ze = z.to_string();
        let b = apply_change(
            &a,
            &[
                ["g2/(g6*r^2)", "1/(g6*r^2)", "0", "0"],
                ["-1/(g6*r^2)", "g2/(g6*r^2)", "0", "0"],
                ["0", "0", t33.as_str(), "0"],
                ["0", "0", "0", "1/(g6*r)"],
            ],
        )?;
        catalog &= table_matches(
            &b,
            &[(0, 1, 2, "1"), (0, 3, 0, "r/g6"), (0, 3, 2, ze.as_str()), (2, 3, 2, "r/g6")],
            Some(("1/(g6^2*(g2^2+1))", &diag4([1, 1, 1, -1]))),
        )?;
    }
    ck.check("bach-flat-on-solved-branch", bach_flat);
    ck.check_detail(
        "reduces-to-thm1.R",
        catalog,
        "transformed family differs from the catalog form",
    );
    Ok(())
}

// ---------- Lorentzian transverse families ----------

/// Boost-type family: [e1,e3] = −l·e2, diagonal couplings g[0] and g[3],
/// [e3,e4] closing up with −(g[0] − g[3])·e3.
fn shear_family(
    params: &[(&str, bool)],
    radicals: &[(&str, &str)],
    nonzero: &[&str],
    metric: Mat,
    l: &str,
    g: [&str; 6],
) -> Result<(MetricLieAlgebra, CurvatureData)> {
    let b021 = format!("-({l})");
    let b232 = format!("-(({})-({}))", g[0], g[3]);
    let a = build(
        params,
        radicals,
        nonzero,
        metric,
        &[
            (0, 2, 1, b021.as_str()),
            (0, 3, 0, g[0]),
            (0, 3, 1, g[1]),
            (0, 3, 2, g[2]),
            (1, 3, 1, g[3]),
            (2, 3, 0, g[4]),
            (2, 3, 1, g[5]),
            (2, 3, 2, b232.as_str()),
        ],
    )?;
    let cd = CurvatureData::compute(&a)?;
    Ok((a, cd))
}

fn case_4_1_1(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let free = [("g1", false), ("g2", false), ("g3", false), ("g4", false), ("g6", false)];
    let (a, cd) = osc_family(
        &free,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-1",
        ["g1", "g2", "g3", "g4", "0", "g6"],
    )?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g6", "g1"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex",
        &sys,
        budget,
        Some(50),
        &[(
            "membership-g",
            "g1^4*g6^2*(g1^2+1)*(g1^2+2)*(g1^2+4)*(8*g1^2+5)*(16*g1^2+25)*(25*g1^2+1)",
        )],
    )?;
    // branch γ₁ = 0 carries a strictly positive ideal member: empty
    let (a, cd) = osc_family(
        &free,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-1",
        ["0", "g2", "g3", "g4", "0", "g6"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g6"], OrderKind::Lex)?;
    let gp1 = "g2^2+8*g3^2+g4^2+8*g6^2+8";
    membership_steps(ck, "lex-g1-zero", &sys, budget, None, &[("membership-gp1", gp1)])?;
    sos_positive(
        ck,
        "g1-zero-branch-empty",
        &pe(&a.cs, gp1)?,
        8,
        &[(1, "g2"), (8, "g3"), (1, "g4"), (8, "g6")],
        &a.cs,
    )?;
    // branch γ₆ = 0
    let (a, cd) = osc_family(
        &free,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-1",
        ["g1", "g2", "g3", "g4", "0", "0"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g1"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex-g6-zero",
        &sys,
        budget,
        None,
        &[
            ("membership-gpp1", "g3*g4^4"),
            ("membership-gpp2", "g1*g2*g3*(g1^2+1)"),
        ],
    )?;
    // γ₃ = 0: the same positive combination as in the Riemannian signature
    let (a, cd) = osc_family(
        &free,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-1",
        ["g1", "g2", "0", "g4", "0", "0"],
    )?;
    let target = cd
        .bach
        .at(2, 2)
        .add(&cd.bach.at(3, 3).scale(&rat(3, 1), &a.cs), &a.cs)
        .scale(&rat(12, 1), &a.cs);
    sos_positive(
        ck,
        "no-bach-flat-g3-zero",
        &target,
        4,
        &[
            (5, "(g2+g4)^2"),
            (15, "(g2+g4)*(g2-g4)"),
            (3, "g2+g4"),
            (4, "g1*(g2+g4)"),
            (15, "g1*(g2-g4)"),
            (8, "g1"),
        ],
        &a.cs,
    )?;
    // γ₃ ≠ 0 (so γ₂ = γ₄ = 0): a single strictly positive component
    let (a, cd) = osc_family(
        &[("g1", false), ("g3", true)],
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-1",
        ["g1", "0", "g3", "0", "0", "0"],
    )?;
    entry_check(ck, "b11-printed", &cd.bach, 0, 0, "1/6*(g3^2+1)*(5*g1^2+3*g3^2+3)", &a.cs)?;
    sos_positive(
        ck,
        "no-bach-flat-g3-nonzero",
        &cd.bach.at(0, 0).scale(&rat(6, 1), &a.cs),
        3,
        &[(5, "g1*g3"), (3, "g3^2"), (6, "g3"), (5, "g1")],
        &a.cs,
    )?;
    Ok(())
}

fn case_4_1_2(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let params = [
        ("lam", true),
        ("g1", false),
        ("g2", false),
        ("g3", false),
        ("g4", false),
        ("g6", false),
    ];
    let (a, cd) = osc_family(
        &params,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-lam",
        ["g1", "g2", "g3", "g4", "1", "g6"],
    )?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let vars = ["g2", "g3", "g4", "g6", "g1", "lam"];
    let sys = bach_ideal(&a, &cd, &vars, OrderKind::Grevlex)?;
    membership_steps(ck, "grevlex", &sys, budget, None, &[("membership-g1", SEC3_2_G1)])?;
    let mut sys = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    sys.generators.push(sys.parse_poly(SEC3_2_G1)?.primitive());
    membership_steps(
        ck,
        "lex-augmented",
        &sys,
        budget,
        None,
        &[(
            "membership-g2",
            "g6*(lam^2+(g1+1)*g6^2)*(lam^2+(g1+1)^2)*(lam^2+25*(g1+1)^2)*(2*lam^2+(g1+1)^2)\
             *(4*lam^2+(g1+1)^2)*(5*lam^2+8*(g1+1)^2)*(25*lam^2+16*(g1+1)^2)",
        )],
    )?;
    // γ₆ = 0: identical chain to the Riemannian shear branch
    let sub = [("lam", true), ("g1", false), ("g2", false), ("g3", false), ("g4", false)];
    let (a, cd) = osc_family(
        &sub,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-lam",
        ["g1", "g2", "g3", "g4", "1", "0"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g4", "g1", "lam"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex-g6-zero",
        &sys,
        budget,
        None,
        &[(
            "membership-gp1",
            "g3*lam^6*(lam^2+4)*(5*lam^2+2)*(16*lam^2+7225)*(32*lam^2+9)*(256*lam^2+169)",
        )],
    )?;
    let (a, cd) = osc_family(
        &sub,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-lam",
        ["g1", "g2", "0", "g4", "1", "0"],
    )?;
    let sys = bach_ideal(&a, &cd, &["g2", "g4", "g1", "lam"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex-g3-zero",
        &sys,
        budget,
        None,
        &[(
            "membership-gp2",
            "-lam^2*(7*lam^2-2*(g1+1)^2)*(lam^2+(g1+1)^2)*(lam^2+2*(g1+1)^2)\
             *(4*lam^2+(g1+1)^2)*(5*lam^2+8*(g1+1)^2)",
        )],
    )?;
    let mut sys = bach_ideal(&a, &cd, &["g1", "lam", "g2", "g4"], OrderKind::Lex)?;
    sys.generators.push(sys.parse_poly("7*lam^2-2*(g1+1)^2")?.primitive());
    let q = "441*g2^4+2*g2^2*(641*g4^2+770)+(7*g4^2+22)*(63*g4^2+22)\
             -24*g2*g4*(35*g2^2+35*g4^2+88)";
    let gp3 = format!("(g4^2+1)^4*({q})");
    membership_steps(ck, "lex-constrained", &sys, budget, None, &[("membership-gp3", gp3.as_str())])?;
    sos_positive(
        ck,
        "no-bach-flat-g6-zero",
        &pe(&a.cs, q)?,
        484,
        &[
            (420, "g2*(g2-g4)"),
            (420, "g4*(g2-g4)"),
            (1056, "g2-g4"),
            (21, "g2^2"),
            (442, "g2*g4"),
            (21, "g4^2"),
            (484, "g2"),
            (484, "g4"),
        ],
        &a.cs,
    )?;
    // γ₆ ≠ 0, λ² + (γ₁+1)γ₆² = 0: the first member forces γ₂ = γ₃ = 0
    let (a, cd) = osc_family(
        &params,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "-lam",
        ["g1", "g2", "g3", "g4", "1", "g6"],
    )?;
    let vars = ["g1", "g6", "g4", "g2", "g3", "lam"];
    let mut sys = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    sys.generators.push(sys.parse_poly("lam^2+(g1+1)*g6^2")?.primitive());
    membership_steps(
        ck,
        "lex-constrained-g6-nonzero",
        &sys,
        budget,
        None,
        &[(
            "membership-gpp1",
            "lam^6*(lam^2+1)*(4*lam^2+9)*(25*lam^2+4)*(45*lam^2+98)*(225*lam^2+256)\
             *(256*lam^2+1369)*(968*lam^2+1521)*(2304*lam^4+46441425*lam^2+1028805625)\
             *(3211264*lam^4+34731953*lam^2+35796289)*(g2^2*lam^2+(g2^2+1)*g3^2)",
        )],
    )?;
    // at γ₂ = γ₃ = 0 the earlier member collapses to a γ₄ multiple
    {
        let cs = &a.cs;
        let g = pp(cs, SEC3_2_G1)?;
        let g2s = cs.lookup("g2").expect("declared");
        let g3s = cs.lookup("g3").expect("declared");
        let sub = g
            .substitute_symbol(g2s, &Polynomial::zero())
            .substitute_symbol(g3s, &Polynomial::zero());
        ck.check(
            "g1-member-collapses-at-g2-g3-zero",
            sub.sub(&pp(cs, "-12*g4*g6^2*(lam^2+(g1+1)^2)*lam^10")?).is_zero(),
        );
    }
    // final locus γ₂ = γ₃ = γ₄ = 0, γ₁ = −(λ²+γ₆²)/γ₆²: strictly obstructed
    let (a, cd) = osc_family(
        &[("lam", true), ("g6", true)],
        &[],
        &["lam^2+g6^2"],
        diag4([1, 1, -1, 1]),
        "-lam",
        ["-(lam^2+g6^2)/g6^2", "0", "0", "0", "1", "g6"],
    )?;
    entry_check(
        ck,
        "b11-printed",
        &cd.bach,
        0,
        0,
        "(4*(5*g6^2+4)*lam^4+3*(4*g6^4-3*g6^2+16)*g6^2*lam^2-(4*g6^4-11*g6^2+16)*g6^4)\
         *(lam^2+g6^2)/(24*g6^6)",
        &a.cs,
    )?;
    entry_check(
        ck,
        "b44-printed",
        &cd.bach,
        3,
        3,
        "-(4*(g6^2-4)*lam^4+(4*g6^4+5*g6^2-48)*g6^2*lam^2-(12*g6^4-33*g6^2+48)*g6^4)\
         *(lam^2+g6^2)/(24*g6^6)",
        &a.cs,
    )?;
    let target = cd
        .bach
        .at(0, 0)
        .scale(&rat(3, 1), &a.cs)
        .add(&cd.bach.at(3, 3), &a.cs)
        .mul(&pe(&a.cs, "3*g6^6/(lam^2*(lam^2+g6^2))")?, &a.cs);
    sos_positive(
        ck,
        "no-bach-flat-g6-nonzero",
        &target,
        0,
        &[(7, "g6*lam"), (8, "lam"), (4, "g6*(g6^2-1/2)"), (23, "g6")],
        &a.cs,
    )?;
    Ok(())
}

fn case_4_2_1(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let free = [("g1", false), ("g2", false), ("g3", false), ("g5", false), ("g6", false)];
    let (a, cd) = shear_family(
        &free,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "1",
        ["g1", "g2", "g3", "0", "g5", "g6"],
    )?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let sys = bach_ideal(&a, &cd, &["g2", "g3", "g5", "g6", "g1"], OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex",
        &sys,
        budget,
        Some(25),
        &[
            ("membership-g1", "g1^4"),
            ("membership-g2", "g3^4"),
            ("membership-g3", "g5^4"),
        ],
    )?;
    // γ₁ = γ₃ = γ₅ = 0
    let (a, cd) = shear_family(
        &free,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "1",
        ["0", "g2", "0", "0", "0", "g6"],
    )?;
    entry_check(ck, "b22-printed", &cd.bach, 1, 1, "-5/6*(g6^2-g2^2+1)^2", &a.cs)?;
    // γ₂ = ε√(γ₆²+1): a plane-wave product, both signs
    let mut bach_flat = true;
    let mut nilpotent = true;
    let mut wave = true;
    let mut product = true;
    for z in [1i64, -1] {
        let g2e = format!("({z})*w");
        let (a, cd) = shear_family(
            &[("g6", false)],
            &[("w", "g6^2+1")],
            &["g6^2+1"],
            diag4([1, 1, -1, 1]),
            "1",
            ["0", g2e.as_str(), "0", "0", "0", "g6"],
        )?;
        bach_flat &= cd.bach_is_zero(&a.cs);
        nilpotent &= nilpotency_index(&cd.ricci_operator, &a.cs) == Some(2);
        let xi = vec![pe(&a.cs, "-g6")?, fe(0), pe(&a.cs, g2e.as_str())?, fe(1)];
        let v = verify_wave_vector(&a, &cd, &xi)?;
        wave &= matches!(v.vector, WaveVector::Parallel(_)) && v.plane_wave;
        let b = apply_change(
            &a,
            &[
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "-1", "0"],
                ["-g6", "0", g2e.as_str(), "1"],
            ],
        )?;
        product &= table_matches(&b, &[(0, 2, 1, "1")], None)?;
    }
    ck.check("bach-flat-on-hyperbola-locus", bach_flat);
    ck.check("ricci-operator-2-step-nilpotent", nilpotent);
    ck.check("null-parallel-plane-wave", wave);
    ck.check("bracket-level-product-structure", product);
    Ok(())
}

fn case_4_2_2(ck: &mut Checker, budget: &Budget) -> Result<()> {
    let params = [
        ("lam", true),
        ("g1", false),
        ("g2", false),
        ("g3", false),
        ("g5", false),
        ("g6", false),
    ];
    let (a, cd) = shear_family(
        &params,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "lam",
        ["g1", "g2", "g3", "1", "g5", "g6"],
    )?;
    ck.check("family-is-lie-algebra", a.is_lie_algebra());
    let vars = ["g2", "g3", "g5", "g6", "g1", "lam"];
    let sys = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    membership_steps(
        ck,
        "lex",
        &sys,
        budget,
        Some(61),
        &[
            ("membership-g1", "(g3+g5)*g6*(lam^2+1)*(lam^2+25)*(4*lam^2+1)"),
            ("membership-g2", "(g3+g5)*(7*lam^2-2)*(lam^2+1)*(lam^2+2)*(lam^2+25)*(4*lam^2+1)"),
        ],
    )?;
    // branch γ₃ + γ₅ = 0
    let mut sys_a = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    sys_a.generators.push(sys_a.parse_poly("g3+g5")?.primitive());
    membership_steps(
        ck,
        "lex-branch-a",
        &sys_a,
        budget,
        None,
        &[
            (
                "membership-a-gp1",
                "-((g1-1)*lam^2-g6^2)*(lam^2+1)*(2*lam^2+1)*(4*lam^2+1)*(5*lam^2+8)*(25*lam^2+16)",
            ),
            (
                "membership-a-gp2",
                "((g1-1)*g2-g5*g6)*(2*lam^2+1)*(5*lam^2+8)*(25*lam^2+16)",
            ),
        ],
    )?;
    let mut sys_a2 = bach_ideal(&a, &cd, &vars, OrderKind::Lex)?;
    for extra in ["g3+g5", "(g1-1)*lam^2-g6^2", "(g1-1)*g2-g5*g6"] {
        sys_a2.generators.push(sys_a2.parse_poly(extra)?.primitive());
    }
    membership_steps(
        ck,
        "lex-branch-a-augmented",
        &sys_a2,
        budget,
        None,
        &[
            ("membership-a-gp3", "(g5^2-g1*(g1-1))*(5*lam^2+8)"),
            ("membership-a-gp4", "8*(g5^2-g1*(g1-1))+g2^2-g1*lam^2"),
            ("membership-a-gp5", "8*g5*(g5^2-g1*(g1-1))+g2*g6-g5*lam^2"),
        ],
    )?;
    // branch-A solution, both signs of γ₂
    let mut bach_flat = true;
    let mut catalog = true;
    for z in [1i64, -1] {
        let g2e = format!("({z})*r");
        let g3e = format!("-({z})*g6*r/lam^2");
        let g5e = format!("({z})*g6*r/lam^2");
        let (a, cd) = shear_family(
            &[("lam", true), ("g6", false)],
            &[("r", "lam^2+g6^2")],
            &["lam^2+g6^2"],
            diag4([1, 1, -1, 1]),
            "lam",
            [
                "(lam^2+g6^2)/lam^2",
                g2e.as_str(),
                g3e.as_str(),
                "1",
                g5e.as_str(),
                "g6",
            ],
        )?;
        bach_flat &= cd.bach_is_zero(&a.cs);
        let t11 = format!("({z})*r/lam");
        let b = apply_change(
            &a,
            &[
                [t11.as_str(), "0", "-g6/lam", "0"],
                ["0", "1", "0", "0"],
                ["-g6/lam", "0", t11.as_str(), "0"],
                ["0", "0", "0", "1"],
            ],
        )?;
        catalog &= table_matches(
            &b,
            &[(0, 2, 1, "-lam"), (0, 3, 0, "1"), (0, 3, 1, "lam"), (1, 3, 1, "1")],
            Some(("1", &diag4([1, 1, -1, 1]))),
        )?;
    }
    ck.check("bach-flat-on-branch-a-solution", bach_flat);
    ck.check_detail(
        "reduces-to-thm1.L.i",
        catalog,
        "transformed family differs from the catalog form",
    );
    // flipping the second vector is an isometry exchanging ±λ
    let (a, _) = shear_family(
        &[("lam", true)],
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "lam",
        ["1", "lam", "0", "1", "0", "0"],
    )?;
    change_check(
        ck,
        "isometry-flips-lam-sign",
        &a,
        &[["1", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        &[(0, 2, 1, "lam"), (0, 3, 0, "1"), (0, 3, 1, "-lam"), (1, 3, 1, "1")],
        Some(("1", &diag4([1, 1, -1, 1]))),
    )?;
    // branch γ₆ = 0, 7λ² = 2
    let subp = [("lam", true), ("g1", false), ("g2", false), ("g3", false), ("g5", false)];
    let (a, cd) = shear_family(
        &subp,
        &[],
        &[],
        diag4([1, 1, -1, 1]),
        "lam",
        ["g1", "g2", "g3", "1", "g5", "0"],
    )?;
    let mut sys_b = bach_ideal(&a, &cd, &["g2", "g3", "g5", "g1", "lam"], OrderKind::Grevlex)?;
    sys_b.generators.push(sys_b.parse_poly("7*lam^2-2")?.primitive());
    membership_steps(
        ck,
        "grevlex-branch-b",
        &sys_b,
        budget,
        None,
        &[
            ("membership-b-gpp1", "g2*g5"),
            ("membership-b-gpp2", "g2*g3"),
            ("membership-b-gpp3", "8*g1^2+21*g2^2-8*g1+8*g3*g5-6"),
            ("membership-b-gpp4", "-22*g1^2+21*g3^2+21*g5^2+22*g1+20*g3*g5"),
        ],
    )?;
    // branch-B solutions at the four published corner points
    struct Corner {
        e3: i64,
        g3: &'static str,
        g5: &'static str,
        f2: [&'static str; 4],
        f3: [&'static str; 4],
        d1: i64,
        d2: i64,
    }
    let corners = [
        Corner {
            e3: 1,
            g3: "0",
            g5: "r11*r14/14",
            f2: ["-2*r5*r14/15", "0", "r5*r11/15", "0"],
            f3: ["-r5*r11/15", "0", "2*r5*r14/15", "0"],
            d1: 1,
            d2: 1,
        },
        Corner {
            e3: 1,
            g3: "r11*r14/14",
            g5: "0",
            f2: ["1", "0", "0", "0"],
            f3: ["0", "0", "1", "0"],
            d1: -1,
            d2: -1,
        },
        Corner {
            e3: -1,
            g3: "0",
            g5: "r11*r14/14",
            f2: ["0", "0", "1", "0"],
            f3: ["1", "0", "0", "0"],
            d1: -1,
            d2: 1,
        },
        Corner {
            e3: -1,
            g3: "r11*r14/14",
            g5: "0",
            f2: ["-r5*r11/15", "0", "2*r5*r14/15", "0"],
            f3: ["-2*r5*r14/15", "0", "r5*r11/15", "0"],
            d1: 1,
            d2: -1,
        },
    ];
    let rads: [(&str, &str); 3] = [("r5", "5"), ("r11", "11"), ("r14", "14")];
    let mut ok = true;
    for c in &corners {
        let g1 = if c.e3 == 1 { "3/2" } else { "-1/2" };
        let (a, cd) = shear_family(
            &[],
            &rads,
            &[],
            diag4([1, 1, -1, 1]),
            "r14/7",
            [g1, "0", c.g3, "1", c.g5, "0"],
        )?;
        ok &= cd.bach_is_zero(&a.cs);
        // first published change: a uniform 2√14 dilation
        let b = apply_change(
            &a,
            &[
                ["2*r14", "0", "0", "0"],
                ["0", "2*r14", "0", "0"],
                ["0", "0", "2*r14", "0"],
                ["0", "0", "0", "2*r14"],
            ],
        )?;
        let (b030, b232) = if c.e3 == 1 { ("3*r14", "-r14") } else { ("-r14", "3*r14") };
        let mut table: Vec<(usize, usize, usize, &str)> =
            vec![(0, 2, 1, "-4"), (1, 3, 1, "2*r14"), (0, 3, 0, b030), (2, 3, 2, b232)];
        if c.g3 == "0" {
            table.push((2, 3, 0, "2*r11"));
        } else {
            table.push((0, 3, 2, "2*r11"));
        }
        ok &= table_matches(&b, &table, Some(("56", &diag4([1, 1, -1, 1]))))?;
        // second published change to the adapted frame
        let f = apply_change(&b, &[["0", "0", "0", "1"], c.f2, c.f3, ["0", "1", "0", "0"]])?;
        let d1e = format!("2*({})*r11", c.d1);
        let d2e = format!("4*({})", c.d2);
        ok &= table_matches(
            &f,
            &[
                (0, 1, 1, "-3*r14"),
                (0, 1, 2, d1e.as_str()),
                (0, 2, 2, "r14"),
                (0, 3, 3, "-2*r14"),
                (1, 2, 3, d2e.as_str()),
            ],
            Some(("56", &diag4([1, c.e3, -c.e3, 1]))),
        )?;
        // the residual sign is absorbed by an isometry
        let d2s = c.d2.to_string();
        let h = apply_change(
            &f,
            &[
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", d2s.as_str(), "0"],
                ["0", "0", "0", "1"],
            ],
        )?;
        let eps = format!("2*({})*r11", c.d1 * c.d2);
        ok &= table_matches(
            &h,
            &[
                (0, 1, 1, "-3*r14"),
                (0, 1, 2, eps.as_str()),
                (0, 2, 2, "r14"),
                (0, 3, 3, "-2*r14"),
                (1, 2, 3, "4"),
            ],
            Some(("56", &diag4([1, c.e3, -c.e3, 1]))),
        )?;
    }
    ck.sampled("reduces-to-thm2.i", ok, 4);
    // the first change is insensitive to the two auxiliary signs
    let (a, _) = shear_family(
        &[],
        &rads,
        &[],
        diag4([1, 1, -1, 1]),
        "-r14/7",
        ["3/2", "0", "0", "1", "-r11*r14/14", "0"],
    )?;
    let b = apply_change(
        &a,
        &[
            ["2*r14", "0", "0", "0"],
            ["0", "2*r14", "0", "0"],
            ["0", "0", "-2*r14", "0"],
            ["0", "0", "0", "2*r14"],
        ],
    )?;
    ck.check(
        "first-change-sign-independent",
        table_matches(
            &b,
            &[
                (0, 2, 1, "-4"),
                (1, 3, 1, "2*r14"),
                (0, 3, 0, "3*r14"),
                (2, 3, 2, "-r14"),
                (2, 3, 0, "2*r11"),
            ],
            Some(("56", &diag4([1, 1, -1, 1]))),
        )?,
    );
    Ok(())
}

// ---------- null-basis Lorentzian families ----------

const FREE6: [(&str, bool); 6] = [
    ("g1", false),
    ("g2", false),
    ("g3", false),
    ("g4", false),
    ("g5", false),
    ("g6", false),
];

/// Nilpotent branch in primed variables, conjugated to the printed frame.
fn primed_family(
    params: &[(&str, bool)],
    radicals: &[(&str, &str)],
    nonzero: &[&str],
    g1p: &str,
    g5p: &str,
    g2: &str,
    k: &str,
) -> Result<(MetricLieAlgebra, CurvatureData)> {
    let b021 = format!("-1/({k})");
    let b030 = format!("({g1p})/({k})");
    let b031 = format!("({g2})/({k})");
    let b032 = format!("1/({k})");
    let b230 = format!("({g5p})/({k})");
    let b231 = format!("-(3*({g1p})^2+({g5p}))/(4*({g5p})*({k}))");
    let b232 = format!("-({g1p})/({k})");
    let a = build(
        params,
        radicals,
        nonzero,
        np_metric(),
        &[
            (0, 2, 1, b021.as_str()),
            (0, 3, 0, b030.as_str()),
            (0, 3, 1, b031.as_str()),
            (0, 3, 2, b032.as_str()),
            (2, 3, 0, b230.as_str()),
            (2, 3, 1, b231.as_str()),
            (2, 3, 2, b232.as_str()),
        ],
    )?;
    let cd = CurvatureData::compute(&a)?;
    Ok((a, cd))
}

fn case_4_3_1(ck: &mut Checker) -> Result<()> {
    let mut b34_ok = true;
    let mut b44_ok = true;
    let mut flat_ok = true;
    let mut wave_ok = true;
    let mut loci_ok = true;
    let mut b11_ok = true;
    let mut disc_ok = true;
    let mut change_ok = true;
    for z in [1i64, -1] {
        let eps = z.to_string();
        let (a, cd) =
            shear_family(&FREE6, &[], &[], np_metric(), eps.as_str(), ["g1", "g2", "g3", "g4", "g5", "g6"])?;
        let want = pe(&a.cs, &format!("-3/4*({z})*g4*g5^2"))?;
        b34_ok &= a.is_lie_algebra() && cd.bach.at(2, 3).equal(&want, &a.cs);
        // γ₄ = 0
        let (a, cd) =
            shear_family(&FREE6, &[], &[], np_metric(), eps.as_str(), ["g1", "g2", "g3", "0", "g5", "g6"])?;
        b44_ok &= cd.bach.at(3, 3).equal(&pe(&a.cs, "1/8*(3*g1^2+(g3+4*g6)*g5)^2")?, &a.cs);
        // γ₅ = 0 forces γ₁ = 0: a plane-wave family
        let (a, cd) =
            shear_family(&FREE6, &[], &[], np_metric(), eps.as_str(), ["0", "g2", "g3", "0", "0", "g6"])?;
        flat_ok &= cd.bach_is_zero(&a.cs)
            && only_entries(&cd.ricci, &[(0, 0)], &a.cs)
            && cd.ricci.at(0, 0).equal(&pe(&a.cs, "-1/2*(g3^2-g6^2)")?, &a.cs);
        let v = verify_wave_vector(&a, &cd, &a.basis_vector(1))?;
        wave_ok &= matches!(v.vector, WaveVector::Parallel(_)) && v.plane_wave;
        let f = predicate_flags(&a, &cd);
        loci_ok &= !(f.lcf || f.locally_symmetric);
        for g3 in ["0", "-g6"] {
            let (a2, c2) = shear_family(
                &FREE6,
                &[],
                &[],
                np_metric(),
                eps.as_str(),
                ["0", "g2", g3, "0", "0", "g6"],
            )?;
            let f2 = predicate_flags(&a2, &c2);
            loci_ok &= f2.lcf || f2.locally_symmetric;
        }
        // γ₅ ≠ 0: solving the square collapses everything to one component
        let (a, cd) = shear_family(
            &[("g1", false), ("g2", false), ("g3", false), ("g5", true)],
            &[],
            &[],
            np_metric(),
            eps.as_str(),
            ["g1", "g2", "g3", "0", "g5", "-(3*g1^2+g3*g5)/(4*g5)"],
        )?;
        b11_ok &= only_entries(&cd.bach, &[(0, 0)], &a.cs)
            && cd.bach.at(0, 0).equal(
                &pe(
                    &a.cs,
                    "3/(64*g5^2)*(16*g5^4*g2^2-8*g1*(3*(g1^2+g3*g5)-2*g1^2)*g5^2*g2\
                     +(g1^2+g3*g5)*(8*(g1^2+g3*g5)^2+9*(g1^2+g3*g5)*g1^2-12*g1^4)\
                     +4*(g1^6+4*g5^4))",
                )?,
                &a.cs,
            );
        // its discriminant as a quadratic in γ₂ carries the branch sign
        let q = cd.bach.at(0, 0).mul(&pe(&a.cs, "64*g5^2/3")?, &a.cs);
        let g2s = a.cs.lookup("g2").expect("declared");
        let co = fe_coeffs_in(&q, g2s, &a.cs)?;
        if co.len() == 3 {
            let disc = co[1]
                .mul(&co[1], &a.cs)
                .sub(&co[0].mul(&co[2], &a.cs).scale(&rat(4, 1), &a.cs), &a.cs);
            disc_ok &= disc.equal(&pe(&a.cs, "-512*g5^4*(2*g5^4+(g1^2+g3*g5)^3)")?, &a.cs);
        } else {
            disc_ok = false;
        }
        // primed normal form γ₁ = γ₁'γ₃², γ₅ = γ₅'γ₃³ via the printed frame
        let (a, _) = shear_family(
            &[("g3", true), ("g1p", false), ("g2", false), ("g5p", true)],
            &[("k", "-(g1p^2+g5p)")],
            &["-(g1p^2+g5p)"],
            np_metric(),
            eps.as_str(),
            [
                "g1p*g3^2",
                "g2",
                "g3",
                "0",
                "g5p*g3^3",
                "-g3*(3*g1p^2+g5p)/(4*g5p)",
            ],
        )?;
        let t11 = format!("({z})/(g3*k)");
        let t22 = format!("({z})/(g3^3*k)");
        let t33 = format!("({z})/(g3^2*k)");
        let b = apply_change(
            &a,
            &[
                [t11.as_str(), "0", "0", "0"],
                ["0", t22.as_str(), "0", "0"],
                ["0", "0", t33.as_str(), "0"],
                ["0", "0", "0", "1/(g3^2*k)"],
            ],
        )?;
        change_ok &= table_matches(
            &b,
            &[
                (0, 2, 1, "-1/k"),
                (0, 3, 0, "g1p/k"),
                (0, 3, 1, "g2/k"),
                (0, 3, 2, "1/k"),
                (2, 3, 0, "g5p/k"),
                (2, 3, 1, "-(3*g1p^2+g5p)/(4*g5p*k)"),
                (2, 3, 2, "-g1p/k"),
            ],
            Some(("1/(g3^4*k^2)", &np_metric())),
        )?;
    }
    ck.check("b34-printed", b34_ok);
    ck.check("b44-printed", b44_ok);
    ck.check("plane-wave-branch", flat_ok);
    ck.check("null-parallel-plane-wave", wave_ok);
    ck.check("conformal-flat-or-symmetric-loci", loci_ok);
    ck.check("b11-printed", b11_ok);
    ck.check("discriminant-printed", disc_ok);
    ck.check("reduces-to-primed-frame", change_ok);
    // the primed family in its own right
    let kk = "(-(g1p^2+g5p))";
    let sym_params: [(&str, bool); 3] = [("g1p", false), ("g2", false), ("g5p", true)];
    let (a, cd) = primed_family(
        &sym_params,
        &[("k", "-(g1p^2+g5p)")],
        &["-(g1p^2+g5p)"],
        "g1p",
        "g5p",
        "g2",
        "k",
    )?;
    entry_check(
        ck,
        "b11-primed-printed",
        &cd.bach,
        0,
        0,
        &format!(
            "3/(64*g5p^2*{kk}^2)*(16*g5p^4*g2^2+8*g1p*g5p^2*(2*g1p^2+3*{kk})*g2\
             +(12*g1p^4+9*{kk}*g1p^2-8*{kk}^2)*{kk}+4*(g1p^6+4*g5p^4))"
        ),
        &a.cs,
    )?;
    let rows_expr: [[String; 4]; 4] = [
        [
            format!("(2*g5p+3*{kk})/(8*{kk})"),
            format!("g5p^2/(2*{kk})"),
            format!("-g1p*g5p/(2*{kk})"),
            "0".into(),
        ],
        [
            format!("-(4*(8*g1p*g2+3)*g5p^2-12*g5p*{kk}-9*{kk}^2)/(32*g5p^2*{kk})"),
            format!("(2*g5p+3*{kk})/(8*{kk})"),
            format!("-(2*g2*g5p^2+3*g1p*{kk})/(4*g5p*{kk})"),
            format!("-g5p/(2*{kk})"),
        ],
        [
            format!("-(2*g2*g5p^2+3*g1p*{kk})/(4*g5p*{kk})"),
            format!("-g1p*g5p/(2*{kk})"),
            format!("-(2*g5p+3*{kk})/(4*{kk})"),
            "0".into(),
        ],
        [format!("-g5p/(2*{kk})"), "0".into(), "0".into(), "3/4".into()],
    ];
    let mut printed = Mat::zeros(4, 4);
    for (i, row) in rows_expr.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            printed.set(i, j, pe(&a.cs, e)?);
        }
    }
    let op = &cd.ricci_operator;
    ck.check(
        "ricci-operator-printed",
        mat_eq(op, &printed, &a.cs) || mat_eq(op, &printed.transpose(), &a.cs),
    );
    let det = cd.ricci_operator.det(&a.cs);
    let rhs = det
        .mul(&pe(&a.cs, &format!("8*{kk}/g5p^2"))?, &a.cs)
        .add(&pe(&a.cs, &format!("g5p^2/{kk}^2"))?, &a.cs);
    ck.check("b11-determinant-identity", cd.bach.at(0, 0).equal(&rhs, &a.cs));
    // solving the quadratic in γ₂ kills the Bach tensor, both root signs
    let mut solved_ok = true;
    for zp in [1i64, -1] {
        let g2e = format!("(g1p*(2*g5p-{kk})+2*({zp})*d)/(4*g5p^2)");
        let (a, cd) = primed_family(
            &sym_params,
            &[("k", "-(g1p^2+g5p)"), ("d", &format!("2*({kk}^3-2*g5p^4)"))],
            &["-(g1p^2+g5p)"],
            "g1p",
            "g5p",
            g2e.as_str(),
            "k",
        )?;
        solved_ok &= cd.bach_is_zero(&a.cs);
        solved_ok &= cd.scalar.equal(&pe(&a.cs, "3/4")?, &a.cs);
        let f = predicate_flags(&a, &cd);
        solved_ok &= !f.lcf && !f.locally_symmetric && !f.einstein;
    }
    ck.check("bach-flat-on-solved-branch", solved_ok);
    // sampled solution points with explicit radicals
    let mut sampled_ok = true;
    for (g1p, g5p, g2, k, rads) in [
        ("0", "-1/4", "1", "1/2", vec![]),
        ("0", "-1/4", "-1", "1/2", vec![]),
        ("1/5", "-1/5", "(-7+2*r7)/10", "2/5", vec![("r7", "7")]),
        ("0", "-1/5", "r6/2", "r5/5", vec![("r5", "5"), ("r6", "6")]),
    ] {
        let (a, cd) = primed_family(&[], &rads, &[], g1p, g5p, g2, k)?;
        sampled_ok &= cd.bach_is_zero(&a.cs) && cd.scalar.equal(&pe(&a.cs, "3/4")?, &a.cs);
        let f = predicate_flags(&a, &cd);
        sampled_ok &= !f.lcf && !f.locally_symmetric && !f.einstein;
    }
    ck.sampled("thm2.ii-points-verified", sampled_ok, 4);
    Ok(())
}

fn case_4_3_2(ck: &mut Checker) -> Result<()> {
    let mut b44_ok = true;
    let mut br1_ok = true;
    let mut br2_entries_ok = true;
    let mut br2_ok = true;
    let mut br3_entries_ok = true;
    let mut br3_ok = true;
    let free: [(&str, bool); 5] =
        [("g1", true), ("g2", false), ("g3", false), ("g4", false), ("g6", false)];
    for z in [1i64, -1] {
        let eps = z.to_string();
        let (a, cd) =
            shear_family(&free, &[], &[], np_metric(), eps.as_str(), ["g1", "g2", "g3", "g4", "0", "g6"])?;
        b44_ok &= a.is_lie_algebra()
            && cd.bach.at(3, 3).equal(&pe(&a.cs, "1/24*(3*g1-g4)^2*(g1-g4)*(3*g1+g4)")?, &a.cs);
        // γ₄ = 3γ₁: conformally flat locus
        let (a, cd) =
            shear_family(&free, &[], &[], np_metric(), eps.as_str(), ["g1", "g2", "g3", "3*g1", "0", "g6"])?;
        br1_ok &= !cd.bach_is_zero(&a.cs);
        let (a, cd) =
            shear_family(&free, &[], &[], np_metric(), eps.as_str(), ["g1", "g2", "g3", "3*g1", "0", "-g3"])?;
        let f = predicate_flags(&a, &cd);
        br1_ok &= cd.bach_is_zero(&a.cs) && f.lcf && !f.locally_symmetric;
        let (a, cd) =
            shear_family(&free, &[], &[], np_metric(), eps.as_str(), ["g1", "0", "g3", "3*g1", "0", "-g3"])?;
        let f = predicate_flags(&a, &cd);
        br1_ok &= f.locally_symmetric && f.einstein;
        // γ₄ = γ₁
        let (a, cd) =
            shear_family(&free, &[], &[], np_metric(), eps.as_str(), ["g1", "g2", "g3", "g1", "0", "g6"])?;
        br2_entries_ok &= only_entries(&cd.bach, &[(0, 0), (0, 2)], &a.cs)
            && cd.bach.at(0, 0).equal(&pe(&a.cs, "1/4*g1^2*(g3-7*g6)*(g3-g6)")?, &a.cs)
            && cd.bach.at(0, 2).equal(&pe(&a.cs, "3/4*g1^3*(g3-g6)")?, &a.cs);
        for n in [1i64, -1] {
            let rad = format!("({n})*g1");
            let (a, cd) = shear_family(
                &[("g1", true), ("g2", false), ("g3", false)],
                &[("h", rad.as_str())],
                &[],
                np_metric(),
                eps.as_str(),
                ["g1", "g2", "g3", "g1", "0", "g3"],
            )?;
            br2_ok &= cd.bach_is_zero(&a.cs);
            let t13 = format!("-2*({n})*g3/h^3");
            let t32 = format!("-4*({n})*({z})*g3/g1^2");
            let t33 = format!("4*({z})/(({n})*g1)");
            let b = apply_change(
                &a,
                &[
                    ["-2/h", "g3^2/h^5", t13.as_str(), "0"],
                    ["0", "-8/h^3", "0", "0"],
                    ["0", t32.as_str(), t33.as_str(), "0"],
                    ["0", "0", "0", "4/g1"],
                ],
            )?;
            let e031 = format!("(g1*g2+g3^2)/(({n})*g1)");
            br2_ok &= table_matches(
                &b,
                &[(0, 2, 1, "-1"), (0, 3, 0, "4"), (0, 3, 1, e031.as_str()), (1, 3, 1, "4")],
                Some(("16/g1^2", &np_metric())),
            )?;
        }
        // γ₄ = −3γ₁
        let (a, cd) =
            shear_family(&free, &[], &[], np_metric(), eps.as_str(), ["g1", "g2", "g3", "-3*g1", "0", "g6"])?;
        br3_entries_ok &= cd
            .bach
            .at(0, 0)
            .equal(&pe(&a.cs, "-1/4*g1^2*(7*g3^2+41*g6^2+32*g1*g2-24*g3*g6)")?, &a.cs)
            && cd.bach.at(0, 2).equal(&pe(&a.cs, "7/4*g1^3*(g3-5*g6)")?, &a.cs);
        for n in [1i64, -1] {
            let rad = format!("({n})*g1");
            let (a, cd) = shear_family(
                &[("g1", true), ("g6", false)],
                &[("h", rad.as_str())],
                &[],
                np_metric(),
                eps.as_str(),
                ["g1", "-3*g6^2/g1", "5*g6", "-3*g1", "0", "g6"],
            )?;
            br3_ok &= cd.bach_is_zero(&a.cs);
            let t32 = format!("-({n})*({z})*g6/g1^2");
            let t33 = format!("({z})/(({n})*g1)");
            let b = apply_change(
                &a,
                &[
                    ["-g1/h^3", "g6^2/(2*g1*h^3)", "-g6/h^3", "0"],
                    ["0", "-1/(g1*h)", "0", "0"],
                    ["0", t32.as_str(), t33.as_str(), "0"],
                    ["0", "0", "0", "-1/g1"],
                ],
            )?;
            br3_ok &= table_matches(
                &b,
                &[(0, 2, 1, "-1"), (0, 3, 0, "-1"), (1, 3, 1, "3"), (2, 3, 2, "4")],
                Some(("1/g1^2", &np_metric())),
            )?;
        }
    }
    ck.check("b44-printed", b44_ok);
    ck.check("branch-3g1-conformally-flat-locus", br1_ok);
    ck.check("branch-g1-printed-components", br2_entries_ok);
    ck.check_detail("reduces-to-thm1.L.ii", br2_ok, "transformed family differs from the catalog form");
    ck.check("branch-minus-3g1-printed-components", br3_entries_ok);
    ck.check_detail("reduces-to-thm1.L.iii", br3_ok, "transformed family differs from the catalog form");
    Ok(())
}
