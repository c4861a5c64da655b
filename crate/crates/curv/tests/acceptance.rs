//! End-to-end acceptance gate. Runs the full verified catalog and every
//! classification case script once, then evaluates thirteen acceptance
//! criteria against the collected reports, printing one line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use curv::groebner::Budget;
use curv::harness::{cases, run_case, verify_entry, Claim, Report, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Collected {
    /// entry id -> (reports for every sign assignment, wall ms)
    catalog: BTreeMap<&'static str, (Vec<Report>, u128)>,
    /// case id -> (report, wall ms)
    case_reports: BTreeMap<&'static str, (Report, u128)>,
}

const CATALOG_IDS: &[&str] = &[
    "thm1.D.i",
    "thm1.D.ii",
    "thm1.R",
    "thm1.L.i",
    "thm1.L.ii",
    "thm1.L.iii",
    "thm2.i",
    "thm2.ii",
    "thm3.D.i",
    "thm3.D.ii",
    "thm3.L",
    "KT.0-0",
    "KT.1-0",
    "KT.1-1",
    "KT.2-0",
    "KT.2-sqrt3",
    "KT.2-2",
];

fn collect() -> Collected {
    let budget = Budget::default();
    let mut catalog = BTreeMap::new();
    for id in CATALOG_IDS {
        let start = Instant::now();
        let reports = verify_entry(id, &BTreeMap::new(), &BTreeMap::new(), &budget)
            .unwrap_or_else(|e| panic!("{id}: {e}"));
        catalog.insert(*id, (reports, start.elapsed().as_millis()));
    }
    let mut case_reports = BTreeMap::new();
    for info in cases() {
        let start = Instant::now();
        let report = run_case(info.id, &budget, false).unwrap_or_else(|e| panic!("{}: {e}", info.id));
        case_reports.insert(info.id, (report, start.elapsed().as_millis()));
    }
    Collected { catalog, case_reports }
}

fn find<'a>(r: &'a Report, name: &str) -> Option<&'a Claim> {
    r.claims.iter().find(|c| c.name == name)
}

fn is_pass(c: &Claim) -> bool {
    matches!(c.verdict, Verdict::Pass | Verdict::Sampled { .. })
}

impl Collected {
    /// The named claim passes in every sign-assignment report of the entry.
    fn entry_claim(&self, id: &str, name: &str) -> bool {
        let (reports, _) = &self.catalog[id];
        !reports.is_empty() && reports.iter().all(|r| find(r, name).is_some_and(is_pass))
    }

    /// The named claim passes in at least one sign-assignment report.
    fn entry_claim_somewhere(&self, id: &str, name: &str) -> bool {
        self.catalog[id].0.iter().any(|r| find(r, name).is_some_and(is_pass))
    }

    fn entry_clean(&self, id: &str) -> bool {
        self.catalog[id].0.iter().all(|r| !r.has_fail())
    }

    fn entry_ms(&self, id: &str) -> u128 {
        self.catalog[id].1
    }

    fn case_claim(&self, id: &str, name: &str) -> bool {
        find(&self.case_reports[id].0, name).is_some_and(is_pass)
    }
}

fn criterion_1(c: &Collected) -> bool {
    let thm: Vec<&&str> = CATALOG_IDS.iter().filter(|id| id.starts_with("thm")).collect();
    thm.iter().all(|id| {
        let (reports, _) = &c.catalog[**id];
        let per_report_fast = reports
            .iter()
            .all(|r| r.claims.iter().map(|cl| cl.millis).sum::<u128>() < 10_000);
        c.entry_claim(id, "bach-flat") && c.entry_clean(id) && per_report_fast
    })
}

fn criterion_2(c: &Collected) -> bool {
    let claims_ok = c.entry_claim("KT.1-0", "flat")
        && c.entry_claim("KT.1-1", "bach-flat")
        && c.entry_claim("KT.1-1", "conformally-flat")
        && c.entry_claim("KT.1-1", "locally-symmetric")
        && c.entry_claim("KT.2-sqrt3", "bach-flat")
        && c.entry_claim("KT.2-sqrt3", "ricci-operator-two-step-nilpotent")
        && c.entry_claim("KT.2-sqrt3", "ricci-parallel")
        && c.entry_claim("KT.2-sqrt3", "curvature-not-parallel")
        && c.entry_claim("KT.0-0", "not-bach-flat")
        && c.entry_claim("KT.2-0", "not-bach-flat")
        && c.entry_claim("KT.2-2", "not-bach-flat");
    let total_ms: u128 = CATALOG_IDS
        .iter()
        .filter(|id| id.starts_with("KT"))
        .map(|id| c.entry_ms(id))
        .sum();
    claims_ok && total_ms < 10_000
}

fn criterion_3(c: &Collected) -> bool {
    c.entry_claim("thm1.D.i", "ricci-charpoly")
        && c.entry_claim("thm1.L.ii", "ricci-charpoly")
        && c.entry_claim("thm1.L.iii", "ricci-operator-diagonal")
        && c.entry_claim("thm2.i", "ricci-operator-diagonal")
        && c.entry_claim("thm2.ii", "ricci-charpoly")
}

fn criterion_4(c: &Collected) -> bool {
    c.entry_claim("thm1.D.i", "scalar-curvature-0")
        && ["thm1.D.ii", "thm1.R", "thm1.L.i", "thm1.L.ii", "thm1.L.iii", "thm2.i"]
            .iter()
            .all(|id| c.entry_claim(id, "scalar-curvature"))
        && c.entry_claim("thm2.ii", "scalar-curvature-3/4")
}

fn criterion_5(c: &Collected) -> bool {
    ["thm1.D.ii", "thm1.R", "thm1.L.i"]
        .iter()
        .all(|id| c.entry_claim(id, "homothetic-invariant"))
}

fn criterion_6(c: &Collected) -> bool {
    ["thm1.D.i", "thm1.D.ii", "thm1.R", "thm1.L.i", "thm1.L.ii"]
        .iter()
        .all(|id| c.entry_claim(id, "weyl-operator-two-step-nilpotent"))
        && c.entry_claim("thm2.ii", "weyl-operator-three-step-nilpotent")
        && c.entry_claim("thm1.L.iii", "weyl-operator-charpoly")
        && c.entry_claim("thm1.L.iii", "weyl-operator-minpoly-double-root-2")
        && c.entry_claim("thm2.i", "weyl-operator-spectrum-complex")
}

fn criterion_7(c: &Collected) -> bool {
    let thm1 = ["thm1.D.i", "thm1.D.ii", "thm1.R", "thm1.L.i", "thm1.L.ii", "thm1.L.iii"];
    thm1.iter().all(|id| {
        c.entry_claim(id, "ce-hessian-printed")
            && c.entry_claim(id, "ce-laplacian-printed")
            && c.entry_claim(id, "ce-residuals-printed")
            && c.entry_ms(id) < 30_000 * c.catalog[*id].0.len() as u128
    }) && c.entry_claim("thm1.L.iii", "ce-forced-lambda-3")
}

fn criterion_8(c: &Collected) -> bool {
    c.entry_claim_somewhere("thm2.i", "conformal-vector-rows-printed")
        && c.entry_claim("thm2.i", "conformal-vector-system-inconsistent")
        && c.entry_claim("thm2.ii", "conformal-vector-system-inconsistent")
}

fn criterion_9(c: &Collected) -> bool {
    c.entry_claim("thm1.L.ii", "rg2-steady-soliton")
        && c.entry_claim("thm1.L.ii", "rg2-operator-two-step-nilpotent")
        && c.entry_claim("thm1.L.ii", "not-ricci-soliton")
        && c.entry_claim("thm1.L.iii", "rg2-shrinking-soliton")
        && c.entry_claim("thm1.L.iii", "rg2-operator-diagonal")
        && c.entry_claim("thm1.L.iii", "not-ricci-soliton")
}

fn criterion_10(c: &Collected) -> bool {
    c.case_claim("sec2.1.1", "plane-wave")
        && c.entry_claim("thm3.D.i", "null-recurrent-u3")
        && c.entry_claim("thm3.D.i", "plane-wave")
        && c.entry_claim("thm3.D.ii", "null-parallel-u4")
        && c.entry_claim("thm3.D.ii", "plane-wave")
        && c.entry_claim("thm3.D.ii", "ricci-parallel")
        && c.entry_claim("thm3.L", "null-parallel-u2")
        && c.entry_claim("thm3.L", "plane-wave")
        && c.entry_claim("thm3.L", "ricci-parallel")
        && c.case_claim("sec3.1.1", "null-parallel-plane-wave")
        && c.case_claim("sec3.1.1", "bracket-level-product-structure")
        && c.case_claim("sec4.2.1", "null-parallel-plane-wave")
        && c.case_claim("sec4.2.1", "bracket-level-product-structure")
}

fn criterion_11(c: &Collected) -> (bool, String) {
    // the memberships that must verify symbolically within the default budget
    let required: &[(&str, &[&str])] = &[
        ("sec2.2.2", &["membership-g1", "membership-g2"]),
        (
            "sec3.1",
            &[
                "membership-g",
                "membership-gp1",
                "membership-gp2",
                "membership-gpp1",
                "membership-gpp2",
            ],
        ),
        (
            "sec4.1.1",
            &["membership-g", "membership-gp1", "membership-gpp1", "membership-gpp2"],
        ),
        ("sec4.2.1", &["membership-g1", "membership-g2", "membership-g3"]),
        ("sec4.2.2", &["membership-g1", "membership-g2"]),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (id, names) in required {
        for name in *names {
            if !c.case_claim(id, name) {
                ok = false;
                notes.push(format!("{id}:{name}"));
            }
        }
    }
    // everything else may be inconclusive within budget, but must never fail
    let mut membership_ms: u128 = 0;
    for (id, (report, ms)) in &c.case_reports {
        let mut saw_membership = false;
        for claim in &report.claims {
            if claim.name.contains("membership") {
                saw_membership = true;
                if matches!(claim.verdict, Verdict::Fail) {
                    ok = false;
                    notes.push(format!("{id}:{} failed", claim.name));
                }
            }
        }
        if saw_membership {
            membership_ms += ms;
        }
    }
    if membership_ms >= 1_800_000 {
        ok = false;
        notes.push(format!("membership scripts took {membership_ms} ms"));
    }
    (ok, notes.join(", "))
}

fn criterion_12(c: &Collected) -> bool {
    cases().iter().all(|info| {
        let (report, _) = &c.case_reports[info.id];
        !report.has_fail() && find(report, "classification").is_some()
    })
}

fn criterion_13(c: &Collected) -> bool {
    // basis cardinalities are reported as informational notes, never asserted
    let notes_only = c.case_reports.values().all(|(r, _)| {
        r.claims
            .iter()
            .filter(|cl| cl.name.ends_with("-basis"))
            .all(|cl| matches!(cl.verdict, Verdict::Pass) && cl.detail.is_some())
    });

    // structural identities on 100 seeded random metric Lie algebras, < 5 min
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let small = |rng: &mut ChaCha8Rng| (rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2));
    for _ in 0..100 {
        let mut action = [[(0i64, 1i64); 3]; 3];
        for row in &mut action {
            for v in row.iter_mut() {
                *v = small(&mut rng);
            }
        }
        let mut metric = [(0i64, 1i64); 10];
        for v in &mut metric {
            *v = small(&mut rng);
        }
        let a = common::build(&common::Sample { action, metric });
        common::check_identities(&a);
    }
    notes_only && start.elapsed().as_secs() < 300
}

#[test]
fn acceptance_criteria() {
    let c = collect();
    let (ok11, notes11) = criterion_11(&c);
    let lines: Vec<(&str, bool, String)> = vec![
        ("catalog models are exactly Bach-flat, all signs, < 10 s each", criterion_1(&c), String::new()),
        ("oscillator-class dichotomy (flat / symmetric / nilpotent Ricci / not Bach-flat)", criterion_2(&c), String::new()),
        ("Ricci characteristic polynomials match the published spectra", criterion_3(&c), String::new()),
        ("scalar curvatures match the published values", criterion_4(&c), String::new()),
        ("homothetic invariants match the published values", criterion_5(&c), String::new()),
        ("Weyl operator nilpotency and spectra match", criterion_6(&c), String::new()),
        ("conformally Einstein data reproduced exactly, < 30 s each", criterion_7(&c), String::new()),
        ("conformal-vector linear systems are inconsistent as published", criterion_8(&c), String::new()),
        ("second-order soliton classifications reproduce", criterion_9(&c), String::new()),
        ("pp-wave structure detected with published wave vectors", criterion_10(&c), String::new()),
        ("ideal memberships verify within the default budget", ok11, notes11),
        ("every case script terminates in its stated classification", criterion_12(&c), String::new()),
        ("randomized identity suite passes; cardinalities reported, not asserted", criterion_13(&c), String::new()),
    ];
    let mut all_ok = true;
    for (i, (desc, ok, notes)) in lines.iter().enumerate() {
        let status = if *ok { "pass" } else { "FAIL" };
        if notes.is_empty() {
            println!("ACCEPTANCE {:>2}  {desc:<75} {status}", i + 1);
        } else {
            println!("ACCEPTANCE {:>2}  {desc:<75} {status}  ({notes})", i + 1);
        }
        all_ok &= ok;
    }
    assert!(all_ok, "one or more acceptance criteria failed");
}
