//! Verdict bookkeeping for catalog entries and case scripts, with a
//! deterministic JSON rendering (timings are kept out of the JSON payload so
//! repeated runs are byte-identical).

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Not decided within budget (or otherwise left open), never a failure.
    Inconclusive { reason: String },
    /// Verified at finitely many documented interior points, not symbolically.
    Sampled { points: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub id: String,
    /// Concrete sign choices and parameter values this run was made under,
    /// rendered; empty means fully symbolic.
    pub assignment: BTreeMap<String, String>,
    pub engine: EngineInfo,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EngineInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl EngineInfo {
    pub fn current() -> Self {
        EngineInfo { name: "curv", version: env!("CARGO_PKG_VERSION") }
    }
}

impl Report {
    pub fn new(id: &str, assignment: BTreeMap<String, String>, claims: Vec<Claim>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            id: id.to_string(),
            assignment,
            engine: EngineInfo::current(),
            claims,
        }
    }

    pub fn has_fail(&self) -> bool {
        self.claims.iter().any(|c| matches!(c.verdict, Verdict::Fail))
    }

    pub fn has_pass(&self) -> bool {
        self.claims
            .iter()
            .any(|c| matches!(c.verdict, Verdict::Pass | Verdict::Sampled { .. }))
    }

    pub fn has_inconclusive(&self) -> bool {
        self.claims
            .iter()
            .any(|c| matches!(c.verdict, Verdict::Inconclusive { .. }))
    }
}

/// Accumulates claims with per-claim wall-clock timing.
pub struct Checker {
    claims: Vec<Claim>,
    mark: Instant,
}

impl Checker {
    pub fn new() -> Checker {
        Checker { claims: Vec::new(), mark: Instant::now() }
    }

    fn push(&mut self, name: &str, verdict: Verdict, detail: Option<String>) {
        let millis = self.mark.elapsed().as_millis();
        self.mark = Instant::now();
        self.claims.push(Claim { name: name.to_string(), verdict, detail, millis });
    }

    pub fn check(&mut self, name: &str, ok: bool) -> bool {
        self.push(name, if ok { Verdict::Pass } else { Verdict::Fail }, None);
        ok
    }

    pub fn check_detail(&mut self, name: &str, ok: bool, detail: &str) -> bool {
        let d = if ok { None } else { Some(detail.to_string()) };
        self.push(name, if ok { Verdict::Pass } else { Verdict::Fail }, d);
        ok
    }

    pub fn sampled(&mut self, name: &str, ok: bool, points: usize) -> bool {
        let v = if ok { Verdict::Sampled { points } } else { Verdict::Fail };
        self.push(name, v, None);
        ok
    }

    pub fn inconclusive(&mut self, name: &str, reason: &str) {
        self.push(name, Verdict::Inconclusive { reason: reason.to_string() }, None);
    }

    /// Records a purely informational line: always a pass, detail retained.
    pub fn note(&mut self, name: &str, detail: &str) {
        self.push(name, Verdict::Pass, Some(detail.to_string()));
    }

    pub fn fail(&mut self, name: &str, detail: &str) {
        self.push(name, Verdict::Fail, Some(detail.to_string()));
    }

    pub fn finish(self) -> Vec<Claim> {
        self.claims
    }
}

impl Default for Checker {
    fn default() -> Self {
        Checker::new()
    }
}

/// Render a batch of reports: stable JSON or a human-readable table with
/// timings.
pub fn emit_report(reports: &[Report], json: bool) -> String {
    if json {
        // serde_json with sorted maps and fixed field order is deterministic
        return serde_json::to_string_pretty(reports).expect("report serialization");
    }
    let mut out = String::new();
    for r in reports {
        let assign = if r.assignment.is_empty() {
            String::new()
        } else {
            let parts: Vec<String> =
                r.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!(" [{}]", parts.join(", "))
        };
        out.push_str(&format!("== {}{}\n", r.id, assign));
        for c in &r.claims {
            let status = match &c.verdict {
                Verdict::Pass => "pass".to_string(),
                Verdict::Fail => "FAIL".to_string(),
                Verdict::Inconclusive { reason } => format!("inconclusive({reason})"),
                Verdict::Sampled { points } => format!("sampled({points} pts)"),
            };
            out.push_str(&format!("  {:<40} {:<28} {} ms\n", c.name, status, c.millis));
            if let Some(d) = &c.detail {
                out.push_str(&format!("      {d}\n"));
            }
        }
    }
    out
}

/// 0 when something passed and nothing failed, 1 on any failure, 2 when the
/// run produced only inconclusive outcomes.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(Report::has_fail) {
        return 1;
    }
    let pass = reports.iter().any(Report::has_pass);
    let inconclusive = reports.iter().any(Report::has_inconclusive);
    if !pass && inconclusive {
        return 2;
    }
    0
}
