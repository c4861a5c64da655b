//! Command-line front end: predicate checks on user algebra files, the
//! verified metric catalog, replayable case scripts, and a raw Gröbner/
//! membership interface.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use curv::curvature::CurvatureData;
use curv::exact::{render_field_element, Rat, SignAssignment};
use curv::geomcheck::{pp_wave_scan, predicate_flags, WaveVector};
use curv::groebner::{Budget, GbOutcome, OrderKind, PolySystem};
use curv::harness::{
    case_info, cases, catalog_entries, emit_report, exit_code, run_case, verify_entry, Checker,
    Report,
};
use curv::liealg::algebra_from_json;
use curv::{Error, Result};

#[derive(Parser)]
#[command(name = "curv", version, about = "Exact curvature verification for left-invariant metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the curvature pipeline and report predicate values for an algebra file.
    Check {
        /// JSON algebra description.
        file: PathBuf,
        /// Comma-separated subset of predicates to report.
        #[arg(long)]
        predicates: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The catalog of verified metrics.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Replay one classification case script.
    Case {
        id: String,
        /// Wall-clock budget per Gröbner computation, in seconds.
        #[arg(long)]
        budget: Option<u64>,
        /// Also run steps excluded from default runs for runtime reasons.
        #[arg(long)]
        include_long: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compute a Gröbner basis of a polynomial system file.
    Groebner {
        /// JSON system: {"variables", "order", "generators", "nonzero"}.
        file: PathBuf,
        /// Monomial order override: lex or grevlex.
        #[arg(long)]
        order: Option<String>,
        /// Variable order override, most significant first (comma-separated).
        #[arg(long)]
        vars: Option<String>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the resulting basis and status to this file as JSON.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Decide ideal membership of a polynomial in a system file.
    Member {
        file: PathBuf,
        /// Polynomial expression in the system's variables.
        #[arg(long)]
        poly: String,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the full verification suite: catalog entries and case scripts.
    Report {
        /// Verify everything (the only supported mode).
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
        /// Skip case scripts that contain steps excluded for runtime reasons.
        #[arg(long)]
        skip_long: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the catalog entries with their parameters and regions.
    List,
    /// Verify one entry, symbolically or at given parameter values.
    Verify {
        id: String,
        #[command(flatten)]
        assign: AssignArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct AssignArgs {
    /// Parameter value, as name=rational (repeatable).
    #[arg(long = "param", value_name = "NAME=RAT")]
    params: Vec<String>,
    /// Sign choice, as name=+1 or name=-1 (repeatable).
    #[arg(long = "sign", value_name = "NAME=±1")]
    signs: Vec<String>,
}

fn parse_params(items: &[String]) -> Result<BTreeMap<String, Rat>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected NAME=RAT, got `{item}`")))?;
        let rat = Rat::from_str(value)
            .map_err(|_| Error::Invalid(format!("`{value}` is not a rational")))?;
        out.insert(name.to_string(), rat);
    }
    Ok(out)
}

fn parse_signs(items: &[String]) -> Result<SignAssignment> {
    let mut out = SignAssignment::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected NAME=+1|-1, got `{item}`")))?;
        let v = match value {
            "+1" | "1" => 1,
            "-1" => -1,
            other => return Err(Error::Invalid(format!("`{other}` is not a sign"))),
        };
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

fn budget_or_default(secs: Option<u64>) -> Budget {
    match secs {
        Some(s) => Budget::seconds(s),
        None => Budget::default(),
    }
}

fn run_check(file: &PathBuf, predicates: Option<&str>, json: bool) -> Result<i32> {
    let text = std::fs::read_to_string(file)?;
    let a = algebra_from_json(&text, &SignAssignment::new())?;
    let cd = CurvatureData::compute(&a)?;
    let f = predicate_flags(&a, &cd);
    let wave = pp_wave_scan(&a, &cd, &Budget::default())?;
    let pp = match wave.vector {
        WaveVector::Parallel(_) => wave.transversally_flat,
        WaveVector::Recurrent(_) => wave.transversally_flat,
        _ => false,
    };
    let all: Vec<(&str, String)> = vec![
        ("flat", cd.is_flat(&a.cs).to_string()),
        ("einstein", f.einstein.to_string()),
        ("lcf", f.lcf.to_string()),
        ("locally-symmetric", f.locally_symmetric.to_string()),
        ("bach-flat", f.bach_flat.to_string()),
        ("cotton-flat", f.cotton_flat.to_string()),
        ("critical-all-quadratic", f.critical_all_quadratic.to_string()),
        ("pp-wave", pp.to_string()),
        ("plane-wave", wave.plane_wave.to_string()),
        ("scalar-curvature", render_field_element(&cd.scalar, &a.cs)),
    ];
    let keep: Option<Vec<&str>> = predicates.map(|p| p.split(',').map(str::trim).collect());
    let mut ck = Checker::new();
    for (name, value) in &all {
        if keep.as_ref().is_none_or(|k| k.contains(name)) {
            ck.note(name, value);
        }
    }
    let id = file.display().to_string();
    let reports = vec![Report::new(&id, BTreeMap::new(), ck.finish())];
    print!("{}", emit_report(&reports, json));
    Ok(exit_code(&reports))
}

fn run_catalog(command: CatalogCommand) -> Result<i32> {
    match command {
        CatalogCommand::List => {
            for e in catalog_entries() {
                let params = if e.parameters.is_empty() {
                    String::new()
                } else {
                    format!(" params: {}", e.parameters.join(","))
                };
                let signs = if e.signs.is_empty() {
                    String::new()
                } else {
                    format!(" signs: {}", e.signs.join(","))
                };
                let region =
                    if e.region.is_empty() { String::new() } else { format!(" [{}]", e.region) };
                println!("{:<14} {}{params}{signs}{region}", e.id, e.summary);
            }
            Ok(0)
        }
        CatalogCommand::Verify { id, assign, json } => {
            let values = parse_params(&assign.params)?;
            let signs = parse_signs(&assign.signs)?;
            let reports = verify_entry(&id, &values, &signs, &Budget::default())?;
            print!("{}", emit_report(&reports, json));
            Ok(exit_code(&reports))
        }
    }
}

fn run_case_cmd(id: &str, budget: Option<u64>, include_long: bool, json: bool) -> Result<i32> {
    let report = run_case(id, &budget_or_default(budget), include_long)?;
    let reports = vec![report];
    print!("{}", emit_report(&reports, json));
    Ok(exit_code(&reports))
}

fn load_system(
    file: &PathBuf,
    order: Option<&str>,
    vars: Option<&str>,
) -> Result<PolySystem> {
    let text = std::fs::read_to_string(file)?;
    let sys = PolySystem::from_json(&text)?;
    let order = match order {
        Some(o) => OrderKind::parse(o)?,
        None => sys.order,
    };
    let variables: Vec<String> = match vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => sys.variables.clone(),
    };
    if order == sys.order && variables == sys.variables {
        return Ok(sys);
    }
    // rebuild under the overridden ring: re-render every polynomial
    let mut out = PolySystem::new(variables, order);
    for g in &sys.generators {
        out.generators.push(out.parse_poly(&g.render(&sys.variables))?);
    }
    for nz in &sys.nonzero {
        out.nonzero.push(out.parse_poly(&nz.render(&sys.variables))?);
    }
    Ok(out)
}

#[derive(serde::Serialize)]
struct BasisDocument {
    variables: Vec<String>,
    order: &'static str,
    complete: bool,
    basis: Vec<String>,
}

fn run_groebner(
    file: &PathBuf,
    order: Option<&str>,
    vars: Option<&str>,
    budget: Option<u64>,
    transcript: Option<&PathBuf>,
) -> Result<i32> {
    let sys = load_system(file, order, vars)?;
    let (basis, complete) = match sys.groebner(&budget_or_default(budget)) {
        GbOutcome::Complete(g) => (g.basis, true),
        GbOutcome::BudgetExceeded(g) => (g.basis, false),
    };
    let rendered: Vec<String> = basis.iter().map(|g| g.render(&sys.variables)).collect();
    for r in &rendered {
        println!("{r}");
    }
    eprintln!(
        "{} polynomials ({})",
        rendered.len(),
        if complete { "reduced basis" } else { "budget exceeded, partial" }
    );
    if let Some(path) = transcript {
        let doc = BasisDocument {
            variables: sys.variables.clone(),
            order: match sys.order {
                OrderKind::Lex => "lex",
                OrderKind::Grevlex => "grevlex",
            },
            complete,
            basis: rendered,
        };
        std::fs::write(path, serde_json::to_string_pretty(&doc).expect("serialization"))?;
    }
    Ok(if complete { 0 } else { 2 })
}

fn run_member(file: &PathBuf, poly: &str, budget: Option<u64>) -> Result<i32> {
    let sys = load_system(file, None, None)?;
    let p = sys.parse_poly(poly)?;
    match sys.is_member(&p, &budget_or_default(budget)) {
        Ok(true) => {
            println!("member");
            Ok(0)
        }
        Ok(false) => {
            println!("not a member");
            Ok(0)
        }
        Err(Error::BudgetExceeded) => {
            println!("inconclusive (budget exceeded)");
            Ok(2)
        }
        Err(e) => Err(e),
    }
}

fn run_report(json: bool, skip_long: bool) -> Result<i32> {
    let budget = Budget::default();
    let mut reports = Vec::new();
    for e in catalog_entries() {
        reports.extend(verify_entry(e.id, &BTreeMap::new(), &SignAssignment::new(), &budget)?);
    }
    for info in cases() {
        if skip_long && info.long {
            continue;
        }
        reports.push(run_case(info.id, &budget, false)?);
    }
    print!("{}", emit_report(&reports, json));
    Ok(exit_code(&reports))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { file, predicates, json } => run_check(&file, predicates.as_deref(), json),
        Command::Catalog { command } => run_catalog(command),
        Command::Case { id, budget, include_long, json } => {
            // validate the id up front for a friendly message
            case_info(&id).ok_or_else(|| Error::CaseNotFound(id.clone()))?;
            run_case_cmd(&id, budget, include_long, json)
        }
        Command::Groebner { file, order, vars, budget, transcript } => {
            run_groebner(&file, order.as_deref(), vars.as_deref(), budget, transcript.as_ref())
        }
        Command::Member { file, poly, budget } => run_member(&file, &poly, budget),
        Command::Report { all, json, skip_long } => {
            if !all {
                return Err(Error::Invalid("report requires --all".into()));
            }
            run_report(json, skip_long)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("curv: {e}");
            ExitCode::from(1)
        }
    }
}
