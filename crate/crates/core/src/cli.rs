//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verified document fails a correlation check,
//! 2 usage or parameter error, 3 a construction failed its own verification.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{cac_optimal_size, me_prime, phi_exact, psi_e_exact, BoundReport};
use crate::code::Code;
use crate::construct::{
    compose_0mod3_with, equi_2mod4, equi_power4, explicit_code, g_regular_4g, ooc_2xm, ooc_3xm,
    prime_derived, tight_derived, ConstructionResult, ExplicitId, Variant,
};
use crate::document::{render_value, CodeDocument, Metadata};
use crate::error::Error;
use crate::search::{
    equi_search, gdd_search, optimal_search, tight_search, SearchConfig, SearchOutcome, Strategy,
};
use crate::verify::{composition_census, parity_census, verify_by_matrix, verify_code, BinaryMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ooc", version, about = "Optimal 2-D optical orthogonal codes of weight 3")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Wall-clock budget for searches.
    #[arg(long, default_value_t = 60, global = true)]
    pub budget_seconds: u64,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    /// One `n`-line 0/1 block per codeword.
    Matrix,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code from one of the construction families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Check a code document read from FILE or standard input.
    Verify {
        file: Option<PathBuf>,
    },
    /// Report an optimal size or bound.
    Bound(BoundArgs),
    /// Run an exhaustive or heuristic search.
    Search {
        #[command(subcommand)]
        target: SearchTarget,
    },
    /// Construct and verify codes over a range of m.
    Catalog {
        #[arg(long)]
        n: u32,
        /// Inclusive range `a..b`, or a single value.
        #[arg(long, value_parser = parse_range)]
        m: (u32, u32),
    },
}

#[derive(Subcommand, Debug)]
pub enum Family {
    #[command(name = "2xm")]
    TwoRow {
        #[arg(long)]
        m: u32,
    },
    #[command(name = "3xm")]
    ThreeRow {
        #[arg(long)]
        m: u32,
    },
    Explicit {
        #[arg(long)]
        id: ExplicitId,
    },
    #[command(name = "equi-2mod4")]
    Equi2Mod4 {
        #[arg(long)]
        m: u32,
    },
    /// g-regular code on Z_{4g}.
    GRegular {
        #[arg(long)]
        g: u32,
    },
    #[command(name = "equi-power4")]
    EquiPower4 {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        half_free: bool,
    },
    /// Tight CAC lifted to Z_{4^s r}.
    Tight {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    Prime {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    /// n ≡ 0 (mod 3) rows from a 3-GDD.
    Compose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(value_enum)]
    pub which: BoundWhich,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundWhich {
    Phi,
    #[value(name = "psi_e", alias = "psi-e")]
    PsiE,
    Cac,
    Me,
}

#[derive(Subcommand, Debug)]
pub enum SearchTarget {
    Optimal {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        lambda_a: u32,
    },
    Equi {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        lambda_a: u32,
    },
    Tight {
        #[arg(long)]
        m: u32,
    },
    Gdd {
        #[arg(long)]
        u: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    ExactCover,
    HillClimb,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

/// Output of a command: what to print and the exit code.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerificationFailed { .. } | Error::BudgetExhausted(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn report_error(e: &Error) {
    eprintln!("error: {e}");
    if let Error::VerificationFailed { witnesses, .. } = e {
        for w in witnesses {
            eprintln!("  witness: {}", serde_json::to_string(w).unwrap_or_default());
        }
    }
}

/// Parse the process arguments, run, and return the exit code.
pub fn main() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: &Cli) -> i32 {
    let config = SearchConfig::default()
        .with_time_budget(Duration::from_secs(cli.budget_seconds))
        .with_seed(cli.seed);
    let result = match &cli.command {
        Command::Construct { family } => cmd_construct(family, cli.format, &config),
        Command::Verify { file } => cmd_verify(file.as_ref(), cli.format),
        Command::Bound(args) => cmd_bound(args, cli.format),
        Command::Search { target } => cmd_search(target, cli.format, &config),
        Command::Catalog { n, m } => cmd_catalog(*n, *m, cli.format, &config),
    };
    match result {
        Ok(out) => {
            // A closed pipe (`| head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{}", out.stdout.trim_end());
            out.code
        }
        Err(e) => {
            report_error(&e);
            exit_code(&e)
        }
    }
}

fn build(family: &Family, config: &SearchConfig) -> crate::Result<ConstructionResult> {
    match *family {
        Family::TwoRow { m } => ooc_2xm(m),
        Family::ThreeRow { m } => ooc_3xm(m),
        Family::Explicit { id } => explicit_code(id),
        Family::Equi2Mod4 { m } => equi_2mod4(m),
        Family::GRegular { g } => g_regular_4g(g),
        Family::EquiPower4 { s, r, half_free } => {
            let v = if half_free { Variant::HalfFree } else { Variant::Standard };
            equi_power4(s, r, v)
        }
        Family::Tight { r, s } => tight_derived(r, s),
        Family::Prime { p, s } => prime_derived(p, s),
        Family::Compose { n, m } => {
            compose_0mod3_with(n, m, &config.clone().with_strategy(Strategy::HillClimbRestart))
        }
    }
}

fn cmd_construct(family: &Family, format: Format, config: &SearchConfig) -> crate::Result<Outcome> {
    let result = build(family, config)?;
    let doc = CodeDocument::from_construction(&result);
    Ok(Outcome::ok(render_document(&doc, &result.code, format)))
}

fn render_document(doc: &CodeDocument, code: &Code, format: Format) -> String {
    match format {
        Format::Json => doc.render(),
        Format::Text => {
            let p = code.params();
            let mut out = format!(
                "({} x {}, {}, {}, {}) code with {} codewords",
                p.n,
                p.m,
                p.k,
                p.lambda_a,
                p.lambda_c,
                code.len()
            );
            if let Some(b) = &doc.metadata.branch {
                out.push_str(&format!(" [{b}]"));
            }
            out.push('\n');
            for cw in code.normalized().codewords() {
                out.push_str(&format!("{cw}\n"));
            }
            out
        }
        Format::Matrix => render_matrices(code),
    }
}

fn render_matrices(code: &Code) -> String {
    let blocks: Vec<String> = code
        .normalized()
        .codewords()
        .iter()
        .map(|cw| {
            BinaryMatrix::from_codeword(cw, code.params())
                .map(|mx| mx.render().join("\n"))
                .unwrap_or_default()
        })
        .collect();
    blocks.join("\n\n")
}

/// Flat `key: value` lines for the text format.
fn render_text(value: &Value) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn render_report(value: &Value, format: Format) -> String {
    match format {
        Format::Json => render_value(value),
        Format::Text | Format::Matrix => render_text(value),
    }
}

fn cmd_verify(file: Option<&PathBuf>, format: Format) -> crate::Result<Outcome> {
    let text = match file {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidParameter(format!("stdin: {e}")))?;
            s
        }
    };
    let doc = CodeDocument::parse(&text)?;
    let code = doc.to_code()?;
    let report = verify_code(&code);
    let (matrix_auto, matrix_cross) = verify_by_matrix(&code)?;
    let mut value = json!({
        "verification": report,
        "matrix_check": { "auto_ok": matrix_auto, "cross_ok": matrix_cross },
        "composition_census": composition_census(&code)?,
        "size": code.len(),
    });
    let p = code.params();
    if p.n == 1 && p.m % 4 == 0 && code.codewords().iter().all(|cw| cw.single_row().is_some()) {
        value["parity_census"] = serde_json::to_value(parity_census(&code)?).expect("census serializes");
    }
    let code_out = if report.ok() { EXIT_OK } else { EXIT_VERIFY_FAIL };
    Ok(Outcome {
        stdout: render_report(&value, format),
        code: code_out,
    })
}

fn bound_value(report: &BoundReport) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn cmd_bound(args: &BoundArgs, format: Format) -> crate::Result<Outcome> {
    let report = match args.which {
        BoundWhich::Phi => phi_exact(args.n, args.m)?,
        BoundWhich::PsiE => psi_e_exact(args.m),
        BoundWhich::Cac => cac_optimal_size(args.m)?,
        BoundWhich::Me => me_prime(args.m)?,
    };
    Ok(Outcome::ok(render_report(&bound_value(&report), format)))
}

fn outcome_value(outcome: &SearchOutcome<Code>, provenance: &str) -> Value {
    let witness = outcome.best.as_ref().map(|code| {
        CodeDocument::from_code(
            code,
            Metadata {
                branch: None,
                claimed_size: Some(code.len()),
                claimed_leave: None,
                verified: verify_code(code).ok(),
                provenance: provenance.into(),
            },
        )
        .to_value()
    });
    json!({
        "best_size": outcome.best_size,
        "proven_optimal": outcome.proven_optimal,
        "nodes": outcome.nodes,
        "elapsed_ms": outcome.elapsed.as_millis() as u64,
        "witness": witness,
    })
}

fn cmd_search(target: &SearchTarget, format: Format, config: &SearchConfig) -> crate::Result<Outcome> {
    let value = match *target {
        SearchTarget::Optimal { n, m, lambda_a } => {
            outcome_value(&optimal_search(n, m, lambda_a, config)?, "optimal_search")
        }
        SearchTarget::Equi { m, lambda_a } => {
            outcome_value(&equi_search(m, lambda_a, config)?, "equi_search")
        }
        SearchTarget::Tight { m } => {
            let out = tight_search(m, config)?;
            let mut v = outcome_value(&out, "tight_search");
            v["success"] = Value::Bool(out.best.is_some());
            v
        }
        SearchTarget::Gdd { u, m, strategy } => {
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Exhaustive,
                StrategyArg::ExactCover => Strategy::ExactCover,
                StrategyArg::HillClimb => Strategy::HillClimbRestart,
            };
            let out = gdd_search(u, m, &config.clone().with_strategy(strategy))?;
            let blocks = out.best.as_ref().map(|g| {
                g.base_blocks
                    .iter()
                    .map(|cw| cw.cells().iter().map(|c| [c.row, c.slot]).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            });
            json!({
                "best_size": out.best_size,
                "proven_optimal": out.proven_optimal,
                "nodes": out.nodes,
                "elapsed_ms": out.elapsed.as_millis() as u64,
                "base_blocks": blocks,
            })
        }
    };
    if format == Format::Matrix {
        if let Some(w) = value.get("witness").filter(|w| !w.is_null()) {
            let doc: CodeDocument = serde_json::from_value(w.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            return Ok(Outcome::ok(render_matrices(&doc.to_code()?)));
        }
    }
    Ok(Outcome::ok(render_report(&value, format)))
}

fn catalog_family(n: u32, m: u32, config: &SearchConfig) -> crate::Result<ConstructionResult> {
    match n {
        2 => ooc_2xm(m),
        3 => ooc_3xm(m),
        _ if n % 3 == 0 => {
            compose_0mod3_with(n, m, &config.clone().with_strategy(Strategy::HillClimbRestart))
        }
        _ => Err(Error::Unsupported(format!("no catalog family for n = {n}"))),
    }
}

fn cmd_catalog(n: u32, (lo, hi): (u32, u32), format: Format, config: &SearchConfig) -> crate::Result<Outcome> {
    let mut rows = Vec::new();
    for m in lo..=hi {
        let built = match catalog_family(n, m, config) {
            Ok(r) => r,
            Err(Error::Unsupported(_) | Error::InvalidParameter(_)) => continue,
            Err(e) => return Err(e),
        };
        let bound = phi_exact(u64::from(n), u64::from(m))?;
        rows.push(json!({
            "n": n,
            "m": m,
            "size": built.code.len(),
            "bound": bound.value,
            "bound_kind": bound_value(&bound)["kind"],
            "optimal": bound.is_exact() && bound.value == built.code.len() as u64,
            "verified": built.verified,
            "branch": built.branch,
        }));
    }
    let stdout = match format {
        Format::Json => render_value(&json!({ "rows": rows })),
        Format::Text | Format::Matrix => {
            let mut out = format!(
                "{:>4} {:>6} {:>8} {:>8} {:>12} {:>8} {:>9}  branch\n",
                "n", "m", "size", "bound", "kind", "optimal", "verified"
            );
            for r in &rows {
                out.push_str(&format!(
                    "{:>4} {:>6} {:>8} {:>8} {:>12} {:>8} {:>9}  {}\n",
                    r["n"].to_string(),
                    r["m"].to_string(),
                    r["size"].to_string(),
                    r["bound"].to_string(),
                    r["bound_kind"].as_str().unwrap_or(""),
                    r["optimal"].to_string(),
                    r["verified"].to_string(),
                    r["branch"].as_str().unwrap_or("")
                ));
            }
            out
        }
    };
    Ok(Outcome::ok(stdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("8..104"), Ok((8, 104)));
        assert_eq!(parse_range("8..=12"), Ok((8, 12)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
