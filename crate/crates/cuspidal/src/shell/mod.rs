//! Command-line surface: `cusps`, `divisor`, `check`, `group`, `verify`
//! and `selftest`.
//!
//! Exit codes: 0 success/pass, 1 criterion or verification failure,
//! 2 hypothesis-not-met, 64 usage error, 65 expression parse or bind
//! error.

pub mod expr;
pub mod json;
pub mod selftest;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classgrp::{
    full_cuspidal_group, rational_cuspidal_group, rational_cuspidal_subgroup, verify_main_theorem,
    AbelianGroup, MainTheoremReport,
};
use crate::etafam::CuspidalDivisor;
use crate::modcurve::{Cusp, LevelContext};
use crate::ntheory::factorize;
use crate::unitcheck::{ligozat_check, thm17_check, thm19_check, CriterionReport, HypothesisNotMet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_EXPR: i32 = 65;

#[derive(Parser)]
#[command(
    name = "cuspidal",
    about = "Exact divisors of modular units on X_0(N), modularity criteria, and cuspidal class groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Criterion {
    /// Classical Ligozat conditions for eta quotients.
    Ligozat,
    /// Exact five-condition criterion for F-products.
    Thm17,
    /// Sufficiency criterion: certifies the L-th power.
    Thm19,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupKind {
    /// The cuspidal subgroup C_N.
    Full,
    /// The rational cuspidal divisor class group C(N).
    Rational,
    /// The rational cuspidal subgroup C_N(Q).
    Fixed,
}

impl GroupKind {
    fn as_str(&self) -> &'static str {
        match self {
            GroupKind::Full => "full",
            GroupKind::Rational => "rational",
            GroupKind::Fixed => "fixed",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the canonical cusps of X_0(N) with widths, fields of
    /// definition and Galois orbits.
    Cusps {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the exact divisor of a unit expression.
    Divisor {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a modularity criterion on a unit expression.
    Check {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        criterion: Criterion,
        #[arg(long)]
        json: bool,
    },
    /// Compute a cuspidal class group as invariant factors.
    Group {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        which: GroupKind,
        #[arg(long)]
        json: bool,
    },
    /// Verify that the rational cuspidal divisor class group equals the
    /// rational cuspidal subgroup, per level or over a range.
    Verify {
        #[arg(long, conflicts_with = "range")]
        level: Option<u64>,
        /// Inclusive range "A..B" of levels to sweep.
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the internal invariant suites up to a level bound.
    Selftest {
        #[arg(long = "max-level", alias = "level", default_value_t = 60)]
        max_level: u64,
    },
}

/// Entry point; returns the process exit code.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{err}");
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Cusps { level, json } => cmd_cusps(level, json),
        Command::Divisor { level, expr, json } => cmd_divisor(level, &expr, json),
        Command::Check {
            level,
            expr,
            criterion,
            json,
        } => cmd_check(level, &expr, criterion, json),
        Command::Group { level, which, json } => cmd_group(level, which, json),
        Command::Verify { level, range, json } => cmd_verify(level, range.as_deref(), json),
        Command::Selftest { max_level } => cmd_selftest(max_level),
    }
}

fn context_or_exit(level: u64) -> Result<LevelContext, i32> {
    LevelContext::new(level).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn cusp_name(cusp: &Cusp, ctx: &LevelContext) -> String {
    if *cusp == ctx.infinity() {
        "inf".to_string()
    } else if *cusp == ctx.zero_cusp() {
        "0".to_string()
    } else {
        format!("{}/{}", cusp.a(), cusp.c())
    }
}

fn cmd_cusps(level: u64, as_json: bool) -> i32 {
    let ctx = match context_or_exit(level) {
        Ok(ctx) => ctx,
        Err(code) => return code,
    };
    let orbits = ctx.galois_orbits();
    let orbit_of = |cusp: &Cusp| -> usize {
        orbits
            .iter()
            .position(|orbit| orbit.contains(cusp))
            .expect("every cusp lies in an orbit")
    };
    if as_json {
        let cusps: Vec<_> = ctx
            .cusps()
            .iter()
            .map(|cusp| {
                json!({
                    "a": cusp.a(),
                    "c": cusp.c(),
                    "width": ctx.cusp_width(cusp),
                    "z": ctx.field_modulus(cusp),
                    "orbit": orbit_of(cusp),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({"level": level, "cusps": cusps})).unwrap()
        );
        return EXIT_OK;
    }
    println!(
        "{} cusps on X_0({level})  [L = {}]",
        ctx.cusps().len(),
        ctx.big_l()
    );
    println!("{:<10} {:>6} {:>6} {:>6} {:>6}", "cusp", "a", "c", "width", "z");
    for cusp in ctx.cusps() {
        println!(
            "{:<10} {:>6} {:>6} {:>6} {:>6}   orbit {}",
            cusp_name(cusp, &ctx),
            cusp.a(),
            cusp.c(),
            ctx.cusp_width(cusp),
            ctx.field_modulus(cusp),
            orbit_of(cusp)
        );
    }
    EXIT_OK
}

fn parse_and_bind(
    level: u64,
    text: &str,
) -> Result<(LevelContext, expr::BoundExpression), i32> {
    let ctx = context_or_exit(level)?;
    let parsed = expr::parse(text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_EXPR
    })?;
    let bound = expr::bind(&parsed, &ctx).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_EXPR
    })?;
    for warning in &bound.warnings {
        eprintln!("warning: {warning}");
    }
    Ok((ctx, bound))
}

fn cmd_divisor(level: u64, text: &str, as_json: bool) -> i32 {
    let (ctx, bound) = match parse_and_bind(level, text) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let divisor = bound.divisor(&ctx);
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json::divisor_json(&divisor, &ctx)).unwrap()
        );
        return EXIT_OK;
    }
    print_divisor(&divisor, &ctx);
    EXIT_OK
}

fn print_divisor(divisor: &CuspidalDivisor, ctx: &LevelContext) {
    if divisor.is_zero() {
        println!("zero divisor");
    }
    for cusp in ctx.cusps() {
        println!("{:<10} {}", cusp_name(cusp, ctx), divisor.coeff(cusp));
    }
    println!("degree     {}", divisor.degree());
}

fn print_report(report: &CriterionReport) {
    for c in &report.conditions {
        let label = match c.prime {
            Some(p) => format!("{} (p={p})", c.id.as_str()),
            None => c.id.as_str().to_string(),
        };
        println!(
            "{:<22} {}  witness {}",
            label,
            if c.pass { "pass" } else { "FAIL" },
            c.witness
        );
    }
    println!("overall: {}", if report.overall { "PASS" } else { "FAIL" });
}

fn report_exit(report: &CriterionReport, as_json: bool) -> i32 {
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json::report_json(report)).unwrap()
        );
    } else {
        print_report(report);
    }
    if report.overall {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn hypothesis_exit(err: &HypothesisNotMet, as_json: bool) -> i32 {
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({"hypothesis_not_met": err.to_string()}))
                .unwrap()
        );
    } else {
        eprintln!("hypothesis not met: {err}");
    }
    EXIT_HYPOTHESIS
}

fn cmd_check(level: u64, text: &str, criterion: Criterion, as_json: bool) -> i32 {
    let (ctx, bound) = match parse_and_bind(level, text) {
        Ok(v) => v,
        Err(code) => return code,
    };
    match criterion {
        Criterion::Ligozat => {
            if bound.has_f() {
                eprintln!(
                    "error: {}",
                    expr::BindError::MixedAtoms {
                        criterion: "ligozat",
                        expected: "eta quotients",
                        found: "F atoms",
                    }
                );
                return EXIT_EXPR;
            }
            report_exit(&ligozat_check(&bound.eta, &ctx), as_json)
        }
        Criterion::Thm17 => {
            if bound.has_eta() {
                eprintln!(
                    "error: {}",
                    expr::BindError::MixedAtoms {
                        criterion: "thm17",
                        expected: "F-products",
                        found: "eta atoms",
                    }
                );
                return EXIT_EXPR;
            }
            match thm17_check(&bound.f, &ctx) {
                Ok(report) => report_exit(&report, as_json),
                Err(err) => hypothesis_exit(&err, as_json),
            }
        }
        Criterion::Thm19 => {
            if bound.has_eta() {
                eprintln!(
                    "error: {}",
                    expr::BindError::MixedAtoms {
                        criterion: "thm19",
                        expected: "F-products",
                        found: "eta atoms",
                    }
                );
                return EXIT_EXPR;
            }
            report_exit(&thm19_check(&bound.f, &ctx), as_json)
        }
    }
}

fn print_group(level: u64, kind: GroupKind, group: &AbelianGroup) {
    let name = match kind {
        GroupKind::Full => "C_N",
        GroupKind::Rational => "C(N)",
        GroupKind::Fixed => "C_N(Q)",
    };
    println!("{name} at level {level}: {group} (order {})", group.order());
}

fn cmd_group(level: u64, which: GroupKind, as_json: bool) -> i32 {
    let ctx = match context_or_exit(level) {
        Ok(ctx) => ctx,
        Err(code) => return code,
    };
    let group = match which {
        GroupKind::Rational => Ok(rational_cuspidal_group(&ctx)),
        GroupKind::Full => full_cuspidal_group(&ctx),
        GroupKind::Fixed => rational_cuspidal_subgroup(&ctx),
    };
    match group {
        Ok(group) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json::group_json(
                        level,
                        which.as_str(),
                        &group
                    ))
                    .unwrap()
                );
            } else {
                print_group(level, which, &group);
            }
            EXIT_OK
        }
        Err(err) => hypothesis_exit(&err, as_json),
    }
}

/// Outcome of verifying one level in a sweep.
enum VerifyOutcome {
    Pass(Box<MainTheoremReport>),
    /// All cusps are rational, so the equality holds with no lattice
    /// computation (L <= 2).
    TrivialPass,
    Fail(Box<MainTheoremReport>),
    Skip(String),
}

fn verify_level(level: u64) -> Result<VerifyOutcome, i32> {
    let ctx = context_or_exit(level)?;
    // L = 1 always satisfies the hypotheses, so only L = 2 needs the
    // all-cusps-rational shortcut.
    if ctx.big_l() == 2 {
        return Ok(VerifyOutcome::TrivialPass);
    }
    match verify_main_theorem(&ctx) {
        Ok(report) if report.holds => Ok(VerifyOutcome::Pass(Box::new(report))),
        Ok(report) => Ok(VerifyOutcome::Fail(Box::new(report))),
        Err(err) => Ok(VerifyOutcome::Skip(err.to_string())),
    }
}

/// Whether N has the shape p^2 M with p prime and M squarefree; this is
/// exactly when L is 1 or a prime (and levels with L = 1 are squarefree,
/// where the equality is immediate).
fn is_p2m_form(level: u64) -> bool {
    let ctx = LevelContext::new(level).expect("positive level");
    let l = ctx.big_l();
    l == 1 || {
        let fac = factorize(l);
        fac.len() == 1 && fac[0].1 == 1
    }
}

fn verify_report_json(level: u64, outcome: &VerifyOutcome) -> serde_json::Value {
    match outcome {
        VerifyOutcome::Pass(report) => json!({
            "level": level,
            "status": "pass",
            "rational_class_group": report.rational_class_group.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "rational_subgroup": report.rational_subgroup.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }),
        VerifyOutcome::TrivialPass => json!({
            "level": level,
            "status": "pass",
            "note": "all cusps rational",
        }),
        VerifyOutcome::Fail(report) => json!({
            "level": level,
            "status": "fail",
            "rational_class_group": report.rational_class_group.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "rational_subgroup": report.rational_subgroup.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }),
        VerifyOutcome::Skip(reason) => json!({
            "level": level,
            "status": "skipped",
            "reason": reason,
        }),
    }
}

fn print_verify_line(level: u64, outcome: &VerifyOutcome) {
    match outcome {
        VerifyOutcome::Pass(report) => println!(
            "N={level}: PASS  C(N) = {} = C_N(Q) = {} inside C_N = {}",
            report.rational_class_group, report.rational_subgroup, report.cuspidal_group
        ),
        VerifyOutcome::TrivialPass => {
            println!("N={level}: PASS  (all cusps rational; equality is immediate)")
        }
        VerifyOutcome::Fail(report) => println!(
            "N={level}: FAIL  C(N) = {} but C_N(Q) = {}",
            report.rational_class_group, report.rational_subgroup
        ),
        VerifyOutcome::Skip(reason) => println!("N={level}: skipped ({reason})"),
    }
}

fn cmd_verify(level: Option<u64>, range: Option<&str>, as_json: bool) -> i32 {
    match (level, range) {
        (Some(level), None) => {
            let outcome = match verify_level(level) {
                Ok(v) => v,
                Err(code) => return code,
            };
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&verify_report_json(level, &outcome)).unwrap()
                );
            } else {
                print_verify_line(level, &outcome);
            }
            match outcome {
                VerifyOutcome::Pass(_) | VerifyOutcome::TrivialPass => EXIT_OK,
                VerifyOutcome::Fail(_) => EXIT_FAIL,
                VerifyOutcome::Skip(_) => EXIT_HYPOTHESIS,
            }
        }
        (None, Some(range)) => {
            let Some((a, b)) = range
                .split_once("..")
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
            else {
                eprintln!("error: --range expects the form A..B with integers A <= B");
                return EXIT_USAGE;
            };
            if a > b || a == 0 {
                eprintln!("error: --range expects 1 <= A <= B");
                return EXIT_USAGE;
            }
            let mut all_pass = true;
            let mut outcomes = Vec::new();
            for n in a..=b {
                let outcome = if !is_p2m_form(n) {
                    VerifyOutcome::Skip("not of the form p^2 M with M squarefree".into())
                } else {
                    match verify_level(n) {
                        Ok(v) => v,
                        Err(code) => return code,
                    }
                };
                if matches!(outcome, VerifyOutcome::Fail(_)) {
                    all_pass = false;
                }
                if !as_json {
                    print_verify_line(n, &outcome);
                }
                outcomes.push((n, outcome));
            }
            if as_json {
                let levels: Vec<_> = outcomes
                    .iter()
                    .map(|(n, o)| verify_report_json(*n, o))
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"levels": levels})).unwrap()
                );
            } else {
                let verified = outcomes
                    .iter()
                    .filter(|(_, o)| {
                        matches!(o, VerifyOutcome::Pass(_) | VerifyOutcome::TrivialPass)
                    })
                    .count();
                let skipped = outcomes
                    .iter()
                    .filter(|(_, o)| matches!(o, VerifyOutcome::Skip(_)))
                    .count();
                println!("verified {verified} levels, skipped {skipped}");
            }
            if all_pass {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        _ => {
            eprintln!("error: verify needs exactly one of --level or --range");
            EXIT_USAGE
        }
    }
}

fn cmd_selftest(max_level: u64) -> i32 {
    let mut ok = true;
    for (name, result) in selftest::all(max_level) {
        match result {
            Ok(checks) => println!("{name}: ok ({checks} checks)"),
            Err(message) => {
                ok = false;
                println!("{name}: FAILED: {message}");
            }
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("cuspidal".to_string())
            .chain(args.iter().map(|s| s.to_string())))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["cusps", "--level", "11"]), EXIT_OK);
        assert_eq!(run_args(&["cusps", "--level", "0"]), EXIT_USAGE);
        assert_eq!(run_args(&["--bogus"]), EXIT_USAGE);
        assert_eq!(
            run_args(&["divisor", "--level", "11", "--expr", "eta(1"]),
            EXIT_EXPR
        );
        assert_eq!(
            run_args(&["divisor", "--level", "11", "--expr", "eta(7)"]),
            EXIT_EXPR
        );
        assert_eq!(
            run_args(&[
                "check",
                "--level",
                "63",
                "--expr",
                "F[1,1]",
                "--criterion",
                "thm17"
            ]),
            EXIT_HYPOTHESIS
        );
        assert_eq!(
            run_args(&[
                "check",
                "--level",
                "25",
                "--expr",
                "F[1,1]^4 * F[1,2]^2",
                "--criterion",
                "thm17"
            ]),
            EXIT_FAIL
        );
        assert_eq!(
            run_args(&[
                "check",
                "--level",
                "25",
                "--expr",
                "F[1,1]^2 * F[1,2]^4",
                "--criterion",
                "thm17"
            ]),
            EXIT_OK
        );
        assert_eq!(
            run_args(&[
                "check",
                "--level",
                "11",
                "--expr",
                "eta(1)^12 / eta(11)^12",
                "--criterion",
                "thm17"
            ]),
            EXIT_EXPR
        );
        assert_eq!(run_args(&["verify", "--level", "49"]), EXIT_OK);
        assert_eq!(run_args(&["verify", "--level", "63"]), EXIT_HYPOTHESIS);
        assert_eq!(run_args(&["selftest", "--max-level", "0"]), EXIT_OK);
        assert_eq!(run_args(&["group", "--level", "63", "--which", "full"]), EXIT_HYPOTHESIS);
        assert_eq!(run_args(&["group", "--level", "63", "--which", "rational"]), EXIT_OK);
    }

    #[test]
    fn p2m_form_detection() {
        for n in [4u64, 9, 18, 25, 45, 49, 50, 63, 75, 98, 121, 30, 1] {
            assert!(is_p2m_form(n), "N={n}");
        }
        for n in [36u64, 72, 100, 144, 225] {
            assert!(!is_p2m_form(n), "N={n}");
        }
    }
}
