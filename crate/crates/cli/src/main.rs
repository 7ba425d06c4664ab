//! `hhcert` — decide Hermite-Hadamard-type inequalities over all continuous
//! convex functions, with exact rational certificates and counterexample
//! witnesses.
//!
//! Exit codes: 0 the inequality holds, 1 it fails with a convex
//! counterexample, 2 the sides are not comparable (constants or affine
//! functions already separate them), 3 input error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Signed;

use hhcert_cli::corpus;
use hhcert_cli::scan::{scan_csv, ScanRange};
use hhcert_cli::spec::{load_spec, verdict_str, CertificateJson, Comparison, SpecError};
use hhcert_core::functional::IntervalSpec;
use hhcert_core::oracle::{default_family, hinge_sweep, numeric_cross_check};
use hhcert_core::ordering::{compare, Certificate, Verdict, WitnessFn};
use hhcert_core::Q;

#[derive(Parser)]
#[command(
    name = "hhcert",
    about = "Exact certification of inequalities between convex-function functionals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide lhs <= rhs for every continuous convex f and print a certificate
    Check {
        /// Path to a spec file, or inline JSON (starts with '{')
        spec: String,
        /// Emit the full certificate as JSON
        #[arg(long)]
        json: bool,
    },
    /// Print the exact crossing profile of the two BV transforms
    Crossings {
        /// Path to a spec file, or inline JSON
        spec: String,
    },
    /// Run the regression corpus of published claims and report errata
    PaperSuite,
    /// Scan the symmetric family over an (a, alpha) grid and write CSV
    Scan {
        /// Family to scan (only "symmetric" is defined)
        #[arg(long, default_value = "symmetric")]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        a_min: String,
        #[arg(long, allow_hyphen_values = true)]
        a_max: String,
        #[arg(long)]
        a_step: String,
        #[arg(long)]
        alpha_min: String,
        #[arg(long)]
        alpha_max: String,
        #[arg(long)]
        alpha_step: String,
        /// Output CSV path
        #[arg(long)]
        out: String,
    },
    /// Exact hinge sweep plus floating-point cross-checks of a comparison
    Oracle {
        /// Path to a spec file, or inline JSON
        spec: String,
        /// Number of hinge kinks in the numeric family
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Evaluation interval as "x:y" (defaults to the spec's interval)
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<String>,
    },
}

fn exit_code_for(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::NotComparable => 2,
    }
}

fn witness_line(cert: &Certificate) -> String {
    match &cert.witness {
        None => "(none)".into(),
        Some(w) => match &w.function {
            WitnessFn::Hinge { t } => format!("hinge t*={t}, violation {}", w.violation),
            WitnessFn::Affine { positive } => format!(
                "affine u -> {}u, violation {}",
                if *positive { "" } else { "-" },
                w.violation
            ),
            WitnessFn::Constant { positive } => format!(
                "constant {}1, violation {}",
                if *positive { "+" } else { "-" },
                w.violation
            ),
        },
    }
}

fn join(values: &[Q]) -> String {
    if values.is_empty() {
        "(none)".into()
    } else {
        values
            .iter()
            .map(Q::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn cmd_check(spec_arg: &str, json: bool) -> Result<u8, SpecError> {
    let cmp: Comparison = load_spec(spec_arg)?.parse()?;
    let cert = compare(&cmp.lhs, &cmp.rhs);
    if json {
        let rendered = CertificateJson::from_certificate(&cert);
        println!(
            "{}",
            serde_json::to_string_pretty(&rendered).expect("certificate serializes")
        );
    } else {
        println!("verdict: {}", verdict_str(cert.verdict));
        println!("mass: lhs={} rhs={}", cert.mass_lhs, cert.mass_rhs);
        println!("mean: lhs={} rhs={}", cert.mean_lhs, cert.mean_rhs);
        match &cert.profile {
            Some(p) => {
                println!("crossings: {}", join(&p.crossings));
                println!("areas: {}", join(&p.areas));
            }
            None => {
                println!("crossings: (not computed: necessary conditions fail)");
                println!("areas: (not computed: necessary conditions fail)");
            }
        }
        println!("partial sums: {}", join(&cert.partial_sums));
        println!(
            "min prefix: {} at t={}",
            cert.min_prefix.1, cert.min_prefix.0
        );
        println!("witness: {}", witness_line(&cert));
    }
    Ok(exit_code_for(cert.verdict))
}

fn cmd_crossings(spec_arg: &str) -> Result<u8, SpecError> {
    let cmp = load_spec(spec_arg)?.parse()?;
    let profile = hhcert_core::ordering::crossing_profile(
        &cmp.lhs.bv_transform(),
        &cmp.rhs.bv_transform(),
    );
    if profile.crossings.is_empty() {
        println!("no crossings");
    } else {
        println!(
            "crossings: {}; areas: {}",
            join(&profile.crossings),
            join(&profile.areas)
        );
    }
    if !profile.zero_intervals.is_empty() {
        let zs = profile
            .zero_intervals
            .iter()
            .map(|(lo, hi)| format!("[{lo},{hi}]"))
            .collect::<Vec<_>>()
            .join(" ");
        println!("zero intervals: {zs}");
    }
    Ok(0)
}

fn claim_str(claim: Option<corpus::PaperClaim>) -> &'static str {
    match claim {
        Some(corpus::PaperClaim::Holds) => "holds",
        Some(corpus::PaperClaim::Fails) => "fails",
        None => "-",
    }
}

fn cmd_paper_suite() -> u8 {
    let outcomes = corpus::evaluate();
    println!(
        "{:<22} {:<7} {:<15} {}",
        "id", "claim", "computed", "agree"
    );
    for o in &outcomes {
        let agree = match o.agrees_with_claim() {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        println!(
            "{:<22} {:<7} {:<15} {}",
            o.item.id,
            claim_str(o.item.claim),
            verdict_str(o.computed),
            agree
        );
    }
    let errata: Vec<&corpus::CorpusOutcome> = outcomes
        .iter()
        .filter(|o| o.agrees_with_claim() == Some(false))
        .collect();
    println!();
    if errata.is_empty() {
        println!("errata: none");
    } else {
        println!("errata: published claims refuted by exact computation");
        for o in &errata {
            println!(
                "  {}: claimed {}, computed {} ({})",
                o.item.id,
                claim_str(o.item.claim),
                verdict_str(o.computed),
                o.item.source
            );
        }
    }
    let all_expected = outcomes.iter().all(|o| o.matches_expected());
    println!();
    if all_expected {
        println!(
            "{}/{} rows match the derived expectations",
            outcomes.len(),
            outcomes.len()
        );
        0
    } else {
        for o in outcomes.iter().filter(|o| !o.matches_expected()) {
            println!(
                "MISMATCH {}: computed {}, expected {}",
                o.item.id,
                verdict_str(o.computed),
                verdict_str(o.item.expected)
            );
        }
        1
    }
}

fn cmd_scan(
    family: &str,
    a: ScanRange,
    alpha: ScanRange,
    out: &str,
) -> Result<u8, SpecError> {
    if family != "symmetric" {
        return Err(SpecError(format!(
            "unknown family {family:?}; only \"symmetric\" is defined"
        )));
    }
    let csv = scan_csv(&a, &alpha)?;
    std::fs::write(out, &csv).map_err(|e| SpecError(format!("cannot write {out}: {e}")))?;
    println!("wrote {} rows to {out}", csv.lines().count() - 1);
    Ok(0)
}

fn parse_interval(arg: &str) -> Result<IntervalSpec, SpecError> {
    let (x, y) = arg
        .split_once(':')
        .ok_or_else(|| SpecError(format!("interval must be \"x:y\", got {arg:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<Q>()
            .map_err(|e| SpecError(format!("bad rational {s:?} in interval: {e}")))
    };
    IntervalSpec::new(parse(x)?, parse(y)?).map_err(|e| SpecError(e.to_string()))
}

fn cmd_oracle(spec_arg: &str, grid: usize, interval: Option<&str>) -> Result<u8, SpecError> {
    let cmp = load_spec(spec_arg)?.parse()?;
    let iv = match interval {
        Some(arg) => parse_interval(arg)?,
        None => cmp.interval.clone(),
    };
    let cert = compare(&cmp.lhs, &cmp.rhs);
    println!("verdict: {}", verdict_str(cert.verdict));
    match hinge_sweep(&cmp.lhs, &cmp.rhs) {
        Ok((max, t)) => println!("exact hinge sweep: max violation {max} at t*={t}"),
        Err(_) => {
            let const_gap = &cert.mass_lhs - &cert.mass_rhs;
            let affine_gap = (&cert.mass_lhs - &cert.mean_lhs) - (&cert.mass_rhs - &cert.mean_rhs);
            println!("exact hinge sweep: not applicable (necessary conditions fail)");
            println!("constant-function gap: {const_gap}");
            println!("affine-function gap: {affine_gap}");
        }
    }
    let family = default_family(&iv, grid);
    let report = numeric_cross_check(&cmp.lhs, &cmp.rhs, &family, &iv);
    let max = report.max_diff();
    println!(
        "numeric cross-check on [{},{}] over {} functions: max diff {max:.3e}",
        iv.x(),
        iv.y(),
        family.len()
    );
    if let Some(worst) = report.worst() {
        if worst.diff.is_positive() {
            println!("worst member: {} (diff {:.3e})", worst.label, worst.diff);
        }
    }
    Ok(exit_code_for(cert.verdict))
}

fn run(cli: Cli) -> Result<u8, SpecError> {
    match cli.command {
        Command::Check { spec, json } => cmd_check(&spec, json),
        Command::Crossings { spec } => cmd_crossings(&spec),
        Command::PaperSuite => Ok(cmd_paper_suite()),
        Command::Scan {
            family,
            a_min,
            a_max,
            a_step,
            alpha_min,
            alpha_max,
            alpha_step,
            out,
        } => {
            let a = ScanRange::parse(&a_min, &a_max, &a_step, "a")?;
            let alpha = ScanRange::parse(&alpha_min, &alpha_max, &alpha_step, "alpha")?;
            cmd_scan(&family, a, alpha, &out)
        }
        Command::Oracle {
            spec,
            grid,
            interval,
        } => cmd_oracle(&spec, grid, interval.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
