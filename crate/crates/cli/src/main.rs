use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use lefschetz::census::{verify_suite, with_threads, CensusReport, CheckStatus, SuiteOptions};
use lefschetz::classes::{affine_class, grassmannian_class, projective_class};
use lefschetz::expr::{eval_expr, parse_expr};
use lefschetz::ffield::PrimeField;
use lefschetz::verify::{verify_symbolic, SymbolicReport};
use lefschetz::{MotElem, Poly};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Class arithmetic in Z[L] and F_p point-count verification")]
struct Cli {
    /// Worker threads for census enumeration (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a class expression, e.g. "([X] - [Y]) * L^6".
    Eval {
        expr: String,
        /// Specialize L to this integer.
        #[arg(long)]
        at: Option<u64>,
        /// Reduce modulo ([X] - [Y]) * L^6 first.
        #[arg(long)]
        normal_form: bool,
    },
    /// Print a class polynomial: `P <n>`, `A <n>` or `G <k> <n>`.
    Class {
        kind: String,
        #[arg(allow_negative_numbers = true, required = true)]
        args: Vec<i64>,
        #[arg(long)]
        at: Option<u64>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Combined symbolic and census report.
    Report {
        #[arg(long)]
        json: PathBuf,
        #[command(flatten)]
        census: CensusArgs,
    },
}

#[derive(Subcommand)]
enum Suite {
    Symbolic,
    Census {
        #[command(flatten)]
        census: CensusArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct CensusArgs {
    #[arg(long, default_value_t = 3)]
    prime: u64,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    seeds: Vec<u64>,
    /// Allow the p = 5 census.
    #[arg(long)]
    full: bool,
}

#[derive(Serialize)]
struct CombinedReport {
    passed: bool,
    symbolic: SymbolicReport,
    census: Vec<CensusReport>,
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "SKIP",
    }
}

fn print_symbolic(r: &SymbolicReport) {
    for (name, s) in &r.checks {
        println!("{:4}  symbolic/{name}", status_word(*s));
    }
}

fn print_census(reports: &[CensusReport]) {
    for r in reports {
        let counts: Vec<String> = ["x_w", "y_w", "h_via_planes", "h_via_forms"]
            .iter()
            .filter_map(|k| r.count(k).map(|v| format!("{k}={v}")))
            .collect();
        println!("p={} seed={} {}", r.prime, r.seed, counts.join(" "));
        for (name, s) in &r.checks {
            println!("{:4}  census/p{}/seed{}/{name}", status_word(*s), r.prime, r.seed);
        }
    }
}

fn run_census(args: &CensusArgs, threads: Option<usize>) -> Result<Vec<CensusReport>> {
    let field = PrimeField::new(args.prime)?;
    let opts = SuiteOptions { full: args.full };
    let seeds = args.seeds.clone();
    Ok(with_threads(threads, move || verify_suite(field, &seeds, opts))??)
}

fn write_json<T: Serialize>(path: &PathBuf, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn specialize(e: &MotElem, q: u64) -> Result<String> {
    if !e.is_scalar() {
        bail!("cannot specialize {e}: formal symbols [X]/[Y] remain");
    }
    Ok(e.scalar_part().eval(q).to_string())
}

fn class_poly(kind: &str, args: &[i64]) -> Result<Poly> {
    let nonneg = |v: i64| usize::try_from(v).map_err(|_| anyhow!("{v} must be non-negative"));
    match (kind, args) {
        ("P", [n]) => Ok(projective_class(*n)?),
        ("A", [n]) => Ok(affine_class(nonneg(*n)?)),
        ("G", [k, n]) => Ok(grassmannian_class(nonneg(*k)?, nonneg(*n)?)),
        _ => bail!("expected `P <n>`, `A <n>` or `G <k> <n>`"),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Eval { expr, at, normal_form } => {
            let parsed = parse_expr(&expr).map_err(|e| anyhow!("{e}"))?;
            let mut value = eval_expr(&parsed)?;
            if normal_form {
                value = value.normal_form();
            }
            match at {
                Some(q) => println!("{}", specialize(&value, q)?),
                None => println!("{value}"),
            }
            Ok(true)
        }
        Command::Class { kind, args, at } => {
            let p = class_poly(&kind, &args)?;
            match at {
                Some(q) => println!("{}", p.eval(q)),
                None => println!("{p}"),
            }
            Ok(true)
        }
        Command::Verify { suite: Suite::Symbolic } => {
            let r = verify_symbolic();
            print_symbolic(&r);
            Ok(r.passed())
        }
        Command::Verify {
            suite: Suite::Census { census, json },
        } => {
            let reports = run_census(&census, cli.threads)?;
            print_census(&reports);
            if let Some(path) = json {
                write_json(&path, &reports)?;
            }
            Ok(reports.iter().all(CensusReport::passed))
        }
        Command::Report { json, census } => {
            let symbolic = verify_symbolic();
            let reports = run_census(&census, cli.threads)?;
            print_symbolic(&symbolic);
            print_census(&reports);
            let passed = symbolic.passed() && reports.iter().all(CensusReport::passed);
            let doc = CombinedReport {
                passed,
                symbolic,
                census: reports,
            };
            write_json(&json, &doc)?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
