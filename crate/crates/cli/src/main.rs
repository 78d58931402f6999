//! `gk`: run the verification suites, evaluate single functions, list suites.

mod config;
mod eval;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{parse_complex, parse_mutation, FileConfig, Format, Overrides, Settings};
use gk_core::verify::{registry, run_suite, IdentityReport, Mutation};
use gk_core::{Complex64, EvalConfig, ModularParams, Regime, Sign};
use rayon::prelude::*;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_POLE: u8 = 3;

#[derive(Parser)]
#[command(name = "gk", version, about = "Numerical checks for gamma-function kernel identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write one JSON report per suite.
    Run(RunArgs),
    /// Evaluate one library function at one point.
    Eval(EvalCmd),
    /// List the registered suites with their default thresholds.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Flat TOML config; flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run (repeatable); default is every suite.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// RNG seed; falls back to the config file, then to GK_SEED, then to 42.
    #[arg(long)]
    seed: Option<u64>,
    /// Points per suite, overriding each suite's default.
    #[arg(long)]
    points: Option<usize>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Truncation tolerance for products and series.
    #[arg(long)]
    tol: Option<f64>,
    /// Replace kernel identity suites by their off-hyperplane failure checks.
    #[arg(long)]
    unconstrained: bool,
    /// Directory for the reports.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Format of the summary printed to stdout.
    #[arg(long, value_parser = |s: &str| s.parse::<Format>())]
    format: Option<Format>,
    /// Deliberately corrupt the kernels (flip-delta2) to check that suites can fail.
    #[arg(long, value_parser = parse_mutation)]
    mutate: Option<Mutation>,
}

#[derive(Args)]
struct EvalCmd {
    /// Function name; see the list below.
    #[arg(long_help = eval_help())]
    function: String,
    /// Argument; comma-separated for kernels.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// `+` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    delta: String,
    /// elliptic, hyperbolic, trigonometric or rational.
    #[arg(long, default_value = "elliptic")]
    regime: String,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 1.0)]
    a_plus: f64,
    #[arg(long, default_value_t = 0.75)]
    a_minus: f64,
    /// Period of the trigonometric gamma; defaults to a_minus.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value = "0.2+0.1i", allow_hyphen_values = true)]
    d: String,
}

fn eval_help() -> String {
    let mut s = String::from("Function name. Known functions:\n");
    for (name, args) in eval::FUNCTIONS {
        s.push_str(&format!("  {name:18} {args}\n"));
    }
    s
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("gk: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn cmd_run(args: RunArgs) -> ExitCode {
    let file = match args.config.as_deref().map(FileConfig::load).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => return config_error(e),
    };
    let flags = Overrides {
        suites: args.suites,
        seed: args.seed,
        points: args.points,
        jobs: args.jobs,
        tol: args.tol,
        unconstrained: args.unconstrained,
        output: args.output,
        format: args.format,
        mutate: args.mutate,
    };
    let settings = match Settings::resolve(file, flags) {
        Ok(s) => s,
        Err(e) => return config_error(e),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = settings.jobs {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return config_error(e),
    };
    let started = chrono::Utc::now();
    let ctx = settings.ctx;
    let reports: Vec<IdentityReport> = pool.install(|| {
        settings
            .suites
            .par_iter()
            .map(|name| run_suite(name, &ctx).expect("suite names are resolved against the registry"))
            .collect()
    });
    let finished = chrono::Utc::now();
    let metadata = serde_json::json!({
        "started": started.to_rfc3339(),
        "finished": finished.to_rfc3339(),
        "elapsed_seconds": (finished - started).num_milliseconds() as f64 / 1000.0,
        "version": env!("CARGO_PKG_VERSION"),
        "threads": pool.current_num_threads(),
        "suites": settings.suites,
    });
    if let Err(e) = output::write_all(&settings.output, &reports, &metadata) {
        eprintln!("gk: cannot write reports to {}: {e}", settings.output.display());
        return ExitCode::from(EXIT_CONFIG);
    }
    match settings.format {
        Format::Text => print!("{}", output::summary_table(&reports)),
        Format::Json => {
            let rows = output::rows(&reports);
            println!("{}", serde_json::to_string_pretty(&rows).unwrap_or_default());
        }
    }
    if reports.iter().all(IdentityReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn parse_list(s: &Option<String>) -> Result<Vec<Complex64>, String> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s.split(',').map(parse_complex).collect(),
    }
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    Ok(match s {
        "elliptic" => Regime::Elliptic,
        "hyperbolic" => Regime::Hyperbolic,
        "trigonometric" | "trig" => Regime::Trigonometric,
        "rational" => Regime::Rational,
        _ => return Err(format!("unknown regime '{s}'")),
    })
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("delta must be + or -, got '{s}'")),
    }
}

fn cmd_eval(args: EvalCmd) -> ExitCode {
    let parsed = (|| -> Result<eval::EvalArgs, String> {
        let params = ModularParams::new(args.r, args.a_plus, args.a_minus).map_err(|e| e.to_string())?;
        Ok(eval::EvalArgs {
            params,
            regime: parse_regime(&args.regime)?,
            delta: parse_sign(&args.delta)?,
            alpha: args.alpha,
            d: parse_complex(&args.d)?,
            z: parse_list(&args.z)?,
            v: parse_list(&args.v)?,
            w: parse_list(&args.w)?,
        })
    })();
    let parsed = match parsed {
        Ok(p) => p,
        Err(e) => return config_error(e),
    };
    match eval::evaluate(&args.function, &parsed, &EvalConfig::default()) {
        Ok(value) => {
            println!("{}", eval::format_complex(value));
            ExitCode::SUCCESS
        }
        Err(eval::EvalError::Library(e)) if e.is_pole() => {
            eprintln!("gk: {e}");
            ExitCode::from(EXIT_POLE)
        }
        Err(eval::EvalError::Library(e)) => config_error(e),
        Err(eval::EvalError::Usage(msg)) => config_error(msg),
    }
}

fn cmd_list() -> ExitCode {
    use std::io::Write;
    let suites = registry();
    let width = suites.iter().map(|s| s.name.len()).max().unwrap_or(0);
    let mut out = std::io::stdout().lock();
    for s in suites {
        let kind = match s.kind {
            gk_core::verify::SuiteKind::Identity => "identity",
            gk_core::verify::SuiteKind::Inequality => "inequality",
        };
        let label = s.label.map(|l| format!(" [{l}]")).unwrap_or_default();
        let line = format!("{:width$}  {:>7.0e}  {:10}  {}{label}", s.name, s.threshold, kind, s.description);
        if writeln!(out, "{line}").is_err() {
            break;
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Eval(args) => cmd_eval(args),
        Command::List => cmd_list(),
    }
}
