//! `mmpx`: generate, solve, verify, and benchmark bipartite
//! min-max-plus eigenproblems.
//!
//! Exit codes are a stable contract: 0 success, 1 usage/parse/dimension
//! errors (and failed verification), 2 non-convergence.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context as _};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use mmpx_core::format::{parse_state, parse_system, render_system, render_trace};
use mmpx_core::oracle::naive_apply_m;
use mmpx_core::{
    latin_eigenvalue, random_system, solve_fixedpoint, solve_latin, solve_power, verify_eigenpair,
    BipartiteSystem, EigenPair, Error as CoreError, ExtendedValue, MaskSpec, Rational, SolverTrace,
    StateVector,
};

mod bench;

#[derive(Parser)]
#[command(
    name = "mmpx",
    version,
    about = "Eigensolvers for bipartite min-max-plus systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a Latin-square system file and print its eigenvalue
    Gen {
        /// Order of the Latin squares
        #[arg(long)]
        n: usize,
        /// Seed for the square generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mask for A: none, eps, or eps:<symbol>
        #[arg(long = "maskA", value_parser = parse_mask, default_value = "none")]
        mask_a: MaskSpec,
        /// Mask for B: none, tau, or tau:<symbol>
        #[arg(long = "maskB", value_parser = parse_mask, default_value = "none")]
        mask_b: MaskSpec,
        /// Where to write the system file
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve the eigenproblem of a system file
    Solve {
        /// System file to read
        #[arg(long)]
        system: PathBuf,
        /// Which algorithm to run
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        /// Eigenvalue for the fixed algorithm (exact rational)
        #[arg(long, value_parser = parse_rational, required_if_eq("algorithm", "fixed"))]
        lambda: Option<Rational>,
        /// Start state: zeros or file:<path>
        #[arg(long, default_value = "zeros")]
        x0: String,
        /// Application cap per phase (default 10000, or MMPX_MAX_ITER)
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
        /// Optional path for the full iterate trace
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a claimed eigenpair and print its residual
    Verify {
        /// System file to read
        #[arg(long)]
        system: PathBuf,
        /// Claimed eigenvalue (exact rational)
        #[arg(long, value_parser = parse_rational)]
        lambda: Rational,
        /// State file holding the claimed eigenvector
        #[arg(long)]
        vector: PathBuf,
        /// Cross-check against the naive reference map
        #[arg(long)]
        oracle: bool,
    },
    /// Compare the two algorithms over a grid of random instances
    Bench {
        /// Orders to sweep, comma separated (e.g. 4,6,8)
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Number of seeds per order (seeds 0..N)
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// Mask variants, comma separated subset of case1..case4
        #[arg(long, value_delimiter = ',', default_value = "case1,case2,case3,case4")]
        variants: Vec<String>,
        /// Application cap per phase (default 10000, or MMPX_MAX_ITER)
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
        /// Where to write the CSV table
        #[arg(long)]
        out: PathBuf,
        /// Extra system files to include as fixed rows, each
        /// <system-file> or <system-file>=<x0-file>
        #[arg(long = "include")]
        include: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Latin,
    Power,
    Fixed,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Latin => "latin",
            Algorithm::Power => "power",
            Algorithm::Fixed => "fixed",
        }
    }
}

fn parse_mask(s: &str) -> Result<MaskSpec, String> {
    if s == "none" {
        return Ok(MaskSpec::none());
    }
    let (kind, symbol) = match s.split_once(':') {
        Some((kind, raw)) => {
            let symbol = raw
                .parse::<usize>()
                .map_err(|_| format!("invalid mask symbol `{raw}`"))?;
            (kind, Some(symbol))
        }
        None => (s, None),
    };
    match (kind, symbol) {
        ("eps", None) => Ok(MaskSpec::eps_default()),
        ("eps", Some(k)) => Ok(MaskSpec::eps(k)),
        ("tau", None) => Ok(MaskSpec::tau_default()),
        ("tau", Some(k)) => Ok(MaskSpec::tau(k)),
        _ => Err(format!(
            "invalid mask `{s}` (expected none, eps[:<symbol>], or tau[:<symbol>])"
        )),
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    match ExtendedValue::from_str(s) {
        Ok(ExtendedValue::Finite(q)) => Ok(q),
        Ok(_) => Err(format!("`{s}` is not finite")),
        Err(e) => Err(e.to_string()),
    }
}

fn read_system(path: &PathBuf) -> anyhow::Result<BipartiteSystem> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading system file {}", path.display()))?;
    let sys = parse_system(&text).with_context(|| format!("in {}", path.display()))?;
    Ok(sys)
}

/// Print to stdout without panicking when the consumer hangs up early
/// (`mmpx solve | head` must not backtrace). A broken pipe ends the
/// process with the conventional SIGPIPE status.
fn emit(text: &str) -> anyhow::Result<()> {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(141),
        Err(e) => Err(e).context("writing to stdout"),
    }
}

fn resolve_max_iter(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var("MMPX_MAX_ITER") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| anyhow::anyhow!("MMPX_MAX_ITER is not a valid iteration count: `{raw}`")),
        Err(std::env::VarError::NotPresent) => Ok(10_000),
        Err(e) => Err(e).context("reading MMPX_MAX_ITER"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version behave as successes; everything else is usage
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(CoreError::NonConvergence { .. }) = cause.downcast_ref::<CoreError>() {
            return 2;
        }
    }
    1
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Gen {
            n,
            seed,
            mask_a,
            mask_b,
            out,
        } => cmd_gen(n, seed, mask_a, mask_b, out),
        Command::Solve {
            system,
            algorithm,
            lambda,
            x0,
            max_iter,
            trace,
        } => cmd_solve(system, algorithm, lambda, &x0, max_iter, trace),
        Command::Verify {
            system,
            lambda,
            vector,
            oracle,
        } => cmd_verify(system, lambda, vector, oracle),
        Command::Bench {
            n,
            seeds,
            variants,
            max_iter,
            out,
            include,
        } => {
            let max_iter = resolve_max_iter(max_iter)?;
            bench::cmd_bench(&n, seeds, &variants, max_iter, &out, &include)
        }
    }
}

fn cmd_gen(
    n: usize,
    seed: u64,
    mask_a: MaskSpec,
    mask_b: MaskSpec,
    out: PathBuf,
) -> anyhow::Result<u8> {
    let sys = random_system(n, seed, &mask_a, &mask_b)?;
    let lambda = latin_eigenvalue(&sys)?;
    fs::write(&out, render_system(&sys))
        .with_context(|| format!("writing system file {}", out.display()))?;
    emit(&format!("lambda: {lambda}\n"))?;
    Ok(0)
}

fn cmd_solve(
    system: PathBuf,
    algorithm: Algorithm,
    lambda: Option<Rational>,
    x0: &str,
    max_iter: Option<usize>,
    trace_path: Option<PathBuf>,
) -> anyhow::Result<u8> {
    let sys = read_system(&system)?;
    let max_iter = resolve_max_iter(max_iter)?;
    let x0 = match x0 {
        "zeros" => StateVector::zeros(sys.m(), sys.n()),
        other => match other.strip_prefix("file:") {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading start state {path}"))?;
                parse_state(&text, sys.m(), sys.n()).with_context(|| format!("in {path}"))?
            }
            None => bail!("invalid --x0 `{other}` (expected zeros or file:<path>)"),
        },
    };

    let started = Instant::now();
    let (pair, trace) = match algorithm {
        Algorithm::Latin => solve_latin(&sys, &x0, max_iter)?,
        Algorithm::Power => solve_power(&sys, &x0, max_iter)?,
        Algorithm::Fixed => {
            let lambda = lambda.expect("clap requires --lambda for fixed");
            solve_fixedpoint(&sys, &lambda, &x0, max_iter)?
        }
    };
    let wall_ns = started.elapsed().as_nanos();

    if let Some(path) = trace_path {
        fs::write(&path, render_trace(&trace))
            .with_context(|| format!("writing trace file {}", path.display()))?;
    }
    emit(&render_report(algorithm, &pair, &trace, wall_ns))?;
    Ok(0)
}

fn render_report(
    algorithm: Algorithm,
    pair: &EigenPair,
    trace: &SolverTrace,
    wall_ns: u128,
) -> String {
    use std::fmt::Write as _;
    let mut text = String::new();
    writeln!(text, "algorithm: {}", algorithm.name()).unwrap();
    writeln!(text, "lambda: {}", pair.lambda).unwrap();
    writeln!(text, "s: {}", trace.s).unwrap();
    writeln!(text, "r: {}", trace.r).unwrap();
    match &trace.c {
        Some(c) => writeln!(text, "c: {c}").unwrap(),
        None => writeln!(text, "c: none").unwrap(),
    }
    writeln!(text, "continuation_steps: {}", trace.continuation_steps).unwrap();
    writeln!(text, "map_applications: {}", trace.map_applications).unwrap();
    writeln!(text, "wall_time_ns: {wall_ns}").unwrap();
    writeln!(text, "v:").unwrap();
    for entry in pair.v.entries() {
        writeln!(text, "{entry}").unwrap();
    }
    text
}

fn cmd_verify(
    system: PathBuf,
    lambda: Rational,
    vector: PathBuf,
    oracle: bool,
) -> anyhow::Result<u8> {
    let sys = read_system(&system)?;
    let text = fs::read_to_string(&vector)
        .with_context(|| format!("reading state file {}", vector.display()))?;
    let v =
        parse_state(&text, sys.m(), sys.n()).with_context(|| format!("in {}", vector.display()))?;

    let pair = EigenPair { lambda, v };
    let verification = verify_eigenpair(&sys, &pair)?;
    use std::fmt::Write as _;
    let mut text = String::new();
    writeln!(text, "valid: {}", verification.valid).unwrap();
    writeln!(text, "residual:").unwrap();
    for entry in verification.residual.iter() {
        writeln!(text, "{entry}").unwrap();
    }

    let mut ok = verification.valid;
    if oracle {
        // independent route: the naive map must reproduce the production
        // image exactly, entry for entry
        let naive = naive_apply_m(sys.a(), sys.b(), &pair.v)?;
        let production = sys.apply(&pair.v)?;
        let agree = naive == production;
        writeln!(text, "oracle: {}", if agree { "agree" } else { "disagree" }).unwrap();
        ok &= agree;
    }
    emit(&text)?;
    Ok(if ok { 0 } else { 1 })
}
