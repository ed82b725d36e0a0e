use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use queig_cli::format::{self, num};
use queig_cli::{Mode, RunConfig, Strategy};
use queig_core::experiments::{self, ReproOptions, Table};
use queig_core::{solve_type2, SolveStatus};

const EXIT_FOUND: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;
const EXIT_STATISTICAL: u8 = 4;

/// Query-based eigenvalue search on a simulated quantum register.
#[derive(Parser)]
#[command(name = "queig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for the eigenvalue nearest lambda0; writes one CSV row per trial.
    Solve(SolveArgs),
    /// Rerun a reference experiment from every basis state and K random states.
    Reproduce(ReproduceArgs),
    /// Compare oracle calls of the fixed-point search and plain QPE sampling.
    BenchType2(BenchArgs),
    /// Monte Carlo check of the basis-state hit probability.
    Probcheck(ProbcheckArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// TOML run configuration.
    config: Option<PathBuf>,
    /// "h2", "heisenberg", or a Hamiltonian file.
    #[arg(long)]
    hamiltonian: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    lambda0: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum)]
    strategy: Option<Strategy>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_epsilon_doublings: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the effective configuration to this path ("-" for stderr).
    #[arg(long)]
    dump_config: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    table: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 7)]
    r: usize,
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    /// Overrides the half-gap window.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Circuit)]
    mode: Mode,
    #[arg(long, default_value_t = 11)]
    random_states: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, default_value_t = 200)]
    repetitions: usize,
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbcheckArgs {
    /// Hilbert-space dimension N.
    #[arg(long, default_value_t = 16)]
    dim: u64,
    /// Number of basis states tried.
    #[arg(long, default_value_t = 1)]
    m: u64,
    #[arg(long, default_value_t = 100_000)]
    shots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<queig_core::Error> for Failure {
    fn from(e: queig_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_FOUND });
        }
    };
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Reproduce(args) => reproduce(args),
        Command::BenchType2(args) => bench(args),
        Command::Probcheck(args) => probcheck(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid input: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn effective_config(args: &SolveArgs) -> Result<RunConfig, Failure> {
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path).map_err(|e| Failure::Usage(e.to_string()))?,
        None => RunConfig::default(),
    };
    if let Some(v) = &args.hamiltonian {
        config.hamiltonian = v.clone();
    }
    macro_rules! override_with {
        ($($field:ident),*) => {$(
            if let Some(v) = args.$field {
                config.$field = v;
            }
        )*};
    }
    override_with!(lambda0, epsilon, delta, r, strategy, mode, trials, seed, max_epsilon_doublings);
    if let Some(out) = &args.out {
        config.out = Some(out.clone());
    }
    Ok(config)
}

fn solve(args: SolveArgs) -> Result<u8, Failure> {
    let config = effective_config(&args)?;
    if let Some(path) = &args.dump_config {
        let text = config.to_toml();
        if path.as_os_str() == "-" {
            eprint!("{text}");
        } else {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
    }
    let solver_config = config.solver_config();
    solver_config.validate()?;
    let h = config.build_hamiltonian().map_err(Failure::Invalid)?;
    let result = solve_type2(&h, &solver_config)?;
    emit(config.out.as_deref(), &format::trials_csv(&result.trials))?;

    eprintln!(
        "window [{}, {}] after epsilon {}; {} oracle calls",
        num(result.window_used.0),
        num(result.window_used.1),
        num(result.epsilon_used),
        result.queries_used
    );
    match (result.status, &result.solution) {
        (SolveStatus::Found, Some(sol)) => {
            eprintln!(
                "found eigenvalue {} (trial {}, fidelity {}, residual {})",
                num(sol.eigenvalue),
                sol.trial,
                num(sol.fidelity),
                num(sol.residual)
            );
            Ok(EXIT_FOUND)
        }
        _ => {
            eprintln!("no eigenvalue found");
            Ok(EXIT_NOT_FOUND)
        }
    }
}

fn reproduce(args: ReproduceArgs) -> Result<u8, Failure> {
    let table = Table::from_number(args.table).ok_or_else(|| Failure::Usage("table must be 1, 2 or 3".into()))?;
    let options = ReproOptions {
        r: args.r,
        delta: args.delta,
        random_states: args.random_states,
        seed: args.seed,
        mode: args.mode.into(),
        epsilon: args.epsilon,
    };
    let repro = experiments::reproduce(table, &options)?;
    emit(args.out.as_deref(), &format::repro_csv(&repro.rows))?;

    let preset = experiments::table_preset(table);
    let t = &repro.target;
    eprintln!(
        "table {}: target {} at lambda0 {}, epsilon {}, l = {}",
        table.number(),
        num(t.eigenvalue),
        num(t.lambda0),
        num(t.epsilon),
        repro.iterations
    );
    for c in &repro.comparisons {
        eprintln!(
            "  reference p {:.4} F {:.4} | {} p {} F {}",
            c.reference.overlap,
            c.reference.fidelity,
            c.label,
            num(c.overlap),
            num(c.fidelity)
        );
    }
    let show = |x: Option<f64>| x.map_or_else(|| "-".to_string(), num);
    eprintln!(
        "  min F (p >= 1/N): basis {} (reference {:.4}), random {} (reference {:.4})",
        show(repro.basis_min_fidelity),
        preset.basis_min_fidelity,
        show(repro.random_min_fidelity),
        preset.random_min_fidelity
    );
    Ok(EXIT_FOUND)
}

fn bench(args: BenchArgs) -> Result<u8, Failure> {
    if args.n_min < 1 || args.n_max > 10 || args.n_min >= args.n_max {
        return Err(Failure::Invalid(format!(
            "need 1 <= n-min < n-max <= 10, got {}..{}",
            args.n_min, args.n_max
        )));
    }
    let ns: Vec<usize> = (args.n_min..=args.n_max).collect();
    let report = experiments::bench_type2(&ns, args.repetitions, args.delta, args.seed)?;
    emit(args.out.as_deref(), &format::bench_csv(&report))?;
    eprintln!(
        "log-log slope vs N: query {:.3}, qpe_sampling {:.3}",
        report.query_slope, report.qpe_slope
    );
    Ok(EXIT_FOUND)
}

fn probcheck(args: ProbcheckArgs) -> Result<u8, Failure> {
    if args.shots < 1000 {
        return Err(Failure::Invalid(format!("shots must be at least 1000, got {}", args.shots)));
    }
    let check = experiments::probcheck(args.dim, args.m, args.shots, args.seed)?;
    println!("formula {}", num(check.formula));
    println!("empirical {}", num(check.empirical));
    println!("z {:.3}", check.z);
    Ok(if check.z.abs() > 4.0 { EXIT_STATISTICAL } else { EXIT_FOUND })
}
