//! Command-line front end: schedule dumps, dense Trotter evolution, circuit
//! compilation, and the bundled validation experiments, all writing
//! reproducible files.
//!
//! Exit codes: 0 success; 1 failed self-check; 2 input or parse problem
//! (also used by argument parsing); 3 invalid formula order; 4 dense cap
//! exceeded; 5 domain error (e.g. outside a bound's validity window);
//! 6 output write failure.

mod plot;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use prodform::circuits::compile_trotter;
use prodform::experiments::{
    error_vs_cost, error_vs_time, ising_bound_curve, theory_vs_empirical, ExperimentGrid,
};
use prodform::fixtures;
use prodform::formulas::{repeat_evaluate, EvolutionMode, Schedule};
use prodform::hamiltonian::{PauliHamiltonian, TermList};
use prodform::{sig17, Complex64};

const EXIT_SELF_CHECK: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_ORDER: i32 = 3;
const EXIT_CAP: i32 = 4;
const EXIT_DOMAIN: i32 = 5;
const EXIT_WRITE: i32 = 6;

/// Deviation threshold for `compile --check`.
const CHECK_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "prodform",
    version,
    about = "Product formulas for Hamiltonian time evolution",
    after_help = "Exit codes: 1 self-check failed, 2 input/parse, 3 invalid order, \
                  4 dense cap exceeded, 5 domain error, 6 write failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the flattened factor schedule of a product formula as CSV
    Schedule(ScheduleArgs),
    /// Evaluate the repeated formula densely and compare with the exact operator
    Evolve(EvolveArgs),
    /// Compile a Trotter circuit for a Pauli-string Hamiltonian
    Compile(CompileArgs),
    /// Run one of the bundled validation experiments
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Pauli-string Hamiltonian text file (one `<weight> <axes>` per line)
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Built-in input: `abc`, `ising:<n>` or `heisenberg:<n>` (unit couplings)
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Even approximation order
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// Term count L (alternative to providing a Hamiltonian)
    #[arg(long)]
    terms: Option<usize>,
    #[command(flatten)]
    source: SourceArgs,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct EvolveArgs {
    /// Even approximation order
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// Number of repetitions m
    #[arg(long, default_value_t = 1)]
    steps: u64,
    /// Total evolution time t
    #[arg(long, default_value_t = 1.0)]
    time: f64,
    #[command(flatten)]
    source: SourceArgs,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct CompileArgs {
    /// Even approximation order
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// Number of repetitions m
    #[arg(long, default_value_t = 1)]
    steps: u64,
    /// Total evolution time t
    #[arg(long, default_value_t = 1.0)]
    time: f64,
    #[command(flatten)]
    source: SourceArgs,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Verify the circuit unitary against the dense evaluation
    #[arg(long)]
    check: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentName {
    /// Single-step error against the step size
    TimeScaling,
    /// Error against total exponential count
    Cost,
    /// Guaranteed versus empirical step counts
    BoundTightness,
    /// Exponential-count bound along the Ising chain family
    IsingBound,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Which experiment to run
    #[arg(value_enum)]
    name: ExperimentName,
    /// Tolerance override (ising-bound; grid top for bound-tightness)
    #[arg(long)]
    epsilon: Option<f64>,
    /// Order override (bound-tightness only)
    #[arg(long)]
    order: Option<u32>,
    #[command(flatten)]
    source: SourceArgs,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also emit an SVG chart next to each CSV
    #[arg(long)]
    plots: bool,
}

enum CliError {
    Usage(String),
    Core(prodform::Error),
    Read { path: PathBuf, err: std::io::Error },
    Write { path: PathBuf, err: std::io::Error },
    SelfCheck(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Read { path, err } => write!(f, "cannot read {}: {err}", path.display()),
            CliError::Write { path, err } => write!(f, "cannot write {}: {err}", path.display()),
            CliError::SelfCheck(msg) => write!(f, "self-check failed: {msg}"),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } => EXIT_INPUT,
            CliError::Write { .. } => EXIT_WRITE,
            CliError::SelfCheck(_) => EXIT_SELF_CHECK,
            CliError::Core(e) => match e {
                prodform::Error::Parse { .. } | prodform::Error::EmptyHamiltonian => EXIT_INPUT,
                prodform::Error::InvalidOrder(_) => EXIT_ORDER,
                prodform::Error::DenseCap { .. } | prodform::Error::WidthCap { .. } => EXIT_CAP,
                _ => EXIT_DOMAIN,
            },
        }
    }
}

impl From<prodform::Error> for CliError {
    fn from(e: prodform::Error) -> Self {
        CliError::Core(e)
    }
}

/// Where the terms come from: the built-in split pair (evolved with real
/// exponentials) or a Pauli Hamiltonian (evolved with -i).
enum Source {
    Abc,
    Pauli(PauliHamiltonian),
}

impl Source {
    fn load(args: &SourceArgs) -> Result<Option<Source>, CliError> {
        match (&args.hamiltonian, &args.builtin) {
            (Some(_), Some(_)) => Err(CliError::Usage(
                "--hamiltonian and --builtin are mutually exclusive".into(),
            )),
            (Some(path), None) => {
                let text = fs::read_to_string(path).map_err(|err| CliError::Read {
                    path: path.clone(),
                    err,
                })?;
                Ok(Some(Source::Pauli(PauliHamiltonian::from_text(&text)?)))
            }
            (None, Some(name)) => Ok(Some(Self::parse_builtin(name)?)),
            (None, None) => Ok(None),
        }
    }

    fn parse_builtin(name: &str) -> Result<Source, CliError> {
        if name == "abc" {
            return Ok(Source::Abc);
        }
        let (kind, count) = name.split_once(':').ok_or_else(|| {
            CliError::Usage(format!(
                "unknown builtin `{name}` (expected abc, ising:<n> or heisenberg:<n>)"
            ))
        })?;
        let n: usize = count.parse().map_err(|_| {
            CliError::Usage(format!("invalid qubit count `{count}` in builtin `{name}`"))
        })?;
        match kind {
            "ising" => Ok(Source::Pauli(PauliHamiltonian::ising_1d(n, 1.0, 1.0)?)),
            "heisenberg" => Ok(Source::Pauli(PauliHamiltonian::heisenberg_1d(n, 1.0)?)),
            _ => Err(CliError::Usage(format!(
                "unknown builtin `{kind}` (expected abc, ising:<n> or heisenberg:<n>)"
            ))),
        }
    }

    fn term_list(&self) -> Result<(TermList, EvolutionMode), CliError> {
        match self {
            Source::Abc => Ok((fixtures::abc().term_list(), EvolutionMode::Real)),
            Source::Pauli(h) => Ok((h.realize()?, EvolutionMode::Imaginary)),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Schedule(args) => run_schedule(args),
        Command::Evolve(args) => run_evolve(args),
        Command::Compile(args) => run_compile(args),
        Command::Experiment(args) => run_experiment(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|err| CliError::Write {
        path: dir.to_path_buf(),
        err,
    })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|err| CliError::Write {
        path: path.clone(),
        err,
    })?;
    Ok(path)
}

fn require_steps(steps: u64) -> Result<(), CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    Ok(())
}

fn require_time(t: f64) -> Result<(), CliError> {
    if !t.is_finite() {
        return Err(CliError::Usage(format!("--time must be finite, got {t}")));
    }
    Ok(())
}

fn run_schedule(args: ScheduleArgs) -> Result<(), CliError> {
    let term_count = match (args.terms, Source::load(&args.source)?) {
        (Some(l), _) => l,
        (None, Some(Source::Pauli(h))) => h.term_count(),
        (None, Some(Source::Abc)) => 2,
        (None, None) => {
            return Err(CliError::Usage(
                "schedule needs --terms, --hamiltonian or --builtin".into(),
            ))
        }
    };
    let schedule = Schedule::suzuki(args.order, term_count)?;
    let path = write_file(&args.out, "schedule.csv", &schedule.to_csv())?;
    println!(
        "schedule: order {} over {} terms, {} factors -> {}",
        args.order,
        term_count,
        schedule.len(),
        path.display()
    );
    Ok(())
}

fn run_evolve(args: EvolveArgs) -> Result<(), CliError> {
    require_steps(args.steps)?;
    require_time(args.time)?;
    let source = Source::load(&args.source)?.ok_or_else(|| {
        CliError::Usage("evolve needs --hamiltonian or --builtin".into())
    })?;
    let (terms, mode) = source.term_list()?;
    let schedule = Schedule::suzuki(args.order, terms.len())?;
    let evolved = repeat_evaluate(&schedule, &terms, args.time, args.steps, mode)?;

    let z = match mode {
        EvolutionMode::Real => Complex64::new(args.time, 0.0),
        EvolutionMode::Imaginary => Complex64::new(0.0, -args.time),
    };
    let exact = terms.sum().scaled(z).expm()?;
    let err = evolved.spectral_distance(&exact);

    let mut csv = String::from("row,col,re,im\n");
    for i in 0..evolved.dim() {
        for j in 0..evolved.dim() {
            let z = evolved.get(i, j);
            csv.push_str(&format!("{i},{j},{},{}\n", sig17(z.re), sig17(z.im)));
        }
    }
    let path = write_file(&args.out, "unitary.csv", &csv)?;
    println!(
        "evolve: order {} steps {} time {} dim {} -> {}",
        args.order,
        args.steps,
        args.time,
        evolved.dim(),
        path.display()
    );
    println!("error vs exact: {}", sig17(err));
    Ok(())
}

fn run_compile(args: CompileArgs) -> Result<(), CliError> {
    require_steps(args.steps)?;
    require_time(args.time)?;
    let source = Source::load(&args.source)?.ok_or_else(|| {
        CliError::Usage("compile needs --hamiltonian or --builtin".into())
    })?;
    let h = match source {
        Source::Pauli(h) => h,
        Source::Abc => {
            return Err(CliError::Usage(
                "builtin `abc` is a dense matrix pair, not a Pauli-string Hamiltonian".into(),
            ))
        }
    };
    let circuit = compile_trotter(&h, args.time, args.steps, args.order)?;
    let path = write_file(&args.out, "circuit.txt", &circuit.to_text())?;
    let counts = circuit.gate_counts();
    println!(
        "compile: {} qubits, {} gates (H {}, RZ {}, CNOT {}, S {}) -> {}",
        h.n(),
        counts.total(),
        counts.had,
        counts.rz,
        counts.cnot,
        counts.phase,
        path.display()
    );
    if args.check {
        let dense = repeat_evaluate(
            &Schedule::suzuki(args.order, h.term_count())?,
            &h.realize()?,
            args.time,
            args.steps,
            EvolutionMode::Imaginary,
        )?;
        let deviation = circuit.unitary()?.spectral_distance(&dense);
        println!("check: max deviation {}", sig17(deviation));
        if deviation > CHECK_TOL {
            return Err(CliError::SelfCheck(format!(
                "circuit deviates from dense evaluation by {deviation:.3e} (tolerance {CHECK_TOL:.0e})"
            )));
        }
    }
    Ok(())
}

fn run_experiment(args: ExperimentArgs) -> Result<(), CliError> {
    if let Some(eps) = args.epsilon {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(CliError::Usage(format!(
                "--epsilon must be positive, got {eps}"
            )));
        }
    }
    let source = Source::load(&args.source)?;
    match args.name {
        ExperimentName::TimeScaling => {
            let (terms, mode) = source.unwrap_or(Source::Abc).term_list()?;
            let grid = ExperimentGrid::log_spaced(1e-2, 1e-1, 10)?;
            let table = error_vs_time(&terms, &terms.sum(), &[2, 4, 6], &grid, mode)?;
            let path = write_file(&args.out, "time_scaling.csv", &table.to_csv())?;
            println!("time-scaling: {} rows -> {}", table.rows.len(), path.display());
            for (order, fit) in &table.fits {
                match fit {
                    Some(f) => println!(
                        "fit: order {order} slope {:.6} r_squared {:.6}",
                        f.slope, f.r_squared
                    ),
                    None => println!("fit: order {order} skipped (errors at noise floor)"),
                }
            }
            if args.plots {
                let series: Vec<plot::Series> = [2u32, 4, 6]
                    .iter()
                    .map(|&order| plot::Series {
                        label: format!("order {order}"),
                        points: table
                            .rows
                            .iter()
                            .filter(|r| r.order == order)
                            .map(|r| (r.t, r.rel_error))
                            .collect(),
                    })
                    .collect();
                let svg = plot::loglog_chart(
                    "Single-step error vs step size",
                    "t",
                    "relative error",
                    &series,
                );
                write_file(&args.out, "time_scaling.svg", &svg)?;
            }
        }
        ExperimentName::Cost => {
            let (terms, mode) = source.unwrap_or(Source::Abc).term_list()?;
            let settings = [(2u32, 100000u64), (4, 1700), (6, 120), (8, 20)];
            let table = error_vs_cost(&terms, &settings, 1.0, mode)?;
            let path = write_file(&args.out, "cost.csv", &table.to_csv())?;
            println!("cost: {} rows -> {}", table.rows.len(), path.display());
            if args.plots {
                let series: Vec<plot::Series> = settings
                    .iter()
                    .map(|&(order, _)| plot::Series {
                        label: format!("order {order}"),
                        points: table
                            .rows
                            .iter()
                            .filter(|r| r.order == order)
                            .map(|r| (r.cost as f64, r.rel_error))
                            .collect(),
                    })
                    .collect();
                let svg = plot::loglog_chart(
                    "Error vs computational cost",
                    "exponential count",
                    "relative error",
                    &series,
                );
                write_file(&args.out, "cost.svg", &svg)?;
            }
        }
        ExperimentName::BoundTightness => {
            let (terms, mode) = source.unwrap_or(Source::Abc).term_list()?;
            let order = args.order.unwrap_or(4);
            let (lo, hi) = match args.epsilon {
                Some(eps) => (eps * 1e-3, eps),
                None => (1e-6, 1e-3),
            };
            let grid = ExperimentGrid::log_spaced(lo, hi, 10)?;
            let table = theory_vs_empirical(&terms, order, &grid, mode)?;
            let path = write_file(&args.out, "bound_tightness.csv", &table.to_csv())?;
            println!(
                "bound-tightness: {} rows -> {}",
                table.rows.len(),
                path.display()
            );
            match table.min_looseness_ratio() {
                Some(ratio) => println!("min looseness ratio m_theory/m_empirical: {ratio:.2}"),
                None => println!("empirical search never converged under the cap"),
            }
            if args.plots {
                let series = vec![
                    plot::Series {
                        label: "m_theory".into(),
                        points: table
                            .rows
                            .iter()
                            .map(|r| (r.epsilon, r.m_theory as f64))
                            .collect(),
                    },
                    plot::Series {
                        label: "m_empirical".into(),
                        points: table
                            .rows
                            .iter()
                            .filter_map(|r| r.m_empirical.map(|m| (r.epsilon, m as f64)))
                            .collect(),
                    },
                ];
                let svg = plot::loglog_chart(
                    "Guaranteed vs empirical step counts",
                    "tolerance",
                    "steps m",
                    &series,
                );
                write_file(&args.out, "bound_tightness.svg", &svg)?;
            }
        }
        ExperimentName::IsingBound => {
            if args.source.hamiltonian.is_some() || args.source.builtin.is_some() {
                return Err(CliError::Usage(
                    "ising-bound uses the built-in chain family; drop --hamiltonian/--builtin"
                        .into(),
                ));
            }
            let eps = args.epsilon.unwrap_or(1e-3);
            let table = ising_bound_curve(2..=50, eps)?;
            let path = write_file(&args.out, "ising_bound.csv", &table.to_csv())?;
            println!("ising-bound: {} rows -> {}", table.rows.len(), path.display());
            if args.plots {
                let series = vec![plot::Series {
                    label: "exponential-count bound".into(),
                    points: table
                        .rows
                        .iter()
                        .map(|r| (r.n as f64, r.bound))
                        .collect(),
                }];
                let svg = plot::loglog_chart(
                    "Exponential-count bound vs chain length",
                    "n",
                    "bound",
                    &series,
                );
                write_file(&args.out, "ising_bound.svg", &svg)?;
            }
        }
    }
    Ok(())
}
