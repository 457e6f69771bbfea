//! `skp`: solve, sweep, verify and generate submodular knapsack instances.
//!
//! Exit codes: 0 success (optimal / verified), 1 input error, 2 a time or
//! node limit was hit, 3 verification found a disagreement.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info, warn};
use skp_core::instances::{
    generate_random_instance, load_instance, GeneratorParams, ProblemKind, WeightScheme,
};
use skp_core::report::{csv_header, emit_report, Format, RunRecord};
use skp_core::solver::{standard_configs, verify, BRUTE_FORCE_LIMIT};
use skp_core::{solve, BoundKind, Branching, Instance, SolveStatus, SolverConfig};

const EXIT_INPUT: u8 = 1;
const EXIT_LIMIT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "skp",
    version,
    about = "Exact solver for monotone submodular knapsack problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a report.
    Solve {
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Override the file's budget.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Solve once per integer budget in `w-from..=w-to`, printing CSV.
    Sweep {
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        w_from: i64,
        #[arg(long)]
        w_to: i64,
        /// Stop after the first budget that hits a limit.
        #[arg(long)]
        early_stop: bool,
    },
    /// Compare every bound and branching combination against brute force.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
    },
    /// Write a random instance file.
    Generate {
        #[arg(long, value_parser = parse_kind)]
        kind: ProblemKind,
        #[arg(long)]
        n: usize,
        /// Items (COV), targets (INF) or customers (LOC); unused for DOM.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Membership or edge probability.
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        #[arg(long, value_parser = parse_scheme, default_value = "normal")]
        scheme: WeightScheme,
        #[arg(long)]
        budget: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_parser = parse_bound, default_value = "rs")]
    bound: BoundKind,
    #[arg(long = "branch", value_enum, default_value_t = BranchArg::Dual)]
    branching: BranchArg,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Seconds.
    #[arg(long, default_value_t = 1800.0)]
    time_limit: f64,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Force the greedy primal heuristic on (it is off by default for k and fk).
    #[arg(long, conflicts_with = "no_primal")]
    primal: bool,
    #[arg(long)]
    no_primal: bool,
    #[arg(long)]
    no_lazy: bool,
    #[arg(long)]
    no_reduce: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Basic,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    CsvRow,
}

fn parse_bound(s: &str) -> Result<BoundKind, String> {
    s.parse().map_err(|e: skp_core::SkpError| e.to_string())
}

fn parse_kind(s: &str) -> Result<ProblemKind, String> {
    s.parse().map_err(|e: skp_core::SkpError| e.to_string())
}

fn parse_scheme(s: &str) -> Result<WeightScheme, String> {
    s.parse().map_err(|e: skp_core::SkpError| e.to_string())
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        let branching = match self.branching {
            BranchArg::Basic => Branching::Basic,
            BranchArg::Dual => Branching::Dual,
        };
        if !(self.time_limit >= 0.0 && self.time_limit.is_finite()) {
            bail!("--time-limit must be a non-negative number of seconds");
        }
        let mut config = SolverConfig::new(self.bound, branching)
            .with_time_limit(Duration::from_secs_f64(self.time_limit));
        config.epsilon = self.epsilon;
        config.node_limit = self.node_limit;
        if self.primal {
            config.primal_heuristic = true;
        }
        if self.no_primal {
            config.primal_heuristic = false;
        }
        config.lazy_update = !self.no_lazy;
        config.reductions = !self.no_reduce;
        config.validate()?;
        Ok(config)
    }
}

fn load(path: &PathBuf) -> Result<Instance> {
    load_instance(path).with_context(|| format!("cannot load {}", path.display()))
}

fn run_one(instance: &Instance, config: &SolverConfig) -> Result<RunRecord> {
    info!(
        "solving {} elements, W = {}, config {}",
        instance.len(),
        instance.budget(),
        config.label()
    );
    let report = solve(instance, config)?;
    debug!(
        "{} nodes, {} oracle calls",
        report.nodes_visited, report.oracle_calls
    );
    Ok(RunRecord::new(instance, config, &report))
}

fn cmd_solve(solver: &SolverArgs, format: OutputFormat, budget: Option<f64>) -> Result<u8> {
    let config = solver.config()?;
    let mut instance = load(&solver.instance)?;
    if let Some(w) = budget {
        instance = instance.with_budget(w)?;
    }
    let record = run_one(&instance, &config)?;
    let format = match format {
        OutputFormat::Json => Format::Json,
        OutputFormat::CsvRow => Format::CsvRow,
    };
    println!("{}", emit_report(&record, format));
    Ok(if record.status == SolveStatus::Optimal {
        0
    } else {
        EXIT_LIMIT
    })
}

fn cmd_sweep(solver: &SolverArgs, from: i64, to: i64, early_stop: bool) -> Result<u8> {
    let config = solver.config()?;
    let instance = load(&solver.instance)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{}", csv_header())?;
    let mut code = 0;
    for w in from..=to {
        let record = run_one(&instance.with_budget(w as f64)?, &config)?;
        writeln!(out, "{}", emit_report(&record, Format::CsvRow))?;
        out.flush()?;
        if record.status != SolveStatus::Optimal {
            code = EXIT_LIMIT;
            if early_stop {
                warn!("W = {w} hit a limit, stopping");
                break;
            }
        }
    }
    Ok(code)
}

fn cmd_verify(path: &PathBuf, epsilon: f64) -> Result<u8> {
    let instance = load(path)?;
    if instance.len() > BRUTE_FORCE_LIMIT {
        bail!(
            "{} elements is too many to enumerate (limit {BRUTE_FORCE_LIMIT})",
            instance.len()
        );
    }
    let configs = standard_configs(epsilon);
    for c in &configs {
        c.validate()?;
    }
    let v = verify(&instance, &configs)?;
    println!("brute force: {} {:?}", v.optimum, v.solution);
    let mut agree = 0;
    for (config, report) in &v.runs {
        let ok = v.agrees(report);
        agree += usize::from(ok);
        println!(
            "{:<9} {:<8} {:<10} {}",
            config.label(),
            if ok { "agree" } else { "DISAGREE" },
            report.status.name(),
            report.optimum
        );
    }
    println!(
        "{}: {agree}/{} agree at {}",
        if v.passed() { "pass" } else { "fail" },
        v.runs.len(),
        v.optimum
    );
    Ok(if v.passed() { 0 } else { EXIT_MISMATCH })
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    kind: ProblemKind,
    n: usize,
    m: usize,
    density: f64,
    scheme: WeightScheme,
    budget: f64,
    seed: u64,
    output: Option<&PathBuf>,
) -> Result<u8> {
    if !(0.0..=1.0).contains(&density) {
        bail!("--density must lie in [0, 1]");
    }
    let file = generate_random_instance(
        &GeneratorParams::new(kind, n, m, density, scheme, budget),
        seed,
    );
    file.build()?;
    let text = file.to_text();
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SKP_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Solve {
            solver,
            format,
            budget,
        } => cmd_solve(solver, *format, *budget),
        Command::Sweep {
            solver,
            w_from,
            w_to,
            early_stop,
        } => cmd_sweep(solver, *w_from, *w_to, *early_stop),
        Command::Verify { instance, epsilon } => cmd_verify(instance, *epsilon),
        Command::Generate {
            kind,
            n,
            m,
            density,
            scheme,
            budget,
            seed,
            output,
        } => cmd_generate(
            *kind,
            *n,
            *m,
            *density,
            *scheme,
            *budget,
            *seed,
            output.as_ref(),
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
