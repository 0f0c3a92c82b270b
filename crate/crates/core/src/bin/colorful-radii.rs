use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use colorful_radii::bench::{bench_dir, BenchConfig};
use colorful_radii::generate::{generate, GeneratorMode, GeneratorSpec};
use colorful_radii::io::SolutionFile;
use colorful_radii::oracle::verify_ratio;
use colorful_radii::report::{run, Algorithm, RunConfig};
use colorful_radii::search::DEFAULT_NODE_BUDGET;
use colorful_radii::{verify_solution, Instance};

#[derive(Parser)]
#[command(name = "colorful-radii", version, about = "Colorful sum-of-radii clustering")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random instance file.
    Gen(GenArgs),
    /// Solve an instance and print a JSON-lines report.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Benchmark solvers over a directory of instances (CSV).
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Uniform,
    Planted,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    omega: usize,
    #[arg(long)]
    k: usize,
    /// Outlier budgets, comma separated, one per class.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, value_enum, default_value_t = Mode::Uniform)]
    mode: Mode,
    /// Planted cluster count (default: k).
    #[arg(long)]
    clusters: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    spread: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Cover2,
    Sor7,
    Oracle,
    KcenterExact,
    KcenterGreedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum KCenterArg {
    Exact,
    Greedy,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgoArg::Sor7)]
    algo: AlgoArg,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Colorful k-center subroutine for sor7.
    #[arg(long, value_enum, default_value_t = KCenterArg::Exact)]
    kcenter: KCenterArg,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Also solve exactly and report the ratio.
    #[arg(long)]
    against_oracle: bool,
    /// Recorded in the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the solution file here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the triangle-inequality check on explicit matrices.
    #[arg(long)]
    no_triangle_check: bool,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    solution: PathBuf,
    /// Also compare with the exact optimum.
    #[arg(long)]
    against_oracle: bool,
    /// Ratio bound used with --against-oracle.
    #[arg(long, default_value_t = 1.0)]
    bound: f64,
    #[arg(long)]
    no_triangle_check: bool,
}

#[derive(Args)]
struct BenchArgs {
    corpus: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "cover2,sor7-exact,oracle")]
    algos: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    epsilon: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Skip the oracle and report costs only.
    #[arg(long)]
    no_oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_triangle_check: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("COLORFUL_RADII_LOG", "warn")).init();
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("configuring thread pool")?;
    }
    match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Bench(a) => cmd_bench(a),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    let mut text = text.to_owned();
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn cmd_gen(a: GenArgs) -> anyhow::Result<ExitCode> {
    let mode = match a.mode {
        Mode::Uniform => GeneratorMode::Uniform,
        Mode::Planted => GeneratorMode::Planted { clusters: a.clusters.unwrap_or(a.k), spread: a.spread },
    };
    let spec = GeneratorSpec { n: a.n, omega: a.omega, k: a.k, m: a.m, dim: a.dim, mode, seed: a.seed };
    let inst = generate(&spec)?;
    log::info!("generated n = {} digest {}", inst.n(), inst.digest());
    emit(a.out.as_ref(), &inst.to_json_string())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(a: SolveArgs) -> anyhow::Result<ExitCode> {
    let inst = Instance::load(&a.instance, !a.no_triangle_check)
        .with_context(|| format!("loading {}", a.instance.display()))?;
    let algorithm = match (a.algo, a.kcenter) {
        (AlgoArg::Cover2, _) => Algorithm::Cover2,
        (AlgoArg::Sor7, KCenterArg::Exact) => Algorithm::Sor7Exact,
        (AlgoArg::Sor7, KCenterArg::Greedy) => Algorithm::Sor7Greedy,
        (AlgoArg::Oracle, _) => Algorithm::Oracle,
        (AlgoArg::KcenterExact, _) => Algorithm::KcenterExact,
        (AlgoArg::KcenterGreedy, _) => Algorithm::KcenterGreedy,
    };
    let mut cfg = RunConfig::new(algorithm, a.epsilon);
    cfg.node_budget = a.node_budget;
    cfg.against_oracle = a.against_oracle;
    cfg.seed = a.seed;
    let (solution, report) = run(&inst, &cfg)?;
    if !report.feasible {
        bail!("solver output failed verification: {:?}", report.violations);
    }
    if let Some(p) = &a.out {
        fs::write(p, SolutionFile::from_solution(&solution).to_json_string())
            .with_context(|| format!("writing {}", p.display()))?;
    }
    emit(None, &report.to_json_line())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    let inst = Instance::load(&a.instance, !a.no_triangle_check)
        .with_context(|| format!("loading {}", a.instance.display()))?;
    let sol = SolutionFile::load(&a.solution)
        .with_context(|| format!("loading {}", a.solution.display()))?
        .into_solution(&inst);
    let report = verify_solution(&inst, &sol);
    emit(None, &serde_json::to_string(&report)?)?;
    let mut ok = report.feasible;
    if a.against_oracle {
        let ratio = verify_ratio(&inst, &sol, a.bound)?;
        emit(None, &serde_json::to_string(&ratio)?)?;
        ok &= ratio.pass;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_bench(a: BenchArgs) -> anyhow::Result<ExitCode> {
    let algorithms = a.algos.iter().map(|s| s.parse()).collect::<Result<Vec<Algorithm>, _>>()?;
    let cfg = BenchConfig {
        algorithms,
        epsilons: a.epsilon,
        node_budget: a.node_budget,
        with_oracle: !a.no_oracle,
        check_triangle: !a.no_triangle_check,
        ..BenchConfig::default()
    };
    let summary = bench_dir(&a.corpus, &cfg)?;
    for (path, err) in &summary.parse_errors {
        eprintln!("skipping {}: {err}", path.display());
    }
    emit(a.out.as_ref(), &summary.to_csv_string())?;
    let violations = summary.violations();
    if violations > 0 {
        eprintln!("{violations} row(s) violate their guarantee");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
