use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orp_core::lab::{write_csvs, BenchConfig};
use orp_core::{
    check_unique_bstable, generate, local_search, monte_carlo, optimal_value_range, run_benchmark,
    solve_orp_bstable, solve_superset, vertex_oracle_with, DenseSimplex, GeneratorConfig,
    IlpInstance, InstanceClass, InstanceFile, Method, OracleConfig, OrpError, OutcomeRangeEstimate,
    SearchParams, Target, ValueRange,
};

const LP: DenseSimplex = DenseSimplex::new();

#[derive(Parser, Debug)]
#[command(
    name = "orp",
    version,
    about = "Outcome ranges of linear programs with interval right-hand sides"
)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate the outcome range of an instance file.
    Solve(SolveArgs),
    /// Write a random instance file.
    Generate(GenerateArgs),
    /// Run a benchmark configuration and write records.csv and aggregate.csv.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Superset,
    LocalSearch,
    Oracle,
    MonteCarlo,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Exact => vec![Method::BStableExact],
            MethodArg::Superset => vec![Method::Superset],
            MethodArg::LocalSearch => vec![Method::LocalSearch],
            MethodArg::Oracle => vec![Method::VertexOracle],
            MethodArg::MonteCarlo => vec![Method::MonteCarlo],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Min,
    Max,
    Both,
}

impl TargetArg {
    fn targets(self) -> Vec<Target> {
        match self {
            TargetArg::Min => vec![Target::FLower],
            TargetArg::Max => vec![Target::FUpper],
            TargetArg::Both => vec![Target::FLower, Target::FUpper],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "both")]
    target: TargetArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step fractions for local search, comma separated.
    #[arg(long, value_delimiter = ',')]
    ls_q: Option<Vec<f64>>,
    /// Subset fractions for local search, comma separated.
    #[arg(long, value_delimiter = ',')]
    ls_v: Option<Vec<f64>>,
    #[arg(long)]
    ls_shakes: Option<usize>,
    #[arg(long)]
    ls_threshold: Option<f64>,
    #[arg(long, default_value_t = 100)]
    mc_samples: usize,
    #[arg(long, default_value_t = orp_core::oracle::DEFAULT_FACE_GRID)]
    face_grid: usize,
    /// Also report the optimal value range.
    #[arg(long)]
    value_range: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct GenerateArgs {
    /// Instance class: 1 (uniquely B-stable) or 2 (general).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    class: u8,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    max_rejections: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    config: PathBuf,
    out_dir: PathBuf,
    /// Report every elapsed time as zero so repeated runs produce identical files.
    #[arg(long)]
    deterministic: bool,
}

/// Failure split by exit code: bad input (1) or a solver failure (2).
enum Failure {
    Input(anyhow::Error),
    Solver(anyhow::Error),
}

impl Failure {
    fn from_orp(e: OrpError, context: &str) -> Self {
        let err = anyhow::Error::new(e.clone()).context(context.to_string());
        match e {
            OrpError::DimensionMismatch(_)
            | OrpError::NonFinite(_)
            | OrpError::InvertedInterval { .. }
            | OrpError::NotContained { .. }
            | OrpError::InvalidParams(_)
            | OrpError::Parse(_) => Failure::Input(err),
            _ => Failure::Solver(err),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Solver(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn search_params(args: &SolveArgs) -> SearchParams {
    let mut p = SearchParams::default().with_seed(args.seed);
    if let Some(q) = &args.ls_q {
        p.q = q.clone();
    }
    if let Some(v) = &args.ls_v {
        p.v = v.clone();
    }
    if let Some(s) = args.ls_shakes {
        p.max_shakes = s;
    }
    if let Some(t) = args.ls_threshold {
        p.threshold = t;
    }
    p
}

fn run_method(
    inst: &IlpInstance,
    r: &[f64],
    method: Method,
    targets: &[Target],
    args: &SolveArgs,
) -> Result<Vec<OutcomeRangeEstimate>, OrpError> {
    let both = match method {
        Method::BStableExact => {
            let basis = check_unique_bstable(&LP, inst)?.ok_or(OrpError::NotBStable)?;
            solve_orp_bstable(&LP, inst, r, &basis)?
        }
        Method::Superset => solve_superset(&LP, inst, r)?,
        Method::LocalSearch => {
            let params = search_params(args);
            params.validate(inst.m())?;
            return targets
                .iter()
                .map(|t| local_search(&LP, inst, r, t.sense(), &params))
                .collect();
        }
        Method::VertexOracle => {
            let cfg = OracleConfig {
                face_grid: args.face_grid,
                seed: args.seed,
                ..OracleConfig::default()
            };
            let res = vertex_oracle_with(&LP, inst, r, &cfg)?;
            (res.lower, res.upper)
        }
        Method::MonteCarlo => monte_carlo(&LP, inst, r, args.mc_samples, args.seed)?,
    };
    Ok([both.0, both.1]
        .into_iter()
        .filter(|e| targets.contains(&e.target))
        .collect())
}

fn num(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v}")
    }
}

fn json_num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(num(v))
    }
}

fn witness_str(e: &OutcomeRangeEstimate) -> String {
    e.witness
        .as_ref()
        .map(|w| {
            w.values()
                .iter()
                .map(|v| num(*v))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn render(
    name: &str,
    value_range: Option<ValueRange>,
    rows: &[(Method, Result<Vec<OutcomeRangeEstimate>, OrpError>)],
    format: Format,
) -> String {
    let mut out = String::new();
    match format {
        Format::Table => {
            writeln!(out, "instance: {name}").unwrap();
            if let Some(vr) = value_range {
                writeln!(out, "value range: [{}, {}]", vr.z_lower, vr.z_upper).unwrap();
            }
            writeln!(
                out,
                "{:<12} {:<8} {:<12} {:>16}  witness",
                "method", "target", "direction", "value"
            )
            .unwrap();
            for (method, res) in rows {
                match res {
                    Ok(ests) => {
                        for e in ests {
                            writeln!(
                                out,
                                "{:<12} {:<8} {:<12} {:>16}  {}",
                                method.as_str(),
                                e.target.as_str(),
                                e.direction.as_str(),
                                num(e.value),
                                witness_str(e)
                            )
                            .unwrap();
                        }
                    }
                    Err(err) => writeln!(out, "{:<12} failed: {err}", method.as_str()).unwrap(),
                }
            }
        }
        Format::Csv => {
            writeln!(
                out,
                "method,target,direction,value,elapsed_seconds,witness,error"
            )
            .unwrap();
            for (method, res) in rows {
                match res {
                    Ok(ests) => {
                        for e in ests {
                            writeln!(
                                out,
                                "{},{},{},{},{},{},",
                                method,
                                e.target,
                                e.direction.as_str(),
                                num(e.value),
                                e.elapsed.as_secs_f64(),
                                witness_str(e)
                            )
                            .unwrap();
                        }
                    }
                    Err(err) => writeln!(
                        out,
                        "{method},,,,,,\"{}\"",
                        err.to_string().replace('"', "'")
                    )
                    .unwrap(),
                }
            }
        }
        Format::Json => {
            let mut estimates = Vec::new();
            let mut errors = Vec::new();
            for (method, res) in rows {
                match res {
                    Ok(ests) => estimates.extend(ests.iter().map(|e| {
                        json!({
                            "method": method.as_str(),
                            "target": e.target.as_str(),
                            "direction": e.direction.as_str(),
                            "value": json_num(e.value),
                            "elapsed_seconds": e.elapsed.as_secs_f64(),
                            "witness": e.witness.as_ref().map(|w| w.values().iter().map(|v| json_num(*v)).collect::<Vec<_>>()),
                        })
                    })),
                    Err(err) => errors.push(json!({"method": method.as_str(), "error": err.to_string()})),
                }
            }
            let mut doc = json!({"instance": name, "estimates": estimates, "errors": errors});
            if let Some(vr) = value_range {
                doc["value_range"] =
                    json!({"z_lower": vr.z_lower.to_string(), "z_upper": vr.z_upper.to_string()});
            }
            out = serde_json::to_string_pretty(&doc).expect("report serializes");
            out.push('\n');
        }
    }
    out
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Failure> {
    let file =
        InstanceFile::read(&args.instance).map_err(|e| Failure::from_orp(e, "reading instance"))?;
    let (inst, r) = file
        .to_instance()
        .map_err(|e| Failure::from_orp(e, "validating instance"))?;
    let name = file
        .name
        .clone()
        .unwrap_or_else(|| args.instance.display().to_string());

    let value_range = if args.value_range {
        Some(optimal_value_range(&LP, &inst).map_err(|e| Failure::from_orp(e, "value range"))?)
    } else {
        None
    };
    let methods = args.method.methods();
    let targets = args.target.targets();
    let rows: Vec<(Method, Result<Vec<OutcomeRangeEstimate>, OrpError>)> = methods
        .iter()
        .map(|&m| (m, run_method(&inst, &r, m, &targets, args)))
        .collect();

    emit(
        &render(&name, value_range, &rows, args.format),
        args.out.as_ref(),
    )?;

    // A single requested method must succeed; with `all` at least one must.
    if rows.iter().all(|(_, res)| res.is_err()) {
        let (method, err) = rows
            .into_iter()
            .find_map(|(m, res)| res.err().map(|e| (m, e)))
            .expect("at least one method ran");
        return Err(Failure::from_orp(err, method.as_str()));
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let class = if args.class == 1 {
        InstanceClass::Class1BStable
    } else {
        InstanceClass::Class2General
    };
    let cfg = GeneratorConfig {
        m: args.m,
        n: args.n,
        delta: args.delta,
        class,
        seed: args.seed,
        max_rejections: args.max_rejections,
    };
    let (inst, r) = generate(&LP, &cfg).map_err(|e| Failure::from_orp(e, "generating instance"))?;
    let name = format!(
        "class{}-m{}-n{}-d{}-s{}",
        args.class, args.m, args.n, args.delta, args.seed
    );
    let text = InstanceFile::from_parts(Some(name), &inst, &r).to_json();
    emit(&text, args.out.as_ref())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))
        .map_err(Failure::Input)?;
    let mut cfg: BenchConfig = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.config.display()))
        .map_err(Failure::Input)?;
    if args.deterministic {
        cfg.record_timing = false;
    }
    let report = run_benchmark(&LP, &cfg).map_err(|e| Failure::from_orp(e, "running benchmark"))?;
    let (records, aggregate) =
        write_csvs(&report, &args.out_dir).map_err(|e| Failure::from_orp(e, "writing reports"))?;
    eprintln!("wrote {} and {}", records.display(), aggregate.display());
    Ok(())
}
