//! Command-line interface and CSV formats.
//!
//! Every command is a pure function of its flags and input files. Floating
//! point columns are written in plain decimal notation using the shortest
//! representation that parses back to the same `f64`, so integer-valued
//! squared imbalances appear exactly and files can be re-read losslessly.
//!
//! `results.csv` columns:
//! `model,n,policy,b,p,p_in,p_out,sigma2,replicate,I,I2,I4,two_I_over_n,W,seed`.
//! Inapplicable parameter columns and `W` (when no outcomes are simulated)
//! are empty. For sampled real networks `p` holds the sample's density.
//!
//! `summary.csv` columns:
//! `model,n,policy,mean_two_I_over_n,ci_lower,ci_upper,iqr_lower,iqr_upper,reps`,
//! with a normal-approximation 95% interval and the interquartile range of
//! `2 I / n` over replicates.

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::design::{run_design, run_design_observed, DesignConfig, Policy};
use crate::error::{param, Error, Result};
use crate::graph::{gen_er, EdgeListGraph, ErParams};
use crate::montecarlo::ReductionReport;
use crate::montecarlo::{
    derive_seed, reduction_from_records, run_experiment, summarize, ExperimentSpec, GraphModel, MomentSummary,
    PolicySet, ReplicateRecord, SampleStats,
};
use crate::oracle::{balanced_average, brute_force_min, exact_policy_expectation, MIN_SEARCH_LIMIT, POLICY_TREE_LIMIT};
use crate::outcome::OutcomeParams;

pub const RESULT_HEADER: [&str; 15] = [
    "model",
    "n",
    "policy",
    "b",
    "p",
    "p_in",
    "p_out",
    "sigma2",
    "replicate",
    "I",
    "I2",
    "I4",
    "two_I_over_n",
    "W",
    "seed",
];

pub const SUMMARY_HEADER: [&str; 9] = [
    "model",
    "n",
    "policy",
    "mean_two_I_over_n",
    "ci_lower",
    "ci_upper",
    "iqr_lower",
    "iqr_upper",
    "reps",
];

pub const REDUCTION_HEADER: [&str; 9] = [
    "n",
    "reps",
    "adaptive_mean_I",
    "adaptive_se",
    "random_mean_I",
    "random_se",
    "reduction_pct",
    "zero_random",
    "mean_density",
];

/// Largest cohort `assign` will densify.
pub const ASSIGN_LIMIT: usize = 50_000;

#[derive(Debug, Parser)]
#[command(name = "netrand", version, about = "Adaptive pairwise randomization on networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo sweep over random graph models.
    Simulate(SimulateArgs),
    /// Adaptive against random design on samples of an edge list.
    Real(RealArgs),
    /// Assign treatments to the nodes of an edge list.
    Assign(AssignArgs),
    /// Compare the engine with exhaustive references on a small graph.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Er,
    Sbm,
    Goe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Adaptive,
    Random,
    Both,
}

impl From<PolicyArg> for PolicySet {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Adaptive => PolicySet::Adaptive,
            PolicyArg::Random => PolicySet::Random,
            PolicyArg::Both => PolicySet::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    File,
    Random,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Graph sizes: repeat the flag, separate by commas, or give `start:stop:step`.
    #[arg(long = "n", required = true)]
    pub sizes: Vec<String>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub p_in: Option<f64>,
    #[arg(long)]
    pub p_out: Option<f64>,
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Use `p_n = ln(n) / (c n)` (and `sigma^2 = p_n (1 - p_n)` for goe).
    #[arg(long, value_name = "C")]
    pub sparse_log_density: Option<f64>,
    #[arg(long, default_value_t = 0.95)]
    pub b: f64,
    #[arg(long, value_enum, default_value_t = PolicyArg::Both)]
    pub policy: PolicyArg,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Accept odd sizes; the unpaired last subject gets a fair coin and is
    /// left out of `I` and `W`.
    #[arg(long)]
    pub allow_odd: bool,
    #[arg(long)]
    pub mu0: Option<f64>,
    #[arg(long)]
    pub mu1: Option<f64>,
    #[arg(long)]
    pub sigma_z: Option<f64>,
    #[arg(long)]
    pub sigma_eps: Option<f64>,
    /// Output directory for results.csv and summary.csv.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RealArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub sample: usize,
    #[arg(long, default_value_t = 0.85)]
    pub b: f64,
    #[arg(long, default_value_t = 20)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample sizes to sweep instead of `--sample`.
    #[arg(long, value_delimiter = ',')]
    pub n_sweep: Vec<usize>,
    /// Output directory for results.csv, summary.csv, reduction.csv and metadata.txt.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AssignArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long, value_enum, default_value_t = OrderArg::File)]
    pub order: OrderArg,
    #[arg(long, default_value_t = 0.85)]
    pub b: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Er)]
    pub model: ModelArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Biasing probability; 0.5 selects the random design.
    #[arg(long, default_value_t = 0.95)]
    pub b: f64,
    /// Engine runs for the Monte Carlo estimate.
    #[arg(long, default_value_t = 100_000)]
    pub runs: usize,
}

/// Process exit code for an error: 2 for usage and parameter errors,
/// 1 for everything else.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parameter(_) | Error::TooLarge { .. } => 2,
        _ => 1,
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Real(args) => cmd_real(&args),
        Command::Assign(args) => cmd_assign(&args, stdout),
        Command::Oracle(args) => cmd_oracle(&args, stdout),
    }
}

/// Parses `--n` values: plain sizes, comma lists and `start:stop:step`
/// ranges (inclusive of `stop`).
pub fn parse_sizes(values: &[String]) -> Result<Vec<usize>> {
    let number = |s: &str| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| param(format!("invalid size {s:?}")))
    };
    let mut sizes = Vec::new();
    for value in values {
        for part in value.split(',').filter(|s| !s.trim().is_empty()) {
            let bounds: Vec<&str> = part.split(':').collect();
            match bounds.as_slice() {
                [one] => sizes.push(number(one)?),
                [start, stop, step] => {
                    let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
                    if step == 0 || start > stop {
                        return Err(param(format!("invalid range {part:?}")));
                    }
                    sizes.extend((start..=stop).step_by(step));
                }
                _ => return Err(param(format!("invalid size {part:?}"))),
            }
        }
    }
    if sizes.is_empty() {
        return Err(param("no sizes given"));
    }
    Ok(sizes)
}

fn resolve_model(args: &SimulateArgs) -> Result<GraphModel> {
    fn given(name: &'static str, v: Option<f64>) -> Option<&'static str> {
        v.map(|_| name)
    }
    let stray = |names: &[Option<&str>]| -> Result<()> {
        let extra: Vec<&str> = names.iter().flatten().copied().collect();
        if extra.is_empty() {
            Ok(())
        } else {
            Err(param(format!(
                "flags {extra:?} do not apply to --model {:?}",
                args.model
            )))
        }
    };
    match args.model {
        ModelArg::Er => {
            stray(&[
                given("--p-in", args.p_in),
                given("--p-out", args.p_out),
                given("--sigma2", args.sigma2),
            ])?;
            match (args.p, args.sparse_log_density) {
                (Some(p), None) => Ok(GraphModel::Er { p }),
                (None, Some(c)) => Ok(GraphModel::SparseEr { c }),
                (Some(_), Some(_)) => Err(param("--p conflicts with --sparse-log-density")),
                (None, None) => Err(param("--model er needs --p or --sparse-log-density")),
            }
        }
        ModelArg::Sbm => {
            stray(&[
                given("--p", args.p),
                given("--sigma2", args.sigma2),
                given("--sparse-log-density", args.sparse_log_density),
            ])?;
            match (args.p_in, args.p_out) {
                (Some(p_in), Some(p_out)) => Ok(GraphModel::Sbm { p_in, p_out }),
                _ => Err(param("--model sbm needs --p-in and --p-out")),
            }
        }
        ModelArg::Goe => {
            stray(&[
                given("--p", args.p),
                given("--p-in", args.p_in),
                given("--p-out", args.p_out),
            ])?;
            match (args.sigma2, args.sparse_log_density) {
                (Some(sigma2), None) => Ok(GraphModel::Goe { sigma2 }),
                (None, Some(c)) => Ok(GraphModel::SparseGoe { c }),
                (Some(_), Some(_)) => Err(param("--sigma2 conflicts with --sparse-log-density")),
                (None, None) => Err(param("--model goe needs --sigma2 or --sparse-log-density")),
            }
        }
    }
}

fn resolve_outcome(args: &SimulateArgs) -> Result<Option<OutcomeParams>> {
    if args.mu0.is_none() && args.mu1.is_none() && args.sigma_z.is_none() && args.sigma_eps.is_none() {
        return Ok(None);
    }
    OutcomeParams::new(
        args.mu0.unwrap_or(0.0),
        args.mu1.unwrap_or(0.0),
        args.sigma_z.unwrap_or(1.0),
        args.sigma_eps.unwrap_or(1.0),
    )
    .map(Some)
}

pub fn simulate_spec(args: &SimulateArgs) -> Result<ExperimentSpec> {
    let model = resolve_model(args)?;
    let mut spec = ExperimentSpec::new(
        model,
        parse_sizes(&args.sizes)?,
        args.policy.into(),
        args.b,
        args.reps,
        args.seed,
    );
    spec.outcome = resolve_outcome(args)?;
    spec.allow_odd = args.allow_odd;
    spec.validate()?;
    Ok(spec)
}

fn create_out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let spec = simulate_spec(args)?;
    let records = run_experiment(&spec)?;
    create_out_dir(&args.out)?;
    write_file(&args.out.join("results.csv"), |w| write_results(&records, w))?;
    write_file(&args.out.join("summary.csv"), |w| {
        write_summaries(&summarize(&records), w)
    })?;
    Ok(())
}

pub fn cmd_real(args: &RealArgs) -> Result<()> {
    let graph = Arc::new(EdgeListGraph::read_file(&args.edges)?);
    let sizes = if args.n_sweep.is_empty() {
        vec![args.sample]
    } else {
        args.n_sweep.clone()
    };
    let mut spec = ExperimentSpec::new(
        GraphModel::Real { graph: graph.clone() },
        sizes.clone(),
        PolicySet::Both,
        args.b,
        args.reps,
        args.seed,
    );
    spec.allow_odd = true;
    let records = run_experiment(&spec)?;
    let reports: Vec<ReductionReport> = sizes
        .iter()
        .filter_map(|&n| reduction_from_records(&records, n))
        .collect();

    create_out_dir(&args.out)?;
    write_file(&args.out.join("results.csv"), |w| write_results(&records, w))?;
    write_file(&args.out.join("summary.csv"), |w| {
        write_summaries(&summarize(&records), w)
    })?;
    write_file(&args.out.join("reduction.csv"), |w| write_reductions(&reports, w))?;
    write_file(&args.out.join("metadata.txt"), |w| {
        writeln!(w, "edges={}", args.edges.display())?;
        writeln!(w, "nodes={}", graph.n())?;
        writeln!(w, "edge_count={}", graph.edge_count())?;
        writeln!(w, "density={}", graph.density()?)?;
        writeln!(w, "b={}", args.b)?;
        writeln!(w, "reps={}", args.reps)?;
        writeln!(w, "seed={}", args.seed)?;
        writeln!(
            w,
            "sampling=uniform node-induced, drawn independently for every replicate and size"
        )?;
        writeln!(w, "arrival_order=uniform random permutation of the sampled nodes")?;
        writeln!(w, "p_column=density of each sample")?;
        writeln!(w, "odd_sizes=I reported as I_(n-1)")?;
        Ok(())
    })?;
    Ok(())
}

pub fn cmd_assign(args: &AssignArgs, stdout: &mut dyn Write) -> Result<()> {
    let edges = EdgeListGraph::read_file(&args.edges)?;
    if edges.n() > ASSIGN_LIMIT {
        return Err(param(format!(
            "cohort of {} nodes exceeds the assign limit of {ASSIGN_LIMIT}",
            edges.n()
        )));
    }
    if edges.n() < 2 {
        return Err(param("cohort needs at least two nodes"));
    }
    let cfg = DesignConfig::adaptive(args.b, derive_seed(args.seed, &[1]))?;
    let (graph, order) = match args.order {
        OrderArg::File => (edges.to_graph(), (0..edges.n()).collect::<Vec<_>>()),
        OrderArg::Random => edges.induced_subgraph_sample(edges.n(), derive_seed(args.seed, &[0]))?,
    };
    let run = run_design(&graph, &cfg)?;
    let mut body = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut body);
        w.write_record(["index", "node_id", "treatment", "running_I"])?;
        let trajectory = run.trajectory();
        for (i, t) in run.signs.treatments().iter().enumerate() {
            let running = trajectory[(i / 2).min(trajectory.len() - 1)];
            w.write_record([
                i.to_string(),
                edges.ids()[order[i]].clone(),
                t.to_string(),
                running.to_string(),
            ])?;
        }
        w.flush()?;
    }
    match &args.out {
        Some(path) => fs::write(path, &body)?,
        None => stdout.write_all(&body)?,
    }
    Ok(())
}

/// Outcome of the oracle consistency checks.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub min_squared: i64,
    pub argmin_count: usize,
    pub exact: Option<f64>,
    pub balanced_average: f64,
    pub engine: SampleStats,
    pub engine_min: f64,
    pub lower_bound_holds: bool,
    pub engine_matches_exact: Option<bool>,
}

pub fn oracle_report(args: &OracleArgs) -> Result<OracleReport> {
    if args.model != ModelArg::Er {
        return Err(param("oracle supports --model er only"));
    }
    if args.runs < 2 {
        return Err(param("--runs must be at least 2"));
    }
    if args.n > MIN_SEARCH_LIMIT {
        return Err(Error::TooLarge {
            n: args.n,
            limit: MIN_SEARCH_LIMIT,
        });
    }
    if args.n < 2 || args.n % 2 == 1 {
        return Err(param(format!("--n must be even and at least 2, got {}", args.n)));
    }
    let graph = gen_er(ErParams::new(args.n, args.p)?, args.seed)?;
    let g = graph.as_binary().expect("Erdős–Rényi graphs are binary");
    let min = brute_force_min(g)?;
    let cfg = if args.b == 0.5 {
        DesignConfig::random(0)
    } else {
        DesignConfig::adaptive(args.b, 0)?
    };
    let exact = if args.n <= POLICY_TREE_LIMIT {
        Some(exact_policy_expectation(g, &cfg)?.expected_squared)
    } else {
        None
    };
    let finals = (0..args.runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(args.seed, &[1, r as u64]));
            run_design_observed(g, &cfg, &mut rng, |_| {}).map(|run| run.reported_squared as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let engine = SampleStats::from_values(&finals).expect("runs >= 2");
    let engine_min = finals.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(OracleReport {
        min_squared: min.min_squared,
        argmin_count: min.argmin_count,
        exact,
        balanced_average: balanced_average(g)?,
        engine,
        engine_min,
        lower_bound_holds: engine_min >= min.min_squared as f64,
        engine_matches_exact: exact.map(|e| (engine.mean - e).abs() <= 3.0 * engine.std_error.max(1e-12)),
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<()> {
    let r = oracle_report(args)?;
    writeln!(out, "graph: er n={} p={} seed={}", args.n, args.p, args.seed)?;
    writeln!(
        out,
        "brute_force_min_I2: {} ({} minimizers)",
        r.min_squared, r.argmin_count
    )?;
    match r.exact {
        Some(e) => writeln!(out, "exact_expected_I2: {e}")?,
        None => writeln!(out, "exact_expected_I2: skipped (n > {POLICY_TREE_LIMIT})")?,
    }
    writeln!(out, "balanced_average_I2: {}", r.balanced_average)?;
    writeln!(
        out,
        "engine_mean_I2: {} (se {}, {} runs, b={})",
        r.engine.mean, r.engine.std_error, r.engine.count, args.b
    )?;
    writeln!(
        out,
        "check engine runs >= brute-force minimum: {}",
        verdict(r.lower_bound_holds)
    )?;
    if let Some(ok) = r.engine_matches_exact {
        writeln!(out, "check engine mean within 3 SE of exact: {}", verdict(ok))?;
    }
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_results(records: &[ReplicateRecord], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_HEADER)?;
    for r in records {
        w.write_record([
            r.model.clone(),
            r.n.to_string(),
            r.policy.to_string(),
            r.bias.to_string(),
            opt(r.params.p),
            opt(r.params.p_in),
            opt(r.params.p_out),
            opt(r.params.sigma2),
            r.replicate.to_string(),
            r.imbalance.to_string(),
            r.squared.to_string(),
            r.fourth.to_string(),
            r.two_i_over_n.to_string(),
            opt(r.estimate),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summaries(summaries: &[MomentSummary], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in summaries {
        let t = &s.two_i_over_n;
        w.write_record([
            s.model.clone(),
            s.n.to_string(),
            s.policy.to_string(),
            t.mean.to_string(),
            t.ci_lower.to_string(),
            t.ci_upper.to_string(),
            t.q1.to_string(),
            t.q3.to_string(),
            s.reps.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_reductions(reports: &[ReductionReport], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REDUCTION_HEADER)?;
    for r in reports {
        w.write_record([
            r.n.to_string(),
            r.reps.to_string(),
            r.adaptive_mean.to_string(),
            r.adaptive_se.to_string(),
            r.random_mean.to_string(),
            r.random_se.to_string(),
            (100.0 * r.reduction).to_string(),
            r.zero_random.to_string(),
            opt(r.mean_density),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a `results.csv` back into records.
pub fn read_results<R: Read>(input: R) -> Result<Vec<ReplicateRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(RESULT_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: "unexpected results header".into(),
        });
    }
    let mut records = Vec::new();
    for (k, row) in reader.records().enumerate() {
        let row = row?;
        let line = k + 2;
        let bad = |what: &str| Error::Parse {
            line,
            message: format!("invalid {what}"),
        };
        let float = |i: usize| -> Result<f64> { row[i].parse().map_err(|_| bad(RESULT_HEADER[i])) };
        let maybe = |i: usize| -> Result<Option<f64>> {
            if row[i].is_empty() {
                Ok(None)
            } else {
                float(i).map(Some)
            }
        };
        let policy = match &row[2] {
            "adaptive" => Policy::Adaptive,
            "random" => Policy::Random,
            _ => return Err(bad("policy")),
        };
        records.push(ReplicateRecord {
            model: row[0].to_owned(),
            n: row[1].parse().map_err(|_| bad("n"))?,
            policy,
            bias: float(3)?,
            params: crate::montecarlo::ModelParams {
                p: maybe(4)?,
                p_in: maybe(5)?,
                p_out: maybe(6)?,
                sigma2: maybe(7)?,
            },
            replicate: row[8].parse().map_err(|_| bad("replicate"))?,
            imbalance: float(9)?,
            squared: float(10)?,
            fourth: float(11)?,
            two_i_over_n: float(12)?,
            estimate: maybe(13)?,
            seed: row[14].parse().map_err(|_| bad("seed"))?,
        });
    }
    Ok(records)
}

/// Entry point shared by the binary: parses `std::env::args` and returns
/// the process exit code.
pub fn main_with_args() -> u8 {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
