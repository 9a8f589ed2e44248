use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hammer_core::{
    build_spectrum, c_min_with_limit, cost_ratio, ehd, expected_cost, hammer_with, quality_curve,
    sample_noisy, EhdMode, HammerOptions, Improvement, MeritReport, NoiseModel, Outcome,
    DEFAULT_BRUTE_FORCE_LIMIT,
};

use crate::error::{CliError, CliResult};
use crate::io::{check_writable, json_text, read_distribution, read_graph, Outputs};

/// Hamming reconstruction of noisy bitstring distributions.
///
/// Bitstrings are written with bit 0 as the leftmost character. Exit status
/// is 0 on success, 1 on usage errors and 2 on unreadable or malformed data.
#[derive(Debug, Parser)]
#[command(name = "hammer", version, propagate_version = true)]
pub struct Cli {
    /// Print timing and sizes to standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reconstruct a counts or probability distribution.
    Reconstruct(ReconstructArgs),
    /// Bucket outcomes by distance to the correct set.
    Spectrum(SpectrumArgs),
    /// Expected Hamming distance of incorrect outcomes.
    Ehd(EhdArgs),
    /// PST, IST and TVD, or before/after improvement ratios.
    Metrics(MetricsArgs),
    /// Max-Cut expected cost, cost ratio and cumulative quality curve.
    Qaoa(QaoaArgs),
    /// Sample a noisy counts file from a Bernstein-Vazirani key.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Normalized,
    Raw,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Counts or probability JSON.
    #[arg(long)]
    input: PathBuf,
    /// Reconstructed probability JSON (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write CHS, weights, operation counters and wall time here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Use all cores; the result is identical to the single-threaded run.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    input: PathBuf,
    /// Correct outcome(s), comma separated or repeated.
    #[arg(long, required = true, value_delimiter = ',')]
    correct: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EhdArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, required = true, value_delimiter = ',')]
    correct: Vec<String>,
    #[arg(long, value_enum, default_value = "normalized")]
    mode: ModeArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Distribution to score.
    #[arg(long, conflicts_with_all = ["before", "after"], required_unless_present_all = ["before", "after"])]
    input: Option<PathBuf>,
    /// Baseline distribution for an improvement comparison.
    #[arg(long, requires = "after")]
    before: Option<PathBuf>,
    /// Mitigated distribution for an improvement comparison.
    #[arg(long, requires = "before")]
    after: Option<PathBuf>,
    #[arg(long, required = true, value_delimiter = ',')]
    correct: Vec<String>,
    /// Ideal distribution for TVD.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QaoaArgs {
    /// Graph JSON: {"n": <int>, "edges": [[u, v, w], ...]}.
    #[arg(long)]
    graph: PathBuf,
    /// Counts or probability JSON over vertex assignments.
    #[arg(long)]
    counts: PathBuf,
    /// Known minimum cost; skips the exhaustive search.
    #[arg(long, allow_negative_numbers = true)]
    cmin: Option<f64>,
    /// Emit the quality curve as CSV instead of the JSON summary.
    #[arg(long)]
    csv: bool,
    /// Largest graph searched exhaustively for the minimum cost.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_LIMIT)]
    max_vertices: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Hidden key; the ideal output is a delta on it.
    #[arg(long)]
    key: String,
    /// Independent per-bit flip probability on background trials.
    #[arg(long, default_value_t = 0.0)]
    flip: f64,
    /// Correlated error MASK:PROBABILITY, repeatable.
    #[arg(long)]
    corr: Vec<String>,
    #[arg(long, default_value_t = 32_768)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> CliResult<()> {
    let verbose = cli.verbose > 0;
    match cli.command {
        Command::Reconstruct(args) => reconstruct(args, verbose),
        Command::Spectrum(args) => spectrum(args),
        Command::Ehd(args) => ehd_cmd(args),
        Command::Metrics(args) => metrics(args),
        Command::Qaoa(args) => qaoa(args, verbose),
        Command::Synth(args) => synth(args, verbose),
    }
}

fn parse_outcome(text: &str, flag: &str) -> CliResult<Outcome> {
    text.trim()
        .parse()
        .map_err(|e: hammer_core::Error| CliError::Usage(format!("--{flag}: {e}")))
}

fn parse_outcomes(texts: &[String], flag: &str) -> CliResult<Vec<Outcome>> {
    texts.iter().map(|t| parse_outcome(t, flag)).collect()
}

fn check_outputs(paths: &[Option<&Path>]) -> CliResult<()> {
    for p in paths.iter().flatten() {
        check_writable(p)?;
    }
    Ok(())
}

fn reconstruct(args: ReconstructArgs, verbose: bool) -> CliResult<()> {
    check_outputs(&[args.output.as_deref(), args.report.as_deref()])?;
    let input = read_distribution(&args.input)?;
    let start = Instant::now();
    let report = hammer_with(
        &input,
        HammerOptions {
            parallel: args.parallel,
        },
    )?;
    let elapsed = start.elapsed().as_secs_f64();
    if verbose {
        eprintln!(
            "reconstructed {} outcomes of width {} in {elapsed:.3} s",
            input.len(),
            input.width()
        );
    }

    let mut outputs = Outputs::default();
    outputs.push(args.output.as_deref(), report.output.to_json_string());
    if let Some(path) = &args.report {
        let mut value = report.to_json_value();
        value["wall_time_seconds"] = json!(elapsed);
        value["parallel"] = json!(args.parallel);
        outputs.push(Some(path), json_text(&value));
    }
    outputs.flush()
}

fn spectrum(args: SpectrumArgs) -> CliResult<()> {
    check_outputs(&[args.output.as_deref()])?;
    let correct = parse_outcomes(&args.correct, "correct")?;
    let dist = read_distribution(&args.input)?;
    let spectrum = build_spectrum(&dist, &correct)?;
    let text = match args.format {
        Format::Json => json_text(&spectrum.to_json_value()),
        Format::Csv => spectrum.to_csv(),
    };
    let mut outputs = Outputs::default();
    outputs.push(args.output.as_deref(), text);
    outputs.flush()
}

fn ehd_cmd(args: EhdArgs) -> CliResult<()> {
    check_outputs(&[args.output.as_deref()])?;
    let correct = parse_outcomes(&args.correct, "correct")?;
    let dist = read_distribution(&args.input)?;
    let (mode, name) = match args.mode {
        ModeArg::Normalized => (EhdMode::Normalized, "normalized"),
        ModeArg::Raw => (EhdMode::Raw, "raw"),
    };
    let value = ehd(&dist, &correct, mode)?;
    let mut outputs = Outputs::default();
    outputs.push(
        args.output.as_deref(),
        json_text(&json!({"ehd": value, "mode": name, "width": dist.width()})),
    );
    outputs.flush()
}

fn metrics(args: MetricsArgs) -> CliResult<()> {
    check_outputs(&[args.output.as_deref()])?;
    let correct = parse_outcomes(&args.correct, "correct")?;
    let reference = args
        .reference
        .as_deref()
        .map(read_distribution)
        .transpose()?;
    let value = match (&args.input, &args.before, &args.after) {
        (Some(input), _, _) => {
            let dist = read_distribution(input)?;
            MeritReport::evaluate(&dist, &correct, reference.as_ref())?.to_json_value()
        }
        (None, Some(before), Some(after)) => {
            let before = read_distribution(before)?;
            let after = read_distribution(after)?;
            let b = MeritReport::evaluate(&before, &correct, reference.as_ref())?;
            let a = MeritReport::evaluate(&after, &correct, reference.as_ref())?;
            Improvement::new(b, a).to_json_value()
        }
        _ => {
            return Err(CliError::Usage(
                "give either --input or both --before and --after".into(),
            ))
        }
    };
    let mut outputs = Outputs::default();
    outputs.push(args.output.as_deref(), json_text(&value));
    outputs.flush()
}

fn qaoa(args: QaoaArgs, verbose: bool) -> CliResult<()> {
    check_outputs(&[args.output.as_deref()])?;
    let graph = read_graph(&args.graph)?;
    let dist = read_distribution(&args.counts)?;
    let start = Instant::now();
    let c_min = match args.cmin {
        Some(c) => c,
        None => c_min_with_limit(&graph, args.max_vertices)?,
    };
    let c_exp = expected_cost(&graph, &dist)?;
    let cr = cost_ratio(&graph, &dist, Some(c_min))?;
    let curve = quality_curve(&graph, &dist, Some(c_min))?;
    if verbose {
        eprintln!(
            "evaluated {} outcomes on {} vertices in {:.3} s",
            dist.len(),
            graph.n_vertices(),
            start.elapsed().as_secs_f64()
        );
    }
    let text = if args.csv {
        curve.to_csv()
    } else {
        json_text(&json!({
            "c_exp": c_exp,
            "c_min": c_min,
            "cr": cr,
            "curve": curve.to_json_value(),
        }))
    };
    let mut outputs = Outputs::default();
    outputs.push(args.output.as_deref(), text);
    outputs.flush()
}

fn parse_corr(spec: &str) -> CliResult<(Outcome, f64)> {
    let (mask, q) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--corr {spec:?}: expected MASK:PROBABILITY")))?;
    let mask = parse_outcome(mask, "corr")?;
    let q: f64 = q
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--corr {spec:?}: {q:?} is not a number")))?;
    Ok((mask, q))
}

fn synth(args: SynthArgs, verbose: bool) -> CliResult<()> {
    check_outputs(&[args.output.as_deref()])?;
    let key = parse_outcome(&args.key, "key")?;
    let correlated = args
        .corr
        .iter()
        .map(|s| parse_corr(s))
        .collect::<CliResult<Vec<_>>>()?;
    let model = NoiseModel::new(args.flip, correlated, args.seed)?;
    let counts = sample_noisy(&hammer_core::ideal_bv(&key), &model, args.trials)?;
    if verbose {
        eprintln!(
            "sampled {} trials into {} unique outcomes",
            args.trials,
            counts.len()
        );
    }
    let mut outputs = Outputs::default();
    outputs.push(args.output.as_deref(), counts.to_json_string());
    outputs.flush()
}
