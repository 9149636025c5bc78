use std::collections::HashMap;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use mvc_core::bench::{self, InstanceRunConfig, Variant};
use mvc_core::io::{emit_aggregates, emit_records, Format};
use mvc_core::TieBreak;

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Lincom,
    InitvcOnly,
    MinGain,
    MaxGain,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Lincom => Variant::Lincom,
            VariantArg::InitvcOnly => Variant::InitvcOnly,
            VariantArg::MinGain => Variant::MinGain,
            VariantArg::MaxGain => Variant::MaxGain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Random,
    Deterministic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Jsonl => Format::JsonLines,
        }
    }
}

/// Minimum vertex cover solver and benchmark runner for DIMACS graphs.
#[derive(Parser)]
#[command(name = "lincom", version)]
struct Args {
    /// DIMACS instance file; repeat for several instances.
    #[arg(short = 'i', long = "instance", required = true)]
    instances: Vec<PathBuf>,

    #[arg(long, value_enum, default_value = "lincom")]
    variant: VariantArg,

    /// Inclusive seed range, e.g. `1..100`.
    #[arg(long, default_value = "1..1")]
    seeds: String,

    /// Wall-clock limit per run, in seconds.
    #[arg(long, default_value_t = 1000.0)]
    cutoff: f64,

    #[arg(long)]
    max_steps: Option<u64>,

    #[arg(long, value_enum, default_value = "random")]
    tie_break: TieArg,

    /// CSV with `instance` and `cmin` columns to compare against.
    #[arg(long)]
    baseline: Option<PathBuf>,

    /// Per-run records go here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,

    /// Worker threads; runs are parallel across (instance, seed) pairs only.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Per-instance summary goes here instead of stderr.
    #[arg(long)]
    summary: Option<PathBuf>,

    /// Directory for one solution file per run.
    #[arg(long)]
    solutions: Option<PathBuf>,

    /// Check a cover file (1-based ids) against the single instance and exit.
    #[arg(long, value_name = "COVERFILE")]
    verify: Option<PathBuf>,
}

fn verify(args: &Args, cover: &PathBuf) -> anyhow::Result<ExitCode> {
    let [instance] = args.instances.as_slice() else {
        bail!("--verify takes exactly one --instance");
    };
    let graph = bench::load_instance(instance).with_context(|| format!("reading {}", instance.display()))?;
    let file = File::open(cover).with_context(|| format!("opening {}", cover.display()))?;
    let check = bench::verify_cover_file(&graph, BufReader::new(file))?;
    match check.violated {
        None => {
            println!("valid");
            Ok(ExitCode::SUCCESS)
        }
        Some((u, v)) => {
            println!("invalid: edge ({u}, {v}) is uncovered");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn run(args: Args) -> anyhow::Result<ExitCode> {
    if let Some(cover) = &args.verify {
        return verify(&args, cover);
    }
    let baseline: Option<HashMap<String, usize>> = match &args.baseline {
        Some(path) => {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            Some(bench::load_baseline(file)?)
        }
        None => None,
    };
    if let Some(dir) = &args.solutions {
        std::fs::create_dir_all(dir)?;
    }
    let config = InstanceRunConfig {
        instances: args.instances.clone(),
        variant: args.variant.into(),
        seeds: bench::parse_seed_range(&args.seeds)?,
        cutoff_seconds: args.cutoff,
        max_steps: args.max_steps,
        tie_break: match args.tie_break {
            TieArg::Random => TieBreak::Random,
            TieArg::Deterministic => TieBreak::Deterministic,
        },
        jobs: args.jobs,
        solution_dir: args.solutions.clone(),
    };
    let records = bench::run_suite(&config)?;
    let format: Format = args.format.into();
    let text = emit_records(&records, format)?;
    match &args.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    let summary = emit_aggregates(&bench::aggregate(&records, baseline.as_ref()), format)?;
    match &args.summary {
        Some(path) => std::fs::write(path, summary).with_context(|| format!("writing {}", path.display()))?,
        None => eprint!("{summary}"),
    }
    let failed = records.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        log::warn!("{failed} of {} runs failed", records.len());
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
