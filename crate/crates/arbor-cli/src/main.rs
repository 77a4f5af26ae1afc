//! `arbor` — experiment runner for recursive-tree arrival-order estimation.
//!
//! Subcommands mirror the library's experiment module: `simulate` runs one
//! estimator grid, `compare` ranks several estimators side by side, `rates`
//! fits log-log growth exponents, `oracle-check` runs the exact-oracle
//! self-test suite, and `gen` emits a raw tree edge list.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use arbor::experiment::{self, ExperimentConfig, RateStatistic};
use arbor::oracle::{run_self_checks, SelfCheckConfig};
use arbor::rng::RngState;
use arbor::treegen::generate;
use arbor::{Estimator, Model};

#[derive(Parser)]
#[command(name = "arbor", version, about = "Recursive-tree history estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GridArgs {
    /// Flat key = value config file; CLI flags override it.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Growth model: urrt or pa.
    #[arg(long)]
    model: Option<Model>,
    /// Comma-separated tree sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Comma-separated risk exponents alpha.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Comma-separated estimators
    /// (jordan, descendant, degree, spectral, reverse_dmc, random).
    #[arg(long, value_delimiter = ',')]
    estimators: Option<Vec<Estimator>>,
    /// Monte Carlo replicates per cell.
    #[arg(long)]
    replicates: Option<usize>,
    /// Master seed; every cell seed is derived from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads (falls back to ARBOR_THREADS, then all cores).
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Also emit lower/upper bound curves (bounds.csv).
    #[arg(long)]
    bounds: bool,
    /// Also emit simple SVG plots.
    #[arg(long)]
    svg: bool,
    /// Use mean instead of median risk in rate fits.
    #[arg(long)]
    rate_mean: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the risk simulation for one estimator grid.
    Simulate(GridArgs),
    /// Run several estimators and rank them by median risk per size.
    Compare(GridArgs),
    /// Fit log-log growth exponents of the risk over the size grid.
    Rates(GridArgs),
    /// Run the exact-oracle self-check suite and emit a JSON report.
    OracleCheck {
        /// Write the JSON report here in addition to stdout.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        /// Replicates for the Monte-Carlo-vs-exact checks.
        #[arg(long, default_value_t = 100_000)]
        replicates: usize,
    },
    /// Generate one tree and print its edge list.
    Gen {
        /// Growth model: urrt or pa.
        #[arg(long, default_value = "urrt")]
        model: Model,
        /// Tree size.
        #[arg(long, default_value_t = 100)]
        sizes: usize,
        /// Seed for the generator stream.
        #[arg(long, default_value_t = 1729)]
        seed: u64,
    },
}

fn env_threads() -> Option<usize> {
    std::env::var("ARBOR_THREADS").ok()?.parse().ok()
}

fn resolve_config(args: &GridArgs, mut base: ExperimentConfig) -> Result<ExperimentConfig> {
    if let Some(path) = &args.config {
        base.apply_file(path)
            .with_context(|| format!("reading config {}", path.display()))?;
    }
    if let Some(model) = args.model {
        base.model = model;
    }
    if let Some(sizes) = &args.sizes {
        base.sizes = sizes.clone();
    }
    if let Some(alphas) = &args.alphas {
        base.alphas = alphas.clone();
    }
    if let Some(estimators) = &args.estimators {
        base.estimators = estimators.clone();
    }
    if let Some(replicates) = args.replicates {
        base.replicates = replicates;
    }
    if let Some(seed) = args.seed {
        base.master_seed = seed;
    }
    if let Some(out) = &args.out {
        base.output_dir = out.clone();
    }
    if let Some(threads) = args.threads.or_else(env_threads) {
        base.threads = Some(threads);
    }
    base.overlay_bounds |= args.bounds;
    base.emit_svg |= args.svg;
    if args.rate_mean {
        base.rate_statistic = RateStatistic::Mean;
    }
    base.validate()?;
    Ok(base)
}

fn report_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate(args) => {
            let config = resolve_config(&args, ExperimentConfig::default())?;
            let output = experiment::simulate(&config)?;
            let files = experiment::write_outputs(&output, None, &config)?;
            report_files(&files);
        }
        Command::Compare(args) => {
            let defaults = ExperimentConfig {
                estimators: vec![Estimator::Descendant, Estimator::Degree, Estimator::Spectral],
                ..ExperimentConfig::default()
            };
            let config = resolve_config(&args, defaults)?;
            let output = experiment::compare(&config)?;
            let files = experiment::write_outputs(&output, None, &config)?;
            report_files(&files);
            for s in &output.summaries {
                println!(
                    "n={} alpha={} {:<12} median={:.4} (q1={:.4}, q3={:.4})",
                    s.n, s.alpha, s.estimator.to_string(), s.median, s.q1, s.q3
                );
            }
        }
        Command::Rates(args) => {
            let config = resolve_config(&args, ExperimentConfig::default_rates())?;
            let (output, rows) = experiment::rates(&config)?;
            let files = experiment::write_outputs(&output, Some(&rows), &config)?;
            report_files(&files);
            for r in &rows {
                println!(
                    "model={} alpha={} {:<12} slope={:.4} r2={:.4}",
                    r.model, r.alpha, r.estimator.to_string(), r.fit.slope, r.fit.r_squared
                );
            }
        }
        Command::OracleCheck { out, replicates } => {
            let report = run_self_checks(&SelfCheckConfig {
                mc_replicates: replicates,
                ..SelfCheckConfig::default()
            });
            let json = report.to_json();
            println!("{json}");
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("oracle_check.json"), &json)?;
            }
            if !report.all_pass {
                bail!("oracle self-checks failed");
            }
        }
        Command::Gen { model, sizes, seed } => {
            let mut rng = RngState::from_seed(seed);
            let tree = generate(model, sizes, &mut rng)?;
            print!("{}", tree.to_labeled().to_edge_list_text());
        }
    }
    Ok(())
}
