use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fewcolour::colouring::{write_colouring, xor_colouring};
use fewcolour::experiment::{
    lower_bound_report, run_batch, write_csv, write_json, BatchResult, Family, OutputFormat,
    TrialConfig, DEFAULT_RESAMPLE_LIMIT,
};
use fewcolour::spectral::{simulate_martingale, LogBase};

/// Exit status when a run finishes but an internal invariant was violated.
const VIOLATION_EXIT: u8 = 2;

#[derive(Parser)]
#[command(name = "fewcolour", version, about = "Hamilton cycles with few colours in edge-coloured K_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Circle,
    Cyclic,
    Xor,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunFamily {
    Circle,
    Cyclic,
    Xor,
    File,
}

#[derive(Subcommand)]
enum Command {
    /// Write a proper colouring of K_n as an edge list.
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        /// Vertex count (circle: even, cyclic: odd).
        #[arg(long)]
        n: Option<usize>,
        /// Dimension for the xor family (n = 2^k).
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run seeded trials of the sample / certify / find-cycle pipeline.
    Run {
        #[arg(long, value_enum)]
        family: RunFamily,
        #[arg(long)]
        n: usize,
        /// Colouring file for `--family file`.
        #[arg(long)]
        colouring: Option<PathBuf>,
        /// Summands per sample (default ceil(log(n)^3), clamped).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rotation budget of the cycle finder (default 500 n).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_RESAMPLE_LIMIT)]
        resample_limit: usize,
        #[arg(long, default_value = "e")]
        log_base: LogBase,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// results.json or results.csv
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive minimum-colour Hamilton cycle on the xor colouring of K_{2^k}.
    Lowerbound {
        #[arg(long)]
        k: u32,
    },
    /// Monte Carlo of the matrix martingale against the operator Hoeffding tail.
    Martingale {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: usize,
        /// Comma-separated tail parameters in (0, 1/2).
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials whose full norm trace is recorded.
        #[arg(long, default_value_t = 0)]
        traces: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn gen(family: GenFamily, n: Option<usize>, k: Option<u32>, out: &Path) -> Result<()> {
    let c = match (family, n, k) {
        (GenFamily::Xor, _, Some(k)) => xor_colouring(k)?,
        (GenFamily::Xor, Some(n), None) => Family::Xor.colouring(n)?,
        (GenFamily::Circle, Some(n), _) => Family::Circle.colouring(n)?,
        (GenFamily::Cyclic, Some(n), _) => Family::Cyclic.colouring(n)?,
        _ => bail!("--n is required (or --k for the xor family)"),
    };
    write_colouring(out, &c)?;
    eprintln!("wrote K_{} with {} colours to {}", c.n(), c.colour_count(), out.display());
    Ok(())
}

fn print_summary(batch: &BatchResult) {
    let s = &batch.summary;
    eprintln!(
        "n = {} (sampled on K_{}), d = {}, trials = {}",
        batch.config.n, batch.host_n, batch.d, s.trials
    );
    match s.clean.expected {
        Some(p) => eprintln!(
            "clean first draw: {:.4} (expected {:.4}), degenerate trials: {}",
            s.clean.frequency, p, s.clean.degenerate_trials
        ),
        None => eprintln!("clean first draw: impossible (d >= n)"),
    }
    if let Some(q) = &s.lambda_over_d {
        eprintln!(
            "lambda/d: min {:.4} median {:.4} max {:.4}",
            q.min, q.median, q.max
        );
    }
    eprintln!(
        "pass lambda <= 2dt: {:?}, pass KS threshold: {:?}",
        s.pass_empirical_rate, s.pass_ks_rate
    );
    eprintln!(
        "cycles found: {}/{} (clean: {}/{}), colour counts: {:?}",
        s.found, s.trials, s.clean_found, s.clean_trials, s.colour_counts
    );
    eprintln!(
        "ceil(log^3 n) = {} vs 8 sqrt(n) = {:.1}: log^3 smaller = {}",
        s.comparison.log_cubed, s.comparison.eight_sqrt_n, s.comparison.log_cubed_smaller
    );
    eprintln!("invariant violations: {}", s.violations);
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { family, n, k, out } => {
            gen(family, n, k, &out)?;
            Ok(true)
        }
        Command::Run {
            family,
            n,
            colouring,
            d,
            trials,
            seed,
            budget,
            resample_limit,
            log_base,
            workers,
            out,
        } => {
            let family = match (family, colouring) {
                (RunFamily::File, Some(path)) => Family::File(path),
                (RunFamily::File, None) => bail!("--family file needs --colouring FILE"),
                (RunFamily::Circle, _) => Family::Circle,
                (RunFamily::Cyclic, _) => Family::Cyclic,
                (RunFamily::Xor, _) => Family::Xor,
            };
            let format = OutputFormat::from_path(&out)?;
            let config = TrialConfig {
                n,
                family,
                d_override: d,
                trials,
                master_seed: seed,
                budget,
                resample_limit,
                log_base,
                format,
                workers,
            };
            let batch = run_batch(&config)?;
            let mut w = create(&out)?;
            match format {
                OutputFormat::Json => write_json(&batch, &mut w)?,
                OutputFormat::Csv => write_csv(&batch.records, &mut w)?,
            }
            w.flush()?;
            print_summary(&batch);
            Ok(batch.violation_count() == 0)
        }
        Command::Lowerbound { k } => {
            let report = lower_bound_report(k)?;
            serde_json::to_writer_pretty(io::stdout().lock(), &report)?;
            println!();
            Ok(report.meets_bound && report.span.pass)
        }
        Command::Martingale {
            n,
            d,
            trials,
            t,
            seed,
            traces,
            out,
        } => {
            let c = Family::Circle.colouring(n)?;
            let report = simulate_martingale(&c, d, trials, seed, &t, traces)?;
            match out {
                Some(path) => {
                    let mut w = create(&path)?;
                    serde_json::to_writer_pretty(&mut w, &report)?;
                    w.flush()?;
                }
                None => {
                    serde_json::to_writer_pretty(io::stdout().lock(), &report)?;
                    println!();
                }
            }
            for tail in &report.tails {
                eprintln!(
                    "t = {}: P[||X_d|| >= {}] = {:.4} (bound {:.4}, dominated: {})",
                    tail.t, tail.threshold, tail.frequency, tail.bound, tail.dominated
                );
            }
            let bounded = report.final_norms.iter().all(|&x| x <= d as f64 / 2.0 + 1e-9);
            Ok(bounded && report.tails.iter().all(|t| t.dominated))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("internal invariant violated");
            ExitCode::from(VIOLATION_EXIT)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
