//! Seeded trial batches over the whole pipeline: colouring, odd-to-even
//! extension, colour sampling, spectral certificate, Hamilton cycle, colour
//! count.
//!
//! Trial `i` uses the seed `derive_seed(master_seed, i)`. Within a trial,
//! resample attempt `k` draws from `derive_seed(derive_seed(seed, 0), k)` and
//! the cycle finder from `derive_seed(seed, 1)`. Nothing else is random, so
//! records do not depend on how trials are scheduled across workers.

mod output;
mod summary;

pub use output::{write_csv, write_json, CsvRow, OutputFormat};
pub use summary::{summarize, BatchSummary, CleanFrequency, Quantiles, SizeComparison};

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::colouring::{
    circle_colouring, cyclic_colouring_odd, extend_odd_to_even, read_colouring, xor_colouring,
    ProperColouring,
};
use crate::error::{Error, Result};
use crate::hamilton::{
    close_path_to_cycle, find_hamilton_rotation, min_colour_cycle_bruteforce, validate_cycle,
    verify_span_lower_bound, HamiltonCycle, RotationOutcome, SpanCheck,
};
use crate::rng::derive_seed;
use crate::sampler::{build_union_graph, sample_colours, support_graph, ColourSample, DegeneracyReport};
use crate::spectral::{certify, LogBase, SpectralCertificate, SpectralLambda};

/// Rotation budget per vertex when none is configured.
pub const DEFAULT_BUDGET_PER_VERTEX: usize = 500;
pub const DEFAULT_RESAMPLE_LIMIT: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Circle,
    Cyclic,
    Xor,
    File(PathBuf),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Circle => "circle",
            Family::Cyclic => "cyclic",
            Family::Xor => "xor",
            Family::File(_) => "file",
        }
    }

    /// Builds the family's colouring of `K_n`.
    pub fn colouring(&self, n: usize) -> Result<ProperColouring> {
        match self {
            Family::Circle => circle_colouring(n),
            Family::Cyclic => cyclic_colouring_odd(n),
            Family::Xor => {
                if !n.is_power_of_two() {
                    return Err(Error::InvalidOrder {
                        n,
                        reason: "xor colouring needs n = 2^k",
                    });
                }
                xor_colouring(n.trailing_zeros())
            }
            Family::File(path) => {
                let c = read_colouring(path)?;
                if c.n() != n {
                    return Err(Error::Config(format!(
                        "{} holds a colouring of K_{}, expected K_{n}",
                        path.display(),
                        c.n()
                    )));
                }
                Ok(c)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialConfig {
    pub n: usize,
    pub family: Family,
    /// Number of summands; `None` means `ceil(log(n)^3)` on the sampled
    /// graph's order, clamped to its colour count.
    pub d_override: Option<usize>,
    pub trials: usize,
    pub master_seed: u64,
    /// Rotation budget; `None` means `DEFAULT_BUDGET_PER_VERTEX * n`.
    pub budget: Option<usize>,
    pub resample_limit: usize,
    pub log_base: LogBase,
    pub format: OutputFormat,
    /// Worker threads; `None` uses the rayon default.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl TrialConfig {
    pub fn new(family: Family, n: usize) -> Self {
        Self {
            n,
            family,
            d_override: None,
            trials: 1,
            master_seed: 0,
            budget: None,
            resample_limit: DEFAULT_RESAMPLE_LIMIT,
            log_base: LogBase::E,
            format: OutputFormat::Json,
            workers: None,
        }
    }
}

/// `ceil(log(n)^3)`, clamped to `[1, colour_count]`.
pub fn default_d(n: usize, colour_count: usize, base: LogBase) -> usize {
    let raw = base.log(n as f64).powi(3).ceil();
    (raw as usize).clamp(1, colour_count.max(1))
}

/// A configuration resolved against its colouring.
#[derive(Debug, Clone)]
pub struct Instance {
    pub config: TrialConfig,
    /// The colouring of `K_n` as given.
    pub base: ProperColouring,
    /// The even-order colouring that is sampled: `base` itself, or its
    /// extension to `K_{n+1}` when `n` is odd.
    pub host: ProperColouring,
    pub d: usize,
    pub budget: usize,
}

impl Instance {
    pub fn prepare(config: &TrialConfig) -> Result<Self> {
        if config.n < 3 {
            return Err(Error::Config(format!("n = {} is below 3", config.n)));
        }
        if config.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let base = config.family.colouring(config.n)?;
        Self::from_colouring(config, base)
    }

    pub fn from_colouring(config: &TrialConfig, base: ProperColouring) -> Result<Self> {
        let host = if base.n() % 2 == 1 {
            extend_odd_to_even(&base)?
        } else {
            base.clone()
        };
        let colour_count = host.colour_count() as usize;
        let d = match config.d_override {
            Some(d) if (1..=colour_count).contains(&d) => d,
            Some(d) => {
                return Err(Error::Config(format!(
                    "d = {d} is outside [1, {colour_count}]"
                )))
            }
            None => default_d(host.n(), colour_count, config.log_base),
        };
        let budget = config
            .budget
            .unwrap_or(DEFAULT_BUDGET_PER_VERTEX * host.n())
            .max(1);
        Ok(Self {
            config: config.clone(),
            base,
            host,
            d,
            budget,
        })
    }

    pub fn is_extended(&self) -> bool {
        self.host.n() != self.base.n()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct StageTimes {
    pub ms_sample: f64,
    pub ms_spectral: f64,
    pub ms_hamilton: f64,
}

fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    /// Summands per sample.
    pub d: usize,
    /// Whether some attempt within the resample limit was clean.
    pub clean: bool,
    /// Attempts before the one kept: the index of the clean attempt, or
    /// the resample limit when none was clean.
    pub resamples: usize,
    /// Why the kept sample is not clean.
    pub degeneracy: Option<DegeneracyReport>,
    pub sample: ColourSample,
    /// Degree of the graph searched. Equals `d` for clean samples; for
    /// degenerate ones it is the number of distinct sampled colours.
    pub graph_degree: usize,
    pub certificate: Option<SpectralCertificate>,
    pub lambda_routes: Option<SpectralLambda>,
    pub found: bool,
    pub rotations: usize,
    /// Final cycle on the input `K_n`.
    pub cycle: Option<HamiltonCycle>,
    /// The cycle on `K_{n+1}` before the added vertex is removed (odd `n`).
    pub extended_cycle: Option<HamiltonCycle>,
    pub colour_count: Option<usize>,
    pub violations: Vec<String>,
    pub times: StageTimes,
}

impl TrialRecord {
    /// Copy with wall times zeroed, for determinism comparisons.
    pub fn without_times(&self) -> Self {
        Self {
            times: StageTimes::default(),
            ..self.clone()
        }
    }
}

/// Runs one trial of the pipeline. Stage failures are recorded, not returned.
pub fn run_trial(inst: &Instance, trial: usize) -> TrialRecord {
    let seed = derive_seed(inst.config.master_seed, trial as u64);
    let sample_stream = derive_seed(seed, 0);
    let finder_seed = derive_seed(seed, 1);
    let mut violations = Vec::new();
    let mut times = StageTimes::default();

    let start = Instant::now();
    let mut attempt = 0;
    let (sample, clean_graph, degeneracy) = loop {
        let sample = sample_colours(&inst.host, inst.d, derive_seed(sample_stream, attempt as u64))
            .expect("host is an even-order one-factorization");
        match build_union_graph(&inst.host, &sample) {
            Ok(g) => break (sample, Some(g), None),
            Err(report) if attempt >= inst.config.resample_limit => {
                break (sample, None, Some(report))
            }
            Err(_) => attempt += 1,
        }
    };
    let clean = clean_graph.is_some();
    let graph = clean_graph.unwrap_or_else(|| support_graph(&inst.host, &sample));
    times.ms_sample = elapsed_ms(start);

    let start = Instant::now();
    let (certificate, lambda_routes) = match certify(&graph, inst.config.log_base) {
        Ok((cert, routes)) => {
            if !cert.is_consistent() {
                violations.push("certificate flags disagree with its numbers".into());
            }
            if graph.graph.edge_count() * 2 != graph.n * graph.d {
                violations.push("union graph edge count differs from dn/2".into());
            }
            if (routes.top_eigenvalue - graph.d as f64).abs() > 1e-9 * (graph.d as f64).max(1.0) {
                violations.push(format!(
                    "top eigenvalue {} differs from d = {}",
                    routes.top_eigenvalue, graph.d
                ));
            }
            if cert.lambda > graph.d as f64 + 1e-9 {
                violations.push(format!("lambda {} exceeds d = {}", cert.lambda, graph.d));
            }
            (Some(cert), Some(routes))
        }
        Err(e) => {
            violations.push(format!("certificate: {e}"));
            (None, None)
        }
    };
    times.ms_spectral = elapsed_ms(start);

    let start = Instant::now();
    let outcome = find_hamilton_rotation(&graph.graph, finder_seed, inst.budget);
    let rotations = outcome.rotations();
    let mut cycle = None;
    let mut extended_cycle = None;
    if let RotationOutcome::Found { order, .. } = outcome {
        if let Err(v) = validate_cycle(&graph.graph, &order) {
            violations.push(format!("finder returned an invalid cycle: {v}"));
        }
        match HamiltonCycle::in_complete(&inst.host, order) {
            Ok(host_cycle) => {
                if host_cycle.colours.iter().any(|c| graph.colours.binary_search(c).is_err()) {
                    violations.push("cycle uses a colour outside the sample".into());
                }
                if inst.is_extended() {
                    match close_path_to_cycle(&inst.base, &host_cycle.order) {
                        Ok(closed) => {
                            if closed.colour_count() > host_cycle.colour_count() + 1 {
                                violations.push("closing the path added more than one colour".into());
                            }
                            cycle = Some(closed);
                        }
                        Err(e) => violations.push(format!("closing the path: {e}")),
                    }
                    extended_cycle = Some(host_cycle);
                } else {
                    cycle = Some(host_cycle);
                }
            }
            Err(e) => violations.push(format!("finder cycle: {e}")),
        }
    }
    times.ms_hamilton = elapsed_ms(start);

    let colour_count = cycle.as_ref().map(HamiltonCycle::colour_count);
    let allowance = inst.d + usize::from(inst.is_extended());
    if let (true, Some(count)) = (clean, colour_count) {
        if count > allowance {
            violations.push(format!("cycle has {count} colours, more than {allowance}"));
        }
    }

    TrialRecord {
        trial,
        seed,
        d: inst.d,
        clean,
        resamples: attempt,
        degeneracy,
        sample,
        graph_degree: graph.d,
        certificate,
        lambda_routes,
        found: cycle.is_some(),
        rotations,
        cycle,
        extended_cycle,
        colour_count,
        violations,
        times,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchResult {
    pub config: TrialConfig,
    pub host_n: usize,
    pub d: usize,
    pub budget: usize,
    pub summary: BatchSummary,
    pub records: Vec<TrialRecord>,
}

impl BatchResult {
    pub fn violation_count(&self) -> usize {
        self.records.iter().map(|r| r.violations.len()).sum()
    }
}

pub fn run_batch(config: &TrialConfig) -> Result<BatchResult> {
    run_instance(&Instance::prepare(config)?)
}

/// Runs trials `0..trials` on a prepared instance; records come back in
/// trial order whatever the worker count.
pub fn run_instance(inst: &Instance) -> Result<BatchResult> {
    let run = || -> Vec<TrialRecord> {
        (0..inst.config.trials)
            .into_par_iter()
            .map(|i| run_trial(inst, i))
            .collect()
    };
    let records = match inst.config.workers {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let summary = summarize(inst, &records);
    Ok(BatchResult {
        config: inst.config.clone(),
        host_n: inst.host.n(),
        d: inst.d,
        budget: inst.budget,
        summary,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub k: u32,
    pub n: usize,
    pub minimum: usize,
    pub witness: HamiltonCycle,
    pub span: SpanCheck,
    /// `minimum >= k`.
    pub meets_bound: bool,
}

/// Exhaustive minimum-colour search on the xor colouring of `K_{2^k}`.
pub fn lower_bound_report(k: u32) -> Result<LowerBoundReport> {
    if !(2..=3).contains(&k) {
        return Err(Error::Config(format!(
            "lower bound report covers k in 2..=3 (got {k}); larger k is out of brute-force \
             reach, use verify_span_lower_bound on sampled cycles instead"
        )));
    }
    let c = xor_colouring(k)?;
    let best = min_colour_cycle_bruteforce(&c)?;
    let span = verify_span_lower_bound(k, &c, &best.witness.order)?;
    Ok(LowerBoundReport {
        k,
        n: c.n(),
        minimum: best.minimum,
        meets_bound: best.minimum >= k as usize,
        witness: best.witness,
        span,
    })
}
