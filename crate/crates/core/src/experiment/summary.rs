use std::collections::BTreeMap;

use serde::Serialize;

use super::{Instance, TrialRecord};
use crate::sampler::distinctness_probability;

/// First-draw clean frequency against the exact distinctness probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CleanFrequency {
    /// Trials whose first sample was already clean.
    pub clean_first_draw: usize,
    pub frequency: f64,
    /// `None` when `d >= n`, where no sample can be clean.
    pub expected: Option<f64>,
    pub sigma: Option<f64>,
    pub within_3_sigma: Option<bool>,
    /// Trials that never drew a clean sample within the resample limit.
    pub degenerate_trials: usize,
    /// Samples drawn across all trials.
    pub total_attempts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantiles {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl Quantiles {
    /// Nearest-rank quantiles; `None` on empty input.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let at = |q: f64| v[((q * (v.len() - 1) as f64).round()) as usize];
        Some(Self {
            min: v[0],
            q25: at(0.25),
            median: at(0.5),
            q75: at(0.75),
            max: v[v.len() - 1],
        })
    }
}

/// `ceil(log(n)^3)` against `8 sqrt(n)` at the configured `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeComparison {
    pub n: usize,
    pub log_cubed: usize,
    pub eight_sqrt_n: f64,
    /// `log_cubed < eight_sqrt_n`.
    pub log_cubed_smaller: bool,
}

impl SizeComparison {
    pub fn at(n: usize, base: crate::spectral::LogBase) -> Self {
        let log_cubed = base.log(n as f64).powi(3).ceil() as usize;
        let eight_sqrt_n = 8.0 * (n as f64).sqrt();
        Self {
            n,
            log_cubed,
            eight_sqrt_n,
            log_cubed_smaller: (log_cubed as f64) < eight_sqrt_n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub trials: usize,
    pub clean: CleanFrequency,
    pub lambda_over_d: Option<Quantiles>,
    pub pass_empirical_rate: Option<f64>,
    pub pass_ks_rate: Option<f64>,
    pub found: usize,
    pub success_rate: f64,
    pub clean_trials: usize,
    pub clean_found: usize,
    /// `None` when no trial was clean.
    pub clean_success_rate: Option<f64>,
    /// Colour count of found cycles to number of trials.
    pub colour_counts: BTreeMap<usize, usize>,
    pub max_colour_count_clean: Option<usize>,
    pub comparison: SizeComparison,
    pub violations: usize,
}

fn rate(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Batch statistics, computed from the records alone.
pub fn summarize(inst: &Instance, records: &[TrialRecord]) -> BatchSummary {
    let trials = records.len();
    let host_n = inst.host.n();

    let clean_first_draw = records.iter().filter(|r| r.clean && r.resamples == 0).count();
    let frequency = rate(clean_first_draw, trials).unwrap_or(0.0);
    let expected = distinctness_probability(host_n, inst.d).ok();
    let sigma = expected.map(|p| (p * (1.0 - p) / trials.max(1) as f64).sqrt());
    let within_3_sigma = expected
        .zip(sigma)
        .map(|(p, s)| (frequency - p).abs() <= 3.0 * s);
    let clean = CleanFrequency {
        clean_first_draw,
        frequency,
        expected,
        sigma,
        within_3_sigma,
        degenerate_trials: records.iter().filter(|r| !r.clean).count(),
        total_attempts: records.iter().map(|r| r.resamples + 1).sum(),
    };

    let certs: Vec<_> = records.iter().filter_map(|r| r.certificate.as_ref()).collect();
    let ratios: Vec<f64> = certs
        .iter()
        .filter(|c| c.d > 0)
        .map(|c| c.lambda / c.d as f64)
        .collect();

    let found = records.iter().filter(|r| r.found).count();
    let clean_trials = records.iter().filter(|r| r.clean).count();
    let clean_found = records.iter().filter(|r| r.clean && r.found).count();
    let mut colour_counts = BTreeMap::new();
    for count in records.iter().filter_map(|r| r.colour_count) {
        *colour_counts.entry(count).or_default() += 1;
    }

    BatchSummary {
        trials,
        clean,
        lambda_over_d: Quantiles::of(&ratios),
        pass_empirical_rate: rate(certs.iter().filter(|c| c.pass_empirical).count(), certs.len()),
        pass_ks_rate: rate(certs.iter().filter(|c| c.pass_ks).count(), certs.len()),
        found,
        success_rate: rate(found, trials).unwrap_or(0.0),
        clean_trials,
        clean_found,
        clean_success_rate: rate(clean_found, clean_trials),
        colour_counts,
        max_colour_count_clean: records
            .iter()
            .filter(|r| r.clean)
            .filter_map(|r| r.colour_count)
            .max(),
        comparison: SizeComparison::at(inst.config.n, inst.config.log_base),
        violations: records.iter().map(|r| r.violations.len()).sum(),
    }
}
