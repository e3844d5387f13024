//! Monte Carlo of the matrix martingale `X_i = Y_1 + ... + Y_i`, where each
//! increment `Y_l = (A_l - J/n) / 2` and `A_l` is either a colour class's
//! permutation matrix or the identity.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::{hoeffding_tail, operator_norm, symmetric_eigenvalues};
use crate::colouring::ProperColouring;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::sampler::{require_one_factorization, sample_colours, SampleEntry};

/// Dense 0/1 matrix of one summand: the colour class's matching, or `I`.
pub fn summand_matrix(c: &ProperColouring, entry: SampleEntry) -> Result<DMatrix<f64>> {
    let n = c.n();
    match entry {
        SampleEntry::Identity => Ok(DMatrix::identity(n, n)),
        SampleEntry::Colour(colour) => {
            let edges = crate::sampler::matching_edges(c, colour)?;
            let mut m = DMatrix::zeros(n, n);
            for (u, v) in edges {
                m[(u, v)] = 1.0;
                m[(v, u)] = 1.0;
            }
            Ok(m)
        }
    }
}

/// Eigenvalues of the increment `(A_l - J/n) / 2`, descending.
pub fn increment_eigenvalues(c: &ProperColouring, entry: SampleEntry) -> Result<Vec<f64>> {
    let n = c.n() as f64;
    let y = summand_matrix(c, entry)?.map(|x| 0.5 * (x - 1.0 / n));
    symmetric_eigenvalues(&y)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MartingaleTrace {
    pub d: usize,
    /// `||X_1||, ..., ||X_d||`.
    pub norms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailEstimate {
    pub t: f64,
    /// `d * t`.
    pub threshold: f64,
    pub exceedances: usize,
    pub frequency: f64,
    pub bound: f64,
    /// Standard error of a frequency whose true mean equals `min(bound, 1)`.
    pub sigma: f64,
    /// `frequency <= bound + 3 sigma`.
    pub dominated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MartingaleReport {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    /// `||X_d||` for each trial.
    pub final_norms: Vec<f64>,
    pub tails: Vec<TailEstimate>,
    /// Full traces for the first few trials.
    pub traces: Vec<MartingaleTrace>,
}

/// Partner of each vertex in each colour class, `[colour][vertex]`.
fn partner_table(c: &ProperColouring) -> Vec<Vec<usize>> {
    c.matchings()
        .into_iter()
        .map(|row| row.into_iter().map(|p| p.expect("perfect matching") as usize).collect())
        .collect()
}

fn add_summand(x: &mut DMatrix<f64>, partners: &[Vec<usize>], entry: SampleEntry) {
    match entry {
        SampleEntry::Identity => {
            for i in 0..x.nrows() {
                x[(i, i)] += 1.0;
            }
        }
        SampleEntry::Colour(colour) => {
            for (u, &v) in partners[colour as usize].iter().enumerate() {
                x[(u, v)] += 1.0;
            }
        }
    }
}

/// `||(S - (steps/n) J) / 2||` for a summand total `S`.
fn centred_norm(sum: &DMatrix<f64>, steps: usize) -> Result<f64> {
    let shift = steps as f64 / sum.nrows() as f64;
    operator_norm(&sum.map(|x| 0.5 * (x - shift)))
}

/// Draws `trials` unconditioned samples of `d` summands (repeats and
/// identities allowed) and records `||X_d||`, with the empirical frequency of
/// `||X_d|| >= d t` for each requested `t`. The first `trace_trials` trials
/// also record every partial norm `||X_i||`.
pub fn simulate_martingale(
    c: &ProperColouring,
    d: usize,
    trials: usize,
    seed: u64,
    ts: &[f64],
    trace_trials: usize,
) -> Result<MartingaleReport> {
    require_one_factorization(c)?;
    if d == 0 || trials == 0 {
        return Err(Error::Config("martingale simulation needs d >= 1 and trials >= 1".into()));
    }
    let bounds = ts
        .iter()
        .map(|&t| hoeffding_tail(c.n(), d as f64, t))
        .collect::<Result<Vec<_>>>()?;
    let n = c.n();
    let partners = partner_table(c);

    let per_trial = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let sample = sample_colours(c, d, derive_seed(seed, trial as u64))?;
            let mut sum = DMatrix::zeros(n, n);
            let mut norms = Vec::new();
            for (step, &entry) in sample.entries.iter().enumerate() {
                add_summand(&mut sum, &partners, entry);
                if trial < trace_trials {
                    norms.push(centred_norm(&sum, step + 1)?);
                }
            }
            let last = match norms.last() {
                Some(&x) => x,
                None => centred_norm(&sum, d)?,
            };
            Ok((last, norms))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut final_norms = Vec::with_capacity(trials);
    let mut traces = Vec::new();
    for (last, norms) in per_trial {
        final_norms.push(last);
        if !norms.is_empty() {
            traces.push(MartingaleTrace { d, norms });
        }
    }

    let tails = ts
        .iter()
        .zip(bounds)
        .map(|(&t, bound)| {
            let threshold = d as f64 * t;
            let exceedances = final_norms.iter().filter(|&&x| x >= threshold).count();
            let frequency = exceedances as f64 / trials as f64;
            let p = bound.min(1.0);
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            TailEstimate {
                t,
                threshold,
                exceedances,
                frequency,
                bound,
                sigma,
                dominated: frequency <= bound + 3.0 * sigma,
            }
        })
        .collect();

    Ok(MartingaleReport {
        n,
        d,
        trials,
        seed,
        final_norms,
        tails,
        traces,
    })
}
