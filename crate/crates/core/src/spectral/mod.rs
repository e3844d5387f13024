//! Spectral pseudo-randomness certificate for sampled graphs.
//!
//! For a `d`-regular graph `H` on `n` vertices with adjacency matrix `A`,
//! `lambda(H) = max_{i >= 2} |lambda_i(A)|`. Because the all-ones vector is an
//! eigenvector of `A` with eigenvalue `d`, this equals the operator norm of
//! `A - (d/n) J`. Both routes are computed and must agree.

mod martingale;

pub use martingale::{
    increment_eigenvalues, simulate_martingale, summand_matrix, MartingaleReport,
    MartingaleTrace, TailEstimate,
};

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler::SampledGraph;

/// Largest matrix the dense eigensolver accepts.
pub const MAX_EIGEN_ORDER: usize = 4096;

/// Agreement required between the two routes to `lambda(H)`.
pub const IDENTITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    E,
    #[serde(rename = "2")]
    Two,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::E => x.ln(),
            LogBase::Two => x.log2(),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "ln" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            _ => Err(Error::Config(format!("unknown log base {s:?} (expected e or 2)"))),
        }
    }
}

/// All eigenvalues of a real symmetric matrix, in descending order.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Config(format!("matrix is {}x{}, not square", n, m.ncols())));
    }
    if n > MAX_EIGEN_ORDER {
        return Err(Error::TooLarge {
            what: "dense eigensolver",
            n,
            limit: MAX_EIGEN_ORDER,
        });
    }
    let scale = m.amax().max(1.0);
    for j in 0..n {
        for i in j + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::Asymmetric { row: i, col: j });
            }
        }
    }
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Largest absolute eigenvalue of a symmetric matrix.
pub fn operator_norm(m: &DMatrix<f64>) -> Result<f64> {
    Ok(symmetric_eigenvalues(m)?
        .into_iter()
        .fold(0.0, |acc, x| acc.max(x.abs())))
}

pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// `lambda(H)` computed along both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralLambda {
    /// `max_{i >= 2} |lambda_i(A)|` from the sorted spectrum.
    pub via_spectrum: f64,
    /// `||A - (d/n) J||`.
    pub via_deflation: f64,
    /// `lambda_1(A)`, which must equal `d`.
    pub top_eigenvalue: f64,
}

impl SpectralLambda {
    pub fn lambda(&self) -> f64 {
        self.via_spectrum
    }
}

pub fn lambda_of_graph(g: &Graph) -> Result<SpectralLambda> {
    let n = g.n();
    let d = g.regular_degree().ok_or_else(|| {
        let expected = g.degree(0);
        let vertex = (0..n).find(|&u| g.degree(u) != expected).unwrap();
        Error::NotRegular {
            vertex,
            degree: g.degree(vertex),
            expected,
        }
    })?;
    if n < 2 {
        return Err(Error::InvalidOrder {
            n,
            reason: "lambda needs at least 2 vertices",
        });
    }
    let a = adjacency_matrix(g);
    let spectrum = symmetric_eigenvalues(&a)?;
    let via_spectrum = spectrum[1..].iter().fold(0.0f64, |acc, x| acc.max(x.abs()));

    let shift = d as f64 / n as f64;
    let deflated = a.map(|x| x - shift);
    let via_deflation = operator_norm(&deflated)?;

    if (via_spectrum - via_deflation).abs() > IDENTITY_TOLERANCE {
        return Err(Error::IdentityMismatch {
            sorted: via_spectrum,
            deflated: via_deflation,
        });
    }
    Ok(SpectralLambda {
        via_spectrum,
        via_deflation,
        top_eigenvalue: spectrum[0],
    })
}

/// `log log n / log n`.
pub fn deviation_rate(n: usize, base: LogBase) -> f64 {
    let ln = base.log(n as f64);
    base.log(ln) / ln
}

/// Hamiltonicity threshold `(log log n)^2 d / (1000 log n log log log n)`.
/// Defined when `log log log n > 0`.
pub fn ks_threshold(n: usize, d: f64, base: LogBase) -> Result<f64> {
    let l1 = base.log(n as f64);
    let l2 = base.log(l1);
    let l3 = base.log(l2);
    if !(l3 > 0.0) {
        return Err(Error::Domain {
            quantity: "Hamiltonicity threshold",
            n,
        });
    }
    Ok(l2 * l2 * d / (1000.0 * l1 * l3))
}

/// Operator Hoeffding tail `2n exp(-2 d t^2)`, for `0 < t < 1/2`.
pub fn hoeffding_tail(n: usize, d: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 0.5) {
        return Err(Error::TailParameter { t });
    }
    Ok(2.0 * n as f64 * (-2.0 * d * t * t).exp())
}

/// The tail at `d = (ln n)^3`, `t = ln ln n / ln n` in closed form:
/// `2 n^(1 - 2 (ln ln n)^2)`.
pub fn tail_closed_form(n: usize) -> f64 {
    let nf = n as f64;
    let ll = nf.ln().ln();
    2.0 * nf.powf(1.0 - 2.0 * ll * ll)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralCertificate {
    pub n: usize,
    pub d: usize,
    pub lambda: f64,
    pub t: f64,
    pub empirical_bound: f64,
    /// `None` when the threshold formula is undefined at this `n`.
    pub ks_bound: Option<f64>,
    /// `None` when `t` falls outside `(0, 1/2)`.
    pub tail_bound: Option<f64>,
    pub pass_empirical: bool,
    pub pass_ks: bool,
    pub log_base: LogBase,
}

impl SpectralCertificate {
    pub fn from_lambda(n: usize, d: usize, lambda: f64, base: LogBase) -> Self {
        let t = deviation_rate(n, base);
        let empirical_bound = 2.0 * d as f64 * t;
        let ks_bound = ks_threshold(n, d as f64, base).ok();
        let tail_bound = hoeffding_tail(n, d as f64, t).ok();
        Self {
            n,
            d,
            lambda,
            t,
            empirical_bound,
            ks_bound,
            tail_bound,
            pass_empirical: lambda <= empirical_bound,
            pass_ks: ks_bound.is_some_and(|b| lambda <= b),
            log_base: base,
        }
    }

    /// Whether the pass flags agree with the stored numbers.
    pub fn is_consistent(&self) -> bool {
        self.pass_empirical == (self.lambda <= self.empirical_bound)
            && self.pass_ks == self.ks_bound.is_some_and(|b| self.lambda <= b)
    }
}

pub fn certify(h: &SampledGraph, base: LogBase) -> Result<(SpectralCertificate, SpectralLambda)> {
    let lambda = lambda_of_graph(&h.graph)?;
    Ok((
        SpectralCertificate::from_lambda(h.n, h.d, lambda.lambda(), base),
        lambda,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn assert_spectrum(values: &[f64], expected: &[f64]) {
        assert_eq!(values.len(), expected.len());
        for (a, b) in values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9, "{values:?} vs {expected:?}");
        }
    }

    #[test]
    fn identity_spectrum() {
        let v = symmetric_eigenvalues(&DMatrix::identity(3, 3)).unwrap();
        assert_spectrum(&v, &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn complete_and_cycle_spectra() {
        let k4 = symmetric_eigenvalues(&adjacency_matrix(&Graph::complete(4))).unwrap();
        assert_spectrum(&k4, &[3.0, -1.0, -1.0, -1.0]);
        let c4 = symmetric_eigenvalues(&adjacency_matrix(&Graph::cycle(4))).unwrap();
        assert_spectrum(&c4, &[2.0, 0.0, 0.0, -2.0]);
    }

    #[test]
    fn asymmetric_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(symmetric_eigenvalues(&m), Err(Error::Asymmetric { .. })));
    }

    #[test]
    fn lambda_of_matching_complete_and_cycle() {
        let matching = Graph::from_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        assert!((lambda_of_graph(&matching).unwrap().lambda() - 1.0).abs() < 1e-9);
        let k = lambda_of_graph(&Graph::complete(9)).unwrap();
        assert!((k.lambda() - 1.0).abs() < 1e-9);
        assert!((k.top_eigenvalue - 8.0).abs() < 1e-9);
        // C_n: lambda_2 = 2cos(2pi/n); the largest |lambda_i|, i >= 2, is
        // 2 for even n (bipartite) and 2cos(pi/n) for odd n.
        for n in [5, 8, 13] {
            let g = Graph::cycle(n);
            let spectrum = symmetric_eigenvalues(&adjacency_matrix(&g)).unwrap();
            assert!((spectrum[1] - 2.0 * (2.0 * PI / n as f64).cos()).abs() < 1e-9, "C_{n}");
            let expected = if n % 2 == 0 { 2.0 } else { 2.0 * (PI / n as f64).cos() };
            let l = lambda_of_graph(&g).unwrap().lambda();
            assert!((l - expected).abs() < 1e-9, "C_{n}");
        }
    }

    #[test]
    fn lambda_rejects_irregular() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(lambda_of_graph(&path), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn ks_threshold_values() {
        let n = E.powi(16).round() as usize;
        let b = ks_threshold(n, 1000.0, LogBase::E).unwrap();
        // (ln 16)^2 / (16 ln ln 16) with ln n ~ 16
        assert!((b - 0.4711).abs() < 5e-4, "{b}");
        assert!(ks_threshold(15, 10.0, LogBase::E).is_err());
        assert!(ks_threshold(16, 10.0, LogBase::E).unwrap() > 0.0);
        let one = ks_threshold(1 << 20, 50.0, LogBase::E).unwrap();
        let two = ks_threshold(1 << 20, 100.0, LogBase::E).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-15);
        assert!(ks_threshold(4, 1.0, LogBase::Two).is_err());
        assert!(ks_threshold(5, 1.0, LogBase::Two).is_ok());
    }

    #[test]
    fn hoeffding_values() {
        let v = hoeffding_tail(256, 64.0, 0.25).unwrap();
        assert!((v - 512.0 * (-8.0f64).exp()).abs() < 1e-12);
        assert!((v - 0.17176).abs() < 1e-5);
        let near_zero = hoeffding_tail(10, 5.0, 1e-9).unwrap();
        assert!((near_zero - 20.0).abs() < 1e-9);
        for t in [0.0, 0.5, -0.1, 0.7] {
            assert!(hoeffding_tail(10, 5.0, t).is_err());
        }
    }

    #[test]
    fn closed_form_tail_at_default_parameters() {
        for n in [256usize, 1000, 4096, 1 << 20] {
            let ln = (n as f64).ln();
            let d = ln.powi(3);
            let t = deviation_rate(n, LogBase::E);
            let direct = hoeffding_tail(n, d, t).unwrap();
            let closed = tail_closed_form(n);
            assert!(((direct - closed) / closed).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn certificate_flags() {
        let k = Graph::complete(12);
        let h = crate::sampler::build_union_graph(
            &crate::colouring::circle_colouring(12).unwrap(),
            &crate::sampler::ColourSample {
                d: 11,
                entries: (0..11).map(crate::sampler::SampleEntry::Colour).collect(),
                seed: 0,
            },
        )
        .unwrap();
        assert_eq!(h.graph, k);
        let (cert, _) = certify(&h, LogBase::E).unwrap();
        assert!((cert.lambda - 1.0).abs() < 1e-9);
        assert!(cert.pass_empirical);
        assert!(cert.is_consistent());
        assert!(cert.ks_bound.is_none() == (ks_threshold(12, 11.0, LogBase::E).is_err()));
    }

    #[test]
    fn single_matching_fails_empirical_bound() {
        let n = 1024;
        let cert = SpectralCertificate::from_lambda(n, 1, 1.0, LogBase::E);
        let ln = (n as f64).ln();
        assert!((cert.empirical_bound - 2.0 * ln.ln() / ln).abs() < 1e-15);
        assert!((cert.empirical_bound - 0.5586).abs() < 1e-4);
        assert!(!cert.pass_empirical);
        assert!(cert.is_consistent());
    }

    #[test]
    fn log_base_parses() {
        assert_eq!("e".parse::<LogBase>().unwrap(), LogBase::E);
        assert_eq!("2".parse::<LogBase>().unwrap(), LogBase::Two);
        assert!("10".parse::<LogBase>().is_err());
        assert_eq!(serde_json::to_string(&LogBase::Two).unwrap(), "\"2\"");
    }
}
