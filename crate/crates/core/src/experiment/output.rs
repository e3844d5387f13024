use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::{BatchResult, TrialRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl OutputFormat {
    /// Picks the format from a file extension.
    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) => ext.parse(),
            None => Err(Error::Config(format!(
                "cannot infer output format of {}",
                path.display()
            ))),
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

/// One CSV line per trial. Missing values are empty cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub trial: usize,
    pub seed: u64,
    pub clean: bool,
    pub resamples: usize,
    pub lambda: Option<f64>,
    pub t: Option<f64>,
    pub empirical_bound: Option<f64>,
    pub ks_bound: Option<f64>,
    pub pass_empirical: Option<bool>,
    pub pass_ks: Option<bool>,
    pub found: bool,
    pub colour_count: Option<usize>,
    pub ms_sample: f64,
    pub ms_spectral: f64,
    pub ms_hamilton: f64,
}

impl From<&TrialRecord> for CsvRow {
    fn from(r: &TrialRecord) -> Self {
        let cert = r.certificate.as_ref();
        Self {
            trial: r.trial,
            seed: r.seed,
            clean: r.clean,
            resamples: r.resamples,
            lambda: cert.map(|c| c.lambda),
            t: cert.map(|c| c.t),
            empirical_bound: cert.map(|c| c.empirical_bound),
            ks_bound: cert.and_then(|c| c.ks_bound),
            pass_empirical: cert.map(|c| c.pass_empirical),
            pass_ks: cert.map(|c| c.pass_ks),
            found: r.found,
            colour_count: r.colour_count,
            ms_sample: r.times.ms_sample,
            ms_spectral: r.times.ms_spectral,
            ms_hamilton: r.times.ms_hamilton,
        }
    }
}

pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(batch: &BatchResult, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, batch)?;
    Ok(())
}
