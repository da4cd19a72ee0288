//! Summary statistics and the one-tailed one-sample t-test.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator); 0 for a single sample.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

pub fn summarize(samples: &[f64]) -> Result<Summary> {
    if samples.is_empty() {
        return Err(Error::Stats("cannot summarize an empty sample".into()));
    }
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        let ss: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Summary {
        n,
        mean,
        std,
        min,
        max,
    })
}

/// Outcome of testing `h0: μ ≤ mu0` against `h1: μ > mu0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
    pub mu0: f64,
    pub t_statistic: f64,
    pub critical: f64,
    /// `t_statistic > critical`.
    pub reject: bool,
}

/// `t = (x̄ − μ₀) / (s / √n)`, compared against a supplied critical value.
pub fn one_tailed_t(samples: &[f64], mu0: f64, critical: f64) -> Result<TTestResult> {
    if samples.len() < 2 {
        return Err(Error::Stats(format!(
            "t-test needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let s = summarize(samples)?;
    if s.std <= 0.0 {
        return Err(Error::Stats(
            "t-test undefined for zero-variance samples".into(),
        ));
    }
    let t_statistic = (s.mean - mu0) / (s.std / (s.n as f64).sqrt());
    Ok(TTestResult {
        mean: s.mean,
        std: s.std,
        n: s.n,
        mu0,
        t_statistic,
        critical,
        reject: t_statistic > critical,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Significance {
    OnePercent,
    FivePercent,
}

impl std::str::FromStr for Significance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_end_matches('%') {
            "1" | "0.01" => Ok(Self::OnePercent),
            "5" | "0.05" => Ok(Self::FivePercent),
            _ => Err(Error::Stats(format!(
                "unsupported significance level `{s}`"
            ))),
        }
    }
}

/// One-tailed Student t critical values by sample count, large-sample rows
/// only: (n, 1%, 5%).
const T_TABLE: [(usize, f64, f64); 5] = [
    (100, 2.364, 1.660),
    (200, 2.345, 1.653),
    (500, 2.334, 1.648),
    (1000, 2.330, 1.646),
    (10_000, 2.327, 1.645),
];

/// Table lookup of the one-tailed critical value, using the largest row not
/// exceeding `n`. Samples smaller than 100 are outside the table; supply a
/// critical value explicitly for those.
pub fn critical_value(significance: Significance, n: usize) -> Result<f64> {
    let row = T_TABLE
        .iter()
        .rev()
        .find(|&&(rows_n, _, _)| rows_n <= n)
        .ok_or_else(|| {
            Error::Stats(format!(
                "no tabulated critical value for n = {n} (need n >= 100); pass one explicitly"
            ))
        })?;
    Ok(match significance {
        Significance::OnePercent => row.1,
        Significance::FivePercent => row.2,
    })
}
