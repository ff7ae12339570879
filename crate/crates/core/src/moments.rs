//! Monte Carlo eigenvalue moments of Wigner and Wishart matrices, compared
//! with their limits: `C_{k/2}` (zero for odd `k`) and `N_k(γ)`, `γ = m/n`.
//!
//! Normalization: a Wigner sample is `X/√n` with `X` symmetric and every
//! entry on or above the diagonal standard Gaussian; a Wishart sample is
//! `G Gᵀ / n` with `G` an `m × n` standard Gaussian matrix, and its moment is
//! `(1/m) tr(W^k)`. Trial `t` draws from the ChaCha stream `t` of `seed`, so an
//! estimate depends only on `(seed, trials)`, never on thread scheduling.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{catalan, narayana_poly, ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is {rows}x{cols}, not square")]
    DimensionMismatch { rows: usize, cols: usize },
    #[error("unknown ensemble {0:?} (expected wigner or wishart)")]
    UnknownEnsemble(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Wigner,
    Wishart,
}

impl FromStr for Ensemble {
    type Err = MomentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "wigner" => Ok(Ensemble::Wigner),
            "wishart" => Ok(Ensemble::Wishart),
            _ => Err(MomentError::UnknownEnsemble(s.to_string())),
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::Wigner => "wigner",
            Ensemble::Wishart => "wishart",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub ensemble: Ensemble,
    pub k: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub estimate: f64,
    /// Sample standard deviation of the per-trial moments over `√trials`;
    /// NaN for a single trial.
    pub stderr: f64,
    pub target: f64,
    #[serde(skip)]
    pub target_exact: BigRational,
    #[serde(skip)]
    pub per_trial: Vec<f64>,
}

impl MomentEstimate {
    /// `|estimate - target|` in standard errors.
    pub fn deviation_in_stderrs(&self) -> f64 {
        (self.estimate - self.target).abs() / self.stderr
    }

    pub fn within(&self, stderrs: f64) -> bool {
        (self.estimate - self.target).abs() <= stderrs * self.stderr
    }
}

/// `tr(A^k)`; the power is split as `tr(A^a A^b)` with `a = k/2`, so only
/// about `k/2` matrix products are formed.
pub fn trace_power(a: &Array2<f64>, k: usize) -> Result<f64, MomentError> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(MomentError::DimensionMismatch { rows, cols });
    }
    match k {
        0 => return Ok(rows as f64),
        1 => return Ok(a.diag().sum()),
        _ => {}
    }
    let half = k / 2;
    let mut low = a.clone();
    for _ in 1..half {
        low = low.dot(a);
    }
    let high = if k - half == half { low.clone() } else { low.dot(a) };
    Ok((&low * &high.t()).sum())
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Symmetric `n × n` Gaussian matrix scaled by `1/√n`.
pub fn sample_wigner<R: Rng>(n: usize, rng: &mut R) -> Array2<f64> {
    let scale = 1.0 / (n as f64).sqrt();
    let mut a = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let x: f64 = rng.sample::<f64, _>(StandardNormal) * scale;
            a[[i, j]] = x;
            a[[j, i]] = x;
        }
    }
    a
}

/// `G Gᵀ / n` for an `m × n` standard Gaussian `G`.
pub fn sample_wishart<R: Rng>(n: usize, m: usize, rng: &mut R) -> Array2<f64> {
    let g = Array2::from_shape_simple_fn((m, n), || rng.sample::<f64, _>(StandardNormal));
    g.dot(&g.t()) / n as f64
}

fn summarize(per_trial: &[f64]) -> (f64, f64) {
    let t = per_trial.len() as f64;
    let mean = per_trial.iter().sum::<f64>() / t;
    if per_trial.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = per_trial.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
    (mean, (var / t).sqrt())
}

fn run_trials<F>(trials: usize, seed: u64, trial: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync + Send,
{
    (0..trials)
        .into_par_iter()
        .map(|t| trial(&mut trial_rng(seed, t)))
        .collect()
}

fn require(cond: bool, what: &str) -> Result<(), MomentError> {
    if cond {
        Ok(())
    } else {
        Err(MomentError::InvalidParameter(what.to_string()))
    }
}

/// Limit of `E[(1/n) tr(A^k)]` for the Wigner ensemble.
pub fn wigner_target(k: usize) -> BigRational {
    if k % 2 == 1 {
        BigRational::zero()
    } else {
        BigRational::from_integer(catalan((k / 2) as u64))
    }
}

/// Limit of `E[(1/m) tr(W^k)]` for the Wishart ensemble with `γ = m/n`.
pub fn wishart_target(k: usize, n: usize, m: usize) -> BigRational {
    narayana_poly(k as u64).eval(&ratio(m as u64, n as u64))
}

pub fn wigner_moment(k: usize, n: usize, trials: usize, seed: u64) -> Result<MomentEstimate, MomentError> {
    require(k >= 1, "k must be at least 1")?;
    require(n >= 2, "n must be at least 2")?;
    require(trials >= 1, "trials must be at least 1")?;
    let per_trial = run_trials(trials, seed, |rng| {
        let a = sample_wigner(n, rng);
        trace_power(&a, k).expect("square by construction") / n as f64
    });
    let (estimate, stderr) = summarize(&per_trial);
    let target_exact = wigner_target(k);
    Ok(MomentEstimate {
        ensemble: Ensemble::Wigner,
        k,
        n,
        m: None,
        trials,
        seed,
        estimate,
        stderr,
        target: target_exact.to_f64().unwrap_or(f64::NAN),
        target_exact,
        per_trial,
    })
}

pub fn wishart_moment(k: usize, n: usize, m: usize, trials: usize, seed: u64) -> Result<MomentEstimate, MomentError> {
    require(k >= 1, "k must be at least 1")?;
    require(n >= 2 && m >= 2, "m and n must be at least 2")?;
    require(trials >= 1, "trials must be at least 1")?;
    let per_trial = run_trials(trials, seed, |rng| {
        let w = sample_wishart(n, m, rng);
        trace_power(&w, k).expect("square by construction") / m as f64
    });
    let (estimate, stderr) = summarize(&per_trial);
    let target_exact = wishart_target(k, n, m);
    Ok(MomentEstimate {
        ensemble: Ensemble::Wishart,
        k,
        n,
        m: Some(m),
        trials,
        seed,
        estimate,
        stderr,
        target: target_exact.to_f64().unwrap_or(f64::NAN),
        target_exact,
        per_trial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn trace_power_small() {
        let id = Array2::<f64>::eye(3);
        assert_eq!(trace_power(&id, 5).unwrap(), 3.0);
        let d = array![[1.0, 0.0], [0.0, 2.0]];
        assert_eq!(trace_power(&d, 2).unwrap(), 5.0);
        assert_eq!(trace_power(&d, 0).unwrap(), 2.0);
        assert_eq!(trace_power(&d, 1).unwrap(), 3.0);
        let rect = Array2::<f64>::zeros((2, 3));
        assert_eq!(trace_power(&rect, 2), Err(MomentError::DimensionMismatch { rows: 2, cols: 3 }));
    }

    #[test]
    fn nonsymmetric_trace() {
        let a = array![[0.0, 1.0], [0.0, 0.0]];
        assert_eq!(trace_power(&a, 2).unwrap(), 0.0);
        let b = array![[1.0, 2.0], [3.0, 4.0]];
        // b^3 = [[37, 54], [81, 118]]
        assert_eq!(trace_power(&b, 3).unwrap(), 155.0);
    }

    #[test]
    fn targets() {
        assert_eq!(wigner_target(2), ratio(1, 1));
        assert_eq!(wigner_target(4), ratio(2, 1));
        assert_eq!(wigner_target(3), ratio(0, 1));
        assert_eq!(wishart_target(1, 7, 3), ratio(1, 1));
        assert_eq!(wishart_target(2, 2000, 1000), ratio(3, 2));
        assert_eq!(wishart_target(3, 50, 50), ratio(5, 1));
    }

    #[test]
    fn parameter_checks() {
        assert!(wigner_moment(0, 10, 1, 0).is_err());
        assert!(wigner_moment(2, 1, 1, 0).is_err());
        assert!(wishart_moment(2, 10, 10, 0, 0).is_err());
        assert!("gue".parse::<Ensemble>().is_err());
    }

    #[test]
    fn single_trial_has_no_stderr() {
        let e = wigner_moment(2, 20, 1, 3).unwrap();
        assert!(e.stderr.is_nan());
        assert_eq!(e.per_trial.len(), 1);
    }

    #[test]
    fn first_wishart_moment_is_entry_variance() {
        let e = wishart_moment(1, 300, 200, 4, 11).unwrap();
        assert!((e.estimate - 1.0).abs() < 0.01, "{}", e.estimate);
    }
}
