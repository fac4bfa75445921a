//! Symmetric positive-definite Toeplitz log-determinants.
//!
//! The determinant of the `n × n` covariance factors as `Π r(k)`, where
//! `r(k) = var[X_k | X_1, …, X_{k−1}]` are the one-step prediction errors.
//! Durbin's recursion produces all of them in `O(n²)` time; the dense
//! Cholesky factor (whose squared diagonal is the same sequence) is kept as
//! an independent `O(n³)` cross-check.

use crate::error::{Error, Result};
use crate::exec::NeumaierSum;
use crate::fgn::AutocovarianceSequence;

/// Prediction errors at or below this are treated as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-300;

/// Largest dimension accepted by [`cholesky_oracle`].
pub const CHOLESKY_MAX_DIM: usize = 4096;

/// One-step prediction errors `r(1), …, r(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionErrors {
    values: Vec<f64>,
}

impl PredictionErrors {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `r(n)`, the finite-sample estimate of the innovation variance.
    pub fn last(&self) -> f64 {
        *self
            .values
            .last()
            .expect("prediction errors are never empty")
    }

    /// `log det` of every leading block: element `m` is `Σ_{k≤m+1} log r(k)`.
    pub fn log_det_prefix(&self) -> Vec<f64> {
        let mut acc = NeumaierSum::default();
        self.values
            .iter()
            .map(|r| {
                acc.add(r.ln());
                acc.value()
            })
            .collect()
    }
}

/// Log-determinant of a covariance block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDetResult {
    pub n: usize,
    /// Natural log; authoritative when `det` underflows.
    pub log_det: f64,
    pub det: f64,
}

impl LogDetResult {
    pub fn from_log_det(n: usize, log_det: f64) -> Self {
        Self {
            n,
            log_det,
            det: log_det.exp(),
        }
    }
}

/// Durbin's recursion on `(ρ_0, …, ρ_{n−1})`.
pub fn prediction_errors(acov: &AutocovarianceSequence) -> Result<PredictionErrors> {
    let rho = acov.values();
    let n = rho.len();
    let mut r = Vec::with_capacity(n);
    r.push(rho[0]);

    // coef[1..=m] are the order-m forward prediction coefficients.
    let mut coef = vec![0.0; n];
    let mut prev = vec![0.0; n];
    for m in 1..n {
        let mut acc = rho[m];
        for j in 1..m {
            acc -= coef[j] * rho[m - j];
        }
        let reflection = acc / r[m - 1];

        prev[1..m].copy_from_slice(&coef[1..m]);
        for j in 1..m {
            coef[j] = prev[j] - reflection * prev[m - j];
        }
        coef[m] = reflection;

        let next = r[m - 1] * ((1.0 - reflection) * (1.0 + reflection));
        if !(next > SINGULARITY_THRESHOLD) {
            return Err(Error::Singular {
                index: m + 1,
                value: next,
            });
        }
        r.push(next);
    }
    Ok(PredictionErrors { values: r })
}

/// `log det` via the prediction errors. The exactly singular fGn endpoint
/// `H = 1`, `n ≥ 2` is reported as `log_det = −∞`, `det = 0`.
pub fn log_det(acov: &AutocovarianceSequence) -> Result<LogDetResult> {
    let n = acov.len();
    if n >= 2 && acov.hurst().is_some_and(|h| h.value() == 1.0) {
        return Ok(LogDetResult {
            n,
            log_det: f64::NEG_INFINITY,
            det: 0.0,
        });
    }
    let errors = prediction_errors(acov)?;
    let log_det = errors
        .values()
        .iter()
        .map(|r| r.ln())
        .collect::<NeumaierSum>()
        .value();
    Ok(LogDetResult::from_log_det(n, log_det))
}

/// Result of the dense cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyOracle {
    pub result: LogDetResult,
    /// Squared diagonal `ℓ²_{k,k}` of the Cholesky factor; equals `r(k)`.
    pub pivots: Vec<f64>,
}

/// Materialises the Toeplitz matrix and factors it densely.
pub fn cholesky_oracle(acov: &AutocovarianceSequence) -> Result<CholeskyOracle> {
    let rho = acov.values();
    let n = rho.len();
    if n > CHOLESKY_MAX_DIM {
        return Err(Error::domain(
            "cholesky_oracle",
            format!("dimension {n} exceeds {CHOLESKY_MAX_DIM}"),
        ));
    }

    // Row-major lower triangle, overwritten in place by the factor.
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            l[i * n + j] = rho[i - j];
        }
    }

    let mut pivots = Vec::with_capacity(n);
    for j in 0..n {
        let mut d = l[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite {
                pivot: j + 1,
                value: d,
            });
        }
        pivots.push(d);
        let ljj = d.sqrt();
        l[j * n + j] = ljj;
        for i in (j + 1)..n {
            let mut s = l[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / ljj;
        }
    }

    let log_det = pivots
        .iter()
        .map(|p| p.ln())
        .collect::<NeumaierSum>()
        .value();
    Ok(CholeskyOracle {
        result: LogDetResult::from_log_det(n, log_det),
        pivots,
    })
}
