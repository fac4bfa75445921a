//! Differential entropy of Gaussian vectors and of fGn blocks.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fgn::{autocovariance, AutocovarianceSequence, HurstIndex};
use crate::toeplitz::{log_det, prediction_errors};

/// Entropy of one standard normal sample, `(1 + log 2π) / 2` nats.
pub const GAUSSIAN_UNIT_ENTROPY: f64 = 1.418_938_533_204_672_7;

/// Root of `3^{2H} log 3 − 2·2^{2H} log 2 = 0`; `ρ_2(H)` is decreasing below
/// it and increasing above.
pub const RHO2_TURNING_POINT: f64 = 0.286_814_361_717_575_4;

/// `n/2·(1 + log 2π) + log_det/2`. A `−∞` log-determinant propagates.
pub fn gaussian_entropy(n: usize, log_det: f64) -> f64 {
    n as f64 * GAUSSIAN_UNIT_ENTROPY + 0.5 * log_det
}

/// Entropy of `n` consecutive fGn samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub h: HurstIndex,
    pub n: usize,
    pub log_det: f64,
    /// Nats.
    pub entropy: f64,
    /// `log_det / 2`, entropy relative to the standard Gaussian reference.
    pub reduced_entropy: f64,
    /// `entropy / n`.
    pub normalized_entropy: f64,
}

impl EntropyReport {
    fn from_log_det(h: HurstIndex, n: usize, log_det: f64) -> Self {
        let entropy = gaussian_entropy(n, log_det);
        Self {
            h,
            n,
            log_det,
            entropy,
            reduced_entropy: 0.5 * log_det,
            normalized_entropy: entropy / n as f64,
        }
    }

    pub fn det(&self) -> f64 {
        self.log_det.exp()
    }

    /// Entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.entropy / LN_2
    }
}

/// Entropy of `(G_1, …, G_n)` for fGn with index `h`.
pub fn fgn_entropy(h: HurstIndex, n: usize) -> Result<EntropyReport> {
    let acov = AutocovarianceSequence::fgn(h, n)?;
    let ld = log_det(&acov)?;
    Ok(EntropyReport::from_log_det(h, n, ld.log_det))
}

/// Entropy reports for every block length `1..=n_max`, from a single
/// recursion.
pub fn fgn_entropy_profile(h: HurstIndex, n_max: usize) -> Result<Vec<EntropyReport>> {
    let acov = AutocovarianceSequence::fgn(h, n_max)?;
    if h.value() == 1.0 {
        return Ok((1..=n_max)
            .map(|n| {
                EntropyReport::from_log_det(h, n, if n == 1 { 0.0 } else { f64::NEG_INFINITY })
            })
            .collect());
    }
    let prefix = prediction_errors(&acov)?.log_det_prefix();
    Ok(prefix
        .into_iter()
        .enumerate()
        .map(|(i, ld)| EntropyReport::from_log_det(h, i + 1, ld))
        .collect())
}

/// `det Σ_2(H) = 2^{2H} − 2^{4H−2}`.
pub fn closed_form_det2(h: HurstIndex) -> f64 {
    let hv = h.value();
    -(2f64.powf(4.0 * hv - 2.0)) + 2f64.powf(2.0 * hv)
}

/// `det Σ_3(H) = 1 + 2ρ_1²ρ_2 − ρ_2² − 2ρ_1²`.
pub fn closed_form_det3(h: HurstIndex) -> f64 {
    let r1 = autocovariance(h, 1);
    let r2 = autocovariance(h, 2);
    1.0 + 2.0 * r1 * r1 * r2 - r2 * r2 - 2.0 * r1 * r1
}

/// A failed check: `lhs` should have related to `rhs` as the check demands.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub check: &'static str,
    pub h: f64,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
}

/// Per-`n` summary of a [`monotonicity_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    /// Grid point with the largest determinant.
    pub argmax: f64,
    pub increasing_below_half: bool,
    pub decreasing_above_half: bool,
    /// `det Σ_n ≤ det Σ_{n−1}` at every grid point (vacuous for `n = 1`).
    pub decreasing_in_n: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub violations: Vec<Violation>,
}

/// Default slack for the monotonicity comparisons (on `log det`).
pub const SCAN_SLACK: f64 = 1e-12;

fn validate_grid(grid: &[HurstIndex]) -> Result<()> {
    for h in grid {
        if !h.is_interior() {
            return Err(Error::Config(format!(
                "scan grid must lie in (0, 1), got {h}"
            )));
        }
    }
    for w in grid.windows(2) {
        if !(w[1].value() - w[0].value() >= 1e-4) {
            return Err(Error::Config(format!(
                "scan grid must be strictly increasing with step ≥ 1e-4, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Checks that `det Σ_n(H)` rises on grid points up to ½, falls beyond ½,
/// peaks at ½, and decreases in `n`. Comparisons are made on `log det`: a
/// step in `H` passes when `next > prev − slack`, a step in `n` passes when
/// `log det Σ_{n+1} ≤ log det Σ_n + slack`.
///
/// Violations are data; the only errors are an invalid grid or a numerical
/// failure of the recursion.
pub fn monotonicity_scan(
    h_grid: &[HurstIndex],
    n_max: usize,
    slack: f64,
    exec: Execution,
) -> Result<ScanReport> {
    validate_grid(h_grid)?;
    if n_max < 2 {
        return Err(Error::Config(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }

    let profiles = exec
        .map(h_grid, |&h| {
            let acov = AutocovarianceSequence::fgn(h, n_max)?;
            Ok(prediction_errors(&acov)?.log_det_prefix())
        })
        .into_iter()
        .collect::<Result<Vec<Vec<f64>>>>()?;

    let half = h_grid.iter().position(|h| (h.value() - 0.5).abs() <= 1e-12);
    let mut rows = Vec::with_capacity(n_max);
    let mut violations = Vec::new();

    for n in 1..=n_max {
        let ld: Vec<f64> = profiles.iter().map(|p| p[n - 1]).collect();
        let mut row = ScanRow {
            n,
            argmax: f64::NAN,
            increasing_below_half: true,
            decreasing_above_half: true,
            decreasing_in_n: true,
        };
        if let Some((i, _)) = ld.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)) {
            row.argmax = h_grid[i].value();
        }

        if n >= 2 {
            for (i, w) in h_grid.windows(2).enumerate() {
                let (a, b) = (w[0].value(), w[1].value());
                let (prev, next) = (ld[i], ld[i + 1]);
                if b <= 0.5 + 1e-12 && !(next > prev - slack) {
                    row.increasing_below_half = false;
                    violations.push(Violation {
                        check: "det-increasing-below-half",
                        h: b,
                        n,
                        lhs: next,
                        rhs: prev,
                    });
                }
                if a >= 0.5 - 1e-12 && !(next < prev + slack) {
                    row.decreasing_above_half = false;
                    violations.push(Violation {
                        check: "det-decreasing-above-half",
                        h: b,
                        n,
                        lhs: next,
                        rhs: prev,
                    });
                }
            }
            if let Some(i) = half {
                let peak = ld[i];
                if ld
                    .iter()
                    .enumerate()
                    .any(|(j, &v)| j != i && !(v < peak + slack))
                {
                    violations.push(Violation {
                        check: "argmax-at-half",
                        h: row.argmax,
                        n,
                        lhs: ld.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                        rhs: peak,
                    });
                }
            }
            for (j, p) in profiles.iter().enumerate() {
                if p[n - 1] > p[n - 2] + slack {
                    row.decreasing_in_n = false;
                    violations.push(Violation {
                        check: "det-decreasing-in-n",
                        h: h_grid[j].value(),
                        n,
                        lhs: p[n - 1],
                        rhs: p[n - 2],
                    });
                }
            }
        }
        rows.push(row);
    }

    Ok(ScanReport { rows, violations })
}

/// Entropy of one sample in bits for a unit-variance Gaussian; exposed for
/// callers that want the base-2 convention.
pub fn nats_to_bits(nats: f64) -> f64 {
    nats / LN_2
}
