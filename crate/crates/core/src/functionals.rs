//! Alternative entropy functionals built from the covariance entries.
//!
//! ```text
//! F¹_H(N) = Σ_{k=1}^{N} (2ρ_k)²            E¹_H(N) = −φ(H) F¹_H(N)
//! F²_H(N) = Σ_{k=1}^{N} (N−k+1)|2ρ_k|      E²_H(N) = −φ(H) F²_H(N)
//! φ(H)    = (H − ½)² / (1 − H)
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::{Execution, NeumaierSum};
use crate::fgn::{autocovariance, even_binomial_coefficients, HurstIndex};
use crate::specfun::hurwitz_zeta;

/// `φ(H) = (H − ½)² / (1 − H)`; infinite at `H = 1`.
pub fn phi(h: HurstIndex) -> f64 {
    let hv = h.value();
    (hv - 0.5).powi(2) / (1.0 - hv)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalReport {
    pub h: HurstIndex,
    pub n_terms: u64,
    pub f1: f64,
    pub f2: f64,
    pub e1: f64,
    pub e2: f64,
    pub phi: f64,
}

/// `(F¹_H(N), F²_H(N))`, defined on the closed range `0 ≤ H ≤ 1`.
pub fn f_values(h: HurstIndex, n_terms: u64, exec: Execution) -> (f64, f64) {
    let n = n_terms as f64;
    let f1 = exec.sum_range(1..=n_terms, |k| {
        let t = 2.0 * autocovariance(h, k);
        t * t
    });
    let f2 = exec.sum_range(1..=n_terms, |k| {
        (n - k as f64 + 1.0) * (2.0 * autocovariance(h, k)).abs()
    });
    (f1, f2)
}

/// `F¹, F², E¹, E²` for `0 ≤ H < 1`, `N ≥ 1`.
pub fn functional_values(h: HurstIndex, n_terms: u64) -> Result<FunctionalReport> {
    functional_values_with(h, n_terms, Execution::default())
}

pub fn functional_values_with(
    h: HurstIndex,
    n_terms: u64,
    exec: Execution,
) -> Result<FunctionalReport> {
    if h.value() == 1.0 {
        return Err(Error::domain(
            "functional_values",
            "φ(H) has a pole at H = 1",
        ));
    }
    if n_terms == 0 {
        return Err(Error::domain("functional_values", "N must be at least 1"));
    }
    let (f1, f2) = f_values(h, n_terms, exec);
    let phi = phi(h);
    Ok(FunctionalReport {
        h,
        n_terms,
        f1,
        f2,
        // φ = 0 exactly at H = ½; keep the product an exact zero.
        e1: if phi == 0.0 { 0.0 } else { -phi * f1 },
        e2: if phi == 0.0 { 0.0 } else { -phi * f2 },
        phi,
    })
}

/// Large-`N` behaviour of a functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `E(N) → constant`.
    SeriesLimit,
    /// `E(N) / log N → constant`.
    LogScaling,
    /// `E(N) / N^exponent → constant`.
    PowerScaling,
    /// `E(N) / N → constant`.
    LinearNormalized,
    /// `E(N) = 0` for all `N`.
    Zero,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::SeriesLimit => "series-limit",
            Regime::LogScaling => "log-scaling",
            Regime::PowerScaling => "power-scaling",
            Regime::LinearNormalized => "linear-normalized",
            Regime::Zero => "zero",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReference {
    pub h: HurstIndex,
    pub regime: Regime,
    pub constant: f64,
    pub exponent: Option<f64>,
}

const THREE_QUARTERS_TOL: f64 = 1e-12;

/// Leading large-`N` behaviour of `E¹_H(N)`.
///
/// Since `(2ρ_k)² ~ 4H²(2H−1)² k^{4H−4}`, the series converges for `H < ¾`,
/// grows like `log N` at `¾` and like `N^{4H−3}` above, with constants
/// `−H²(2H−1)⁴/(1−H)` and `−H²(2H−1)⁴/((1−H)(4H−3))` respectively.
pub fn e1_asymptotic(h: HurstIndex) -> Result<AsymptoticReference> {
    h.require_interior("e1_asymptotic")?;
    let hv = h.value();
    let lead = hv * hv * (2.0 * hv - 1.0).powi(4) / (1.0 - hv);
    let r = if (hv - 0.75).abs() <= THREE_QUARTERS_TOL {
        AsymptoticReference {
            h,
            regime: Regime::LogScaling,
            constant: -lead,
            exponent: None,
        }
    } else if hv > 0.75 {
        AsymptoticReference {
            h,
            regime: Regime::PowerScaling,
            constant: -lead / (4.0 * hv - 3.0),
            exponent: Some(4.0 * hv - 3.0),
        }
    } else {
        let limit = f1_series_limit(h)?;
        AsymptoticReference {
            h,
            regime: Regime::SeriesLimit,
            constant: if hv == 0.5 { 0.0 } else { -phi(h) * limit },
            exponent: None,
        }
    };
    Ok(r)
}

/// Leading large-`N` behaviour of `E²_H(N)`.
///
/// The inner sums telescope: `Σ_{k≤j} 2ρ_k = (j+1)^{2H} − j^{2H} − 1`, so
/// `F²_H(N) = |(N+1)^{2H} − N − 1|`. Hence `E²/N^{2H} → −φ(H)` above ½ and
/// `E²/N → −φ(H)·Σ_k |2ρ_k| = −φ(H)` below.
pub fn e2_asymptotic(h: HurstIndex) -> Result<AsymptoticReference> {
    h.require_interior("e2_asymptotic")?;
    let hv = h.value();
    let r = if hv == 0.5 {
        AsymptoticReference {
            h,
            regime: Regime::Zero,
            constant: 0.0,
            exponent: None,
        }
    } else if hv > 0.5 {
        AsymptoticReference {
            h,
            regime: Regime::PowerScaling,
            constant: -phi(h),
            exponent: Some(2.0 * hv),
        }
    } else {
        AsymptoticReference {
            h,
            regime: Regime::LinearNormalized,
            constant: -phi(h),
            exponent: Some(1.0),
        }
    };
    Ok(r)
}

/// Lags summed explicitly before the tail expansion takes over.
const SERIES_HEAD: u64 = 1000;

/// `Σ_{k≥1} (2ρ_k)²` for `0 < H < ¾`.
///
/// The first [`SERIES_HEAD`] terms are summed directly. Beyond that,
/// `(2ρ_k)² = k^{4H}(c₁²k⁻⁴ + 2c₁c₂k⁻⁶ + (c₂² + 2c₁c₃)k⁻⁸ + …)` with
/// `c_j = 2·C(2H, 2j)`, and each power sum is a Hurwitz zeta value. The
/// neglected remainder is `O(K^{4H−9})`.
pub fn f1_series_limit(h: HurstIndex) -> Result<f64> {
    h.require_interior("f1_series_limit")?;
    let hv = h.value();
    if hv >= 0.75 - THREE_QUARTERS_TOL {
        return Err(Error::domain(
            "f1_series_limit",
            format!("series diverges for H ≥ 3/4, got {hv}"),
        ));
    }
    let head: NeumaierSum = (1..=SERIES_HEAD)
        .map(|k| {
            let t = 2.0 * autocovariance(h, k);
            t * t
        })
        .collect();

    let a2 = 4.0 * hv;
    let c = even_binomial_coefficients(2.0 * hv);
    let from = (SERIES_HEAD + 1) as f64;
    let tail = c[0] * c[0] * hurwitz_zeta(4.0 - a2, from)?
        + 2.0 * c[0] * c[1] * hurwitz_zeta(6.0 - a2, from)?
        + (c[1] * c[1] + 2.0 * c[0] * c[2]) * hurwitz_zeta(8.0 - a2, from)?;
    Ok(head.value() + tail)
}

/// Upper bound on `Σ_{k>K} (2ρ_k)²` for `H < ¾`:
/// `C(H) K^{4H−3} / (3 − 4H)` with `C(H) = 1.1·(4H(2H−1))²`.
pub fn series_tail_bound(h: HurstIndex, k: u64) -> Result<f64> {
    h.require_interior("series_tail_bound")?;
    let hv = h.value();
    if hv >= 0.75 {
        return Err(Error::domain("series_tail_bound", "requires H < 3/4"));
    }
    let c = 1.1 * (4.0 * hv * (2.0 * hv - 1.0)).powi(2);
    Ok(c * (k as f64).powf(4.0 * hv - 3.0) / (3.0 - 4.0 * hv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: f64) -> HurstIndex {
        HurstIndex::new(v).unwrap()
    }

    #[test]
    fn zero_at_white_noise() {
        for n in [1, 2, 10, 1000] {
            let r = functional_values(h(0.5), n).unwrap();
            assert_eq!(r.e1, 0.0);
            assert_eq!(r.e2, 0.0);
        }
    }

    #[test]
    fn endpoint_values() {
        for n in [1u64, 8, 100] {
            let r = functional_values(h(0.0), n).unwrap();
            assert!((r.e1 + 0.25).abs() < 1e-12);
            assert!((r.e2 + n as f64 / 4.0).abs() < 1e-12);
            let (f1, f2) = f_values(h(1.0), n, Execution::Sequential);
            assert_eq!(f1, 4.0 * n as f64);
            assert_eq!(f2, (n * (n + 1)) as f64);
        }
        assert!(functional_values(h(1.0), 5).is_err());
        assert!(functional_values(h(0.3), 0).is_err());
    }

    #[test]
    fn e1_regimes() {
        let r = e1_asymptotic(h(0.75)).unwrap();
        assert_eq!(r.regime, Regime::LogScaling);
        assert!((r.constant + 9.0 / 64.0).abs() < 1e-15);

        let r = e1_asymptotic(h(0.8)).unwrap();
        assert_eq!(r.regime, Regime::PowerScaling);
        assert!((r.exponent.unwrap() - 0.2).abs() < 1e-15);
        let expected = -(0.8f64.powi(2)) * 0.6f64.powi(4) / (0.2 * 0.2);
        assert!((r.constant - expected).abs() < 1e-12);

        let r = e1_asymptotic(h(0.5)).unwrap();
        assert_eq!(r.regime, Regime::SeriesLimit);
        assert_eq!(r.constant, 0.0);

        assert!(e1_asymptotic(h(0.0)).is_err());
        assert!(e1_asymptotic(h(1.0)).is_err());
    }

    #[test]
    fn e2_regimes() {
        assert_eq!(e2_asymptotic(h(0.5)).unwrap().regime, Regime::Zero);
        let r = e2_asymptotic(h(0.7)).unwrap();
        assert_eq!(r.regime, Regime::PowerScaling);
        assert!((r.exponent.unwrap() - 1.4).abs() < 1e-15);
        assert!((r.constant + 0.04 / 0.3).abs() < 1e-15);
        assert_eq!(
            e2_asymptotic(h(0.3)).unwrap().regime,
            Regime::LinearNormalized
        );
    }

    #[test]
    fn regime_names() {
        assert_eq!(Regime::LogScaling.to_string(), "log-scaling");
        assert_eq!(Regime::LinearNormalized.to_string(), "linear-normalized");
    }

    #[test]
    fn series_limit_matches_long_partial_sum() {
        // For H = 0.3 the terms decay like k^{-2.8}; a 10^6-term partial sum
        // plus its integral tail is accurate to ~1e-14.
        let hv = 0.3;
        let partial = f_values(h(hv), 1_000_000, Execution::Sequential).0;
        let tail = (4.0 * hv * hv * (2.0f64 * hv - 1.0).powi(2)) * 1e6f64.powf(4.0 * hv - 3.0)
            / (3.0 - 4.0 * hv);
        let limit = f1_series_limit(h(hv)).unwrap();
        assert!(
            (partial + tail - limit).abs() < 1e-12,
            "{} vs {limit}",
            partial + tail
        );
    }

    #[test]
    fn series_consistency_below_three_quarters() {
        let hh = h(0.6);
        let n = 10_000;
        let e1 = functional_values(hh, n).unwrap().e1;
        let limit = e1_asymptotic(hh).unwrap().constant;
        let bound = phi(hh) * series_tail_bound(hh, n).unwrap();
        assert!(
            (e1 - limit).abs() <= 10.0 * bound,
            "{e1} vs {limit}, bound {bound}"
        );
    }

    #[test]
    fn e2_power_scaling_above_half() {
        let hh = h(0.8);
        let n = 100_000u64;
        let ratio = functional_values(hh, n).unwrap().e2 / (n as f64).powf(1.6);
        let c = e2_asymptotic(hh).unwrap().constant;
        assert!(((ratio - c) / c).abs() < 0.02, "{ratio} vs {c}");
    }

    #[test]
    fn shape_in_h() {
        // Both functionals rise to 0 at H = ½ and fall beyond.
        let grid: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        for n in [2u64, 10, 100] {
            let e: Vec<(f64, f64)> = grid
                .iter()
                .map(|&v| {
                    let r = functional_values(h(v), n).unwrap();
                    (r.e1, r.e2)
                })
                .collect();
            for (i, w) in e.windows(2).enumerate() {
                let b = grid[i + 1];
                if b <= 0.5 {
                    assert!(
                        w[1].0 > w[0].0 - 1e-12 && w[1].1 > w[0].1 - 1e-12,
                        "n={n}, H={b}"
                    );
                } else {
                    assert!(
                        w[1].0 < w[0].0 + 1e-12 && w[1].1 < w[0].1 + 1e-12,
                        "n={n}, H={b}"
                    );
                }
            }
            assert_eq!(e[49], (0.0, 0.0));
            assert!(e.iter().all(|&(a, b)| a <= 0.0 && b <= 0.0));
        }
    }

    #[test]
    fn series_limit_rejects_divergent_range() {
        assert!(f1_series_limit(h(0.75)).is_err());
        assert!(f1_series_limit(h(0.9)).is_err());
        assert!(series_tail_bound(h(0.8), 10).is_err());
    }
}
