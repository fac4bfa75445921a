//! Fractional Gaussian noise primitives.
//!
//! The autocovariance of unit-variance fGn with Hurst index `H` is
//! `ρ_k = ((k+1)^{2H} − 2k^{2H} + (k−1)^{2H}) / 2`. At the endpoints the
//! process degenerates: `H = 0` is a differenced white noise with
//! `ρ_1 = −1/2` and `ρ_k = 0` beyond, `H = 1` is a single repeated Gaussian
//! with `ρ_k = 1`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::{hurwitz_zeta, ln_gamma};

/// Hurst index in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HurstIndex(f64);

impl HurstIndex {
    pub const WHITE_NOISE: HurstIndex = HurstIndex(0.5);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || !(0.0..=1.0).contains(&value) {
            return Err(Error::domain(
                "HurstIndex",
                format!("H must lie in [0, 1], got {value}"),
            ));
        }
        Ok(HurstIndex(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `true` for `0 < H < 1`.
    pub fn is_interior(self) -> bool {
        self.0 > 0.0 && self.0 < 1.0
    }

    pub(crate) fn require_interior(self, operation: &'static str) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::domain(
                operation,
                format!("requires 0 < H < 1, got H = {}", self.0),
            ))
        }
    }
}

impl TryFrom<f64> for HurstIndex {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        HurstIndex::new(value)
    }
}

impl fmt::Display for HurstIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Lag above which `ρ_k` switches from the factored direct formula to the
/// binomial series.
pub const SERIES_THRESHOLD: u64 = 10_000;

/// Autocovariance `ρ_k(H)` of unit-variance fGn.
pub fn autocovariance(h: HurstIndex, k: u64) -> f64 {
    let hv = h.value();
    match k {
        0 => 1.0,
        _ if hv == 0.0 => {
            if k == 1 {
                -0.5
            } else {
                0.0
            }
        }
        _ if hv == 1.0 => 1.0,
        _ if hv == 0.5 => 0.0,
        // 2^{2H−1} − 1
        1 => ((2.0 * hv - 1.0) * std::f64::consts::LN_2).exp_m1(),
        _ if k <= SERIES_THRESHOLD => autocovariance_direct(h, k),
        _ => autocovariance_series(h, k),
    }
}

/// `ρ_k` as `k^{2H}((1+1/k)^{2H} + (1−1/k)^{2H} − 2) / 2`, with each bracket
/// term formed through `expm1`/`log1p`. Valid for `k ≥ 2`.
pub fn autocovariance_direct(h: HurstIndex, k: u64) -> f64 {
    let a = 2.0 * h.value();
    let kf = k as f64;
    let x = 1.0 / kf;
    0.5 * kf.powf(a) * ((a * x.ln_1p()).exp_m1() + (a * (-x).ln_1p()).exp_m1())
}

/// `ρ_k` from the even binomial expansion of `k^{2H}((1+1/k)^{2H} + (1−1/k)^{2H} − 2)`,
/// truncated after the `k^{−8}` term. Accurate to double precision for `k ≳ 100`.
pub fn autocovariance_series(h: HurstIndex, k: u64) -> f64 {
    let a = 2.0 * h.value();
    let c = even_binomial_coefficients(a);
    let kf = k as f64;
    let x = 1.0 / (kf * kf);
    let bracket = x * (c[0] + x * (c[1] + x * (c[2] + x * c[3])));
    0.5 * kf.powf(a) * bracket
}

/// `2·C(a, 2j)` for `j = 1..=4`.
pub(crate) fn even_binomial_coefficients(a: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    let mut binom = 1.0;
    for n in 1..=8usize {
        binom *= (a - (n - 1) as f64) / n as f64;
        if n % 2 == 0 {
            out[n / 2 - 1] = 2.0 * binom;
        }
    }
    out
}

/// First row `ρ_0, …, ρ_{n−1}` of a symmetric Toeplitz covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocovarianceSequence {
    hurst: Option<HurstIndex>,
    values: Vec<f64>,
}

impl AutocovarianceSequence {
    /// The fGn sequence of length `n`.
    pub fn fgn(h: HurstIndex, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain(
                "autocovariance_sequence",
                "length must be at least 1",
            ));
        }
        let values = (0..n as u64).map(|k| autocovariance(h, k)).collect();
        Ok(Self {
            hurst: Some(h),
            values,
        })
    }

    /// An arbitrary stationary autocovariance; requires `values[0] > 0`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        match values.first() {
            None => Err(Error::domain(
                "autocovariance_sequence",
                "length must be at least 1",
            )),
            Some(&v0) if !(v0 > 0.0) => Err(Error::domain(
                "autocovariance_sequence",
                format!("lag-0 variance must be positive, got {v0}"),
            )),
            _ if values.iter().any(|v| !v.is_finite()) => Err(Error::domain(
                "autocovariance_sequence",
                "values must be finite",
            )),
            _ => Ok(Self {
                hurst: None,
                values,
            }),
        }
    }

    pub fn hurst(&self) -> Option<HurstIndex> {
        self.hurst
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `(ρ_0, …, ρ_{n−1})` for fGn with index `h`.
pub fn autocovariance_sequence(h: HurstIndex, n: usize) -> Result<AutocovarianceSequence> {
    AutocovarianceSequence::fgn(h, n)
}

/// `Σ_{k∈ℤ} |μ + k|^{−s}` for `μ ∈ (0, 1)`, closed as `ζ(s, μ) + ζ(s, 1 − μ)`.
pub fn lattice_sum(s: f64, mu: f64) -> Result<f64> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::domain(
            "lattice_sum",
            format!("requires 0 < μ < 1, got {mu}"),
        ));
    }
    Ok(hurwitz_zeta(s, mu)? + hurwitz_zeta(s, 1.0 - mu)?)
}

/// Spectral density of fGn on `[−π, π] \ {0}`, normalised so that
/// `∫_{−π}^{π} f = ρ_0 = 1`.
pub fn spectral_density(h: HurstIndex, lambda: f64) -> Result<f64> {
    h.require_interior("spectral_density")?;
    if lambda == 0.0 || !(lambda.abs() <= PI) {
        return Err(Error::domain(
            "spectral_density",
            format!("requires λ ∈ [−π, π] \\ {{0}}, got {lambda}"),
        ));
    }
    let hv = h.value();
    let s = 2.0 * hv + 1.0;
    let mu = lambda.abs() / (2.0 * PI);
    // Σ_k |λ + 2πk|^{−s} = (2π)^{−s} Σ_k |μ + k|^{−s}
    let lattice = lattice_sum(s, mu)?;
    let one_minus_cos = 2.0 * (0.5 * lambda).sin().powi(2);
    let log_prefactor =
        (PI * hv).sin().ln() + ln_gamma(2.0 * hv + 1.0)? - PI.ln() - s * (2.0 * PI).ln();
    Ok(log_prefactor.exp() * one_minus_cos * lattice)
}

/// Lower bound `σ²_H` on the fGn innovation variance together with the
/// Mandelbrot–van Ness constant `c_H`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnovationBound {
    pub h: HurstIndex,
    /// `Γ(3/2 − H) / (Γ(H + 1/2) Γ(2 − 2H))`
    pub sigma2_h: f64,
    /// `c_H = (2H σ²_H)^{1/2}`
    pub c_h: f64,
}

pub fn innovation_variance_lower_bound(h: HurstIndex) -> Result<InnovationBound> {
    h.require_interior("innovation_variance_lower_bound")?;
    let hv = h.value();
    let ln_ratio = ln_gamma(1.5 - hv)? - ln_gamma(hv + 0.5)? - ln_gamma(2.0 - 2.0 * hv)?;
    let sigma2_h = ln_ratio.exp();
    let c_h = (2.0 * hv * sigma2_h).sqrt();
    Ok(InnovationBound { h, sigma2_h, c_h })
}
