//! Entropy rate of fGn: spectral formula, innovation-variance bounds and the
//! finite-block convergence study.

use std::f64::consts::PI;

use crate::entropy::{fgn_entropy_profile, GAUSSIAN_UNIT_ENTROPY};
use crate::error::{Error, Result};
use crate::fgn::{innovation_variance_lower_bound, AutocovarianceSequence, HurstIndex};
use crate::specfun::{hurwitz_zeta, integrate, ln_gamma, QuadratureSpec};
use crate::toeplitz::prediction_errors;

/// Entropy rate at `H = 0`, `(1 + log π) / 2`.
pub const RATE_AT_ZERO: f64 = 1.072_364_942_924_7;

/// Entropy rate from the spectral representation, `0 < H < 1`.
///
/// With `s = 2H + 1` and `L(μ) = Σ_k |μ + k|^{−s}`,
///
/// ```text
/// rate = ½(1 + log(sin πH · Γ(2H+1) · (2π)^{−2H})) + ∫_0^{1/2} log L(μ) dμ
/// ```
///
/// The `s·log(1/μ)` singularity of `log L` at the origin is integrated in
/// closed form; only `log(μ^s L(μ)) = log(1 + μ^s(ζ(s,1+μ) + ζ(s,1−μ)))`
/// goes through the quadrature.
pub fn entropy_rate_spectral(h: HurstIndex, spec: &QuadratureSpec) -> Result<f64> {
    h.require_interior("entropy_rate_spectral")?;
    let hv = h.value();
    let s = 2.0 * hv + 1.0;

    let head =
        0.5 * (1.0 + (PI * hv).sin().ln() + ln_gamma(2.0 * hv + 1.0)? - 2.0 * hv * (2.0 * PI).ln());
    let singular = s * (1.0 + std::f64::consts::LN_2) / 2.0;

    // The integrand is total for μ in (0, 1/2]; errors cannot arise there,
    // but keep the first one if they do.
    let failure = std::cell::Cell::new(None);
    let smooth = integrate(
        |mu| match smooth_log_lattice(s, mu) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        },
        0.0,
        0.5,
        spec,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }

    Ok(head + singular + smooth?)
}

fn smooth_log_lattice(s: f64, mu: f64) -> Result<f64> {
    let rest = hurwitz_zeta(s, 1.0 + mu)? + hurwitz_zeta(s, 1.0 - mu)?;
    Ok((mu.powf(s) * rest).ln_1p())
}

/// Entropy rate including the degenerate endpoints: `(1 + log π)/2` at
/// `H = 0` and `−∞` at `H = 1`.
pub fn entropy_rate(h: HurstIndex, spec: &QuadratureSpec) -> Result<f64> {
    match h.value() {
        0.0 => Ok(RATE_AT_ZERO),
        1.0 => Ok(f64::NEG_INFINITY),
        _ => entropy_rate_spectral(h, spec),
    }
}

/// `(1 + log 2π)/2 + ½ log σ²_H`, a lower bound on the entropy rate.
pub fn entropy_rate_lower_bound(h: HurstIndex) -> Result<f64> {
    let bound = innovation_variance_lower_bound(h)?;
    Ok(GAUSSIAN_UNIT_ENTROPY + 0.5 * bound.sigma2_h.ln())
}

/// Endpoint-aware variant of [`entropy_rate_lower_bound`]: the `H → 0`
/// limit `σ²_H → 1/2` and `−∞` at `H = 1`.
pub fn entropy_rate_lower_bound_limit(h: HurstIndex) -> Result<f64> {
    match h.value() {
        0.0 => Ok(GAUSSIAN_UNIT_ENTROPY + 0.5 * 0.5f64.ln()),
        1.0 => Ok(f64::NEG_INFINITY),
        _ => entropy_rate_lower_bound(h),
    }
}

/// `n/2·(1 + log 2π + log σ²_H)`, a lower bound on the block entropy.
pub fn block_entropy_lower_bound(h: HurstIndex, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain(
            "block_entropy_lower_bound",
            "n must be at least 1",
        ));
    }
    let bound = innovation_variance_lower_bound(h)?;
    Ok(n as f64 * (GAUSSIAN_UNIT_ENTROPY + 0.5 * bound.sigma2_h.ln()))
}

/// Entropy rate implied by a finite prediction error, `(1 + log 2π)/2 + ½ log r`.
pub fn rate_from_innovation(r: f64) -> f64 {
    GAUSSIAN_UNIT_ENTROPY + 0.5 * r.ln()
}

/// Output of [`convergence_study`].
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub h: HurstIndex,
    pub rate_spectral: f64,
    pub rate_lower_bound: f64,
    pub sigma2_h: f64,
    /// `r(n_max)`, the finite-sample innovation variance.
    pub innovation_estimate: f64,
    /// `(n, entropy/n)` in the order of the requested `n`.
    pub normalized_entropies: Vec<(usize, f64)>,
}

/// Tolerance for `r(n_max) ≥ σ²_H`.
const INNOVATION_BOUND_SLACK: f64 = 1e-9;

/// Normalized block entropies for `n_list` next to the spectral rate and
/// its lower bound. Fails with [`Error::BoundViolated`] if the innovation
/// estimate drops below `σ²_H`.
pub fn convergence_study(
    h: HurstIndex,
    n_list: &[usize],
    spec: &QuadratureSpec,
) -> Result<RateReport> {
    h.require_interior("convergence_study")?;
    if n_list.is_empty() || n_list[0] == 0 || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(
            "n_list must be non-empty, positive and strictly increasing".into(),
        ));
    }
    let n_max = *n_list.last().expect("non-empty");

    let profile = fgn_entropy_profile(h, n_max)?;
    let normalized_entropies = n_list
        .iter()
        .map(|&n| (n, profile[n - 1].normalized_entropy))
        .collect();

    let innovation_estimate = prediction_errors(&AutocovarianceSequence::fgn(h, n_max)?)?.last();
    let sigma2_h = innovation_variance_lower_bound(h)?.sigma2_h;
    if innovation_estimate < sigma2_h - INNOVATION_BOUND_SLACK {
        return Err(Error::BoundViolated {
            n: n_max,
            estimate: innovation_estimate,
            bound: sigma2_h,
        });
    }

    Ok(RateReport {
        h,
        rate_spectral: entropy_rate_spectral(h, spec)?,
        rate_lower_bound: entropy_rate_lower_bound(h)?,
        sigma2_h,
        innovation_estimate,
        normalized_entropies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: f64) -> HurstIndex {
        HurstIndex::new(v).unwrap()
    }

    #[test]
    fn rate_at_zero_constant() {
        assert!((RATE_AT_ZERO - 0.5 * (1.0 + PI.ln())).abs() < 1e-15);
    }

    #[test]
    fn white_noise_rate() {
        let spec = QuadratureSpec::default();
        let rate = entropy_rate_spectral(h(0.5), &spec).unwrap();
        assert!((rate - GAUSSIAN_UNIT_ENTROPY).abs() < 1e-9, "{rate}");
        assert!((entropy_rate_lower_bound(h(0.5)).unwrap() - GAUSSIAN_UNIT_ENTROPY).abs() < 1e-15);
    }

    #[test]
    fn lower_bound_tight_at_zero() {
        let b = entropy_rate_lower_bound(h(1e-12)).unwrap();
        assert!((b - RATE_AT_ZERO).abs() < 1e-10);
        assert!((entropy_rate_lower_bound_limit(h(0.0)).unwrap() - RATE_AT_ZERO).abs() < 1e-15);
    }

    #[test]
    fn endpoint_handling() {
        let spec = QuadratureSpec::default();
        assert!(entropy_rate_spectral(h(0.0), &spec).is_err());
        assert!(entropy_rate_spectral(h(1.0), &spec).is_err());
        assert_eq!(entropy_rate(h(0.0), &spec).unwrap(), RATE_AT_ZERO);
        assert_eq!(entropy_rate(h(1.0), &spec).unwrap(), f64::NEG_INFINITY);
        assert!(entropy_rate_lower_bound(h(1.0)).is_err());
        assert!(block_entropy_lower_bound(h(0.0), 3).is_err());
        assert!(block_entropy_lower_bound(h(0.3), 0).is_err());
    }

    #[test]
    fn block_bound_is_tight_for_white_noise() {
        let b = block_entropy_lower_bound(h(0.5), 10).unwrap();
        assert!((b - 10.0 * GAUSSIAN_UNIT_ENTROPY).abs() < 1e-13);
    }

    #[test]
    fn study_rejects_bad_lists() {
        let spec = QuadratureSpec::default();
        assert!(convergence_study(h(0.3), &[], &spec).is_err());
        assert!(convergence_study(h(0.3), &[10, 10], &spec).is_err());
        assert!(convergence_study(h(0.3), &[0, 10], &spec).is_err());
    }

    #[test]
    fn white_noise_study() {
        let spec = QuadratureSpec::default();
        let r = convergence_study(h(0.5), &[10, 50, 100], &spec).unwrap();
        for &(_, e) in &r.normalized_entropies {
            assert!((e - GAUSSIAN_UNIT_ENTROPY).abs() < 1e-12);
        }
        assert_eq!(r.innovation_estimate, 1.0);
    }
}
