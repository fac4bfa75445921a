//! Values frozen from independent oracles: 50-digit mpmath runs
//! (`oracles/extended_precision.py`), brute-force summation and closed forms
//! derived by hand.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use fgn_entropy::entropy::{closed_form_det2, fgn_entropy, RHO2_TURNING_POINT};
use fgn_entropy::entropy_rate::{entropy_rate_spectral, rate_from_innovation};
use fgn_entropy::fgn::{
    autocovariance, innovation_variance_lower_bound, lattice_sum, spectral_density, HurstIndex,
};
use fgn_entropy::functionals::{e2_asymptotic, f_values, functional_values, phi};
use fgn_entropy::specfun::{hurwitz_zeta, integrate, ln_gamma, QuadratureSpec};
use fgn_entropy::toeplitz::prediction_errors;
use fgn_entropy::{AutocovarianceSequence, Execution};

fn h(v: f64) -> HurstIndex {
    HurstIndex::new(v).unwrap()
}

fn assert_rel(actual: f64, expected: f64, tol: f64, what: &str) {
    let err = ((actual - expected) / expected).abs();
    assert!(err <= tol, "{what}: {actual} vs {expected} (rel {err:e})");
}

#[test]
fn autocovariance_extended_precision() {
    assert_rel(
        autocovariance(h(0.7), 10),
        0.070389262701115283483,
        1e-14,
        "rho(0.7, 10)",
    );
    assert_rel(
        2.0 * autocovariance(h(0.7), 10_000),
        0.002229400156883104734,
        1e-11,
        "2rho(0.7, 1e4)",
    );
    assert_rel(
        2.0 * autocovariance(h(0.3), 10_000),
        -6.0285274525028691705e-7,
        1e-8,
        "2rho(0.3, 1e4)",
    );
    assert_rel(
        2.0 * autocovariance(h(0.7), 1_000_000),
        0.00014066564016454773947,
        1e-12,
        "2rho(0.7, 1e6)",
    );
    assert_rel(
        2.0 * autocovariance(h(0.3), 1_000_000),
        -9.5545720932866092987e-10,
        1e-12,
        "2rho(0.3, 1e6)",
    );
}

#[test]
fn innovation_bound_extended_precision() {
    assert_rel(
        innovation_variance_lower_bound(h(0.75)).unwrap().sigma2_h,
        0.76275976350181318806,
        1e-13,
        "sigma2(0.75)",
    );
    assert_rel(
        innovation_variance_lower_bound(h(0.3)).unwrap().sigma2_h,
        0.88885527301396851962,
        1e-13,
        "sigma2(0.3)",
    );
}

#[test]
fn zeta_and_lattice_extended_precision() {
    assert_rel(
        hurwitz_zeta(2.4, 0.3).unwrap(),
        18.819298170324674116,
        1e-13,
        "zeta(2.4, 0.3)",
    );
    assert_rel(
        lattice_sum(2.6, 0.25).unwrap(),
        40.072269406851917076,
        1e-13,
        "lattice(2.6, 0.25)",
    );
}

#[test]
fn rho2_turning_point_extended_precision() {
    assert!((RHO2_TURNING_POINT - 0.28681436171757567099).abs() < 1e-15);
    // ρ₂ is stationary there: d/dH (3^{2H} − 2·2^{2H}) = 0.
    let t = RHO2_TURNING_POINT;
    let slope = 3f64.powf(2.0 * t) * 3f64.ln() - 2.0 * 2f64.powf(2.0 * t) * 2f64.ln();
    assert!(slope.abs() < 1e-14);
}

#[test]
fn entropy_rate_extended_precision() {
    let spec = QuadratureSpec::default();
    let frozen = [
        (0.5, 1.41893853320467),
        (0.3, 1.37340928013129),
        (0.7, 1.35229901547157),
        (0.9, 0.969800746521666),
        (0.999, -1.25917647821626),
        (0.00001, 1.07246593368643),
    ];
    for (hv, expected) in frozen {
        let rate = entropy_rate_spectral(h(hv), &spec).unwrap();
        assert!(
            (rate - expected).abs() < 1e-8,
            "rate({hv}) = {rate}, expected {expected}"
        );
    }
}

#[test]
fn zeta_against_brute_force() {
    // Σ_{k<K} (k+a)^{−s} with an Euler–Maclaurin tail.
    let (s, a) = (2.4f64, 0.3f64);
    let k_max = 10_000_000u64;
    let mut total = 0.0;
    for k in (0..k_max).rev() {
        total += (k as f64 + a).powf(-s);
    }
    let x = k_max as f64 + a;
    total += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s) + s * x.powf(-s - 1.0) / 12.0;
    assert_rel(
        hurwitz_zeta(s, a).unwrap(),
        total,
        1e-12,
        "zeta(2.4, 0.3) brute force",
    );
}

#[test]
fn ln_gamma_known_values() {
    assert!((ln_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-14);
    assert!((ln_gamma(10.0).unwrap() - 362_880f64.ln()).abs() < 1e-12);
    assert!((ln_gamma(1.5).unwrap() - (0.5 * PI.sqrt()).ln()).abs() < 1e-14);
}

#[test]
fn spectral_density_integrates_to_variance() {
    let spec = QuadratureSpec::absolute(1e-10).unwrap();
    for hv in [0.3, 0.7] {
        let half = integrate(|l| spectral_density(h(hv), l).unwrap(), 0.0, PI, &spec).unwrap();
        assert!((2.0 * half - 1.0).abs() < 1e-8, "H = {hv}: {}", 2.0 * half);
    }
}

#[test]
fn spectral_density_reproduces_lag_one_covariance() {
    let spec = QuadratureSpec::absolute(1e-11).unwrap();
    let hv = 0.7;
    let half = integrate(
        |l: f64| spectral_density(h(hv), l).unwrap() * l.cos(),
        0.0,
        PI,
        &spec,
    )
    .unwrap();
    assert!((2.0 * half - autocovariance(h(hv), 1)).abs() < 1e-8);
}

#[test]
fn c_h_alternative_form() {
    // c_H² = Γ(2H+1) sin(πH) / Γ(H+½)²
    for hv in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let bound = innovation_variance_lower_bound(h(hv)).unwrap();
        let alt = ((ln_gamma(2.0 * hv + 1.0).unwrap() + (PI * hv).sin().ln()) / 2.0
            - ln_gamma(hv + 0.5).unwrap())
        .exp();
        assert_rel(bound.c_h, alt, 1e-13, "c_H");
    }
    assert_rel(
        innovation_variance_lower_bound(h(0.5)).unwrap().c_h,
        1.0,
        1e-14,
        "c_1/2",
    );
}

#[test]
fn f2_telescopes() {
    for hv in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for n in [1u64, 7, 100, 12_345] {
            let (_, f2) = f_values(h(hv), n, Execution::Sequential);
            let m = (n + 1) as f64;
            let closed = (m.powf(2.0 * hv) - m).abs();
            assert!(
                (f2 - closed).abs() <= 1e-10 * closed.max(1.0),
                "H = {hv}, N = {n}: {f2} vs {closed}"
            );
        }
    }
}

#[test]
fn e2_normalized_limit_below_half() {
    // E²(H,N)/N = −φ(1 + 1/N − (N+1)^{2H}/N); the leading correction decays
    // like N^{2H−1}, removed by one Richardson step; O(1/N) remains.
    let hv = 0.3;
    let ratio = |n: u64| functional_values(h(hv), n).unwrap().e2 / n as f64;
    let p = 2f64.powf(1.0 - 2.0 * hv);
    let extrapolated = (p * ratio(200_000) - ratio(100_000)) / (p - 1.0);
    let limit = e2_asymptotic(h(hv)).unwrap().constant;
    assert_rel(limit, -phi(h(hv)), 1e-15, "E2 constant");
    assert_rel(extrapolated, limit, 5e-5, "Richardson E2(0.3)/N");
}

#[test]
fn two_by_two_entropy_by_hand() {
    for hv in [0.2, 0.5, 0.8] {
        let det = closed_form_det2(h(hv));
        let expected = 1.0 + (2.0 * PI).ln() + 0.5 * det.ln();
        let report = fgn_entropy(h(hv), 2).unwrap();
        assert!((report.entropy - expected).abs() < 1e-14);
    }
}

#[test]
fn innovation_route_approaches_spectral_rate() {
    let spec = QuadratureSpec::default();
    for hv in [0.3, 0.7] {
        let r = prediction_errors(&AutocovarianceSequence::fgn(h(hv), 2000).unwrap())
            .unwrap()
            .last();
        let via_innovation = rate_from_innovation(r);
        let spectral = entropy_rate_spectral(h(hv), &spec).unwrap();
        assert!(via_innovation >= spectral - 1e-12);
        assert!(
            (via_innovation - spectral).abs() < 2e-3,
            "H = {hv}: {via_innovation} vs {spectral}"
        );
    }
}
