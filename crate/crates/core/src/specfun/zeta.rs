use crate::error::{Error, Result};

/// B_{2j} / (2j)! for j = 1..=8.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (a + k)^{−s} for `s > 1`, `a > 0`.
///
/// The first `N` terms are summed directly (smallest first); the remainder
/// is closed with the Euler–Maclaurin formula using eight Bernoulli
/// corrections. `N` is chosen so that `a + N ≥ 12 + s`, which puts the
/// ninth correction below double-precision resolution.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain(
            "hurwitz_zeta",
            format!("requires s > 1, got s = {s}"),
        ));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "hurwitz_zeta",
            format!("requires a > 0, got a = {a}"),
        ));
    }

    let x_min = 12.0 + s;
    let block = if a >= x_min {
        0
    } else {
        (x_min - a).ceil() as usize
    };

    let mut head = 0.0;
    for k in (0..block).rev() {
        head += (a + k as f64).powf(-s);
    }

    let x = a + block as f64;
    let x_pow = x.powf(-s);
    let mut tail = x * x_pow / (s - 1.0) + 0.5 * x_pow;

    // j-th correction: B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let inv_x2 = 1.0 / (x * x);
    let mut rising = s * x_pow / x;
    for (j, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += b * rising;
        let m = 2.0 * (j as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m) * inv_x2;
    }

    Ok(head + tail)
}
