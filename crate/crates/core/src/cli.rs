//! Grid sweeps, CSV emission and the verification suite behind the
//! `fgn-entropy` binary.
//!
//! Every command buffers its rows and emits them in `(n, H)` order, so the
//! output is byte-identical whatever the execution mode or thread count.
//! Floats use Rust's shortest round-trip formatting.

use std::fmt::Write as _;

use crate::entropy::{
    closed_form_det2, closed_form_det3, fgn_entropy_profile, monotonicity_scan, Violation,
    SCAN_SLACK,
};
use crate::entropy_rate::{
    block_entropy_lower_bound, entropy_rate, entropy_rate_lower_bound,
    entropy_rate_lower_bound_limit, entropy_rate_spectral,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fgn::{innovation_variance_lower_bound, AutocovarianceSequence, HurstIndex};
use crate::functionals::{e1_asymptotic, f_values, phi};
use crate::specfun::QuadratureSpec;
use crate::toeplitz::{cholesky_oracle, prediction_errors};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub h_min: f64,
    pub h_max: f64,
    pub h_step: f64,
    /// Block lengths (or `N` for the functionals), ascending.
    pub n_values: Vec<usize>,
    pub quad: QuadratureSpec,
    pub exec: Execution,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            h_min: 0.01,
            h_max: 0.99,
            h_step: 0.01,
            n_values: (1..=100).collect(),
            quad: QuadratureSpec::default(),
            exec: Execution::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !in_unit(self.h_min) || !in_unit(self.h_max) {
            return Err(Error::Config(format!(
                "H range must lie in [0, 1], got [{}, {}]",
                self.h_min, self.h_max
            )));
        }
        if self.h_min > self.h_max {
            return Err(Error::Config(format!(
                "h-min {} exceeds h-max {}",
                self.h_min, self.h_max
            )));
        }
        if !(self.h_step > 0.0) || !self.h_step.is_finite() {
            return Err(Error::Config(format!(
                "h-step must be positive, got {}",
                self.h_step
            )));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("at least one n is required".into()));
        }
        if self.n_values.contains(&0) {
            return Err(Error::Config("n values must be at least 1".into()));
        }
        if self.n_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("n values must be strictly increasing".into()));
        }
        Ok(())
    }

    /// Grid `h_min, h_min + h_step, …` up to and including `h_max`; empty
    /// when `h_min == h_max`. Points are rounded to 12 decimals.
    pub fn grid(&self) -> Result<Vec<HurstIndex>> {
        self.validate()?;
        if self.h_min == self.h_max {
            return Ok(Vec::new());
        }
        let steps = ((self.h_max - self.h_min) / self.h_step + 1e-9).floor() as usize;
        (0..=steps)
            .map(|i| {
                let x = self.h_min + i as f64 * self.h_step;
                HurstIndex::new(((x * 1e12).round() / 1e12).clamp(0.0, 1.0))
            })
            .collect()
    }

    fn n_max(&self) -> usize {
        *self.n_values.last().expect("validated non-empty")
    }
}

fn profiles(
    cfg: &SweepConfig,
    grid: &[HurstIndex],
) -> Result<Vec<Vec<crate::entropy::EntropyReport>>> {
    let n_max = cfg.n_max();
    cfg.exec
        .map(grid, |&h| fgn_entropy_profile(h, n_max))
        .into_iter()
        .collect()
}

/// Rows `h,n,det,log_det`, ordered by `n` then `H`.
pub fn sweep_det(cfg: &SweepConfig) -> Result<String> {
    let grid = cfg.grid()?;
    let profiles = profiles(cfg, &grid)?;
    let mut out = String::from("h,n,det,log_det\n");
    for &n in &cfg.n_values {
        for (h, p) in grid.iter().zip(&profiles) {
            let r = &p[n - 1];
            writeln!(out, "{},{},{},{}", h, n, r.det(), r.log_det).expect("write to String");
        }
    }
    Ok(out)
}

/// Rows `h,n,entropy,reduced_entropy,normalized_entropy`.
pub fn sweep_entropy(cfg: &SweepConfig) -> Result<String> {
    let grid = cfg.grid()?;
    let profiles = profiles(cfg, &grid)?;
    let mut out = String::from("h,n,entropy,reduced_entropy,normalized_entropy\n");
    for &n in &cfg.n_values {
        for (h, p) in grid.iter().zip(&profiles) {
            let r = &p[n - 1];
            writeln!(
                out,
                "{},{},{},{},{}",
                h, n, r.entropy, r.reduced_entropy, r.normalized_entropy
            )
            .expect("write to String");
        }
    }
    Ok(out)
}

/// Rows `h,rate_spectral,rate_lower_bound,normalized_entropy_n<n>…`.
pub fn rate(cfg: &SweepConfig) -> Result<String> {
    let grid = cfg.grid()?;
    let profiles = profiles(cfg, &grid)?;
    let rates = cfg
        .exec
        .map(&grid, |&h| {
            Ok((
                entropy_rate(h, &cfg.quad)?,
                entropy_rate_lower_bound_limit(h)?,
            ))
        })
        .into_iter()
        .collect::<Result<Vec<(f64, f64)>>>()?;

    let mut out = String::from("h,rate_spectral,rate_lower_bound");
    for n in &cfg.n_values {
        write!(out, ",normalized_entropy_n{n}").expect("write to String");
    }
    out.push('\n');
    for ((h, p), (rate, bound)) in grid.iter().zip(&profiles).zip(&rates) {
        write!(out, "{h},{rate},{bound}").expect("write to String");
        for &n in &cfg.n_values {
            write!(out, ",{}", p[n - 1].normalized_entropy).expect("write to String");
        }
        out.push('\n');
    }
    Ok(out)
}

/// Rows `h,n,f1,f2,e1,e2,constant,regime`; the last two describe the
/// large-`N` behaviour of `E¹` and are empty at the endpoints.
pub fn functionals(cfg: &SweepConfig) -> Result<String> {
    let grid = cfg.grid()?;
    let per_h = cfg
        .exec
        .map(&grid, |&h| {
            let values: Vec<(f64, f64)> = cfg
                .n_values
                .iter()
                .map(|&n| f_values(h, n as u64, Execution::Sequential))
                .collect();
            let asymptotic = if h.is_interior() {
                Some(e1_asymptotic(h)?)
            } else {
                None
            };
            Ok((values, asymptotic))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut out = String::from("h,n,f1,f2,e1,e2,constant,regime\n");
    for (i, &n) in cfg.n_values.iter().enumerate() {
        for (h, (values, asymptotic)) in grid.iter().zip(&per_h) {
            let (f1, f2) = values[i];
            let (e1, e2) = match phi(*h) {
                0.0 => (0.0, 0.0),
                p if p.is_infinite() => (f64::NEG_INFINITY, f64::NEG_INFINITY),
                p => (-p * f1, -p * f2),
            };
            let (constant, regime) = match asymptotic {
                Some(a) => (a.constant.to_string(), a.regime.to_string()),
                None => (String::new(), String::new()),
            };
            writeln!(out, "{h},{n},{f1},{f2},{e1},{e2},{constant},{regime}")
                .expect("write to String");
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub sweep: SweepConfig,
    /// Multiplies every check tolerance; `1.0` is the calibrated default.
    pub tolerance_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            sweep: SweepConfig::default(),
            tolerance_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub evaluated: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckSummary>,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.violations == 0 { "ok" } else { "FAIL" };
            writeln!(
                out,
                "{status:4} {:32} {:>8} evaluated {:>6} violations",
                c.name, c.evaluated, c.violations
            )
            .expect("write to String");
        }
        for v in &self.violations {
            writeln!(
                out,
                "violation {} h={} n={} lhs={} rhs={}",
                v.check, v.h, v.n, v.lhs, v.rhs
            )
            .expect("write to String");
        }
        if self.passed() {
            out.push_str("result: PASS\n");
        } else {
            writeln!(out, "result: FAIL ({} violations)", self.violations.len())
                .expect("write to String");
        }
        out
    }
}

/// Largest block used for the dense Cholesky cross-check inside `verify`.
const VERIFY_CHOLESKY_DIM: usize = 64;

struct Collector {
    checks: Vec<CheckSummary>,
    violations: Vec<Violation>,
}

impl Collector {
    fn record(&mut self, name: &'static str, results: Vec<Vec<Violation>>, evaluated: usize) {
        let found: Vec<Violation> = results.into_iter().flatten().collect();
        self.checks.push(CheckSummary {
            name,
            evaluated,
            violations: found.len(),
        });
        self.violations.extend(found);
    }
}

/// Runs the invariant suite over the configured grid and `n ≤ n_max`.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let sweep = &cfg.sweep;
    let scale = cfg.tolerance_scale;
    if !(scale >= 0.0) || !scale.is_finite() {
        return Err(Error::Config(format!(
            "tolerance scale must be non-negative, got {scale}"
        )));
    }
    let grid: Vec<HurstIndex> = sweep
        .grid()?
        .into_iter()
        .filter(|h| h.is_interior())
        .collect();
    let n_max = sweep.n_max();
    if n_max < 2 {
        return Err(Error::Config("verify needs n-max of at least 2".into()));
    }
    let exec = sweep.exec;
    let mut c = Collector {
        checks: Vec::new(),
        violations: Vec::new(),
    };

    let scan = monotonicity_scan(&grid, n_max, SCAN_SLACK * scale, exec)?;
    c.record(
        "det-monotonicity-scan",
        vec![scan.violations],
        grid.len() * n_max,
    );

    let closed = exec.map(&grid, |&h| {
        let mut v = Vec::new();
        let p = fgn_entropy_profile(h, 3).expect("interior H, n = 3");
        for (n, closed) in [(2, closed_form_det2(h)), (3, closed_form_det3(h))] {
            let lev = p[n - 1].det();
            if !((closed - lev).abs() <= 1e-12 * scale * closed.abs()) {
                v.push(Violation {
                    check: if n == 2 {
                        "closed-form-det2"
                    } else {
                        "closed-form-det3"
                    },
                    h: h.value(),
                    n,
                    lhs: closed,
                    rhs: lev,
                });
            }
        }
        v
    });
    c.record("closed-form-det2/det3", closed, 2 * grid.len());

    let ordered = exec.map(&grid, |&h| {
        let (d2, d3) = (closed_form_det2(h), closed_form_det3(h));
        if d2 >= d3 - 1e-12 * scale {
            vec![]
        } else {
            vec![Violation {
                check: "det2-ge-det3",
                h: h.value(),
                n: 3,
                lhs: d2,
                rhs: d3,
            }]
        }
    });
    c.record("det2-ge-det3", ordered, grid.len());

    let chol_n = n_max.min(VERIFY_CHOLESKY_DIM);
    let routes = exec
        .map(&grid, |&h| -> Result<Vec<Violation>> {
            let acov = AutocovarianceSequence::fgn(h, chol_n)?;
            let lev = prediction_errors(&acov)?.log_det_prefix()[chol_n - 1];
            let chol = cholesky_oracle(&acov)?.result.log_det;
            Ok(if (lev - chol).abs() <= 1e-8 * scale * lev.abs().max(1.0) {
                vec![]
            } else {
                vec![Violation {
                    check: "levinson-vs-cholesky",
                    h: h.value(),
                    n: chol_n,
                    lhs: lev,
                    rhs: chol,
                }]
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    c.record("levinson-vs-cholesky", routes, grid.len());

    let bounds = exec
        .map(
            &grid,
            |&h| -> Result<(Vec<Violation>, Vec<Violation>, Vec<Violation>)> {
                let profile = fgn_entropy_profile(h, n_max)?;
                let errors = prediction_errors(&AutocovarianceSequence::fgn(h, n_max)?)?;
                let sigma2 = innovation_variance_lower_bound(h)?.sigma2_h;
                let mut block = Vec::new();
                let mut innov = Vec::new();
                let mut mono = Vec::new();
                for (i, report) in profile.iter().enumerate() {
                    let n = i + 1;
                    let lb = block_entropy_lower_bound(h, n)?;
                    if !(lb <= report.entropy + 1e-8 * scale) {
                        block.push(Violation {
                            check: "block-entropy-bound",
                            h: h.value(),
                            n,
                            lhs: lb,
                            rhs: report.entropy,
                        });
                    }
                }
                for (i, &r) in errors.values().iter().enumerate() {
                    if !(r >= sigma2 - 1e-9 * scale) {
                        innov.push(Violation {
                            check: "innovation-bound",
                            h: h.value(),
                            n: i + 1,
                            lhs: r,
                            rhs: sigma2,
                        });
                    }
                }
                for (i, w) in errors.values().windows(2).enumerate() {
                    if !(w[1] <= w[0] + 1e-12 * scale) {
                        mono.push(Violation {
                            check: "prediction-errors-decreasing",
                            h: h.value(),
                            n: i + 2,
                            lhs: w[1],
                            rhs: w[0],
                        });
                    }
                }
                Ok((block, innov, mono))
            },
        )
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let (mut block, mut innov, mut mono) = (Vec::new(), Vec::new(), Vec::new());
    for (b, i, m) in bounds {
        block.push(b);
        innov.push(i);
        mono.push(m);
    }
    c.record("block-entropy-bound", block, grid.len() * n_max);
    c.record("innovation-bound", innov, grid.len() * n_max);
    c.record(
        "prediction-errors-decreasing",
        mono,
        grid.len() * (n_max - 1),
    );

    let rates = exec
        .map(&grid, |&h| -> Result<Vec<Violation>> {
            let rate = entropy_rate_spectral(h, &sweep.quad)?;
            let bound = entropy_rate_lower_bound(h)?;
            Ok(if bound <= rate + 1e-6 * scale {
                vec![]
            } else {
                vec![Violation {
                    check: "rate-bound-dominance",
                    h: h.value(),
                    n: 0,
                    lhs: bound,
                    rhs: rate,
                }]
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    c.record("rate-bound-dominance", rates, grid.len());

    Ok(VerifyReport {
        checks: c.checks,
        violations: c.violations,
    })
}
