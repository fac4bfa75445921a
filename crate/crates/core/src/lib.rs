//! Entropy of fractional Gaussian noise (fGn) as a function of the Hurst
//! index `H ∈ [0, 1]`.
//!
//! The crate evaluates
//!
//! - the fGn autocovariance and spectral density ([`fgn`]),
//! - log-determinants of the `n × n` covariance via Durbin's recursion, with
//!   a dense Cholesky cross-check ([`toeplitz`]),
//! - block differential entropies and the monotonicity scan over `H`
//!   ([`entropy`]),
//! - the entropy rate from the spectral density together with its
//!   innovation-variance lower bound ([`entropy_rate`]),
//! - the covariance functionals `E¹`, `E²` and their large-`N` behaviour
//!   ([`functionals`]).
//!
//! Grid sweeps run on rayon when the `parallel` feature is enabled (the
//! default) and sequentially otherwise; see [`Execution`].
//!
//! ```
//! use fgn_entropy::{fgn_entropy, HurstIndex};
//!
//! let h = HurstIndex::new(0.7).unwrap();
//! let report = fgn_entropy(h, 10).unwrap();
//! assert!(report.log_det < 0.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod entropy;
pub mod entropy_rate;
pub mod error;
pub mod exec;
pub mod fgn;
pub mod functionals;
pub mod specfun;
pub mod toeplitz;

pub use entropy::{
    fgn_entropy, fgn_entropy_profile, gaussian_entropy, monotonicity_scan, EntropyReport,
};
pub use entropy_rate::{entropy_rate, entropy_rate_lower_bound, entropy_rate_spectral};
pub use error::{Error, Result};
pub use exec::Execution;
pub use fgn::{autocovariance, AutocovarianceSequence, HurstIndex};
pub use functionals::{functional_values, FunctionalReport};
pub use specfun::QuadratureSpec;
pub use toeplitz::{log_det, prediction_errors, LogDetResult};
