//! Special functions and quadrature: log-gamma, Hurwitz zeta, adaptive
//! Gauss–Kronrod integration. All routines are pure and thread-safe.

mod gamma;
mod quad;
mod zeta;

pub use gamma::ln_gamma;
pub use quad::{integrate, QuadratureSpec};
pub use zeta::hurwitz_zeta;
