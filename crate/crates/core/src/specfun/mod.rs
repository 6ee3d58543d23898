//! Special functions: Gamma family, Bernoulli numbers, Hurwitz zeta, Bessel
//! and Laguerre functions, the Hankel transform, Gamma-ratio asymptotics and
//! continued Dirichlet series.

pub mod bernoulli;
pub mod bessel;
pub mod dirichlet;
pub mod gamma;
pub mod gamma_ratio;
pub mod hankel;
pub mod laguerre;
pub mod zeta;

pub use bernoulli::{b, bernoulli, bernoulli_exact, b_exact, MAX_BERNOULLI};
pub use bessel::{bessel_i, bessel_i_scaled, bessel_j, bessel_j_zeros};
pub use dirichlet::{dirichlet_phi, PhiEvaluator, PhiOptions, PhiValue, PowerFamily, SpectrumZetaProvider};
pub use gamma::{digamma, gamma, gamma_quotient, log_gamma, rgamma};
pub use gamma_ratio::{evaluate_ratio, gamma_ratio_expansion, GammaRatioExpansion, RationalPoly, MAX_RATIO_ORDER};
pub use hankel::{hankel_transform, hankel_transform_with, HankelOptions};
pub use laguerre::{l_fn, laguerre};
pub use zeta::{hurwitz_zeta, riemann_zeta};

use crate::quad::QuadError;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("pole of the function at {0}")]
    Pole(Complex64),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("order {requested} exceeds the supported maximum {max}")]
    OrderTooHigh { requested: usize, max: usize },
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("Dirichlet series pole at 2s-1+k = {argument} is hit at s = {s} with a nonvanishing prefactor")]
    PoleCollision { s: Complex64, argument: Complex64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
}
