//! Regularized Mellin integrals, log-power asymptotic expansions and the
//! spectral invariants of model-cone operators.

pub mod cone;
pub mod deficiency;
pub mod expansions;
pub mod mellin;
pub mod quad;
pub mod report;
pub mod sal;
pub mod specfun;
pub mod verify;
