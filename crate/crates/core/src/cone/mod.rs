//! Spectral invariants of model-cone operators built from the Bessel family
//! L_p = −∂_x² + (p² − ¼)/x².

mod eta;
mod heat;
mod spectrum;
mod zeta;

pub use eta::{alpha_coefficients, alpha_exact, eta_function_scalable, eta_hat_residues, index_first_order};
pub use heat::{
    fit_interior_coefficients, fit_powers, heat_trace_expansion, scalar_cone_trace, scalar_heat_inputs, scalar_interior_coefficients,
    FitReport,
    HeatTraceInputs,
};
pub use spectrum::{CrossSectionSpectrum, FamilySpec, FirstOrderSpectrum, PChoice, SpectralDatum};
pub use zeta::{gamma_zeta_hat_operator, residues_at_zero, zeta_hat_operator, Residues, ZetaHatValue};

use crate::expansions::{AsymptoticExpansion, ExpandableFunction, Location, LogPowerTerm};
use crate::mellin::MellinError;
use crate::quad::QuadError;
use crate::sal::SalError;
use crate::specfun::{bessel_i_scaled, gamma, gamma_quotient, log_gamma, rgamma, SpecfunError};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConeError {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Mellin(#[from] MellinError),
    #[error(transparent)]
    Sal(#[from] SalError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("invalid spectral data: {0}")]
    Invalid(String),
    #[error("missing input: {0}")]
    Missing(String),
}

fn check_p(p: f64) -> Result<(), ConeError> {
    if p > -1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(ConeError::Invalid(format!("Bessel order {p} must exceed -1")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<(), ConeError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConeError::Invalid(format!("{name} = {v} must be positive")))
    }
}

/// e^{−tL_p}(x, y), evaluated through I_p(z)e^{−z} so nothing overflows.
pub fn heat_kernel_lp(p: f64, t: f64, x: f64, y: f64) -> Result<f64, ConeError> {
    check_p(p)?;
    check_positive("t", t)?;
    check_positive("x", x)?;
    check_positive("y", y)?;
    let z = x * y / (2.0 * t);
    let gauss = (-(x - y) * (x - y) / (4.0 * t)).exp();
    Ok((x * y).sqrt() / (2.0 * t) * bessel_i_scaled(p, z)? * gauss)
}

/// k(t) = e^{−tL_p}(1, 1).
pub fn k_trace_lp(p: f64, t: f64) -> Result<f64, ConeError> {
    heat_kernel_lp(p, t, 1.0, 1.0)
}

/// Γ(p+1−s)Γ(s−½)/(2√π Γ(p+s)) = Γ(s)·ζ̂(L_p, s).
pub fn gamma_zeta_hat_lp(p: f64, s: Complex64) -> Result<Complex64, ConeError> {
    check_p(p)?;
    Ok(bessel_quotient(p, s)? * gamma(s - 0.5)? / (2.0 * PI.sqrt()))
}

/// ζ̂(L_p, s) = Γ(p+1−s)Γ(s−½) / (2√π Γ(p+s)Γ(s)).
pub fn zeta_hat_lp(p: f64, s: Complex64) -> Result<Complex64, ConeError> {
    Ok(gamma_zeta_hat_lp(p, s)? * rgamma(s))
}

/// G(s, p) = Γ(p+1−s)/Γ(p+s).
pub(crate) fn bessel_quotient(p: f64, s: Complex64) -> Result<Complex64, ConeError> {
    Ok(gamma_quotient(Complex64::new(p + 1.0, 0.0) - s, s + p)?)
}

/// (Res₁, Res₀) of f at 0 from central differences of s·f(s) at ±r and
/// ±r/2, combined by one Richardson step to cancel the O(r²) error.
pub fn laurent_fit<F>(f: F, r: f64) -> Result<(Complex64, Complex64), ConeError>
where
    F: Fn(Complex64) -> Result<Complex64, ConeError>,
{
    let central = |h: f64| -> Result<(Complex64, Complex64), ConeError> {
        let gp = f(Complex64::new(h, 0.0))? * h;
        let gm = f(Complex64::new(-h, 0.0))? * (-h);
        Ok(((gp + gm) * 0.5, (gp - gm) / (2.0 * h)))
    };
    let (a1, a0) = central(r)?;
    let (b1, b0) = central(0.5 * r)?;
    Ok(((4.0 * b1 - a1) / 3.0, (4.0 * b0 - a0) / 3.0))
}

/// x^{−s} I_p(x) e^{−x}, whose regularized integral times 2^{−s}/Γ(s) is ζ̂(L_p, s).
pub fn bessel_weight(p: f64, s: f64) -> ExpandableFunction {
    let c = |x: f64| Complex64::new(x, 0.0);
    let n0 = 12;
    let mut d = vec![0.0; n0];
    for m in 0..n0 {
        if 2 * m >= n0 {
            break;
        }
        let cm = ((-(2.0 * m as f64 + p) * 2f64.ln()) - log_gamma(c(m as f64 + 1.0)).expect("positive argument").re
            - log_gamma(c(m as f64 + p + 1.0)).expect("positive argument").re)
            .exp();
        let mut fact = 1.0;
        for l in 0..n0 - 2 * m {
            if l > 0 {
                fact *= l as f64;
            }
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            d[2 * m + l] += cm * sign / fact;
        }
    }
    let zero: Vec<_> = d.iter().enumerate().map(|(n, &dn)| LogPowerTerm::real(dn, p + n as f64 - s, 0)).collect();
    let mu = 4.0 * p * p;
    let mut a = 1.0;
    let mut inf = Vec::new();
    for k in 0..6 {
        if k > 0 {
            let odd = 2.0 * k as f64 - 1.0;
            a *= -(mu - odd * odd) / (k as f64 * 8.0);
        }
        inf.push(LogPowerTerm::real(a / (2.0 * PI).sqrt(), -s - 0.5 - k as f64, 0));
    }
    let z = AsymptoticExpansion::new(Location::Zero, zero, p + n0 as f64 - s).expect("series terms");
    let i = AsymptoticExpansion::new(Location::Infinity, inf, s + 6.5).expect("Hankel terms");
    ExpandableFunction::new(move |x| c(x.powf(-s) * bessel_i_scaled(p, x).unwrap_or(f64::NAN)), z, i)
        .expect("locations match")
}
