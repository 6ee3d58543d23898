//! ζ̂ of the cone operator over a cross-section spectrum and its residues at 0.

use super::spectrum::CrossSectionSpectrum;
use super::{bessel_quotient, ConeError};
use crate::specfun::bernoulli::to_f64;
use crate::specfun::{digamma, gamma, gamma_ratio_expansion, rgamma, PhiEvaluator, PhiOptions, MAX_RATIO_ORDER};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaHatValue {
    pub value: Complex64,
    /// Size of the first neglected gamma-ratio term on the tail.
    pub error_estimate: f64,
}

/// Φ_A(s) = Σ w Γ(p+1−s)/Γ(p+s) over the whole spectrum.
pub(crate) fn phi_operator(spec: &CrossSectionSpectrum, s: Complex64) -> Result<ZetaHatValue, ConeError> {
    let provider = spec.frequency_provider()?;
    let phi = PhiEvaluator::new(&provider, PhiOptions::default())?.eval(s)?;
    let mut value = phi.value;
    // the provider sees |p|; kernel and negative orders are corrected here
    for (p, w) in spec.orders()? {
        if p == 0.0 {
            value += w * bessel_quotient(0.0, s)?;
        } else if p < 0.0 {
            value += w * (bessel_quotient(p, s)? - bessel_quotient(-p, s)?);
        }
    }
    Ok(ZetaHatValue { value, error_estimate: phi.error_estimate })
}

/// Γ(s)·ζ̂(L, s) = Γ(s−½)/(2√π) Φ_A(s).
pub fn gamma_zeta_hat_operator(spec: &CrossSectionSpectrum, s: Complex64) -> Result<ZetaHatValue, ConeError> {
    let phi = phi_operator(spec, s)?;
    let g = gamma(s - 0.5)? / (2.0 * PI.sqrt());
    Ok(ZetaHatValue { value: phi.value * g, error_estimate: phi.error_estimate * g.norm() })
}

/// ζ̂(L, s) = (1/(2√π)) Γ(s−½)/Γ(s) Σ w Γ(p+1−s)/Γ(p+s).
pub fn zeta_hat_operator(spec: &CrossSectionSpectrum, s: Complex64) -> Result<ZetaHatValue, ConeError> {
    let v = gamma_zeta_hat_operator(spec, s)?;
    let r = rgamma(s);
    Ok(ZetaHatValue { value: v.value * r, error_estimate: v.error_estimate * r.norm() })
}

/// Simple-pole coefficient and constant Laurent coefficient at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residues {
    pub res1: Complex64,
    pub res0: Complex64,
}

/// (Res₁, Res₀) of ζ_A(z) = D(2z) at z0.
pub(crate) fn zeta_a_laurent(spec: &CrossSectionSpectrum, z0: f64) -> Result<(Complex64, Complex64), ConeError> {
    let (r, c) = spec.frequency_provider()?.laurent(Complex64::new(2.0 * z0, 0.0))?;
    Ok((r * 0.5, c))
}

/// Γ'(−½)/(2√π).
pub(crate) fn gamma_prime_minus_half() -> Result<f64, ConeError> {
    let z = Complex64::new(-0.5, 0.0);
    Ok((gamma(z)? * digamma(z)?).re / (2.0 * PI.sqrt()))
}

/// Residues of Γ(s)ζ̂(L, s) at s = 0:
/// Res₁ = −Res₁ζ_A(−½) and
/// Res₀ = Γ'(−½)/(2√π)·Res₁ζ_A(−½) − Res₀ζ_A(−½) − Σ_k q_{k,1} Res₁ζ_A((k−1)/2) − Σ_{p<0} 2p w,
/// where q_{k,1} is the linear coefficient of the gamma-ratio polynomial
/// Q_k (only even k contribute; q_{2j,1} = (−1)^{j+1} b_j/j).
pub fn residues_at_zero(spec: &CrossSectionSpectrum) -> Result<Residues, ConeError> {
    let provider = spec.frequency_provider()?;
    let abscissa = provider.abscissa();
    // Q_k D(2s−1+k) carries poles of D at w = k−1; all must be covered
    let k_max = if abscissa.is_finite() { abscissa.floor() as usize + 1 } else { 1 };
    if k_max > MAX_RATIO_ORDER {
        return Err(ConeError::Missing(format!(
            "residues of ζ_A up to z = {} exceed the gamma-ratio order {MAX_RATIO_ORDER}",
            (k_max as f64 - 1.0) / 2.0
        )));
    }
    let exp = gamma_ratio_expansion(k_max.max(2))?;
    let (r_half, c_half) = zeta_a_laurent(spec, -0.5)?;
    let mut res0 = gamma_prime_minus_half()? * r_half - c_half;
    for k in 1..=k_max {
        let q = to_f64(&exp.q_linear(k));
        if q == 0.0 {
            continue;
        }
        let (r, _) = zeta_a_laurent(spec, (k as f64 - 1.0) / 2.0)?;
        res0 -= q * r;
    }
    for (p, w) in spec.orders()? {
        if p < 0.0 {
            res0 -= 2.0 * p * w;
        }
    }
    Ok(Residues { res1: -r_half, res0 })
}
