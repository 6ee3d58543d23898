//! η̂ of first-order cone operators D = ∂_x + S/x through A± = (S ± ½)².
//!
//! Writing h(z) = ζ_{A+}(z) − ζ_{A−}(z) = Σ_{m odd} 2^{1−m} C(−2z, m) η(S, 2z+m)
//! and feeding h into the residue formula for Γ(s)ζ̂ at 0 gives
//! Res₀η̂ = −Res₀η(0) − w₀ − 2Σ_{−½<λ<0} w + Σ_{k≥0} α_k Res₁η(2k) with
//! α₀ = Γ'(−½)/(4√π) + 1 and, for k ≥ 1,
//! α_k = −2^{−2k}/((2k+1)2k) + Σ_{j=1}^{k} q_{2j,1} 2^{−m} C(2k−1, m), m = 2k−2j+1.

use super::spectrum::FirstOrderSpectrum;
use super::zeta::{gamma_prime_minus_half, phi_operator, Residues};
use super::ConeError;
use crate::specfun::bernoulli::to_f64;
use crate::specfun::{gamma, gamma_ratio_expansion, MAX_RATIO_ORDER};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::f64::consts::PI;

/// Largest k for which α_k is available.
pub const MAX_ALPHA: usize = MAX_RATIO_ORDER / 2;

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// α_k for 1 ≤ k ≤ MAX_ALPHA, exactly.
pub fn alpha_exact(k: usize) -> Result<BigRational, ConeError> {
    if k == 0 || k > MAX_ALPHA {
        return Err(ConeError::Missing(format!("α_{k} is available for 1 ≤ k ≤ {MAX_ALPHA}")));
    }
    let exp = gamma_ratio_expansion(2 * k)?;
    let int = |n: BigInt| BigRational::from_integer(n);
    let pow2 = |e: usize| int(BigInt::one() << e);
    let kk = 2 * k;
    let mut a = -BigRational::one() / (pow2(kk) * int(BigInt::from((kk + 1) * kk)));
    for j in 1..=k {
        let m = kk - 2 * j + 1;
        let q = exp.q_linear(2 * j);
        if q.is_zero() {
            continue;
        }
        a += q * int(binomial(kk - 1, m)) / pow2(m);
    }
    Ok(a)
}

/// [α₀, α₁, …, α_n] as doubles.
pub fn alpha_coefficients(n: usize) -> Result<Vec<f64>, ConeError> {
    let mut out = vec![gamma_prime_minus_half()? / 2.0 + 1.0];
    for k in 1..=n {
        out.push(to_f64(&alpha_exact(k)?));
    }
    Ok(out)
}

/// Res₁ η(S, 2k) for k = 0..=K, where 2K covers every pole of η.
fn even_residues(spec: &FirstOrderSpectrum) -> Result<Vec<Complex64>, ConeError> {
    let poles = spec.eta_poles(-0.5)?;
    let top = poles.iter().map(|p| p.0).fold(0.0, f64::max);
    let k_max = (top / 2.0).floor() as usize;
    if k_max > MAX_ALPHA {
        return Err(ConeError::Missing(format!(
            "η has a pole at {top}; α_k is only available up to 2k = {}",
            2 * MAX_ALPHA
        )));
    }
    (0..=k_max).map(|k| spec.eta_laurent(Complex64::new(2.0 * k as f64, 0.0)).map(|(r, _)| r)).collect()
}

/// Residues of η̂(D_min, ·) at 0.
pub fn eta_hat_residues(spec: &FirstOrderSpectrum) -> Result<Residues, ConeError> {
    let (r0, f0) = spec.eta_laurent(Complex64::new(0.0, 0.0))?;
    let (w0, small) = spec.small_weights();
    let res = even_residues(spec)?;
    let alpha = alpha_coefficients(res.len() - 1)?;
    let mut res0 = -f0 - w0 - 2.0 * small;
    for (a, r) in alpha.iter().zip(&res) {
        res0 += *a * r;
    }
    Ok(Residues { res1: -0.5 * r0, res0 })
}

/// ∫ω − ½(η(S)(0) + w₀) − Σ_{−½<λ<0} w + ½ Σ_{k≥1} α_k Res₁η(S)(2k),
/// with η(S)(0) the constant Laurent coefficient.
pub fn index_first_order(spec: &FirstOrderSpectrum, interior_term: f64) -> Result<Complex64, ConeError> {
    let (_, eta0) = spec.eta_laurent(Complex64::new(0.0, 0.0))?;
    let (w0, small) = spec.small_weights();
    let res = even_residues(spec)?;
    let alpha = alpha_coefficients(res.len() - 1)?;
    let mut out = Complex64::new(interior_term, 0.0) - 0.5 * (eta0 + w0) - small;
    for (a, r) in alpha.iter().zip(&res).skip(1) {
        out += 0.5 * *a * r;
    }
    Ok(out)
}

/// η̂(D, s) = Γ(s)(ζ̂(L₊, s) − ζ̂(L₋, s)) = Γ(s−½)/(2√π)(Φ_{A+}(s) − Φ_{A−}(s)).
pub fn eta_function_scalable(spec: &FirstOrderSpectrum, s: Complex64) -> Result<Complex64, ConeError> {
    let (plus, minus) = spec.squared_spectra()?;
    let d = phi_operator(&plus, s)?.value - phi_operator(&minus, s)?.value;
    Ok(d * gamma(s - 0.5)? / (2.0 * PI.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::super::spectrum::SpectralDatum;
    use super::super::zeta::residues_at_zero;
    use super::super::{gamma_zeta_hat_lp, laurent_fit};
    use super::*;
    use crate::specfun::PowerFamily;
    use num_traits::ToPrimitive;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn d(l: f64, w: f64) -> SpectralDatum {
        SpectralDatum::new(l, c(w))
    }

    #[test]
    fn alpha_values() {
        let a1 = alpha_exact(1).unwrap();
        assert_eq!(a1, BigRational::new(1.into(), 24.into()));
        let a2 = alpha_exact(2).unwrap();
        assert_eq!(a2, BigRational::new((-7).into(), 960.into()));
        let a = alpha_coefficients(0).unwrap();
        let euler = 0.577_215_664_901_532_9;
        assert!((a[0] - (euler / 2.0 + 2f64.ln())).abs() < 1e-14);
        assert!(alpha_exact(MAX_ALPHA + 1).is_err());
        assert!(alpha_exact(MAX_ALPHA).unwrap().to_f64().unwrap().is_finite());
    }

    #[test]
    fn finite_cases() {
        let sym = FirstOrderSpectrum::finite(vec![d(1.5, 1.0), d(-1.5, 1.0), d(0.3, 2.0), d(-0.3, 2.0)]).unwrap();
        let r = eta_hat_residues(&sym).unwrap();
        // ±0.3 lie in (−½, ½): −0.3 carries the −2w term, so only the
        // large pair cancels outright
        assert_eq!(r.res1, c(0.0));
        for &s in &[c(0.3), Complex64::new(1.2, 0.5)] {
            let v = eta_function_scalable(&FirstOrderSpectrum::finite(vec![d(1.5, 1.0), d(-1.5, 1.0)]).unwrap(), s);
            assert!(v.unwrap().norm() < 1e-14);
        }
        let kernel = FirstOrderSpectrum::finite(vec![d(0.0, 2.0), d(1.5, 1.0), d(-1.5, 1.0)]).unwrap();
        assert!((eta_hat_residues(&kernel).unwrap().res0 - c(-2.0)).norm() < 1e-14);
        let small = FirstOrderSpectrum::finite(vec![d(0.0, 2.0), d(1.5, 1.0), d(-1.5, 1.0), d(-0.3, 1.0)]).unwrap();
        let rs = eta_hat_residues(&small).unwrap();
        for spec in [&sym, &kernel, &small] {
            let ours = eta_hat_residues(spec).unwrap();
            let fit = laurent_fit(|s| eta_function_scalable(spec, s), 1e-3).unwrap();
            assert!((fit.0 - ours.res1).norm() < 1e-5 && (fit.1 - ours.res0).norm() < 1e-5);
        }
        // −η(0) = −(−1) and the small-eigenvalue term −2 shift Res₀ by −1
        assert!((rs.res0 - c(-3.0)).norm() < 1e-14);
    }

    #[test]
    fn single_kernel_closed_form() {
        let spec = FirstOrderSpectrum::finite(vec![d(0.0, 1.0)]).unwrap();
        let s = Complex64::new(0.4, 0.2);
        let v = eta_function_scalable(&spec, s).unwrap();
        let expect = gamma_zeta_hat_lp(0.5, s).unwrap() - gamma_zeta_hat_lp(-0.5, s).unwrap();
        assert!((v - expect).norm() < 1e-14);
        let two = FirstOrderSpectrum::finite(vec![d(2.0, 1.0)]).unwrap();
        let v = eta_function_scalable(&two, c(1.0)).unwrap();
        let expect = gamma_zeta_hat_lp(2.5, c(1.0)).unwrap() - gamma_zeta_hat_lp(1.5, c(1.0)).unwrap();
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn index_examples() {
        let quarter = FirstOrderSpectrum::from_json(&serde_json::json!({"tail": {"kind": "hurwitz_shift", "a": 0.25}}))
            .unwrap();
        assert!((index_first_order(&quarter, 3.0).unwrap() - c(2.75)).norm() < 1e-12);
        let sym = FirstOrderSpectrum::finite(vec![d(1.5, 1.0), d(-1.5, 1.0)]).unwrap();
        assert_eq!(index_first_order(&sym, 0.0).unwrap(), c(0.0));
        let with_kernel = FirstOrderSpectrum::finite(vec![d(1.5, 1.0), d(-1.5, 1.0), d(0.0, 1.0)]).unwrap();
        assert_eq!(index_first_order(&with_kernel, 0.0).unwrap(), c(-0.5));
    }

    fn family(scale: f64, beta: f64, w: f64) -> PowerFamily {
        PowerFamily::new(scale, beta, 0.0, 1, c(w)).unwrap()
    }

    /// Res₀ of η̂ three ways: the α_k formula, residues of the A± operators,
    /// and a Laurent fit of the assembled η̂.
    fn three_way(spec: &FirstOrderSpectrum) -> (Complex64, Complex64, Complex64) {
        let formula = eta_hat_residues(spec).unwrap().res0;
        let (plus, minus) = spec.squared_spectra().unwrap();
        let ops = residues_at_zero(&plus).unwrap().res0 - residues_at_zero(&minus).unwrap().res0;
        let fit = laurent_fit(|s| eta_function_scalable(spec, s), 1e-3).unwrap().1;
        (formula, ops, fit)
    }

    #[test]
    fn alpha_validated_on_power_spectra() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for beta in [0.5, 0.25, 0.5] {
            let data = vec![d(rng.random_range(-0.45..-0.05), rng.random_range(0.5..2.0)), d(0.0, 1.0)];
            let pos = family(rng.random_range(1.0..2.0), beta, rng.random_range(0.5..1.5));
            let neg = family(rng.random_range(1.0..3.0), 0.5, rng.random_range(0.5..1.5));
            let spec = FirstOrderSpectrum::new(data, vec![pos], vec![neg]).unwrap();
            let (formula, ops, fit) = three_way(&spec);
            assert!((formula - ops).norm() < 1e-8, "β = {beta}: {formula} vs {ops}");
            assert!((formula - fit).norm() < 1e-5, "β = {beta}: {formula} vs {fit}");
            if beta == 0.25 {
                // the bare term 2(½)^{2k+1}/((2k+1)2k) in place of α₂ misses the oracle
                let (r4, _) = spec.eta_laurent(c(4.0)).unwrap();
                let candidate = 2.0 * 0.5f64.powi(5) / 20.0;
                let alt = formula + (candidate - alpha_coefficients(2).unwrap()[2]) * r4;
                assert!((alt - fit).norm() > 1e-2);
            }
        }
    }
}
