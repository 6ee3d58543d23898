//! Heat-trace expansions on the cone and least-squares coefficient fits.

use super::spectrum::CrossSectionSpectrum;
use super::zeta::residues_at_zero;
use super::{k_trace_lp, ConeError};
use crate::expansions::Location;
use crate::quad::{integrate_half_line, Tolerance};
use crate::report::{ExpansionReport, Provenance};
use crate::sal::{weighted_moment, TestFunction};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Inputs of the expansion Σ_n b_n ⨍φ_n t^{(n−m)/μ} + (1/ν)Res₀ − (1/ν) b_m log t.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatTraceInputs {
    pub nu: f64,
    pub mu: u32,
    pub m: u32,
    /// Regularized cutoff moments ⨍ φ(x) x^{(ν/μ)(m−n)−1} dx, n = 0, 1, ….
    pub moments: Vec<Complex64>,
    /// Interior coefficients b_n, same length as `moments`.
    pub interior: Vec<Complex64>,
}

/// Small-t expansion of Tr(φ e^{−tL}) in the variable t.
pub fn heat_trace_expansion(spec: &CrossSectionSpectrum, inputs: &HeatTraceInputs) -> Result<ExpansionReport, ConeError> {
    let HeatTraceInputs { nu, mu, m, moments, interior } = inputs;
    if !(*nu > 0.0) || *mu == 0 || *m == 0 {
        return Err(ConeError::Invalid(format!("need ν > 0, μ ≥ 1, m ≥ 1 (got {nu}, {mu}, {m})")));
    }
    if moments.len() != interior.len() {
        return Err(ConeError::Invalid(format!(
            "{} moments but {} interior coefficients",
            moments.len(),
            interior.len()
        )));
    }
    let m = *m as usize;
    if interior.len() <= m {
        return Err(ConeError::Missing(format!("interior coefficients through b_{m}")));
    }
    let res = residues_at_zero(spec)?;
    let n_max = interior.len();
    let mut report = ExpansionReport::new(Location::Zero, (n_max as f64 - m as f64) / *mu as f64, 0);
    for n in 0..n_max {
        let e = (n as f64 - m as f64) / *mu as f64;
        report.push(Complex64::new(e, 0.0), 0, interior[n] * moments[n], Provenance::Interior);
    }
    let zero = Complex64::new(0.0, 0.0);
    report.push(zero, 0, res.res0 / *nu, Provenance::Residue);
    report.push(zero, 1, -interior[m] / *nu, Provenance::LogCorrection);
    report.sort();
    Ok(report)
}

/// a_k(p) = Π_{i≤k}(4p² − (2i−1)²) / (k! 8^k).
fn hankel_coefficient(p: f64, k: usize) -> f64 {
    let mu = 4.0 * p * p;
    (1..=k).fold(1.0, |a, i| {
        let odd = 2.0 * i as f64 - 1.0;
        a * (mu - odd * odd) / (i as f64 * 8.0)
    })
}

/// b_0, …, b_{n_max} of k(t) ∼ Σ b_n t^{(n−1)/2} summed over a finite
/// spectrum: b_{2k} = (4π)^{−1/2} Σ w (−2)^k a_k(p), odd b_n = 0.
pub fn scalar_interior_coefficients(spec: &CrossSectionSpectrum, n_max: usize) -> Result<Vec<Complex64>, ConeError> {
    if !spec.is_finite() {
        return Err(ConeError::Missing("interior coefficients of an infinite spectrum must be supplied".into()));
    }
    let orders = spec.orders()?;
    let pref = 1.0 / (4.0 * PI).sqrt();
    Ok((0..=n_max)
        .map(|n| {
            if n % 2 == 1 {
                return Complex64::new(0.0, 0.0);
            }
            let k = n / 2;
            let sign = (-2.0f64).powi(k as i32);
            orders.iter().map(|&(p, w)| w * pref * sign * hankel_coefficient(p, k)).sum()
        })
        .collect())
}

/// Inputs for the scalar Laplacian on the cone (m = 1, μ = ν = 2) over a
/// finite cross-section spectrum, with moments ⨍φ x^{−n}.
pub fn scalar_heat_inputs(spec: &CrossSectionSpectrum, phi: &TestFunction, n_max: usize) -> Result<HeatTraceInputs, ConeError> {
    let interior = scalar_interior_coefficients(spec, n_max)?;
    let moments = (0..=n_max)
        .map(|n| weighted_moment(phi, Complex64::new(-(n as f64), 0.0), 0))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HeatTraceInputs { nu: 2.0, mu: 2, m: 1, moments, interior })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub coefficients: Vec<f64>,
    /// 2-norm condition number of the column-normalized design matrix.
    pub condition: f64,
    pub max_residual: f64,
}

/// Least squares of values against t^e log^k t for each (e, k) in `basis`.
pub fn fit_powers(ts: &[f64], values: &[f64], basis: &[(f64, u32)]) -> Result<FitReport, ConeError> {
    if ts.len() != values.len() || ts.len() < basis.len() {
        return Err(ConeError::Invalid(format!("{} samples cannot fit {} basis functions", ts.len(), basis.len())));
    }
    let mut a = DMatrix::from_fn(ts.len(), basis.len(), |i, j| {
        let (e, k) = basis[j];
        ts[i].powf(e) * ts[i].ln().powi(k as i32)
    });
    let norms: Vec<f64> = (0..basis.len()).map(|j| a.column(j).norm()).collect();
    for (j, n) in norms.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / n);
    }
    let sv = a.clone().singular_values();
    let condition = sv.max() / sv.min();
    let b = DVector::from_column_slice(values);
    let qr = a.clone().qr();
    let qtb = qr.q().transpose() * &b;
    let x = qr
        .r()
        .solve_upper_triangular(&qtb)
        .ok_or_else(|| ConeError::Invalid("rank-deficient fit".into()))?;
    let max_residual = (&a * &x - &b).amax();
    let coefficients = x.iter().zip(&norms).map(|(c, n)| c / n).collect();
    Ok(FitReport { coefficients, condition, max_residual })
}

/// Fits k_trace_lp(p, ·) on t ∈ [10^{-5}, 10^{-3}] against t^{(n−1)/2}, n ≤ n_max.
pub fn fit_interior_coefficients(p: f64, n_max: usize) -> Result<FitReport, ConeError> {
    let ts: Vec<f64> = (0..60).map(|i| 10f64.powf(-5.0 + 2.0 * i as f64 / 59.0)).collect();
    let values = ts.iter().map(|&t| k_trace_lp(p, t)).collect::<Result<Vec<_>, _>>()?;
    let basis: Vec<(f64, u32)> = (0..=n_max).map(|n| ((n as f64 - 1.0) / 2.0, 0)).collect();
    fit_powers(&ts, &values, &basis)
}

/// Σ w ∫ φ(x) x^{−1} k_{p}(t x^{−2}) dx by quadrature, for finite spectra.
pub fn scalar_cone_trace(spec: &CrossSectionSpectrum, phi: &TestFunction, t: f64) -> Result<Complex64, ConeError> {
    let tol = Tolerance { abs: 1e-15, rel: 1e-13, max_intervals: 4000 };
    let mut total = Complex64::new(0.0, 0.0);
    for (p, w) in spec.orders()? {
        let f = |x: f64| {
            let v = phi.eval(x);
            if v == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            Complex64::new(v / x * k_trace_lp(p, t / (x * x)).unwrap_or(0.0), 0.0)
        };
        total += w * integrate_half_line(f, 1.0, tol)?.value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::super::spectrum::SpectralDatum;
    use super::*;
    use crate::sal::{catalog::smooth_cutoff, weighted_moment};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn scalar_inputs(spec: &CrossSectionSpectrum, n: usize) -> HeatTraceInputs {
        let phi = smooth_cutoff(n + 2);
        let moments = (0..n).map(|k| weighted_moment(&phi, c(-(k as f64)), 0).unwrap()).collect();
        HeatTraceInputs { nu: 2.0, mu: 2, m: 1, moments, interior: scalar_interior_coefficients(spec, n - 1).unwrap() }
    }

    #[test]
    fn interior_coefficients_match_fit() {
        for &p in &[0.5, 1.0, 2.5] {
            let spec = CrossSectionSpectrum::finite(vec![SpectralDatum::new(p * p, c(1.0))]).unwrap();
            let b = scalar_interior_coefficients(&spec, 4).unwrap();
            let fit = fit_interior_coefficients(p, 4).unwrap();
            assert!(fit.condition.is_finite());
            for n in [0, 2] {
                assert!((fit.coefficients[n] - b[n].re).abs() < 1e-4 * b[0].re, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn expansion_terms() {
        let spec = CrossSectionSpectrum::finite(vec![SpectralDatum::new(1.0, c(1.0))]).unwrap();
        let r = heat_trace_expansion(&spec, &scalar_inputs(&spec, 4)).unwrap();
        let lead = r.coefficient(c(-0.5), 0);
        assert!((lead.re - 1.5 / (4.0 * PI).sqrt()).abs() < 1e-8, "{lead}");
        assert!((r.coefficient(c(0.0), 0) - c(-0.5)).norm() < 1e-12);
        assert_eq!(r.coefficient(c(0.0), 1), c(0.0));
        let zero = spec.scaled(c(0.0));
        let r0 = heat_trace_expansion(&zero, &scalar_inputs(&zero, 4)).unwrap();
        assert!(r0.terms.iter().all(|t| t.coefficient.norm() == 0.0));
    }

    #[test]
    fn weyl_constant_from_fit() {
        // λ_n = c n²: Σ e^{−tλ_n} = ½√(π/(ct)) − ½ + exponentially small
        let cw = 2.7;
        let ts: Vec<f64> = (0..30).map(|i| 10f64.powf(-4.0 + 2.0 * i as f64 / 29.0)).collect();
        let vals: Vec<f64> = ts
            .iter()
            .map(|&t| (1..200_000).map(|n| (-t * cw * (n * n) as f64).exp()).take_while(|v| *v > 1e-300).sum())
            .collect();
        let fit = fit_powers(&ts, &vals, &[(-0.5, 0), (0.0, 0), (0.5, 0)]).unwrap();
        let a = fit.coefficients[0];
        let fitted = PI / (4.0 * a * a);
        assert!((fitted - cw).abs() < 0.02 * cw);
    }
}
