//! Hurwitz zeta function ζ(s, a) for complex `s` and real `a > 0`.

use super::bernoulli::{bernoulli, MAX_BERNOULLI};
use super::gamma::{digamma_real, gamma};
use super::SpecfunError;
use crate::quad::{integrate_half_line, Tolerance};
use num_complex::Complex64;
use std::f64::consts::PI;

fn cpow_real(x: f64, s: Complex64) -> Complex64 {
    // x^{-s} for x > 0
    (-s * x.ln()).exp()
}

/// Bernoulli polynomial B_n(x).
pub fn bernoulli_poly(n: usize, x: f64) -> Result<f64, SpecfunError> {
    let mut binom = 1.0;
    let mut acc = 0.0;
    for k in 0..=n {
        acc += binom * bernoulli(k)? * x.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    Ok(acc)
}

/// ζ(s, a) = Σ_{n≥0} (n+a)^{−s}, continued to all `s ≠ 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64, SpecfunError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(SpecfunError::Domain(format!("Hurwitz parameter a = {a} must be positive")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(SpecfunError::Pole(s));
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() && s.re > -(MAX_BERNOULLI as f64) {
        // ζ(−n, a) = −B_{n+1}(a)/(n+1)
        let n = (-s.re) as usize;
        return Ok(Complex64::new(-bernoulli_poly(n + 1, a)? / (n + 1) as f64, 0.0));
    }
    if s.re < -1.0 {
        // the Euler–Maclaurin head sum cancels badly for negative Re s
        return hurwitz_reflected(s, a);
    }
    Ok(euler_maclaurin(s, a))
}

/// Riemann ζ(s).
pub fn riemann_zeta(s: Complex64) -> Result<Complex64, SpecfunError> {
    hurwitz_zeta(s, 1.0)
}

/// Constant term of the Laurent expansion of ζ(s, a) at s = 1.
pub fn hurwitz_finite_part(a: f64) -> Result<f64, SpecfunError> {
    Ok(-digamma_real(a)?)
}

fn euler_maclaurin(s: Complex64, a: f64) -> Complex64 {
    let n_head = (s.norm().ceil() as usize + 10).max(10);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..n_head {
        sum += cpow_real(n as f64 + a, s);
    }
    let x = n_head as f64 + a;
    let xs = cpow_real(x, s);
    sum += xs * x / (s - 1.0) + xs * 0.5;
    // Σ B_{2k}/(2k)! (s)_{2k−1} x^{−s−2k+1}
    let mut poch = s; // (s)_1
    let mut fact = 2.0; // (2k)!
    let mut xpow = xs / x; // x^{-s-1}
    let inv_x2 = 1.0 / (x * x);
    for k in 1..=MAX_BERNOULLI / 2 {
        let b2k = bernoulli(2 * k).expect("index within table");
        let term = poch * xpow * (b2k / fact);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        let kk = 2 * k as u32;
        poch *= (s + (kk - 1) as f64) * (s + kk as f64);
        fact *= ((kk + 1) * (kk + 2)) as f64;
        xpow *= inv_x2;
    }
    sum
}

/// Periodic zeta Σ_{n≥1} e^{2πinθ} n^{−s} for Re s > 1 via its Mellin integral.
fn periodic_zeta(s: Complex64, theta: f64) -> Result<Complex64, SpecfunError> {
    let z = Complex64::new(0.0, 2.0 * PI * theta).exp();
    let tol = Tolerance::new(1e-300, 1e-13);
    let r = integrate_half_line(
        |t| {
            let e = (-t).exp();
            if t == 0.0 || e == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let w = z * e / (1.0 - z * e);
            ((s - 1.0) * t.ln()).exp() * w
        },
        1.0,
        tol,
    )?;
    Ok(r.value / gamma(s)?)
}

/// ζ(s, a) for Re s < −1 through the Hurwitz functional equation.
fn hurwitz_reflected(s: Complex64, a: f64) -> Result<Complex64, SpecfunError> {
    // Move a into (0, 1]; the correction terms are exact finite sums.
    let mut a0 = a;
    let mut shift = Complex64::new(0.0, 0.0);
    while a0 > 1.0 {
        a0 -= 1.0;
        shift -= cpow_real(a0, s);
    }
    let sp = 1.0 - s;
    let f_plus = periodic_zeta(sp, a0)?;
    let f_minus = periodic_zeta(sp, -a0)?;
    let cos_sum = (f_plus + f_minus) * 0.5;
    let sin_sum = (f_plus - f_minus) / Complex64::new(0.0, 2.0);
    let half = sp * (PI / 2.0);
    let pref = gamma(sp)? * 2.0 * (-sp * (2.0 * PI).ln()).exp();
    Ok(pref * (half.cos() * cos_sum + half.sin() * sin_sum) + shift)
}
