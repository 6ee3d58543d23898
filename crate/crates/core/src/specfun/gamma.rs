//! Gamma, log-gamma, reciprocal gamma and digamma.

use super::SpecfunError;
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

/// Stirling correction coefficients B_{2k}/(2k(2k-1)).
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn lanczos_sum(z: Complex64) -> Complex64 {
    // z is the shifted argument (Γ(z+1) form).
    let mut a = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// Γ(z) for complex `z`, with reflection for `Re z < 1/2`.
pub fn gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::Pole(z));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return PI / (s * gamma_unchecked(1.0 - z));
    }
    if z.im == 0.0 && z.re <= 171.0 && z.re == z.re.round() {
        let mut f = 1.0;
        let n = z.re as u32;
        for k in 2..n {
            f *= k as f64;
        }
        return Complex64::new(f, 0.0);
    }
    let zm = z - 1.0;
    let t = zm + LANCZOS_G + 0.5;
    let a = lanczos_sum(zm);
    (2.0 * PI).sqrt() * (t.ln() * (zm + 0.5) - t).exp() * a
}

/// Real Γ(x).
pub fn gamma_real(x: f64) -> Result<f64, SpecfunError> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

/// 1/Γ(z), an entire function; exactly zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        Complex64::new(0.0, 0.0)
    } else if z.re < 0.5 {
        (z * PI).sin() * gamma_unchecked(1.0 - z) / PI
    } else {
        1.0 / gamma_unchecked(z)
    }
}

/// log Γ(z) on the principal sheet of the Lanczos form.
///
/// The imaginary part may differ from the canonical branch by a multiple of
/// 2π; `exp(log_gamma(z)) == gamma(z)` always holds.
pub fn log_gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::Pole(z));
    }
    Ok(log_gamma_unchecked(z))
}

fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - log_gamma_unchecked(1.0 - z);
    }
    if z.norm() > 15.0 {
        return stirling_log_gamma(z);
    }
    let zm = z - 1.0;
    let t = zm + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (zm + 0.5) * t.ln() - t + lanczos_sum(zm).ln()
}

fn stirling_log_gamma(z: Complex64) -> Complex64 {
    let zinv = 1.0 / z;
    let zinv2 = zinv * zinv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = zinv;
    for c in STIRLING {
        corr += p * c;
        p *= zinv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + corr
}

/// Γ(a)/Γ(b), accurate for large nearby arguments.
///
/// Returns zero when `b` is a pole of Γ and `a` is not.
pub fn gamma_quotient(a: Complex64, b: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(a) {
        return Err(SpecfunError::Pole(a));
    }
    if is_nonpositive_integer(b) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if a.re > 10.0 && b.re > 10.0 {
        // Stirling difference with the leading logs combined via ln(1+x).
        let d = a - b;
        let ln_ratio = (d / b).ln_1p();
        let mut corr = Complex64::new(0.0, 0.0);
        let (ia, ib) = (1.0 / a, 1.0 / b);
        let (ia2, ib2) = (ia * ia, ib * ib);
        let (mut pa, mut pb) = (ia, ib);
        for c in STIRLING {
            corr += (pa - pb) * c;
            pa *= ia2;
            pb *= ib2;
        }
        let log_q = (a - 0.5) * ln_ratio + d * b.ln() - d + corr;
        return Ok(log_q.exp());
    }
    Ok(gamma_unchecked(a) * rgamma(b))
}

trait Ln1p {
    fn ln_1p(self) -> Self;
}

impl Ln1p for Complex64 {
    fn ln_1p(self) -> Complex64 {
        if self.norm() > 0.25 {
            return (1.0 + self).ln();
        }
        // Series keeps full relative accuracy for small arguments.
        let mut term = self;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..60 {
            let add = term / k as f64;
            sum += add;
            if add.norm() < 1e-18 * sum.norm() {
                break;
            }
            term *= -self;
        }
        sum
    }
}

/// Digamma ψ(z) for complex arguments off the poles.
pub fn digamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::Pole(z));
    }
    if z.re < 0.5 {
        // ψ(1−z) − ψ(z) = π cot(πz)
        let cot = (z * PI).cos() / (z * PI).sin();
        return Ok(digamma(1.0 - z)? - cot * PI);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.norm() < 15.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    // ψ(w) ~ ln w − 1/(2w) − Σ B_{2k}/(2k w^{2k})
    const B2K: [f64; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let winv2 = 1.0 / (w * w);
    let mut p = winv2;
    let mut s = Complex64::new(0.0, 0.0);
    for (k, b) in B2K.iter().enumerate() {
        s += p * (b / (2.0 * (k + 1) as f64));
        p *= winv2;
    }
    Ok(acc + w.ln() - 0.5 / w - s)
}

/// Real digamma.
pub fn digamma_real(x: f64) -> Result<f64, SpecfunError> {
    digamma(Complex64::new(x, 0.0)).map(|v| v.re)
}
