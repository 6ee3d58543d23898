//! Bessel functions J_p and I_p of real order p > −1 and real argument.

use super::gamma::log_gamma;
use super::SpecfunError;
use num_complex::Complex64;
use std::f64::consts::PI;

fn ln_gamma_real(x: f64) -> f64 {
    log_gamma(Complex64::new(x, 0.0))
        .expect("argument is positive")
        .re
}

fn check_order(p: f64) -> Result<(), SpecfunError> {
    if p > -1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(SpecfunError::Domain(format!("Bessel order p = {p} must exceed -1")))
    }
}

fn check_arg(x: f64) -> Result<(), SpecfunError> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(SpecfunError::Domain(format!("Bessel argument x = {x} must be nonnegative")))
    }
}

/// Argument above which I_p switches to its large-argument expansion.
pub fn i_asymptotic_threshold(p: f64) -> f64 {
    30f64.max(0.5 * p * p + 5.0)
}

/// Power series for I_p(x)·e^{−x}; every term is positive.
pub fn bessel_i_scaled_series(p: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if p == 0.0 { 1.0 } else { 0.0 };
    }
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + p));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    let log_pref = p * (0.5 * x).ln() - ln_gamma_real(p + 1.0) - x;
    sum * log_pref.exp()
}

/// Large-argument expansion of I_p(x)·e^{−x}; drops the e^{−2x} companion.
pub fn bessel_i_scaled_asymptotic(p: f64, x: f64) -> f64 {
    let mu = 4.0 * p * p;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= -(mu - odd * odd) / (kf * 8.0 * x);
        if term.abs() >= last {
            break;
        }
        sum += term;
        last = term.abs();
        if last < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// I_p(x)·e^{−x}, safe for large arguments.
pub fn bessel_i_scaled(p: f64, x: f64) -> Result<f64, SpecfunError> {
    check_order(p)?;
    check_arg(x)?;
    if x > i_asymptotic_threshold(p) {
        Ok(bessel_i_scaled_asymptotic(p, x))
    } else {
        Ok(bessel_i_scaled_series(p, x))
    }
}

/// Modified Bessel function I_p(x).
pub fn bessel_i(p: f64, x: f64) -> Result<f64, SpecfunError> {
    let scaled = bessel_i_scaled(p, x)?;
    Ok(scaled * x.exp())
}

/// J_p(x) by its power series; intended for small x.
fn j_series(p: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if p == 0.0 { 1.0 } else { 0.0 };
    }
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    for _ in 0..200 {
        m += 1.0;
        term *= q / (m * (m + p));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    let ln_abs = p * (0.5 * x).ln() - ln_gamma_real(p + 1.0);
    sum * ln_abs.exp()
}

/// Hankel large-argument expansion of J_p(x).
fn j_asymptotic(p: f64, x: f64) -> f64 {
    let mu = 4.0 * p * p;
    let mut pp = 1.0;
    let mut qq = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        let mag = term.abs();
        if mag >= last && k > 2 {
            break;
        }
        // term_k carries (−1)^{⌊k/2⌋}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pp += sign * term;
        } else {
            qq += sign * term;
        }
        last = mag;
        if mag < 1e-17 {
            break;
        }
    }
    let omega = x - (0.5 * p + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (pp * omega.cos() - qq * omega.sin())
}

fn miller_threshold(p: f64) -> f64 {
    25f64.max(p * p + 10.0)
}

/// Miller backward recurrence normalised by (x/2)^ν = Σ c_k J_{ν+2k}(x).
fn j_miller(p: f64, x: f64) -> (f64, f64) {
    let (nu, n) = if p >= 0.0 {
        let f = p.floor();
        (p - f, f as usize)
    } else {
        (p, 0)
    };
    let start = (x.max(n as f64 + 1.0)).ceil() as usize + 30 + (3.0 * x.sqrt()).ceil() as usize;
    let start = start + start % 2; // even offset keeps the normalisation sum aligned
    let mut vals = vec![0.0f64; start + 2];
    vals[start + 1] = 0.0;
    vals[start] = 1e-300;
    for k in (1..=start).rev() {
        let order = nu + k as f64;
        let next = 2.0 * order / x * vals[k] - vals[k + 1];
        vals[k - 1] = next;
        if next.abs() > 1e250 {
            for v in vals[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    // c_0 = Γ(ν+1), c_k = (ν+2k)Γ(ν+k)/k!, evaluated in log space.
    let mut norm = 0.0;
    let mut k = 0usize;
    while 2 * k <= start {
        let ck = if k == 0 {
            ln_gamma_real(nu + 1.0).exp()
        } else {
            (nu + 2.0 * k as f64) * (ln_gamma_real(nu + k as f64) - ln_gamma_real(k as f64 + 1.0)).exp()
        };
        norm += ck * vals[2 * k];
        k += 1;
    }
    let scale = (nu * (0.5 * x).ln()).exp() / norm;
    (vals[n] * scale, vals[n + 1] * scale)
}

/// Returns (J_p(x), J_{p+1}(x)).
pub fn bessel_j_pair(p: f64, x: f64) -> Result<(f64, f64), SpecfunError> {
    check_order(p)?;
    check_arg(x)?;
    if x == 0.0 && p < 0.0 {
        return Err(SpecfunError::Domain("J_p(0) is infinite for p < 0".into()));
    }
    if x <= 2.0 {
        Ok((j_series(p, x), j_series(p + 1.0, x)))
    } else if x < miller_threshold(p) {
        Ok(j_miller(p, x))
    } else {
        Ok((j_asymptotic(p, x), j_asymptotic(p + 1.0, x)))
    }
}

/// Bessel function of the first kind J_p(x).
pub fn bessel_j(p: f64, x: f64) -> Result<f64, SpecfunError> {
    bessel_j_pair(p, x).map(|(j, _)| j)
}

/// Derivative J_p'(x) = (p/x) J_p(x) − J_{p+1}(x).
pub fn bessel_j_derivative(p: f64, x: f64) -> Result<f64, SpecfunError> {
    let (j0, j1) = bessel_j_pair(p, x)?;
    Ok(p / x * j0 - j1)
}

/// Positive zeros of J_p below `x_max`, in increasing order.
///
/// McMahon's expansion seeds Newton's method; a sign scan takes over when
/// the seed is unreliable (low zeros of high orders).
pub fn bessel_j_zeros(p: f64, x_max: f64) -> Result<Vec<f64>, SpecfunError> {
    check_order(p)?;
    let mu = 4.0 * p * p;
    let mut zeros: Vec<f64> = Vec::new();
    let mut k = 1usize;
    let mut scan_from = 1e-3;
    loop {
        let beta = (k as f64 + 0.5 * p - 0.25) * PI;
        let b8 = 8.0 * beta;
        let seed = beta
            - (mu - 1.0) / b8
            - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3));
        let prev = zeros.last().copied().unwrap_or(0.0);
        let newton = newton_zero(p, seed);
        let accepted = match newton {
            Some(z) if z > prev + 1.0 && beta > 2.0 * p + 2.0 => {
                // make sure no zero was skipped between prev and z
                bracket_confirms(p, prev.max(scan_from), z)?.then_some(z)
            }
            _ => None,
        };
        let z = match accepted {
            Some(z) => z,
            None => match scan_next_zero(p, prev.max(scan_from), x_max + PI)? {
                Some(z) => z,
                None => break,
            },
        };
        if z > x_max {
            break;
        }
        zeros.push(z);
        scan_from = z + 1e-6;
        k += 1;
    }
    Ok(zeros)
}

fn newton_zero(p: f64, mut x: f64) -> Option<f64> {
    for _ in 0..30 {
        if !(x > 0.0) {
            return None;
        }
        let (j0, j1) = bessel_j_pair(p, x).ok()?;
        let d = p / x * j0 - j1;
        if d == 0.0 {
            return None;
        }
        let step = j0 / d;
        x -= step;
        if step.abs() < 1e-14 * x.abs() {
            return Some(x);
        }
    }
    None
}

/// True when J_p changes sign exactly once on (a, b], checked on a fine grid.
fn bracket_confirms(p: f64, a: f64, b: f64) -> Result<bool, SpecfunError> {
    let n = ((b - a) / 0.3).ceil().max(1.0) as usize;
    let mut changes = 0;
    let mut prev = bessel_j(p, a)?;
    for i in 1..=n {
        let x = if i == n { b - 1e-9 * b } else { a + (b - a) * i as f64 / n as f64 };
        let v = bessel_j(p, x)?;
        if v.signum() != prev.signum() {
            changes += 1;
        }
        prev = v;
    }
    // the zero itself sits at b, so no sign change must occur before it
    Ok(changes == 0)
}

fn scan_next_zero(p: f64, a: f64, limit: f64) -> Result<Option<f64>, SpecfunError> {
    let step = 0.25;
    let mut x0 = a;
    let mut f0 = bessel_j(p, x0)?;
    while x0 < limit {
        let x1 = x0 + step;
        let f1 = bessel_j(p, x1)?;
        if f0 == 0.0 {
            return Ok(Some(x0));
        }
        if f0.signum() != f1.signum() {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = bessel_j(p, mid)?;
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-15 * hi {
                    break;
                }
            }
            let root = 0.5 * (lo + hi);
            return Ok(Some(newton_zero(p, root).filter(|r| (r - root).abs() < 1e-8).unwrap_or(root)));
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.3, 1.0, 2.5, 7.0, 19.0, 40.0, 80.0] {
            let j_half = (2.0 / (PI * x)).sqrt() * x.sin();
            let j_mhalf = (2.0 / (PI * x)).sqrt() * x.cos();
            assert!((bessel_j(0.5, x).unwrap() - j_half).abs() < 1e-13, "x = {x}");
            assert!((bessel_j(-0.5, x).unwrap() - j_mhalf).abs() < 1e-13, "x = {x}");
            let i_half = (2.0 / (PI * x)).sqrt() * x.sinh();
            assert!(rel(bessel_i(0.5, x).unwrap(), i_half) < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn j0_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert!((bessel_j(0.0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(0.0, 10.0).unwrap() + 0.245_935_764_451_348_3).abs() < 1e-13);
        assert!((bessel_j(1.0, 30.0).unwrap() + 0.118_751_062_616_623).abs() < 1e-13);
    }

    #[test]
    fn three_branches_agree_with_recurrence() {
        // J_{p-1} + J_{p+1} = (2p/x) J_p across all three regimes.
        for &p in &[0.3, 1.0, 2.7, 6.0] {
            for &x in &[1.5, 5.0, 24.0, 26.0, 60.0] {
                let jm = bessel_j(p - 1.0, x).unwrap();
                let (j0, j1) = bessel_j_pair(p, x).unwrap();
                assert!((jm + j1 - 2.0 * p / x * j0).abs() < 1e-12, "p = {p}, x = {x}");
            }
        }
    }

    #[test]
    fn i_small_argument_limit() {
        let p = 1.3;
        let x = 1e-6;
        let ratio = bessel_i(p, x).unwrap() / x.powf(p);
        let expect = 2f64.powf(-p) / ln_gamma_real(p + 1.0).exp();
        assert!(rel(ratio, expect) < 1e-10);
    }

    #[test]
    fn i_branches_overlap() {
        for &p in &[0.0, 0.7, 1.0, 2.5, 4.0] {
            for &x in &[26.0, 30.0, 34.0] {
                let s = bessel_i_scaled_series(p, x);
                let a = bessel_i_scaled_asymptotic(p, x);
                assert!(rel(s, a) < 1e-12, "p = {p}, x = {x}");
            }
        }
    }

    #[test]
    fn zeros_of_j0_and_high_order() {
        let z = bessel_j_zeros(0.0, 20.0).unwrap();
        let known = [2.404_825_557_695_773, 5.520_078_110_286_311, 8.653_727_912_911_012];
        for (a, b) in z.iter().zip(known.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(z.len(), 6);
        let z5 = bessel_j_zeros(5.0, 30.0).unwrap();
        assert!((z5[0] - 8.771_483_815_959_954).abs() < 1e-11);
        for w in z5.windows(2) {
            assert!(w[1] - w[0] > 2.5 && w[1] - w[0] < 4.0);
        }
    }
}
