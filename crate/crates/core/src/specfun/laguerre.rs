//! Generalized Laguerre polynomials and the associated functions l_n^{(p)}.

use super::SpecfunError;

/// L_n^{(p)}(x) by the three-term recurrence.
pub fn laguerre(n: usize, p: f64, x: f64) -> Result<f64, SpecfunError> {
    if !(p > -1.0) {
        return Err(SpecfunError::Domain(format!("Laguerre parameter p = {p} must exceed -1")));
    }
    if !(x >= 0.0) {
        return Err(SpecfunError::Domain(format!("Laguerre argument x = {x} must be nonnegative")));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + p - x;
    for k in 1..n {
        let kf = k as f64;
        // (k+1) L_{k+1} = (2k+1+p−x) L_k − (k+p) L_{k−1}
        let next = ((2.0 * kf + 1.0 + p - x) * cur - (kf + p) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// l_n^{(p)}(x) = x^{p+1/2} e^{−x²/2} L_n^{(p)}(x²).
pub fn l_fn(n: usize, p: f64, x: f64) -> Result<f64, SpecfunError> {
    let l = laguerre(n, p, x * x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(((p + 0.5) * x.ln() - 0.5 * x * x).exp() * l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_half_line, Tolerance};
    use num_complex::Complex64;

    #[test]
    fn low_degrees() {
        assert_eq!(laguerre(0, 0.7, 3.0).unwrap(), 1.0);
        let (p, x) = (1.5, 0.8);
        let l2 = 0.5 * (x * x - 2.0 * (p + 2.0) * x + (p + 1.0) * (p + 2.0));
        assert!((laguerre(2, p, x).unwrap() - l2).abs() < 1e-14);
    }

    #[test]
    fn derivative_identity() {
        // (L_n^{(p)})' = −L_{n−1}^{(p+1)}
        let (n, p, x, h) = (3, 1.0, 0.7, 1e-5);
        let fd = (laguerre(n, p, x + h).unwrap() - laguerre(n, p, x - h).unwrap()) / (2.0 * h);
        assert!((fd + laguerre(n - 1, p + 1.0, x).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn orthogonality() {
        let p = 0.5;
        let r = integrate_half_line(
            |x| Complex64::new(l_fn(1, p, x).unwrap() * l_fn(2, p, x).unwrap(), 0.0),
            2.0,
            Tolerance::default(),
        )
        .unwrap();
        assert!(r.value.re.abs() < 1e-8);
    }
}
