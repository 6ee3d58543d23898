//! Exact Bernoulli numbers with the convention B_1 = −1/2.

use super::SpecfunError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::sync::OnceLock;

/// Largest index kept in the table.
pub const MAX_BERNOULLI: usize = 60;

fn table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{k=0}^{n} C(n+1,k) B_k = 0 for n ≥ 1.
        let mut b: Vec<BigRational> = vec![BigRational::from_integer(BigInt::from(1))];
        for n in 1..=MAX_BERNOULLI {
            let mut binom = BigInt::from(1); // C(n+1, 0)
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            // binom is now C(n+1, n) = n+1
            b.push(-acc / BigRational::from_integer(binom));
        }
        b
    })
}

/// Exact B_n.
pub fn bernoulli_exact(n: usize) -> Result<BigRational, SpecfunError> {
    table()
        .get(n)
        .cloned()
        .ok_or(SpecfunError::OrderTooHigh { requested: n, max: MAX_BERNOULLI })
}

/// B_n as a double.
pub fn bernoulli(n: usize) -> Result<f64, SpecfunError> {
    bernoulli_exact(n).map(|r| to_f64(&r))
}

/// b_k = (−1)^{k−1} B_{2k}, positive for k ≥ 1.
pub fn b_exact(k: usize) -> Result<BigRational, SpecfunError> {
    if k == 0 {
        return Err(SpecfunError::Domain("b_k is defined for k >= 1".into()));
    }
    let v = bernoulli_exact(2 * k)?;
    Ok(if k % 2 == 1 { v } else { -v })
}

pub fn b(k: usize) -> Result<f64, SpecfunError> {
    b_exact(k).map(|r| to_f64(&r))
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    // Direct conversion may overflow numerator/denominator separately.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn classical_values() {
        assert_eq!(bernoulli_exact(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli_exact(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli_exact(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli_exact(3).unwrap(), q(0, 1));
        assert_eq!(bernoulli_exact(12).unwrap(), q(-691, 2730));
        assert_eq!(b_exact(1).unwrap(), q(1, 6));
        assert_eq!(b_exact(2).unwrap(), q(1, 30));
    }

    #[test]
    fn odd_vanish_and_b_positive() {
        for n in (3..=MAX_BERNOULLI).step_by(2) {
            assert!(bernoulli_exact(n).unwrap().is_zero());
        }
        for k in 1..=30 {
            assert!(b(k).unwrap() > 0.0);
        }
    }

    #[test]
    fn guard_beyond_table() {
        assert!(bernoulli(61).is_err());
        assert!((bernoulli(60).unwrap() + 2.139_994_925_722_533_4e34).abs() < 1e20);
    }
}
