//! Large-ν expansion Γ(ν−s+1)/Γ(ν+s) = ν^{1−2s} Σ_k Q_k(s) ν^{−k}.
//!
//! The polynomials are generated exactly over the rationals: the logarithm
//! of the ratio follows from Stirling's series, R(u) collects its u = 1/ν
//! coefficients, and Q is obtained by exponentiating and multiplying by
//! (1 − s u).

use super::bernoulli::{bernoulli_exact, to_f64};
use super::SpecfunError;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Highest order supported by [`gamma_ratio_expansion`].
pub const MAX_RATIO_ORDER: usize = 10;

/// Polynomial in s with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPoly(pub Vec<BigRational>);

impl RationalPoly {
    fn zero() -> Self {
        RationalPoly(Vec::new())
    }

    fn monomial(c: BigRational, degree: usize) -> Self {
        let mut v = vec![BigRational::zero(); degree + 1];
        v[degree] = c;
        RationalPoly(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        RationalPoly(v).trimmed()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RationalPoly(v).trimmed()
    }

    fn scale(&self, c: &BigRational) -> Self {
        RationalPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    /// Coefficient of s^d (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> BigRational {
        self.0.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * s + to_f64(c))
    }

    pub fn derivative_at(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (d, c) in self.0.iter().enumerate().skip(1).rev() {
            acc = acc * s + to_f64(c) * d as f64;
        }
        acc
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// Exact Q_k and R_k for k = 0..=max_order.
#[derive(Debug, Clone)]
pub struct GammaRatioExpansion {
    pub max_order: usize,
    q: Vec<RationalPoly>,
    r: Vec<RationalPoly>,
}

/// R_k(s), the u^k coefficient of log[Γ(ν−s)/Γ(ν+s)] + 2s log ν.
fn r_coefficient(k: usize) -> Result<RationalPoly, SpecfunError> {
    let kk = k as i64;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let mut p = RationalPoly::zero();
    // (1/u − s − ½) log(1−su) − (1/u + s − ½) log(1+su), term by term
    p = p.add(&RationalPoly::monomial(rat(-1, kk + 1), k + 1));
    p = p.add(&RationalPoly::monomial(rat(1, kk), k + 1));
    p = p.add(&RationalPoly::monomial(rat(1, 2 * kk), k));
    p = p.add(&RationalPoly::monomial(rat(-sign, kk + 1), k + 1));
    p = p.add(&RationalPoly::monomial(rat(sign, kk), k + 1));
    p = p.add(&RationalPoly::monomial(rat(-sign, 2 * kk), k));
    // Σ_j c_j u^j [(1−su)^{−j} − (1+su)^{−j}], c_j = B_{j+1}/(j(j+1))
    for j in 1..=k {
        let m = k - j;
        if m % 2 == 0 {
            continue;
        }
        let cj = bernoulli_exact(j + 1)? / BigRational::from_integer(BigInt::from(j * (j + 1)));
        if cj.is_zero() {
            continue;
        }
        let coef = cj * BigRational::from_integer(binomial(k - 1, m)) * rat(2, 1);
        p = p.add(&RationalPoly::monomial(coef, m));
    }
    Ok(p)
}

/// Builds Q_0..Q_n exactly.
pub fn gamma_ratio_expansion(max_order: usize) -> Result<GammaRatioExpansion, SpecfunError> {
    if max_order > MAX_RATIO_ORDER {
        return Err(SpecfunError::OrderTooHigh { requested: max_order, max: MAX_RATIO_ORDER });
    }
    let mut r = vec![RationalPoly::zero()];
    for k in 1..=max_order {
        r.push(r_coefficient(k)?);
    }
    // E = exp(Σ R_k u^k): n E_n = Σ_{k=1}^n k R_k E_{n−k}
    let mut e = vec![RationalPoly(vec![BigRational::one()])];
    for n in 1..=max_order {
        let mut acc = RationalPoly::zero();
        for k in 1..=n {
            acc = acc.add(&r[k].mul(&e[n - k]).scale(&rat(k as i64, 1)));
        }
        e.push(acc.scale(&rat(1, n as i64)));
    }
    // Q = (1 − s u) E
    let minus_s = RationalPoly(vec![BigRational::zero(), rat(-1, 1)]);
    let mut q = vec![e[0].clone()];
    for n in 1..=max_order {
        q.push(e[n].add(&minus_s.mul(&e[n - 1])));
    }
    Ok(GammaRatioExpansion { max_order, q, r })
}

impl GammaRatioExpansion {
    pub fn q(&self, k: usize) -> &RationalPoly {
        &self.q[k]
    }

    pub fn r(&self, k: usize) -> &RationalPoly {
        &self.r[k]
    }

    /// Linear coefficient q_{k,1} of Q_k.
    pub fn q_linear(&self, k: usize) -> BigRational {
        self.q[k].coeff(1)
    }

    /// ν^{1−2s} Σ_{k≤n} Q_k(s) ν^{−k}.
    pub fn evaluate(&self, nu: f64, s: Complex64) -> Result<Complex64, SpecfunError> {
        evaluate_ratio(self, nu, s)
    }
}

/// Truncated expansion of Γ(ν−s+1)/Γ(ν+s); requires ν ≥ 5.
pub fn evaluate_ratio(exp: &GammaRatioExpansion, nu: f64, s: Complex64) -> Result<Complex64, SpecfunError> {
    if !(nu >= 5.0) {
        return Err(SpecfunError::Domain(format!("gamma-ratio expansion needs nu >= 5, got {nu}")));
    }
    let inv = 1.0 / nu;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pw = 1.0;
    for k in 0..=exp.max_order {
        sum += exp.q[k].eval(s) * pw;
        pw *= inv;
    }
    Ok(((1.0 - 2.0 * s) * nu.ln()).exp() * sum)
}

#[cfg(test)]
mod tests {
    use super::super::bernoulli::b_exact;
    use super::super::gamma::gamma_quotient;
    use super::*;

    #[test]
    fn printed_anchors() {
        let e = gamma_ratio_expansion(6).unwrap();
        assert_eq!(e.q(0).0, vec![rat(1, 1)]);
        assert!(e.q(1).0.is_empty());
        assert_eq!(e.r(1).0, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(e.r(2).0, vec![rat(0, 1), rat(1, 6), rat(0, 1), rat(1, 3)]);
        assert_eq!(e.q(2).0, vec![rat(0, 1), rat(1, 6), rat(-1, 2), rat(1, 3)]);
    }

    #[test]
    fn structural_properties() {
        let e = gamma_ratio_expansion(MAX_RATIO_ORDER).unwrap();
        for k in 1..=MAX_RATIO_ORDER {
            let r = e.r(k);
            // odd polynomial of degree ≤ k+1 with linear part 2 B_k s / k
            assert!(r.degree().unwrap_or(0) <= k + 1);
            for (d, c) in r.0.iter().enumerate() {
                if d % 2 == 0 {
                    assert!(c.is_zero(), "R_{k} has even coefficient at degree {d}");
                }
            }
            let lin = bernoulli_exact(k).unwrap() * rat(2, k as i64);
            let expect = if k == 1 { rat(1, 1) } else { lin };
            assert_eq!(r.coeff(1), expect, "linear part of R_{k}");
            // Q_k(0) = 0 for k ≥ 1
            assert!(e.q(k).coeff(0).is_zero());
        }
        for k in (2..=MAX_RATIO_ORDER).step_by(2) {
            let l = k / 2;
            let sign = if (l - 1) % 2 == 0 { 1 } else { -1 };
            let expect = b_exact(l).unwrap() * rat(2 * sign, k as i64);
            assert_eq!(e.q_linear(k), expect, "linear coefficient of Q_{k}");
        }
        for k in (3..=MAX_RATIO_ORDER).step_by(2) {
            assert!(e.q_linear(k).is_zero());
        }
    }

    #[test]
    fn matches_gamma_quotient() {
        let e = gamma_ratio_expansion(4).unwrap();
        for &s in &[Complex64::new(0.3, 0.0), Complex64::new(0.3, 0.2)] {
            let nu = 50.0;
            let direct = gamma_quotient(Complex64::new(nu + 1.0, 0.0) - s, s + nu).unwrap();
            let approx = e.evaluate(nu, s).unwrap();
            assert!(((approx - direct) / direct).norm() < 1e-8);
        }
    }

    #[test]
    fn order_guard() {
        assert!(gamma_ratio_expansion(11).is_err());
        let e = gamma_ratio_expansion(2).unwrap();
        assert!(e.evaluate(4.0, Complex64::new(0.1, 0.0)).is_err());
    }
}
