//! Mellin transform of expandable functions, regularized integrals and
//! regularized limits.
//!
//! For a cut `c > 0` the transform splits as
//! `Mf(z) = Σ_a a A(z; α, k, c) − Σ_b b A(z; β, k, c) + R_0(z) + R_∞(z)`,
//! where `A(z; α, k, c) = ∫_0^c x^{z+α−1} log^k x dx` is continued
//! meromorphically and `R_0`, `R_∞` integrate the remainders of `f`
//! against `x^{z−1}` on `[0, c]` and `[c, ∞)`.

use crate::expansions::{same_exponent, AsymptoticExpansion, ExpandableFunction, ExpansionError, Location};
use crate::quad::{integrate, integrate_half_line, QuadError, QuadResult, Tolerance};
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

/// Principal-part coefficients below this are treated as cancelled.
pub const PRINCIPAL_PART_TOL: f64 = 1e-13;
/// Largest error accepted from a quadrature that missed its target.
pub const LENIENT_ERROR: f64 = 1e-7;
/// Distance below which an argument is taken to sit on a pole.
pub const POLE_HIT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MellinError {
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("remainder orders must be positive (p = {p}, q = {q})")]
    NonPositiveOrder { p: f64, q: f64 },
    #[error("z = {z} lies outside the strip ({lo}, {hi})")]
    OutsideStrip { z: Complex64, lo: f64, hi: f64 },
    #[error("z = {0} is a pole")]
    AtPole(Complex64),
    #[error("the sampled region contains the pole {0}")]
    PoleInRegion(Complex64),
    #[error("cut must be positive and finite, got {0}")]
    InvalidCut(f64),
}

/// Pole location with principal part; `principal_part[k − 1]` multiplies
/// `(z − location)^{−k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleData {
    pub location: Complex64,
    pub principal_part: Vec<Complex64>,
}

impl PoleData {
    pub fn order(&self) -> usize {
        self.principal_part.len()
    }

    pub fn principal_value(&self, z: Complex64) -> Complex64 {
        let w = z - self.location;
        self.principal_part
            .iter()
            .enumerate()
            .map(|(i, c)| c / w.powi(i as i32 + 1))
            .sum()
    }
}

/// Value with an absolute error estimate.
pub type ValueWithError = (Complex64, f64);
type MeroEval = Arc<dyn Fn(Complex64) -> Result<ValueWithError, MellinError> + Send + Sync>;

/// Evaluator on pole-free points of a strip together with its pole ledger.
#[derive(Clone)]
pub struct MeromorphicFunction {
    evaluator: MeroEval,
    poles: Vec<PoleData>,
    strip: (f64, f64),
}

impl std::fmt::Debug for MeromorphicFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MeromorphicFunction")
            .field("poles", &self.poles)
            .field("strip", &self.strip)
            .finish()
    }
}

impl MeromorphicFunction {
    pub fn new<F>(f: F, poles: Vec<PoleData>, strip: (f64, f64)) -> Self
    where
        F: Fn(Complex64) -> Result<ValueWithError, MellinError> + Send + Sync + 'static,
    {
        MeromorphicFunction { evaluator: Arc::new(f), poles, strip }
    }

    pub fn poles(&self) -> &[PoleData] {
        &self.poles
    }

    pub fn strip(&self) -> (f64, f64) {
        self.strip
    }

    pub fn evaluate_with_error(&self, z: Complex64) -> Result<ValueWithError, MellinError> {
        if !(z.re > self.strip.0 && z.re < self.strip.1) {
            return Err(MellinError::OutsideStrip { z, lo: self.strip.0, hi: self.strip.1 });
        }
        if let Some(p) = self.poles.iter().find(|p| (p.location - z).norm() < POLE_HIT_TOL) {
            return Err(MellinError::AtPole(p.location));
        }
        (self.evaluator)(z)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, MellinError> {
        self.evaluate_with_error(z).map(|v| v.0)
    }

    /// Largest deviation of the regular part f − principal part between
    /// circles of radius r and r/2 around each pole; small values confirm
    /// the ledger.
    pub fn laurent_check(&self, radius: f64) -> Result<f64, MellinError> {
        let mut worst: f64 = 0.0;
        for p in &self.poles {
            let mean = |r: f64| -> Result<Complex64, MellinError> {
                let n = 16;
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
                    let z = p.location + Complex64::from_polar(r, theta);
                    acc += self.eval(z)? - p.principal_value(z);
                }
                Ok(acc / n as f64)
            };
            worst = worst.max((mean(radius)? - mean(radius / 2.0)?).norm());
        }
        Ok(worst)
    }
}

/// ∫_0^c x^{w−1} log^k x dx continued in w.
fn head_integral(w: Complex64, k: u32, c: f64) -> Complex64 {
    let lc = c.ln();
    let cw = (w * lc).exp();
    let mut fact_k = 1.0;
    for i in 2..=k {
        fact_k *= i as f64;
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut fact_j = 1.0;
    for j in 0..=k {
        if j > 0 {
            fact_j *= j as f64;
        }
        let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * fact_k / fact_j * lc.powi(j as i32) * w.powi(j as i32 - k as i32 - 1);
    }
    cw * sum
}

/// Constant Laurent coefficient of [`head_integral`] at w = 0.
fn head_integral_regular(k: u32, c: f64) -> f64 {
    c.ln().powi(k as i32 + 1) / (k + 1) as f64
}

/// Regular value of ∫_0^c x^{w−1} log^k x dx: direct off the pole, the
/// Laurent constant on it.
fn head_integral_finite(w: Complex64, k: u32, c: f64) -> Complex64 {
    if w.norm() < POLE_HIT_TOL {
        Complex64::new(head_integral_regular(k, c), 0.0)
    } else {
        head_integral(w, k, c)
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Mellin transform of an expandable function for a fixed cut.
#[derive(Clone, Debug)]
pub struct MellinTransform {
    f: ExpandableFunction,
    cut: f64,
    tol: Tolerance,
}

pub fn mellin_transform(f: &ExpandableFunction, cut: f64) -> Result<MellinTransform, MellinError> {
    MellinTransform::new(f.clone(), cut)
}

impl MellinTransform {
    pub fn new(f: ExpandableFunction, cut: f64) -> Result<Self, MellinError> {
        let (p, q) = (f.at_zero().remainder_order(), f.at_infinity().remainder_order());
        if !(p > 0.0 && q > 0.0) {
            return Err(MellinError::NonPositiveOrder { p, q });
        }
        if !(cut > 0.0 && cut.is_finite()) {
            return Err(MellinError::InvalidCut(cut));
        }
        Ok(MellinTransform { f, cut, tol: Tolerance::default() })
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn function(&self) -> &ExpandableFunction {
        &self.f
    }

    /// (−p, q): the remainders are O(x^p) and O(x^{−q}).
    pub fn strip(&self) -> (f64, f64) {
        (-self.f.at_zero().remainder_order(), self.f.at_infinity().remainder_order())
    }

    /// Poles at −α and −β with principal parts from the stored terms.
    pub fn poles(&self) -> Vec<PoleData> {
        let mut poles: Vec<PoleData> = Vec::new();
        let mut push = |loc: Complex64, k: u32, coef: Complex64| {
            let idx = k as usize;
            let slot = match poles.iter_mut().position(|p| same_exponent(p.location, loc)) {
                Some(i) => i,
                None => {
                    poles.push(PoleData { location: loc, principal_part: Vec::new() });
                    poles.len() - 1
                }
            };
            let pp = &mut poles[slot].principal_part;
            if pp.len() <= idx {
                pp.resize(idx + 1, Complex64::new(0.0, 0.0));
            }
            pp[idx] += coef;
        };
        for t in self.f.at_zero().terms() {
            let sign = if t.log_power % 2 == 0 { 1.0 } else { -1.0 };
            push(-t.exponent, t.log_power, t.coefficient * sign * factorial(t.log_power));
        }
        for t in self.f.at_infinity().terms() {
            let sign = if t.log_power % 2 == 0 { -1.0 } else { 1.0 };
            push(-t.exponent, t.log_power, t.coefficient * sign * factorial(t.log_power));
        }
        let (lo, hi) = self.strip();
        let mut out: Vec<PoleData> = poles
            .into_iter()
            .filter(|p| p.location.re > lo && p.location.re < hi)
            .filter_map(|mut p| {
                while p.principal_part.last().is_some_and(|c| c.norm() < PRINCIPAL_PART_TOL) {
                    p.principal_part.pop();
                }
                (!p.principal_part.is_empty()).then_some(p)
            })
            .collect();
        out.sort_by(|a, b| a.location.re.total_cmp(&b.location.re).then(a.location.im.total_cmp(&b.location.im)));
        out
    }

    fn check_strip(&self, z: Complex64) -> Result<(), MellinError> {
        let (lo, hi) = self.strip();
        if z.re > lo && z.re < hi {
            Ok(())
        } else {
            Err(MellinError::OutsideStrip { z, lo, hi })
        }
    }

    fn remainder_integrand(exp: &AsymptoticExpansion, f: &ExpandableFunction, z: Complex64, x: f64) -> Complex64 {
        let fx = f.eval(x);
        let mut trunc = Complex64::new(0.0, 0.0);
        let mut scale = fx.norm();
        for t in exp.terms() {
            let v = t.eval(x);
            trunc += v;
            scale += v.norm();
        }
        // Far out, f may underflow while its expansion does not (x/(1+x)² once
        // (1+x)² overflows), so the difference is meaningless; exact zeros at
        // moderate x are genuine (compact support) and must be kept.
        let far = !(1e-150..=1e150).contains(&x);
        if far && fx.norm() < f64::MIN_POSITIVE && trunc.norm() >= f64::MIN_POSITIVE {
            return Complex64::new(0.0, 0.0);
        }
        let r = fx - trunc;
        if !r.is_finite() {
            // overflow at the extreme ends of the substituted ranges
            return Complex64::new(0.0, 0.0);
        }
        // below the rounding level of the summands the difference is noise
        if r.norm() <= 64.0 * f64::EPSILON * scale {
            return Complex64::new(0.0, 0.0);
        }
        r * ((z - 1.0) * x.ln()).exp()
    }

    fn split_points(&self, a: f64, b: f64) -> Vec<f64> {
        let mut pts = vec![a];
        pts.extend(self.f.breakpoints().iter().copied().filter(|&x| x > a && x < b));
        pts.push(b);
        pts
    }

    /// ∫_0^c x^{z−1}(f − expansion at 0) dx.
    fn head_remainder(&self, z: Complex64, c: f64) -> Result<QuadResult, MellinError> {
        let exp = self.f.at_zero();
        let f = &self.f;
        let pts = self.split_points(0.0, c);
        // x = b e^{−u} turns the endpoint power x^{p+z−1} into exponential decay
        let b0 = pts[1];
        let acc = lenient(integrate_half_line(
            |u| {
                let x = b0 * (-u).exp();
                if x == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                Self::remainder_integrand(exp, f, z, x) * x
            },
            1.0,
            self.tol,
        ));
        let mut acc = acc?;
        for w in pts[1..].windows(2) {
            let r = lenient(integrate(|x| Self::remainder_integrand(exp, f, z, x), w[0], w[1], self.tol))?;
            accumulate(&mut acc, &r);
        }
        Ok(acc)
    }

    /// ∫_c^∞ x^{z−1}(f − expansion at ∞) dx.
    fn tail_remainder(&self, z: Complex64, c: f64) -> Result<QuadResult, MellinError> {
        let exp = self.f.at_infinity();
        let f = &self.f;
        let inner: Vec<f64> = self.f.breakpoints().iter().copied().filter(|&x| x > c).collect();
        let mut acc = QuadResult { value: Complex64::new(0.0, 0.0), abs_err: 0.0, abs_integral: 0.0, evals: 0 };
        let mut a = c;
        for &b in &inner {
            let r = lenient(integrate(|x| Self::remainder_integrand(exp, f, z, x), a, b, self.tol))?;
            accumulate(&mut acc, &r);
            a = b;
        }
        let r = lenient(integrate_half_line(
            |u| {
                let x = a * u.exp();
                if !x.is_finite() {
                    return Complex64::new(0.0, 0.0);
                }
                Self::remainder_integrand(exp, f, z, x) * x
            },
            1.0,
            self.tol,
        ))?;
        accumulate(&mut acc, &r);
        Ok(acc)
    }

    /// Sum of the monomial contributions; terms whose own pole sits at z
    /// contribute their Laurent constant.
    fn monomial_part(&self, z: Complex64, c: f64) -> (Complex64, f64) {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for t in self.f.at_zero().terms() {
            let v = t.coefficient * head_integral_finite(z + t.exponent, t.log_power, c);
            sum += v;
            mag += v.norm();
        }
        for t in self.f.at_infinity().terms() {
            let v = t.coefficient * head_integral_finite(z + t.exponent, t.log_power, c);
            sum -= v;
            mag += v.norm();
        }
        (sum, mag)
    }

    /// Mf(z) off the poles, with an absolute error estimate.
    pub fn evaluate_with_error(&self, z: Complex64) -> Result<ValueWithError, MellinError> {
        self.check_strip(z)?;
        if let Some(p) = self.poles().into_iter().find(|p| (p.location - z).norm() < POLE_HIT_TOL) {
            return Err(MellinError::AtPole(p.location));
        }
        self.regular_value(z)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, MellinError> {
        self.evaluate_with_error(z).map(|v| v.0)
    }

    fn regular_value(&self, z: Complex64) -> Result<ValueWithError, MellinError> {
        let (m, mag) = self.monomial_part(z, self.cut);
        let h = self.head_remainder(z, self.cut)?;
        let t = self.tail_remainder(z, self.cut)?;
        let value = m + h.value + t.value;
        let err = h.abs_err + t.abs_err + 16.0 * f64::EPSILON * (mag + h.abs_integral + t.abs_integral);
        Ok((value, err))
    }

    /// Res_0 (Mf)(z0): the constant Laurent coefficient, symbolic on poles.
    pub fn laurent_constant(&self, z0: Complex64) -> Result<Complex64, MellinError> {
        self.check_strip(z0)?;
        self.regular_value(z0).map(|v| v.0)
    }

    /// Partial regularized integral over (0, c] or [c, ∞).
    pub fn partial_integral(&self, c: f64, side: Side) -> Result<Complex64, MellinError> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(MellinError::InvalidCut(c));
        }
        let one = Complex64::new(1.0, 0.0);
        self.check_strip(one)?;
        match side {
            Side::ZeroToC => {
                let mut v = self.head_remainder(one, c)?.value;
                for t in self.f.at_zero().terms() {
                    v += t.coefficient * head_integral_finite(one + t.exponent, t.log_power, c);
                }
                Ok(v)
            }
            Side::CToInf => {
                let mut v = self.tail_remainder(one, c)?.value;
                for t in self.f.at_infinity().terms() {
                    v -= t.coefficient * head_integral_finite(one + t.exponent, t.log_power, c);
                }
                Ok(v)
            }
        }
    }

    pub fn to_meromorphic(&self) -> MeromorphicFunction {
        let me = self.clone();
        let poles = self.poles();
        MeromorphicFunction::new(move |z| me.regular_value(z), poles, self.strip())
    }
}

/// Accepts an unconverged quadrature whose error is still modest; the error
/// estimate travels with the value.
fn lenient(r: Result<QuadResult, QuadError>) -> Result<QuadResult, MellinError> {
    match r {
        Ok(v) => Ok(v),
        Err(QuadError::NonConvergence { value, abs_err, evals }) if abs_err <= LENIENT_ERROR * value.norm().max(1.0) => {
            Ok(QuadResult { value, abs_err, abs_integral: value.norm(), evals })
        }
        Err(e) => Err(e.into()),
    }
}

fn accumulate(acc: &mut QuadResult, r: &QuadResult) {
    acc.value += r.value;
    acc.abs_err += r.abs_err;
    acc.abs_integral += r.abs_integral;
    acc.evals += r.evals;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    ZeroToC,
    CToInf,
}

/// ⨍ f(x) dx = Res_0 (Mf)(1).
pub fn regularized_integral(f: &ExpandableFunction) -> Result<Complex64, MellinError> {
    MellinTransform::new(f.clone(), 1.0)?.laurent_constant(Complex64::new(1.0, 0.0))
}

/// ⨍_0^c f or ⨍_c^∞ f.
pub fn regularized_integral_partial(f: &ExpandableFunction, c: f64, side: Side) -> Result<Complex64, MellinError> {
    MellinTransform::new(f.clone(), 1.0)?.partial_integral(c, side)
}

/// Coefficient of x^0 log^0 x at the given end.
pub fn regularized_limit(f: &ExpandableFunction, at: Location) -> Complex64 {
    f.expansion(at).coefficient(Complex64::new(0.0, 0.0), 0)
}

/// ⨍ f(λx) dx from ⨍ f and the x^{−1} log^k x coefficients.
pub fn scale_rule(f: &ExpandableFunction, lambda: f64) -> Result<Complex64, MellinError> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(MellinError::InvalidCut(lambda));
    }
    let base = regularized_integral(f)?;
    let ll = lambda.ln();
    let minus_one = Complex64::new(-1.0, 0.0);
    let log_sum = |e: &AsymptoticExpansion| -> Complex64 {
        e.terms()
            .iter()
            .filter(|t| same_exponent(t.exponent, minus_one))
            .map(|t| t.coefficient * ll.powi(t.log_power as i32 + 1) / (t.log_power + 1) as f64)
            .sum()
    };
    Ok((base + log_sum(f.at_infinity()) - log_sum(f.at_zero())) / lambda)
}

/// Samples on the boundary of a vertical strip with the fitted decay.
#[derive(Debug, Clone, PartialEq)]
pub struct StripDecayReport {
    pub order: u32,
    /// sup |z|^N |Mf(z)| over the resolved samples.
    pub constant: f64,
    /// −d log|Mf| / d log|Im z| fitted on resolved points with |Im z| ∈ [10, 100].
    pub slope: Option<f64>,
    /// (z, |Mf(z)|, error estimate, resolved)
    pub samples: Vec<(Complex64, f64, f64, bool)>,
    /// Unresolved samples whose error estimate exceeds the fitted power law.
    pub inconsistent: usize,
}

/// Empirical constant C_N in |Mf(z)| ≤ C_N |z|^{−N} on the strip edges.
pub fn vertical_strip_decay(f: &ExpandableFunction, strip: (f64, f64), order: u32) -> Result<StripDecayReport, MellinError> {
    if !f.is_differentiable() {
        return Err(ExpansionError::NotDifferentiable.into());
    }
    let m = MellinTransform::new(f.clone(), 1.0)?.with_tolerance(Tolerance {
        abs: 1e-15,
        rel: 1e-10,
        max_intervals: 2000,
    });
    let (lo, hi) = m.strip();
    if !(strip.0 > lo && strip.1 < hi && strip.0 <= strip.1) {
        return Err(MellinError::OutsideStrip { z: Complex64::new(strip.0, 0.0), lo, hi });
    }
    if let Some(p) = m
        .poles()
        .into_iter()
        .find(|p| p.location.re >= strip.0 && p.location.re <= strip.1 && p.location.im.abs() <= 100.0)
    {
        return Err(MellinError::PoleInRegion(p.location));
    }
    let ys: Vec<f64> = (0..=40).map(|i| 10f64.powf(i as f64 / 20.0)).collect();
    let mut samples = Vec::new();
    for &re in &[strip.0, strip.1] {
        for &y in &ys {
            for &sy in &[1.0, -1.0] {
                let z = Complex64::new(re, sy * y);
                let (v, e) = match m.evaluate_with_error(z) {
                    Ok(r) => r,
                    Err(MellinError::Quad(QuadError::NonConvergence { value, abs_err, .. })) => (value, abs_err),
                    Err(e) => return Err(e),
                };
                let resolved = v.norm() > 10.0 * e;
                samples.push((z, v.norm(), e, resolved));
            }
        }
    }
    let constant = samples
        .iter()
        .filter(|s| s.3)
        .map(|s| s.0.norm().powi(order as i32) * s.1)
        .fold(0.0, f64::max);
    let fit: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.3 && s.0.im.abs() >= 10.0 && s.0.im.abs() <= 100.0)
        .map(|s| (s.0.im.abs().ln(), s.1.ln()))
        .collect();
    let slope = crate::report::slope(&fit).map(|s| -s);
    let inconsistent = samples
        .iter()
        .filter(|s| !s.3 && s.2 > constant.max(f64::MIN_POSITIVE) * s.0.norm().powi(-(order as i32)) * 10.0)
        .count();
    Ok(StripDecayReport { order, constant, slope, samples, inconsistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansions::catalog::*;
    use crate::specfun::gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_transforms() {
        // x^α log^k x on [0,1]: (−1)^k k!/(z+α)^{k+1}
        let f = monomial_on_unit_interval(-0.5, 2);
        let m = mellin_transform(&f, 1.0).unwrap();
        let z = c(1.3, 0.4);
        let expect = 2.0 / (z - 0.5).powi(3);
        assert!((m.eval(z).unwrap() - expect).norm() < 1e-13);
        assert_eq!(m.poles().len(), 1);
        // globally the transform vanishes and the poles cancel
        let g = mellin_transform(&monomial(-0.5, 2), 0.7).unwrap();
        assert!(g.poles().is_empty());
        assert!(g.eval(z).unwrap().norm() < 1e-13);
    }

    #[test]
    fn exponential_gives_gamma() {
        // near the left edge of the strip the remainder is lost to rounding,
        // so keep a few orders of margin
        let f = exp_decay(6);
        let m = mellin_transform(&f, 1.0).unwrap();
        assert!((m.eval(c(4.0, 0.0)).unwrap() - c(6.0, 0.0)).norm() < 1e-9);
        for &z in &[c(0.5, 2.0), c(-1.5, 0.3), c(2.2, -7.0), c(-2.5, 0.0)] {
            let g = gamma(z).unwrap();
            assert!((m.eval(z).unwrap() - g).norm() < 1e-9 * g.norm().max(1.0), "z = {z}");
        }
        let poles = m.poles();
        assert_eq!(poles.len(), 6);
        assert!((poles[5].location - c(0.0, 0.0)).norm() < 1e-15);
        assert!((poles[4].principal_part[0] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cut_independence() {
        for f in [exp_decay(4), rational_decay(4), cutoff_over_x()] {
            let a = mellin_transform(&f, 0.5).unwrap();
            let b = mellin_transform(&f, 2.0).unwrap();
            for &z in &[c(0.3, 0.0), c(0.7, 1.5), c(0.2, -3.0)] {
                let (va, vb) = (a.eval(z).unwrap(), b.eval(z).unwrap());
                assert!((va - vb).norm() < 1e-9, "{va} vs {vb}");
            }
        }
    }

    #[test]
    fn regularized_integral_examples() {
        for k in 0..3 {
            for &a in &[-2.0, -1.0, 0.5] {
                assert!(regularized_integral(&monomial(a, k)).unwrap().norm() < 1e-14);
            }
        }
        let v = regularized_integral(&monomial_on_unit_interval(-2.0, 0)).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-14);
        let v = regularized_integral(&exp_decay(3)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn partial_examples() {
        let inv = monomial(-1.0, 0);
        assert!(regularized_integral_partial(&inv, 1.0, Side::ZeroToC).unwrap().norm() < 1e-14);
        let f = monomial(-1.0, 1);
        assert!(regularized_integral_partial(&f, 1.0, Side::CToInf).unwrap().norm() < 1e-14);
        let f = monomial(-1.5, 0);
        let v = regularized_integral_partial(&f, 1.0, Side::ZeroToC).unwrap();
        assert!((v - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn partial_additivity() {
        let f = rational_decay(4).multiply_power(-0.5).unwrap();
        let full = regularized_integral(&f).unwrap();
        for &cut in &[0.5, 1.0, 3.0] {
            let a = regularized_integral_partial(&f, cut, Side::ZeroToC).unwrap();
            let b = regularized_integral_partial(&f, cut, Side::CToInf).unwrap();
            assert!((a + b - full).norm() < 1e-10);
        }
        // ∫_0^∞ x^{−1/2}/(1+x) dx = π
        assert!((full.re - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn regularized_limits() {
        let f = exp_decay(2);
        assert_eq!(regularized_limit(&f, Location::Zero), c(1.0, 0.0));
        assert_eq!(regularized_limit(&monomial(-1.0, 0), Location::Infinity), c(0.0, 0.0));
    }

    #[test]
    fn scale_rule_on_cutoff() {
        let f = cutoff_over_x();
        let e = std::f64::consts::E;
        let base = regularized_integral(&f).unwrap();
        let predicted = scale_rule(&f, e).unwrap();
        assert!((predicted - (base - 1.0) / e).norm() < 1e-12);
        let direct = regularized_integral(&f.rescale_argument(e).unwrap()).unwrap();
        assert!((predicted - direct).norm() < 1e-8);
    }

    #[test]
    fn functional_equations() {
        let f = exp_decay(4);
        let mf = mellin_transform(&f, 1.0).unwrap();
        let df = mellin_transform(&f.apply_minus_x_dx().unwrap(), 1.0).unwrap();
        let shifted = mellin_transform(&f.multiply_power(1.5).unwrap(), 1.0).unwrap();
        for &z in &[c(0.4, 1.0), c(-0.6, 0.2), c(1.7, -2.0)] {
            assert!((df.eval(z).unwrap() - z * mf.eval(z).unwrap()).norm() < 1e-8);
            assert!((shifted.eval(z).unwrap() - mf.eval(z + 1.5).unwrap()).norm() < 1e-8);
        }
    }

    #[test]
    fn strip_decay_guard_and_gamma() {
        let r = vertical_strip_decay(&exp_decay(3), (2.0, 3.0), 2).unwrap();
        assert!(r.constant.is_finite() && r.constant > 0.0);
        assert!(r.slope.unwrap() > 2.0);
        assert_eq!(r.inconsistent, 0);
        let poles = vertical_strip_decay(&exp_decay(3), (-1.5, 0.5), 2);
        assert!(matches!(poles, Err(MellinError::PoleInRegion(_))));
    }

    #[test]
    fn laurent_ledger_consistent() {
        let m = mellin_transform(&exp_decay(8), 1.0).unwrap().to_meromorphic();
        assert!(m.laurent_check(1e-2).unwrap() < 1e-3);
    }
}
