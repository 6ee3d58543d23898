//! Small-t expansions of ⨍ φ(tx) F(x) dx and ⨍ φ(x) F(x/t) dx, and the
//! large-z expansion of ∫ σ(x, xz) dx for separable symbols σ.

use crate::expansions::{
    AsymptoticExpansion, ExpandableFunction, ExpansionError, Location, LogPowerTerm, EXPONENT_TOL,
};
use crate::mellin::{regularized_integral, MellinError};
use crate::report::{ExpansionReport, Provenance};
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

/// Highest Taylor order and |β| handled.
pub const MAX_SAL_ORDER: usize = 12;
/// Relative tolerance of the finite-difference check on derivative data.
pub const DERIVATIVE_CHECK_TOL: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SalError {
    #[error(transparent)]
    Mellin(#[from] MellinError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error("derivative of order {needed} at 0 is required but only {available} are known")]
    InsufficientDerivatives { needed: usize, available: usize },
    #[error("derivative {order} at 0 is {declared} but finite differences give {observed}")]
    InconsistentDerivative { order: usize, declared: f64, observed: f64 },
    #[error("the remainder of F at infinity (order {order}) is too weak for x^{power} F")]
    InsufficientRemainder { order: f64, power: usize },
    #[error("expansion order {0} exceeds the cap of {MAX_SAL_ORDER}")]
    OrderTooHigh(f64),
    #[error("boundary term (α = {0}, k = {1}) appears twice")]
    DuplicateTerm(Complex64, u32),
    #[error("remainder bound violated: scaled remainder grows from {start:e} to {end:e}")]
    RemainderBound { start: f64, end: f64 },
    #[error("the x-Taylor slices of σ are needed for p = {0}")]
    MissingTaylorSlices(usize),
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Rapidly decaying φ on [0, ∞) with its derivatives at 0.
#[derive(Clone)]
pub struct TestFunction {
    evaluator: RealFn,
    derivatives_at_zero: Vec<f64>,
    decay_order: u32,
    breakpoints: Vec<f64>,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("derivatives_at_zero", &self.derivatives_at_zero)
            .field("decay_order", &self.decay_order)
            .finish()
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |b, i| b * (n - i) as f64 / (i + 1) as f64)
}

fn sign(k: u32) -> f64 {
    if k % 2 == 0 { 1.0 } else { -1.0 }
}

impl TestFunction {
    /// `decay_order` n certifies that x^a φ^{(b)}(x) is bounded for a, b ≤ n.
    /// The first derivatives are checked against one-sided differences at
    /// scale 10^{-3}.
    pub fn new<F>(f: F, derivatives_at_zero: Vec<f64>, decay_order: u32) -> Result<Self, SalError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let t = TestFunction { evaluator: Arc::new(f), derivatives_at_zero, decay_order, breakpoints: Vec::new() };
        t.check_derivatives()?;
        Ok(t)
    }

    pub fn with_breakpoints(mut self, points: Vec<f64>) -> Self {
        self.breakpoints = points;
        self
    }

    fn check_derivatives(&self) -> Result<(), SalError> {
        let d = &self.derivatives_at_zero;
        let h = 1e-3;
        for m in 0..d.len().min(3) {
            // ρ(h) = m!/h^m (φ(h) − Σ_{j<m} d_j h^j/j!) = d_m + O(h); one
            // Richardson step removes the O(h) term.
            let rho = |h: f64| {
                let mut r = (self.evaluator)(h);
                for (j, dj) in d.iter().enumerate().take(m) {
                    r -= dj * h.powi(j as i32) / factorial(j);
                }
                r * factorial(m) / h.powi(m as i32)
            };
            let observed = 2.0 * rho(h / 2.0) - rho(h);
            let scale = d[m].abs().max(d[0].abs()).max(1.0);
            if (observed - d[m]).abs() > DERIVATIVE_CHECK_TOL * scale {
                return Err(SalError::InconsistentDerivative { order: m, declared: d[m], observed });
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }

    pub fn derivatives_at_zero(&self) -> &[f64] {
        &self.derivatives_at_zero
    }

    pub fn decay_order(&self) -> u32 {
        self.decay_order
    }

    /// φ^{(j)}(0)/j!.
    pub fn taylor_coefficient(&self, j: usize) -> Result<f64, SalError> {
        self.derivatives_at_zero
            .get(j)
            .map(|d| d / factorial(j))
            .ok_or(SalError::InsufficientDerivatives { needed: j, available: self.derivatives_at_zero.len() })
    }

    /// x ↦ φ(tx) F(x) with the expansions implied by the Taylor data of φ.
    pub fn times(&self, t: f64, f: &ExpandableFunction) -> Result<ExpandableFunction, SalError> {
        let n_der = self.derivatives_at_zero.len();
        let fz = f.at_zero();
        let alpha_min = fz.terms().iter().map(|a| a.exponent.re).fold(f64::INFINITY, f64::min);
        let p = if fz.is_empty() { fz.remainder_order() } else { fz.remainder_order().min(n_der as f64 + alpha_min) };
        let mut terms = Vec::new();
        for j in 0..n_der {
            let cj = self.taylor_coefficient(j)? * t.powi(j as i32);
            for a in fz.terms() {
                let e = a.exponent + j as f64;
                if e.re < p - EXPONENT_TOL {
                    terms.push(LogPowerTerm::new(a.coefficient * cj, e, a.log_power));
                }
            }
        }
        let at_zero = AsymptoticExpansion::new(Location::Zero, terms, p)?;
        let fi = f.at_infinity();
        let n = self.decay_order as f64;
        let q = if fi.is_empty() {
            n + fi.remainder_order()
        } else {
            n - fi.terms().iter().map(|b| b.exponent.re).fold(f64::NEG_INFINITY, f64::max)
        };
        let at_infinity = AsymptoticExpansion::empty(Location::Infinity, q);
        let phi = self.evaluator.clone();
        let fe = f.evaluator();
        let mut bps: Vec<f64> = f.breakpoints().to_vec();
        bps.extend(self.breakpoints.iter().map(|b| b / t));
        Ok(ExpandableFunction::new(move |x| fe(x) * phi(t * x), at_zero, at_infinity)?.with_breakpoints(bps))
    }
}

/// x^β log^m x on all of (0, ∞) for complex β.
fn power_log(beta: Complex64, m: u32) -> Result<ExpandableFunction, SalError> {
    let term = LogPowerTerm::new(Complex64::new(1.0, 0.0), beta, m);
    let z = AsymptoticExpansion::new(Location::Zero, vec![term], f64::INFINITY)?;
    let i = AsymptoticExpansion::new(Location::Infinity, vec![term], f64::INFINITY)?;
    Ok(ExpandableFunction::new(move |x| term.eval(x), z, i)?)
}

/// ⨍ φ(x) x^β log^m x dx.
/// ⨍ φ(x) x^β log^m x dx.
pub fn weighted_moment(phi: &TestFunction, beta: Complex64, m: u32) -> Result<Complex64, SalError> {
    Ok(regularized_integral(&phi.times(1.0, &power_log(beta, m)?)?)?)
}

/// Nonnegative integer j with β = −1 − j, if any.
fn integer_shift(beta: Complex64) -> Option<usize> {
    let j = -beta.re - 1.0;
    (beta.im.abs() < EXPONENT_TOL && j > -0.5 && (j - j.round()).abs() < EXPONENT_TOL).then(|| j.round() as usize)
}

fn check_order(q: f64) -> Result<(), SalError> {
    if q.is_nan() || q > (MAX_SAL_ORDER + 1) as f64 {
        return Err(SalError::OrderTooHigh(q));
    }
    Ok(())
}

/// ⨍ φ(tx) F(x) dx as t → 0, through terms of order below t^q.
pub fn expand_phi_tx(phi: &TestFunction, f: &ExpandableFunction, q: f64) -> Result<ExpansionReport, SalError> {
    check_order(q)?;
    let max_log = f.at_infinity().terms().iter().map(|b| b.log_power + 1).max().unwrap_or(0);
    let mut report = ExpansionReport::new(Location::Zero, q, max_log);
    let q_inf = f.at_infinity().remainder_order();
    let mut j = 0usize;
    while (j as f64) < q {
        let cj = phi.taylor_coefficient(j)?;
        if cj != 0.0 {
            if q_inf - j as f64 <= 1.0 {
                return Err(SalError::InsufficientRemainder { order: q_inf, power: j });
            }
            let moment = regularized_integral(&f.multiply_power(j as f64)?)?;
            report.push(Complex64::new(j as f64, 0.0), 0, moment * cj, Provenance::Taylor);
        }
        j += 1;
    }
    for b in f.at_infinity().terms() {
        let k = b.log_power;
        let e = -b.exponent - 1.0;
        if e.re >= q {
            continue;
        }
        // t^{−β−1} ⨍ φ(x) x^β log^k(x/t) dx, with log(x/t) expanded binomially
        for m in 0..=k {
            let moment = weighted_moment(phi, b.exponent, m)?;
            let c = b.coefficient * moment * binomial(k, m) * sign(k - m);
            report.push(e, k - m, c, Provenance::Boundary);
        }
        if let Some(j) = integer_shift(b.exponent) {
            let c = b.coefficient * phi.taylor_coefficient(j)? * sign(k + 1) / (k + 1) as f64;
            report.push(Complex64::new(j as f64, 0.0), k + 1, c, Provenance::LogCorrection);
        }
    }
    report.sort();
    Ok(report)
}

/// ⨍ φ(x) F(x/t) dx as t → 0, through terms of order below t^{q+1}.
pub fn expand_phi_x_over_t(phi: &TestFunction, f: &ExpandableFunction, q: f64) -> Result<ExpansionReport, SalError> {
    let mut report = expand_phi_tx(phi, f, q)?.shifted(1.0, Complex64::new(1.0, 0.0));
    for a in f.at_zero().terms() {
        let k = a.log_power;
        if let Some(j) = integer_shift(a.exponent) {
            if (j as f64) < q {
                let c = a.coefficient * phi.taylor_coefficient(j)? * sign(k) / (k + 1) as f64;
                report.push(Complex64::new(j as f64 + 1.0, 0.0), k + 1, c, Provenance::LogCorrection);
            }
        }
    }
    report.remainder_log_power = report
        .remainder_log_power
        .max(f.at_zero().terms().iter().map(|a| a.log_power + 1).max().unwrap_or(0));
    report.sort();
    Ok(report)
}

type SymbolFn = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;
type SliceFn = Arc<dyn Fn(usize, f64) -> Complex64 + Send + Sync>;

/// σ(x, ζ) = Σ σ_{αk}(x) ζ^α log^k ζ + r(x, ζ).
#[derive(Clone)]
pub struct SeparableSigma {
    boundary_terms: Vec<(TestFunction, Complex64, u32)>,
    remainder: SymbolFn,
    remainder_log_power: u32,
    taylor_slices: Option<SliceFn>,
}

impl std::fmt::Debug for SeparableSigma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeparableSigma")
            .field("boundary_terms", &self.boundary_terms)
            .field("remainder_log_power", &self.remainder_log_power)
            .finish()
    }
}

impl SeparableSigma {
    pub fn new<R>(boundary_terms: Vec<(TestFunction, Complex64, u32)>, remainder: R) -> Result<Self, SalError>
    where
        R: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        for (i, (_, a, k)) in boundary_terms.iter().enumerate() {
            if boundary_terms[..i].iter().any(|(_, b, l)| l == k && (a - b).norm() < EXPONENT_TOL) {
                return Err(SalError::DuplicateTerm(*a, *k));
            }
        }
        Ok(SeparableSigma { boundary_terms, remainder: Arc::new(remainder), remainder_log_power: 0, taylor_slices: None })
    }

    /// Declares |r(x, ζ)| ≤ C ζ^{−p−1} log^r ζ for large ζ.
    pub fn with_remainder_log_power(mut self, r: u32) -> Self {
        self.remainder_log_power = r;
        self
    }

    /// Supplies ζ ↦ ∂_x^j σ(0, ζ)/j!, needed for the z^{−j−1} terms.
    pub fn with_taylor_slices<S>(mut self, s: S) -> Self
    where
        S: Fn(usize, f64) -> Complex64 + Send + Sync + 'static,
    {
        self.taylor_slices = Some(Arc::new(s));
        self
    }

    pub fn boundary_terms(&self) -> &[(TestFunction, Complex64, u32)] {
        &self.boundary_terms
    }

    pub fn eval(&self, x: f64, zeta: f64) -> Complex64 {
        let mut v = (self.remainder)(x, zeta);
        let l = zeta.ln();
        for (phi, a, k) in &self.boundary_terms {
            v += phi.eval(x) * (a * l).exp() * l.powi(*k as i32);
        }
        v
    }

    /// Samples max_x |r(x, ζ)| ζ^{p+1} / (1 + log ζ)^r on ζ ∈ [10, 10^6] and
    /// flags growth by more than a factor 100.
    pub fn check_remainder_bound(&self, p: usize) -> Result<(f64, f64), SalError> {
        let xs = [0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
        let scaled = |zeta: f64| {
            let w = zeta.powi(p as i32 + 1) / (1.0 + zeta.ln()).powi(self.remainder_log_power as i32);
            xs.iter().map(|&x| (self.remainder)(x, zeta).norm() * w).fold(0.0, f64::max)
        };
        let start = (2..=4).map(|i| scaled(10f64.powf(i as f64 / 2.0))).fold(0.0, f64::max);
        let end = (10..=12).map(|i| scaled(10f64.powf(i as f64 / 2.0))).fold(0.0, f64::max);
        if end > 100.0 * start.max(f64::MIN_POSITIVE) && end > 1e-10 {
            return Err(SalError::RemainderBound { start, end });
        }
        Ok((start, end))
    }
}

/// ∫_0^∞ σ(x, xz) dx as z → ∞ up to O(z^{−p−1} log^{r+1} z).
pub fn sal_separable(sigma: &SeparableSigma, p: usize) -> Result<ExpansionReport, SalError> {
    check_order(p as f64)?;
    sigma.check_remainder_bound(p)?;
    let cutoff = -(p as f64) - 1.0;
    let mut report = ExpansionReport::new(Location::Infinity, cutoff, sigma.remainder_log_power + 1);
    let kept: Vec<&(TestFunction, Complex64, u32)> =
        sigma.boundary_terms.iter().filter(|(_, a, _)| a.re > cutoff + EXPONENT_TOL).collect();
    if p > 0 && sigma.taylor_slices.is_none() {
        return Err(SalError::MissingTaylorSlices(p));
    }
    for j in 0..p {
        let slices = sigma.taylor_slices.clone().expect("checked above");
        let s0 = slices(j, 0.0);
        let zero_terms = if s0 == Complex64::new(0.0, 0.0) {
            Vec::new()
        } else {
            vec![LogPowerTerm::new(s0, Complex64::new(j as f64, 0.0), 0)]
        };
        let at_zero = AsymptoticExpansion::new(Location::Zero, zero_terms, j as f64 + 1.0)?;
        let mut inf_terms = Vec::new();
        for (phi, a, k) in &kept {
            let c = phi.taylor_coefficient(j)?;
            if c != 0.0 {
                inf_terms.push(LogPowerTerm::new(Complex64::new(c, 0.0), a + j as f64, *k));
            }
        }
        let at_inf = AsymptoticExpansion::new(Location::Infinity, inf_terms, (p - j) as f64 + 1.0)?;
        let slice = ExpandableFunction::new(
            move |zeta| slices(j, zeta) * zeta.powi(j as i32),
            at_zero,
            at_inf,
        )?;
        let c = regularized_integral(&slice)?;
        report.push(Complex64::new(-(j as f64) - 1.0, 0.0), 0, c, Provenance::Taylor);
    }
    for (phi, a, k) in kept {
        // z^α ⨍ σ_{αk}(x) x^α log^k(xz) dx
        for m in 0..=*k {
            let c = weighted_moment(phi, *a, m)? * binomial(*k, m);
            report.push(*a, k - m, c, Provenance::Boundary);
        }
        if let Some(j) = integer_shift(*a) {
            if j < p {
                let c = phi.taylor_coefficient(j)? / (*k + 1) as f64;
                report.push(*a, k + 1, Complex64::new(c, 0.0), Provenance::LogCorrection);
            }
        }
    }
    report.sort();
    Ok(report)
}

/// Ready-made test functions.
pub mod catalog {
    use super::*;

    /// e^{−x²} with derivatives through order n − 1.
    pub fn gaussian(n: usize) -> TestFunction {
        let d = (0..n)
            .map(|j| if j % 2 == 1 { 0.0 } else { sign((j / 2) as u32) * factorial(j) / factorial(j / 2) })
            .collect();
        TestFunction::new(|x| (-x * x).exp(), d, 30).expect("exact derivatives")
    }

    /// e^{−x} with derivatives through order n − 1.
    pub fn exponential(n: usize) -> TestFunction {
        TestFunction::new(|x| (-x).exp(), (0..n).map(|j| sign(j as u32)).collect(), 30).expect("exact derivatives")
    }

    /// The smooth step: 1 on [0, 1], 0 beyond 2; all derivatives vanish at 0.
    pub fn smooth_cutoff(n: usize) -> TestFunction {
        let mut d = vec![0.0; n];
        if n > 0 {
            d[0] = 1.0;
        }
        TestFunction::new(crate::expansions::catalog::smooth_step, d, 30)
            .expect("exact derivatives")
            .with_breakpoints(vec![1.0, 2.0])
    }
}
