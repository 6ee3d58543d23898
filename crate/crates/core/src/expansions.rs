//! Functions on (0, ∞) with finite log-power expansions at 0 and at ∞.
//!
//! A remainder order `p` at zero means `f(x) − Σ a x^α log^k x = O(x^p)`
//! as `x → 0`; an order `q` at infinity means the remainder is `O(x^{−q})`.
//! Either order may be `+∞` when the stored terms are exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Exponents closer than this (in both parts) are merged.
pub const EXPONENT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpansionError {
    #[error("cannot combine an expansion at {0} with one at {1}")]
    LocationMismatch(Location, Location),
    #[error("term x^{exponent} log^{log_power} x is not above the remainder O({remainder}) at {location}")]
    TermBeyondRemainder {
        location: Location,
        exponent: Complex64,
        log_power: u32,
        remainder: String,
    },
    #[error("invalid remainder order {0}")]
    InvalidRemainder(f64),
    #[error("substitution exponent must be nonzero")]
    ZeroSubstitution,
    #[error("function carries no derivative certificate")]
    NotDifferentiable,
    #[error("complex exponent {0} is not accepted in input")]
    ComplexExponent(Complex64),
    #[error("invalid expansion literal: {0}")]
    Literal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Zero,
    Infinity,
}

impl Location {
    pub fn opposite(self) -> Location {
        match self {
            Location::Zero => Location::Infinity,
            Location::Infinity => Location::Zero,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Zero => write!(f, "0"),
            Location::Infinity => write!(f, "infinity"),
        }
    }
}

/// coefficient · x^exponent · log^log_power x
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPowerTerm {
    pub coefficient: Complex64,
    pub exponent: Complex64,
    pub log_power: u32,
}

impl LogPowerTerm {
    pub fn new(coefficient: Complex64, exponent: Complex64, log_power: u32) -> Self {
        LogPowerTerm { coefficient, exponent, log_power }
    }

    pub fn real(coefficient: f64, exponent: f64, log_power: u32) -> Self {
        Self::new(Complex64::new(coefficient, 0.0), Complex64::new(exponent, 0.0), log_power)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let l = x.ln();
        self.coefficient * (self.exponent * l).exp() * l.powi(self.log_power as i32)
    }
}

/// Whether two exponents coincide within [`EXPONENT_TOL`].
pub fn same_exponent(a: Complex64, b: Complex64) -> bool {
    (a.re - b.re).abs() <= EXPONENT_TOL && (a.im - b.im).abs() <= EXPONENT_TOL
}

/// Finite log-power expansion at 0 or ∞ with a remainder order.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    location: Location,
    terms: Vec<LogPowerTerm>,
    remainder_order: f64,
}

impl AsymptoticExpansion {
    /// Merges coinciding terms, drops zero coefficients, sorts, and checks
    /// that every term lies strictly above the remainder.
    pub fn new(location: Location, terms: Vec<LogPowerTerm>, remainder_order: f64) -> Result<Self, ExpansionError> {
        if remainder_order.is_nan() || remainder_order == f64::NEG_INFINITY {
            return Err(ExpansionError::InvalidRemainder(remainder_order));
        }
        let mut merged: Vec<LogPowerTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged
                .iter_mut()
                .find(|m| m.log_power == t.log_power && same_exponent(m.exponent, t.exponent))
            {
                Some(m) => m.coefficient += t.coefficient,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coefficient != Complex64::new(0.0, 0.0));
        let exp = AsymptoticExpansion { location, terms: merged, remainder_order };
        exp.check_terms()?;
        Ok(exp.sorted())
    }

    /// Expansion with no terms.
    pub fn empty(location: Location, remainder_order: f64) -> Self {
        AsymptoticExpansion { location, terms: Vec::new(), remainder_order }
    }

    fn check_terms(&self) -> Result<(), ExpansionError> {
        for t in &self.terms {
            let ok = match self.location {
                Location::Zero => t.exponent.re < self.remainder_order,
                Location::Infinity => t.exponent.re > -self.remainder_order,
            };
            if !ok {
                let remainder = match self.location {
                    Location::Zero => format!("x^{}", self.remainder_order),
                    Location::Infinity => format!("x^-{}", self.remainder_order),
                };
                return Err(ExpansionError::TermBeyondRemainder {
                    location: self.location,
                    exponent: t.exponent,
                    log_power: t.log_power,
                    remainder,
                });
            }
        }
        Ok(())
    }

    fn sorted(mut self) -> Self {
        let sign = match self.location {
            Location::Zero => 1.0,
            Location::Infinity => -1.0,
        };
        self.terms.sort_by(|a, b| {
            (sign * a.exponent.re)
                .total_cmp(&(sign * b.exponent.re))
                .then(a.exponent.im.total_cmp(&b.exponent.im))
                .then(a.log_power.cmp(&b.log_power))
        });
        self
    }

    pub fn location(&self) -> Location {
        self.location
    }

    pub fn terms(&self) -> &[LogPowerTerm] {
        &self.terms
    }

    pub fn remainder_order(&self) -> f64 {
        self.remainder_order
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of x^exponent log^k x (zero when absent).
    pub fn coefficient(&self, exponent: Complex64, log_power: u32) -> Complex64 {
        self.terms
            .iter()
            .find(|t| t.log_power == log_power && same_exponent(t.exponent, exponent))
            .map_or(Complex64::new(0.0, 0.0), |t| t.coefficient)
    }

    /// Σ coefficient · x^exponent · log^k x over the stored terms.
    pub fn evaluate_truncated(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Termwise sum; the remainder is the weaker of the two.
    pub fn add(&self, other: &Self) -> Result<Self, ExpansionError> {
        if self.location != other.location {
            return Err(ExpansionError::LocationMismatch(self.location, other.location));
        }
        let order = self.remainder_order.min(other.remainder_order);
        let terms: Vec<_> = self.terms.iter().chain(other.terms.iter()).copied().collect();
        // terms of the sharper side that fall below the weaker remainder are absorbed
        let terms = terms.into_iter().filter(|t| keeps(self.location, t, order)).collect();
        Self::new(self.location, terms, order)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| LogPowerTerm { coefficient: t.coefficient * c, ..*t })
            .collect();
        Self::new(self.location, terms, self.remainder_order).expect("scaling preserves the term structure")
    }

    /// Rejects complex exponents, for user-supplied input.
    pub fn require_real_exponents(&self) -> Result<(), ExpansionError> {
        match self.terms.iter().find(|t| t.exponent.im != 0.0) {
            Some(t) => Err(ExpansionError::ComplexExponent(t.exponent)),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("expansion literal serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ExpansionError> {
        serde_json::from_value(v.clone()).map_err(|e| ExpansionError::Literal(e.to_string()))
    }
}

fn keeps(location: Location, t: &LogPowerTerm, order: f64) -> bool {
    match location {
        Location::Zero => t.exponent.re < order,
        Location::Infinity => t.exponent.re > -order,
    }
}

#[derive(Serialize, Deserialize)]
struct TermLiteral {
    re_exp: f64,
    #[serde(default)]
    im_exp: f64,
    #[serde(default)]
    log_pow: u32,
    re_coef: f64,
    #[serde(default)]
    im_coef: f64,
}

#[derive(Serialize, Deserialize)]
struct ExpansionLiteral {
    location: Location,
    /// `null` encodes an exact (infinite-order) expansion.
    remainder_order: Option<f64>,
    terms: Vec<TermLiteral>,
}

impl Serialize for AsymptoticExpansion {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let lit = ExpansionLiteral {
            location: self.location,
            remainder_order: self.remainder_order.is_finite().then_some(self.remainder_order),
            terms: self
                .terms
                .iter()
                .map(|t| TermLiteral {
                    re_exp: t.exponent.re,
                    im_exp: t.exponent.im,
                    log_pow: t.log_power,
                    re_coef: t.coefficient.re,
                    im_coef: t.coefficient.im,
                })
                .collect(),
        };
        lit.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AsymptoticExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let lit = ExpansionLiteral::deserialize(deserializer)?;
        let terms = lit
            .terms
            .into_iter()
            .map(|t| {
                LogPowerTerm::new(
                    Complex64::new(t.re_coef, t.im_coef),
                    Complex64::new(t.re_exp, t.im_exp),
                    t.log_pow,
                )
            })
            .collect();
        AsymptoticExpansion::new(lit.location, terms, lit.remainder_order.unwrap_or(f64::INFINITY))
            .map_err(serde::de::Error::custom)
    }
}

/// Pointwise evaluator on (0, ∞).
pub type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
/// `(k, x) ↦ f^{(k)}(x)`; its presence certifies that the expansions may be
/// differentiated termwise any number of times.
pub type DerivativeFn = Arc<dyn Fn(usize, f64) -> Complex64 + Send + Sync>;

/// A function together with its expansions at 0 and ∞.
#[derive(Clone)]
pub struct ExpandableFunction {
    evaluator: Evaluator,
    at_zero: AsymptoticExpansion,
    at_infinity: AsymptoticExpansion,
    derivatives: Option<DerivativeFn>,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for ExpandableFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExpandableFunction")
            .field("at_zero", &self.at_zero)
            .field("at_infinity", &self.at_infinity)
            .field("differentiable", &self.derivatives.is_some())
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

impl ExpandableFunction {
    pub fn new<F>(f: F, at_zero: AsymptoticExpansion, at_infinity: AsymptoticExpansion) -> Result<Self, ExpansionError>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        if at_zero.location != Location::Zero {
            return Err(ExpansionError::LocationMismatch(Location::Zero, at_zero.location));
        }
        if at_infinity.location != Location::Infinity {
            return Err(ExpansionError::LocationMismatch(Location::Infinity, at_infinity.location));
        }
        Ok(ExpandableFunction {
            evaluator: Arc::new(f),
            at_zero,
            at_infinity,
            derivatives: None,
            breakpoints: Vec::new(),
        })
    }

    /// Attaches all derivatives, marking the function as termwise differentiable.
    pub fn with_derivatives<D>(mut self, d: D) -> Self
    where
        D: Fn(usize, f64) -> Complex64 + Send + Sync + 'static,
    {
        self.derivatives = Some(Arc::new(d));
        self
    }

    /// Points where the function is not smooth (quadrature splits there).
    pub fn with_breakpoints(mut self, mut points: Vec<f64>) -> Self {
        points.retain(|p| *p > 0.0 && p.is_finite());
        points.sort_by(f64::total_cmp);
        points.dedup();
        self.breakpoints = points;
        self
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.evaluator)(x)
    }

    pub fn evaluator(&self) -> Evaluator {
        self.evaluator.clone()
    }

    pub fn at_zero(&self) -> &AsymptoticExpansion {
        &self.at_zero
    }

    pub fn at_infinity(&self) -> &AsymptoticExpansion {
        &self.at_infinity
    }

    pub fn expansion(&self, location: Location) -> &AsymptoticExpansion {
        match location {
            Location::Zero => &self.at_zero,
            Location::Infinity => &self.at_infinity,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn is_differentiable(&self) -> bool {
        self.derivatives.is_some()
    }

    /// f^{(k)}(x) when a derivative certificate is present.
    pub fn derivative(&self, k: usize, x: f64) -> Option<Complex64> {
        self.derivatives.as_ref().map(|d| d(k, x))
    }

    /// f − truncated expansion at `location`, evaluated at x.
    pub fn remainder(&self, location: Location, x: f64) -> Complex64 {
        self.eval(x) - self.expansion(location).evaluate_truncated(x)
    }

    /// sup |f − truncation| / x^p over 50 log-spaced points in
    /// [1e-6, 1e-1] (at 0) or |f − truncation| · x^q over [10, 1e6] (at ∞).
    ///
    /// Points where the remainder is below the rounding level of the
    /// summands carry no information and are skipped.
    pub fn remainder_ratio_sup(&self, location: Location) -> f64 {
        let exp = self.expansion(location);
        let (lo, hi) = match location {
            Location::Zero => (-6.0f64, -1.0f64),
            Location::Infinity => (1.0, 6.0),
        };
        let order = if exp.remainder_order.is_finite() { exp.remainder_order } else { 0.0 };
        (0..50)
            .filter_map(|i| {
                let x = 10f64.powf(lo + (hi - lo) * i as f64 / 49.0);
                let fx = self.eval(x);
                let scale = fx.norm() + exp.terms.iter().map(|t| t.eval(x).norm()).sum::<f64>();
                let r = (fx - exp.evaluate_truncated(x)).norm();
                if r <= 64.0 * f64::EPSILON * scale {
                    return None;
                }
                Some(match location {
                    Location::Zero => r / x.powf(order),
                    Location::Infinity => r * x.powf(order),
                })
            })
            .fold(0.0, f64::max)
    }

    /// x ↦ f(x^σ); for σ < 0 the two expansions trade places.
    pub fn substitute_power(&self, sigma: f64) -> Result<Self, ExpansionError> {
        if sigma == 0.0 || !sigma.is_finite() {
            return Err(ExpansionError::ZeroSubstitution);
        }
        let map = |e: &AsymptoticExpansion, location: Location| {
            let terms = e
                .terms
                .iter()
                .map(|t| LogPowerTerm {
                    coefficient: t.coefficient * sigma.powi(t.log_power as i32),
                    exponent: t.exponent * sigma,
                    log_power: t.log_power,
                })
                .collect();
            AsymptoticExpansion::new(location, terms, e.remainder_order * sigma.abs())
        };
        let (z, i) = if sigma > 0.0 {
            (map(&self.at_zero, Location::Zero)?, map(&self.at_infinity, Location::Infinity)?)
        } else {
            (map(&self.at_infinity, Location::Zero)?, map(&self.at_zero, Location::Infinity)?)
        };
        let f = self.evaluator.clone();
        let derivatives = if sigma == 1.0 { self.derivatives.clone() } else { None };
        let breakpoints = self.breakpoints.iter().map(|b| b.powf(1.0 / sigma)).collect();
        Ok(ExpandableFunction {
            evaluator: Arc::new(move |x| f(x.powf(sigma))),
            at_zero: z,
            at_infinity: i,
            derivatives,
            breakpoints: Vec::new(),
        }
        .with_breakpoints(breakpoints))
    }

    /// Termwise derivative; needs the derivative certificate.
    ///
    /// The remainder at 0 loses one order (p − 1); at ∞ it gains one (q + 1).
    pub fn differentiate(&self) -> Result<Self, ExpansionError> {
        let d = self.derivatives.clone().ok_or(ExpansionError::NotDifferentiable)?;
        let diff = |e: &AsymptoticExpansion, order: f64| {
            let mut terms = Vec::new();
            for t in &e.terms {
                let e1 = t.exponent - 1.0;
                terms.push(LogPowerTerm::new(t.coefficient * t.exponent, e1, t.log_power));
                if t.log_power > 0 {
                    terms.push(LogPowerTerm::new(t.coefficient * t.log_power as f64, e1, t.log_power - 1));
                }
            }
            AsymptoticExpansion::new(e.location, terms, order)
        };
        let at_zero = diff(&self.at_zero, self.at_zero.remainder_order - 1.0)?;
        let at_infinity = diff(&self.at_infinity, self.at_infinity.remainder_order + 1.0)?;
        let d1 = d.clone();
        Ok(ExpandableFunction {
            evaluator: Arc::new(move |x| d1(1, x)),
            at_zero,
            at_infinity,
            derivatives: Some(Arc::new(move |k, x| d(k + 1, x))),
            breakpoints: self.breakpoints.clone(),
        })
    }

    /// x ↦ −x f'(x), the Mellin-dual of multiplication by z.
    pub fn apply_minus_x_dx(&self) -> Result<Self, ExpansionError> {
        let df = self.differentiate()?;
        let g = df.multiply_power(1.0)?;
        Ok(g.scale(Complex64::new(-1.0, 0.0)))
    }

    /// x ↦ x^γ f(x).
    pub fn multiply_power(&self, gamma: f64) -> Result<Self, ExpansionError> {
        let shift = |e: &AsymptoticExpansion, order: f64| {
            let terms = e
                .terms
                .iter()
                .map(|t| LogPowerTerm { exponent: t.exponent + gamma, ..*t })
                .collect();
            AsymptoticExpansion::new(e.location, terms, order)
        };
        let at_zero = shift(&self.at_zero, self.at_zero.remainder_order + gamma)?;
        let at_infinity = shift(&self.at_infinity, self.at_infinity.remainder_order - gamma)?;
        let f = self.evaluator.clone();
        let derivatives = self.derivatives.clone().map(|d| -> DerivativeFn {
            // Leibniz rule with the falling factorials of x^γ
            Arc::new(move |k, x| {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut binom = 1.0;
                let mut falling = 1.0;
                for j in 0..=k {
                    acc += d(k - j, x) * (binom * falling * x.powf(gamma - j as f64));
                    falling *= gamma - j as f64;
                    binom = binom * (k - j) as f64 / (j + 1) as f64;
                }
                acc
            })
        });
        Ok(ExpandableFunction {
            evaluator: Arc::new(move |x| f(x) * x.powf(gamma)),
            at_zero,
            at_infinity,
            derivatives,
            breakpoints: self.breakpoints.clone(),
        })
    }

    /// x ↦ f(λx), expanding log(λx) binomially.
    pub fn rescale_argument(&self, lambda: f64) -> Result<Self, ExpansionError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(ExpansionError::Literal(format!("scale {lambda} must be positive")));
        }
        let ll = lambda.ln();
        let resc = |e: &AsymptoticExpansion| {
            let mut terms = Vec::new();
            for t in &e.terms {
                let pref = t.coefficient * (t.exponent * ll).exp();
                let mut binom = 1.0;
                for j in 0..=t.log_power {
                    // C(k, j) log^{k−j} λ · log^j x
                    let c = pref * binom * ll.powi((t.log_power - j) as i32);
                    terms.push(LogPowerTerm::new(c, t.exponent, j));
                    binom = binom * (t.log_power - j) as f64 / (j + 1) as f64;
                }
            }
            AsymptoticExpansion::new(e.location, terms, e.remainder_order)
        };
        let at_zero = resc(&self.at_zero)?;
        let at_infinity = resc(&self.at_infinity)?;
        let f = self.evaluator.clone();
        let derivatives = self.derivatives.clone().map(|d| -> DerivativeFn {
            Arc::new(move |k, x| d(k, lambda * x) * lambda.powi(k as i32))
        });
        Ok(ExpandableFunction {
            evaluator: Arc::new(move |x| f(lambda * x)),
            at_zero,
            at_infinity,
            derivatives,
            breakpoints: self.breakpoints.iter().map(|b| b / lambda).collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let f = self.evaluator.clone();
        let derivatives = self
            .derivatives
            .clone()
            .map(|d| -> DerivativeFn { Arc::new(move |k, x| d(k, x) * c) });
        ExpandableFunction {
            evaluator: Arc::new(move |x| f(x) * c),
            at_zero: self.at_zero.scale(c),
            at_infinity: self.at_infinity.scale(c),
            derivatives,
            breakpoints: self.breakpoints.clone(),
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Result<Self, ExpansionError> {
        let (f, g) = (self.evaluator.clone(), other.evaluator.clone());
        let derivatives = match (&self.derivatives, &other.derivatives) {
            (Some(a), Some(b)) => {
                let (a, b) = (a.clone(), b.clone());
                Some(Arc::new(move |k, x| a(k, x) + b(k, x)) as DerivativeFn)
            }
            _ => None,
        };
        let mut breakpoints = self.breakpoints.clone();
        breakpoints.extend_from_slice(&other.breakpoints);
        let h = ExpandableFunction {
            evaluator: Arc::new(move |x| f(x) + g(x)),
            at_zero: self.at_zero.add(&other.at_zero)?,
            at_infinity: self.at_infinity.add(&other.at_infinity)?,
            derivatives,
            breakpoints: Vec::new(),
        };
        Ok(h.with_breakpoints(breakpoints))
    }
}

/// Library of closed-form members of the class.
pub mod catalog {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn monomial_derivative(alpha: f64, k: u32) -> impl Fn(usize, f64) -> Complex64 + Send + Sync {
        // d^n/dx^n x^α log^k x = x^{α−n} Σ_j c_{n,j} log^j x, by repeated
        // application of the termwise rule on the coefficient vector
        move |n, x| {
            let mut coef = vec![0.0; k as usize + 1];
            coef[k as usize] = 1.0;
            let mut a = alpha;
            for _ in 0..n {
                let mut next = vec![0.0; k as usize + 1];
                for (j, &cj) in coef.iter().enumerate() {
                    next[j] += cj * a;
                    if j > 0 {
                        next[j - 1] += cj * j as f64;
                    }
                }
                coef = next;
                a -= 1.0;
            }
            let l = x.ln();
            let poly: f64 = coef.iter().enumerate().map(|(j, cj)| cj * l.powi(j as i32)).sum();
            c(poly * x.powf(alpha - n as f64))
        }
    }

    /// x^α log^k x on all of (0, ∞); both expansions are exact.
    pub fn monomial(alpha: f64, k: u32) -> ExpandableFunction {
        let t = LogPowerTerm::real(1.0, alpha, k);
        let z = AsymptoticExpansion::new(Location::Zero, vec![t], f64::INFINITY).expect("exact term");
        let i = AsymptoticExpansion::new(Location::Infinity, vec![t], f64::INFINITY).expect("exact term");
        ExpandableFunction::new(move |x| c(x.powf(alpha) * x.ln().powi(k as i32)), z, i)
            .expect("locations match")
            .with_derivatives(monomial_derivative(alpha, k))
    }

    /// x^α log^k x · 1_{[0,1]}.
    pub fn monomial_on_unit_interval(alpha: f64, k: u32) -> ExpandableFunction {
        let t = LogPowerTerm::real(1.0, alpha, k);
        let z = AsymptoticExpansion::new(Location::Zero, vec![t], f64::INFINITY).expect("exact term");
        let i = AsymptoticExpansion::empty(Location::Infinity, f64::INFINITY);
        ExpandableFunction::new(
            move |x| if x <= 1.0 { c(x.powf(alpha) * x.ln().powi(k as i32)) } else { c(0.0) },
            z,
            i,
        )
        .expect("locations match")
        .with_breakpoints(vec![1.0])
    }

    /// x^α log^k x · 1_{[1,∞)}.
    pub fn monomial_on_tail(alpha: f64, k: u32) -> ExpandableFunction {
        let t = LogPowerTerm::real(1.0, alpha, k);
        let z = AsymptoticExpansion::empty(Location::Zero, f64::INFINITY);
        let i = AsymptoticExpansion::new(Location::Infinity, vec![t], f64::INFINITY).expect("exact term");
        ExpandableFunction::new(
            move |x| if x >= 1.0 { c(x.powf(alpha) * x.ln().powi(k as i32)) } else { c(0.0) },
            z,
            i,
        )
        .expect("locations match")
        .with_breakpoints(vec![1.0])
    }

    /// e^{−x} with its Taylor expansion through x^{order−1}.
    pub fn exp_decay(order: usize) -> ExpandableFunction {
        let mut terms = Vec::new();
        let mut fact = 1.0;
        for j in 0..order {
            if j > 0 {
                fact *= j as f64;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            terms.push(LogPowerTerm::real(sign / fact, j as f64, 0));
        }
        let z = AsymptoticExpansion::new(Location::Zero, terms, order as f64).expect("Taylor terms");
        let i = AsymptoticExpansion::empty(Location::Infinity, f64::INFINITY);
        ExpandableFunction::new(|x| c((-x).exp()), z, i)
            .expect("locations match")
            .with_derivatives(|k, x| c(if k % 2 == 0 { 1.0 } else { -1.0 } * (-x).exp()))
    }

    /// 1/(1+x), expanded through `order` terms on each side.
    pub fn rational_decay(order: usize) -> ExpandableFunction {
        fn alt(j: usize) -> f64 {
            if j % 2 == 0 { 1.0 } else { -1.0 }
        }
        let z_terms = (0..order).map(|j| LogPowerTerm::real(alt(j), j as f64, 0)).collect();
        let i_terms = (0..order)
            .map(|j| LogPowerTerm::real(alt(j), -(j as f64) - 1.0, 0))
            .collect();
        let z = AsymptoticExpansion::new(Location::Zero, z_terms, order as f64).expect("geometric series");
        let i =
            AsymptoticExpansion::new(Location::Infinity, i_terms, order as f64 + 1.0).expect("geometric series");
        ExpandableFunction::new(|x| c(1.0 / (1.0 + x)), z, i)
            .expect("locations match")
            .with_derivatives(move |k, x| {
                let mut fact = 1.0;
                for j in 1..=k {
                    fact *= j as f64;
                }
                c(alt(k) * fact / (1.0 + x).powi(k as i32 + 1))
            })
    }

    /// Smooth step: 1 on [0, 1], 0 on [2, ∞), built from e^{−1/u}.
    pub fn smooth_step(x: f64) -> f64 {
        let g = |u: f64| if u > 0.0 { (-1.0 / u).exp() } else { 0.0 };
        let u = 2.0 - x;
        let v = x - 1.0;
        if v <= 0.0 {
            1.0
        } else if u <= 0.0 {
            0.0
        } else {
            g(u) / (g(u) + g(v))
        }
    }

    /// φ(x)/x with the smooth step φ; a_{−1,0} = 1 at zero, nothing at ∞.
    pub fn cutoff_over_x() -> ExpandableFunction {
        let z = AsymptoticExpansion::new(Location::Zero, vec![LogPowerTerm::real(1.0, -1.0, 0)], f64::INFINITY)
            .expect("exact near 0");
        let i = AsymptoticExpansion::empty(Location::Infinity, f64::INFINITY);
        ExpandableFunction::new(|x| c(smooth_step(x) / x), z, i)
            .expect("locations match")
            .with_breakpoints(vec![1.0, 2.0])
    }

    /// (1 − φ(x))/x with the smooth step φ; b_{−1,0} = 1 at ∞, zero near 0.
    pub fn tail_over_x() -> ExpandableFunction {
        let z = AsymptoticExpansion::empty(Location::Zero, f64::INFINITY);
        let i = AsymptoticExpansion::new(Location::Infinity, vec![LogPowerTerm::real(1.0, -1.0, 0)], f64::INFINITY)
            .expect("exact near ∞");
        ExpandableFunction::new(|x| c((1.0 - smooth_step(x)) / x), z, i)
            .expect("locations match")
            .with_breakpoints(vec![1.0, 2.0])
    }
}
