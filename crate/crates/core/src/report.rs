//! Log-power series produced by the expansion engines, with per-term
//! provenance.

use crate::expansions::{same_exponent, Location};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Taylor,
    Boundary,
    LogCorrection,
    Interior,
    Residue,
}

/// One record c · v^exponent · log^log_power v in the expansion variable v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportTerm {
    pub exponent: Complex64,
    pub log_power: u32,
    pub coefficient: Complex64,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    re_exp: f64,
    im_exp: f64,
    log_pow: u32,
    re_coef: f64,
    im_coef: f64,
    provenance: Provenance,
}

impl ReportTerm {
    pub fn eval(&self, v: f64) -> Complex64 {
        let l = v.ln();
        self.coefficient * (self.exponent * l).exp() * l.powi(self.log_power as i32)
    }
}

/// Expansion as v → 0 (`limit = Zero`) or v → ∞, valid up to
/// O(v^remainder_order log^remainder_log_power v); at ∞ the order is the
/// exponent of the remainder, so it is negative for decaying remainders.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub limit: Location,
    pub terms: Vec<ReportTerm>,
    pub remainder_order: f64,
    pub remainder_log_power: u32,
}

impl ExpansionReport {
    pub fn new(limit: Location, remainder_order: f64, remainder_log_power: u32) -> Self {
        ExpansionReport { limit, terms: Vec::new(), remainder_order, remainder_log_power }
    }

    pub fn push(&mut self, exponent: Complex64, log_power: u32, coefficient: Complex64, provenance: Provenance) {
        self.terms.push(ReportTerm { exponent, log_power, coefficient, provenance });
    }

    /// Orders terms from dominant to subdominant; stable within ties.
    pub fn sort(&mut self) {
        let limit = self.limit;
        self.terms.sort_by(|a, b| {
            let by_re = match limit {
                Location::Zero => a.exponent.re.total_cmp(&b.exponent.re),
                Location::Infinity => b.exponent.re.total_cmp(&a.exponent.re),
            };
            by_re
                .then(a.exponent.im.total_cmp(&b.exponent.im))
                .then(b.log_power.cmp(&a.log_power))
        });
    }

    /// Sum of all records with the given exponent and log power.
    pub fn coefficient(&self, exponent: Complex64, log_power: u32) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.log_power == log_power && same_exponent(t.exponent, exponent))
            .map(|t| t.coefficient)
            .sum()
    }

    pub fn evaluate(&self, v: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(v)).sum()
    }

    /// Sum of the terms at least as dominant as v^cutoff.
    pub fn evaluate_through(&self, v: f64, cutoff: f64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| match self.limit {
                Location::Zero => t.exponent.re <= cutoff + 1e-12,
                Location::Infinity => t.exponent.re >= cutoff - 1e-12,
            })
            .map(|t| t.eval(v))
            .sum()
    }

    /// Multiplies every term by c · v^shift.
    pub fn shifted(&self, shift: f64, c: Complex64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.exponent += shift;
            t.coefficient *= c;
        }
        out.remainder_order += shift;
        out
    }

    /// Fitted log-log slope of |lhs(v) − truncation| against v.
    pub fn empirical_order(&self, residuals: &[(f64, Complex64)]) -> Option<f64> {
        let pts: Vec<(f64, f64)> = residuals
            .iter()
            .filter(|(_, r)| r.norm() > 0.0)
            .map(|(v, r)| (v.ln(), r.norm().ln()))
            .collect();
        slope(&pts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            // adding 0.0 folds −0.0, which would otherwise leak into the output
            .map(|t| TermRecord {
                re_exp: t.exponent.re + 0.0,
                im_exp: t.exponent.im + 0.0,
                log_pow: t.log_power,
                re_coef: t.coefficient.re + 0.0,
                im_coef: t.coefficient.im + 0.0,
                provenance: t.provenance,
            })
            .collect();
        serde_json::json!({
            "limit": self.limit,
            "remainder_order": finite_or_null(self.remainder_order),
            "remainder_log_power": self.remainder_log_power,
            "terms": records,
        })
    }
}

fn finite_or_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::Value::Null
    }
}

/// Least-squares slope of y against x.
pub fn slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}
