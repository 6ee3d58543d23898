//! Cross-section spectra and their JSON forms.

use super::ConeError;
use crate::specfun::{PowerFamily, SpectrumZetaProvider};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Eigenvalue λ with weight; `order` optionally fixes the Bessel order p(λ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralDatum {
    #[serde(rename = "lambda")]
    pub eigenvalue: f64,
    #[serde(default = "one")]
    pub weight_re: f64,
    #[serde(default)]
    pub weight_im: f64,
    #[serde(default, rename = "p", skip_serializing_if = "Option::is_none")]
    pub order: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl SpectralDatum {
    pub fn new(eigenvalue: f64, weight: Complex64) -> Self {
        SpectralDatum { eigenvalue, weight_re: weight.re, weight_im: weight.im, order: None }
    }

    pub fn with_order(mut self, p: f64) -> Self {
        self.order = Some(p);
        self
    }

    pub fn weight(&self) -> Complex64 {
        Complex64::new(self.weight_re, self.weight_im)
    }
}

/// Data with 0 < λ < `negative_below` get p = −√λ; all others p = √λ.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PChoice {
    #[serde(default)]
    pub negative_below: f64,
}

/// Tail of frequencies ν (so λ = ν² for a cross-section Laplacian).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    None,
    /// ν = n for n ≥ 1, each of weight `scale`.
    Riemann { scale: f64 },
    /// ν = n + a for n ≥ 0.
    Hurwitz {
        a: f64,
        #[serde(default = "one")]
        weight: f64,
    },
    /// ν = scale·n^β + shift for n ≥ 1.
    Power {
        scale: f64,
        beta: f64,
        #[serde(default)]
        shift: f64,
        #[serde(default = "one")]
        weight: f64,
    },
}

impl FamilySpec {
    fn to_family(self) -> Result<Option<PowerFamily>, ConeError> {
        let w = |x: f64| Complex64::new(x, 0.0);
        let fam = match self {
            FamilySpec::None => return Ok(None),
            FamilySpec::Riemann { scale } => PowerFamily::new(1.0, 1.0, 0.0, 1, w(scale))?,
            FamilySpec::Hurwitz { a, weight } => {
                if !(a > 0.0) {
                    return Err(ConeError::Invalid(format!("Hurwitz tail parameter a = {a} must be positive")));
                }
                PowerFamily::new(1.0, 1.0, a, 0, w(weight))?
            }
            FamilySpec::Power { scale, beta, shift, weight } => PowerFamily::new(scale, beta, shift, 1, w(weight))?,
        };
        Ok(Some(fam))
    }
}

#[derive(Deserialize)]
struct CrossSectionJson {
    #[serde(default)]
    data: Vec<SpectralDatum>,
    #[serde(default = "no_tail")]
    tail: FamilySpec,
    #[serde(default)]
    p_choice: PChoice,
}

fn no_tail() -> FamilySpec {
    FamilySpec::None
}

/// Spectrum of the cross-section operator A: enumerated data plus frequency
/// families (members ν of a family have λ = ν² and p = ν).
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSectionSpectrum {
    data: Vec<SpectralDatum>,
    families: Vec<PowerFamily>,
    p_choice: PChoice,
}

impl CrossSectionSpectrum {
    pub fn new(data: Vec<SpectralDatum>, families: Vec<PowerFamily>, p_choice: PChoice) -> Result<Self, ConeError> {
        let spec = CrossSectionSpectrum { data, families, p_choice };
        spec.orders()?;
        Ok(spec)
    }

    pub fn finite(data: Vec<SpectralDatum>) -> Result<Self, ConeError> {
        Self::new(data, Vec::new(), PChoice::default())
    }

    /// Data given directly by Bessel orders p with weights.
    pub fn from_orders(orders: &[(f64, Complex64)], families: Vec<PowerFamily>) -> Result<Self, ConeError> {
        let data = orders.iter().map(|&(p, w)| SpectralDatum::new(p * p, w).with_order(p)).collect();
        Self::new(data, families, PChoice::default())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ConeError> {
        let j: CrossSectionJson =
            serde_json::from_value(v.clone()).map_err(|e| ConeError::Invalid(e.to_string()))?;
        let families = j.tail.to_family()?.into_iter().collect();
        Self::new(j.data, families, j.p_choice)
    }

    pub fn data(&self) -> &[SpectralDatum] {
        &self.data
    }

    pub fn families(&self) -> &[PowerFamily] {
        &self.families
    }

    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    /// (p(λ), weight) for the enumerated data.
    pub fn orders(&self) -> Result<Vec<(f64, Complex64)>, ConeError> {
        self.data
            .iter()
            .map(|d| {
                let lam = d.eigenvalue;
                if !(lam >= 0.0 && lam.is_finite()) {
                    return Err(ConeError::Invalid(format!("eigenvalue {lam} of A must be nonnegative")));
                }
                let root = lam.sqrt();
                let p = match d.order {
                    Some(p) => {
                        if (p.abs() - root).abs() > 1e-12 * root.max(1.0) {
                            return Err(ConeError::Invalid(format!("order {p} does not square to eigenvalue {lam}")));
                        }
                        p
                    }
                    None if lam > 0.0 && lam < self.p_choice.negative_below => -root,
                    None => root,
                };
                if !(p > -1.0) {
                    return Err(ConeError::Invalid(format!("order {p} must exceed -1")));
                }
                Ok((p, d.weight()))
            })
            .collect()
    }

    /// Provider of ζ_A(z) = D(2z), D(w) = Σ w ν^{−w} over positive frequencies.
    pub fn frequency_provider(&self) -> Result<SpectrumZetaProvider, ConeError> {
        let finite = self
            .orders()?
            .into_iter()
            .filter(|(p, _)| *p != 0.0)
            .map(|(p, w)| (p.abs(), w))
            .collect();
        Ok(SpectrumZetaProvider::new(finite, self.families.clone())?)
    }

    /// Multiplies all weights by c.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for d in &mut out.data {
            let w = d.weight() * c;
            d.weight_re = w.re;
            d.weight_im = w.im;
        }
        for f in &mut out.families {
            f.weight *= c;
        }
        out
    }
}

#[derive(Deserialize)]
struct FirstOrderJson {
    #[serde(default)]
    data: Vec<SpectralDatum>,
    #[serde(default = "no_tail")]
    positive_tail: FamilySpec,
    #[serde(default = "no_tail")]
    negative_tail: FamilySpec,
    #[serde(default)]
    tail: Option<ShiftTail>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ShiftTail {
    /// λ ∈ ℤ + a: positive members n + a, negative members −(n + 1 − a).
    HurwitzShift { a: f64 },
}

/// Spectrum of the self-adjoint cross-section operator S of D = ∂_x + S/x.
/// Family members below 1 are moved into the enumerated data.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderSpectrum {
    data: Vec<SpectralDatum>,
    positive: Vec<PowerFamily>,
    negative: Vec<PowerFamily>,
}

impl FirstOrderSpectrum {
    pub fn new(data: Vec<SpectralDatum>, positive: Vec<PowerFamily>, negative: Vec<PowerFamily>) -> Result<Self, ConeError> {
        let mut data = data;
        for d in &data {
            if !d.eigenvalue.is_finite() {
                return Err(ConeError::Invalid(format!("eigenvalue {} is not finite", d.eigenvalue)));
            }
        }
        let peel = |fams: Vec<PowerFamily>, sign: f64, data: &mut Vec<SpectralDatum>| {
            fams.into_iter()
                .map(|mut f| {
                    while f.member(f.start) < 1.0 {
                        data.push(SpectralDatum::new(sign * f.member(f.start), f.weight));
                        f.start += 1;
                    }
                    f
                })
                .collect::<Vec<_>>()
        };
        let positive = peel(positive, 1.0, &mut data);
        let negative = peel(negative, -1.0, &mut data);
        Ok(FirstOrderSpectrum { data, positive, negative })
    }

    pub fn finite(data: Vec<SpectralDatum>) -> Result<Self, ConeError> {
        Self::new(data, Vec::new(), Vec::new())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ConeError> {
        let j: FirstOrderJson = serde_json::from_value(v.clone()).map_err(|e| ConeError::Invalid(e.to_string()))?;
        let mut positive: Vec<_> = j.positive_tail.to_family()?.into_iter().collect();
        let mut negative: Vec<_> = j.negative_tail.to_family()?.into_iter().collect();
        if let Some(ShiftTail::HurwitzShift { a }) = j.tail {
            if !(a > 0.0 && a < 1.0) {
                return Err(ConeError::Invalid(format!("shift a = {a} must lie in (0, 1)")));
            }
            let one = Complex64::new(1.0, 0.0);
            positive.push(PowerFamily::new(1.0, 1.0, a, 0, one)?);
            negative.push(PowerFamily::new(1.0, 1.0, 1.0 - a, 0, one)?);
        }
        Self::new(j.data, positive, negative)
    }

    pub fn data(&self) -> &[SpectralDatum] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    fn provider(&self, sign: f64) -> Result<SpectrumZetaProvider, ConeError> {
        let finite = self
            .data
            .iter()
            .filter(|d| d.eigenvalue * sign > 0.0)
            .map(|d| (d.eigenvalue.abs(), d.weight()))
            .collect();
        let fams = if sign > 0.0 { &self.positive } else { &self.negative };
        Ok(SpectrumZetaProvider::new(finite, fams.clone())?)
    }

    /// η(S, s) = D₊(s) − D₋(s) as the pair of providers (D₊, D₋).
    pub fn eta_providers(&self) -> Result<(SpectrumZetaProvider, SpectrumZetaProvider), ConeError> {
        Ok((self.provider(1.0)?, self.provider(-1.0)?))
    }

    /// η(S, s) at a regular point.
    pub fn eta(&self, s: Complex64) -> Result<Complex64, ConeError> {
        let (p, n) = self.eta_providers()?;
        Ok(p.eval(s)? - n.eval(s)?)
    }

    /// (Res₁, Res₀) of η(S, ·) at s0.
    pub fn eta_laurent(&self, s0: Complex64) -> Result<(Complex64, Complex64), ConeError> {
        let (p, n) = self.eta_providers()?;
        let (rp, cp) = p.laurent(s0)?;
        let (rn, cn) = n.laurent(s0)?;
        Ok((rp - rn, cp - cn))
    }

    /// Poles of η(S, ·) at real locations ≥ re_min with their residues.
    pub fn eta_poles(&self, re_min: f64) -> Result<Vec<(f64, Complex64)>, ConeError> {
        let (p, n) = self.eta_providers()?;
        let mut out = p.poles(re_min);
        for (z, r) in n.poles(re_min) {
            match out.iter_mut().find(|(z0, _)| (z0 - z).abs() < 1e-12) {
                Some(slot) => slot.1 -= r,
                None => out.push((z, -r)),
            }
        }
        out.sort_by(|a, b| b.0.total_cmp(&a.0));
        Ok(out)
    }

    /// Weight of ker S and of eigenvalues in (−½, 0).
    pub fn small_weights(&self) -> (Complex64, Complex64) {
        let mut w0 = Complex64::new(0.0, 0.0);
        let mut small = Complex64::new(0.0, 0.0);
        for d in &self.data {
            if d.eigenvalue == 0.0 {
                w0 += d.weight();
            } else if d.eigenvalue > -0.5 && d.eigenvalue < 0.0 {
                small += d.weight();
            }
        }
        (w0, small)
    }

    /// The spectra A± = (S ± ½)² with p⁺(λ) = |λ+½| and p⁻(λ) = |λ−½| for
    /// |λ| ≥ ½, λ − ½ otherwise.
    pub fn squared_spectra(&self) -> Result<(CrossSectionSpectrum, CrossSectionSpectrum), ConeError> {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for d in &self.data {
            let l = d.eigenvalue;
            let w = d.weight();
            plus.push(((l + 0.5).abs(), w));
            minus.push((if l.abs() >= 0.5 { (l - 0.5).abs() } else { l - 0.5 }, w));
        }
        let shifted = |f: &PowerFamily, d: f64| PowerFamily::new(f.scale, f.beta, f.shift + d, f.start, f.weight);
        let mut fam_plus = Vec::new();
        let mut fam_minus = Vec::new();
        for f in &self.positive {
            fam_plus.push(shifted(f, 0.5)?);
            fam_minus.push(shifted(f, -0.5)?);
        }
        for f in &self.negative {
            fam_plus.push(shifted(f, -0.5)?);
            fam_minus.push(shifted(f, 0.5)?);
        }
        Ok((
            CrossSectionSpectrum::from_orders(&plus, fam_plus)?,
            CrossSectionSpectrum::from_orders(&minus, fam_minus)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_forms() {
        let s = CrossSectionSpectrum::from_json(&json!({
            "data": [{"lambda": 0.25, "weight_re": 1.0, "weight_im": 0.0}],
            "tail": {"kind": "riemann", "scale": 2},
            "p_choice": {"negative_below": 1.0}
        }))
        .unwrap();
        assert_eq!(s.orders().unwrap()[0].0, -0.5);
        assert_eq!(s.families().len(), 1);
        let h = CrossSectionSpectrum::from_json(&json!({"data": [], "tail": {"kind": "hurwitz", "a": 0.25}})).unwrap();
        assert_eq!(h.families()[0].member(0), 0.25);
        assert!(CrossSectionSpectrum::from_json(&json!({"data": [{"lambda": -1.0}]})).is_err());
        assert!(CrossSectionSpectrum::from_json(&json!({"tail": {"kind": "bogus"}})).is_err());
        let bad_p = json!({"data": [{"lambda": 4.0, "p": 1.0}]});
        assert!(CrossSectionSpectrum::from_json(&bad_p).is_err());
    }

    #[test]
    fn first_order_peels_small_members() {
        let s = FirstOrderSpectrum::from_json(&json!({"tail": {"kind": "hurwitz_shift", "a": 0.25}})).unwrap();
        // ¼ and −¾ become data
        assert_eq!(s.data().len(), 2);
        let eta0 = s.eta(Complex64::new(0.0, 0.0)).unwrap();
        assert!((eta0.re - 0.5).abs() < 1e-12);
        let (plus, minus) = s.squared_spectra().unwrap();
        let op: Vec<f64> = plus.orders().unwrap().iter().map(|x| x.0).collect();
        let om: Vec<f64> = minus.orders().unwrap().iter().map(|x| x.0).collect();
        assert_eq!(op, vec![0.75, 0.25]);
        assert_eq!(om, vec![-0.25, 1.25]);
    }
}
