//! Deficiency indices of first-order model-cone operators, Cl_k reduced
//! indices, and the Dirac–Schrödinger index combination.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Eigenvalues closer than this to the threshold λ raise a warning.
pub const THRESHOLD_WARN: f64 = 1e-12;
/// Largest model space the brute-force oracle will assemble.
pub const MAX_BRUTE_DIM: usize = 400;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeficiencyError {
    #[error("invalid graded spectrum: {0}")]
    Invalid(String),
    #[error("the brute-force count needs nonnegative integer weights, got {0}")]
    NonIntegerWeight(Complex64),
    #[error("model space of dimension {0} exceeds {MAX_BRUTE_DIM}")]
    TooLarge(usize),
    #[error("real dimension {0} of E_+ is odd, so it carries no complex structure")]
    OddComplexDimension(u64),
    #[error("dim_C E_+ = {from_plus} but dim_R E / 4 = {from_total}")]
    InconsistentDimensions { from_plus: u64, from_total: u64 },
    #[error("k = {0} mod 8 needs the reduced integer index")]
    MissingReducedIndex(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositiveMode {
    pub mu: f64,
    pub weight: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub weight_im: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl PositiveMode {
    pub fn new(mu: f64, weight: f64) -> Self {
        PositiveMode { mu, weight, weight_im: 0.0 }
    }

    pub fn weight(&self) -> Complex64 {
        Complex64::new(self.weight, self.weight_im)
    }
}

/// Kernel split (w₊, w₋) of ker(Γ±i) ∩ ker A, positive eigenvalues μ of A
/// with weights, and the weight-line threshold λ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedSpectrum {
    pub kernel_plus: f64,
    pub kernel_minus: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub kernel_plus_im: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub kernel_minus_im: f64,
    #[serde(default)]
    pub positive: Vec<PositiveMode>,
    pub lambda: f64,
    #[serde(default)]
    pub fredholm: bool,
}

impl GradedSpectrum {
    pub fn new(kernel_plus: f64, kernel_minus: f64, positive: Vec<PositiveMode>, lambda: f64) -> Result<Self, DeficiencyError> {
        let g = GradedSpectrum {
            kernel_plus,
            kernel_minus,
            kernel_plus_im: 0.0,
            kernel_minus_im: 0.0,
            positive,
            lambda,
            fredholm: false,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, DeficiencyError> {
        let g: GradedSpectrum =
            serde_json::from_value(v.clone()).map_err(|e| DeficiencyError::Invalid(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), DeficiencyError> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(DeficiencyError::Invalid(format!("threshold λ = {} must be positive", self.lambda)));
        }
        if let Some(m) = self.positive.iter().find(|m| !(m.mu > 0.0 && m.mu.is_finite())) {
            return Err(DeficiencyError::Invalid(format!("eigenvalue μ = {} must be positive", m.mu)));
        }
        Ok(())
    }

    pub fn w_plus(&self) -> Complex64 {
        Complex64::new(self.kernel_plus, self.kernel_plus_im)
    }

    pub fn w_minus(&self) -> Complex64 {
        Complex64::new(self.kernel_minus, self.kernel_minus_im)
    }

    /// True when every weight is a nonnegative integer.
    pub fn is_integral(&self) -> bool {
        let ok = |w: Complex64| w.im == 0.0 && w.re >= 0.0 && w.re.fract() == 0.0;
        ok(self.w_plus()) && ok(self.w_minus()) && self.positive.iter().all(|m| ok(m.weight()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeficiencyIndices {
    pub n_plus: Complex64,
    pub n_minus: Complex64,
    pub warnings: Vec<String>,
}

/// n± = w± + Σ_{0<μ<λ} weight(μ).
pub fn deficiency_indices(g: &GradedSpectrum) -> DeficiencyIndices {
    let mut below = Complex64::new(0.0, 0.0);
    let mut warnings = Vec::new();
    for m in &g.positive {
        if (m.mu - g.lambda).abs() <= THRESHOLD_WARN && m.mu != g.lambda {
            warnings.push(format!("eigenvalue {} lies within {THRESHOLD_WARN:e} of the threshold {}", m.mu, g.lambda));
        }
        if m.mu < g.lambda {
            below += m.weight();
        }
    }
    DeficiencyIndices { n_plus: g.w_plus() + below, n_minus: g.w_minus() + below, warnings }
}

/// ind(A, ε) = w₊ − w₋.
pub fn index_a_eps(g: &GradedSpectrum) -> Complex64 {
    g.w_plus() - g.w_minus()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CobordismStatus {
    Pass,
    Fail,
    Informational,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CobordismReport {
    pub index: Complex64,
    pub status: CobordismStatus,
}

/// Boundaries must have vanishing ind(A, iΓ).
pub fn cobordism_check(g: &GradedSpectrum, declared_boundary: bool) -> CobordismReport {
    let index = index_a_eps(g);
    let status = match (declared_boundary, index.norm() == 0.0) {
        (false, _) => CobordismStatus::Informational,
        (true, true) => CobordismStatus::Pass,
        (true, false) => CobordismStatus::Fail,
    };
    CobordismReport { index, status }
}

/// Signature count of q(x, y) = i(Γx|y) on the spectral subspace |A| < λ of
/// an explicitly assembled model space, hidden behind a random unitary.
pub fn deficiency_brute_force(g: &GradedSpectrum, seed: u64) -> Result<(u64, u64), DeficiencyError> {
    g.validate()?;
    for w in [g.w_plus(), g.w_minus()].into_iter().chain(g.positive.iter().map(|m| m.weight())) {
        if !(w.im == 0.0 && w.re >= 0.0 && w.re.fract() == 0.0) {
            return Err(DeficiencyError::NonIntegerWeight(w));
        }
    }
    let (wp, wm) = (g.kernel_plus as usize, g.kernel_minus as usize);
    let pairs: usize = g.positive.iter().map(|m| m.weight as usize).sum();
    let dim = wp + wm + 2 * pairs;
    if dim > MAX_BRUTE_DIM {
        return Err(DeficiencyError::TooLarge(dim));
    }
    if dim == 0 {
        return Ok((0, 0));
    }
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut a = DMatrix::from_element(dim, dim, zero);
    let mut gamma = DMatrix::from_element(dim, dim, zero);
    // kernel: Γ = −i on ker(Γ+i), +i on ker(Γ−i)
    for k in 0..wp {
        gamma[(k, k)] = -i;
    }
    for k in wp..wp + wm {
        gamma[(k, k)] = i;
    }
    // each mode: φ with Aφ = μφ and ψ = Γφ with Aψ = −μψ; Γψ = −φ
    let mut k = wp + wm;
    for m in &g.positive {
        for _ in 0..m.weight as usize {
            a[(k, k)] = Complex64::new(m.mu, 0.0);
            a[(k + 1, k + 1)] = Complex64::new(-m.mu, 0.0);
            gamma[(k + 1, k)] = Complex64::new(1.0, 0.0);
            gamma[(k, k + 1)] = Complex64::new(-1.0, 0.0);
            k += 2;
        }
    }
    let u = random_unitary(dim, seed);
    let ut = u.adjoint();
    let a = &u * a * &ut;
    let gamma = &u * gamma * &ut;
    // spectral subspace |A| < λ
    let eig = SymmetricEigen::new(a);
    let cols: Vec<usize> = (0..dim).filter(|&j| eig.eigenvalues[j].abs() < g.lambda - 1e-9).collect();
    if cols.is_empty() {
        return Ok((0, 0));
    }
    let v = eig.eigenvectors.select_columns(&cols);
    // Gram matrix Q_{jk} = q(v_k, v_j) = i⟨Γv_k, v_j⟩
    let q = v.adjoint() * gamma * &v * i;
    let q = (&q + q.adjoint()) * Complex64::new(0.5, 0.0);
    let sig = SymmetricEigen::new(q).eigenvalues;
    let pos = sig.iter().filter(|&&x| x > 1e-9).count() as u64;
    let neg = sig.iter().filter(|&&x| x < -1e-9).count() as u64;
    Ok((pos, neg))
}

fn random_unitary(n: usize, seed: u64) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    m.qr().q()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClkModuleData {
    pub k: u32,
    pub e_plus_dim_real: u64,
    /// dim_ℝ E, for the second l = 2 route.
    #[serde(default)]
    pub e_dim_real: Option<u64>,
    /// Signed integer index for l = 0, 4.
    #[serde(default)]
    pub reduced_index: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum ClkResidue {
    Mod2(u8),
    Integer(i64),
    StructurallyZero,
}

/// def-ind_k according to l = k mod 8.
pub fn clk_def_ind(m: &ClkModuleData) -> Result<ClkResidue, DeficiencyError> {
    let l = m.k % 8;
    match l {
        1 => Ok(ClkResidue::Mod2((m.e_plus_dim_real % 2) as u8)),
        2 => {
            if m.e_plus_dim_real % 2 == 1 {
                return Err(DeficiencyError::OddComplexDimension(m.e_plus_dim_real));
            }
            let from_plus = m.e_plus_dim_real / 2;
            if let Some(total) = m.e_dim_real {
                if total % 4 != 0 || total / 4 != from_plus {
                    return Err(DeficiencyError::InconsistentDimensions { from_plus, from_total: total / 4 });
                }
            }
            Ok(ClkResidue::Mod2((from_plus % 2) as u8))
        }
        0 | 4 => m.reduced_index.map(ClkResidue::Integer).ok_or(DeficiencyError::MissingReducedIndex(l)),
        _ => Ok(ClkResidue::StructurallyZero),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    Min,
    Max,
}

impl Extension {
    fn sign(self) -> i64 {
        match self {
            Extension::Min => -1,
            Extension::Max => 1,
        }
    }
}

/// ±½ n(D) − ½ ind(S₊) + ½ ind(S₋), + for the maximal extension.
pub fn dirac_schrodinger_index(n_d: Complex64, ind_s_plus: Complex64, ind_s_minus: Complex64, ext: Extension) -> Complex64 {
    (n_d * ext.sign() as f64 - ind_s_plus + ind_s_minus) * 0.5
}

/// Exact form of [`dirac_schrodinger_index`] for integer data.
pub fn dirac_schrodinger_index_exact(n_d: i64, ind_s_plus: i64, ind_s_minus: i64, ext: Extension) -> Rational64 {
    Rational64::new(ext.sign() * n_d - ind_s_plus + ind_s_minus, 2)
}
