//! Hankel transform (H_p f)(x) = ∫_0^∞ (xy)^{1/2} J_p(xy) f(y) dy.

use super::bessel::{bessel_j, bessel_j_zeros};
use super::SpecfunError;
use crate::quad::{integrate, Tolerance};
use num_complex::Complex64;

/// Numerical settings for [`hankel_transform`].
#[derive(Debug, Clone, Copy)]
pub struct HankelOptions {
    pub tol: Tolerance,
    /// Alternating half-waves summed beyond the cutoff before giving up.
    pub max_tail_pieces: usize,
    /// Target for the accelerated tail.
    pub tail_tol: f64,
}

impl Default for HankelOptions {
    fn default() -> Self {
        HankelOptions {
            tol: Tolerance::new(1e-13, 1e-11),
            max_tail_pieces: 30,
            tail_tol: 1e-10,
        }
    }
}

/// Integrates between consecutive zeros of J_p(xy) up to `cutoff`, then
/// continues with half-waves whose partial sums are Euler-averaged.
///
/// # Arguments
///
/// * `f` - The function to transform, evaluated for y > 0.
/// * `p` - Bessel order, p > −1.
/// * `x` - Evaluation point, x > 0.
/// * `cutoff` - y beyond which only the accelerated tail is used.
pub fn hankel_transform<F>(f: F, p: f64, x: f64, cutoff: f64) -> Result<f64, SpecfunError>
where
    F: Fn(f64) -> f64,
{
    hankel_transform_with(f, p, x, cutoff, HankelOptions::default())
}

pub fn hankel_transform_with<F>(
    f: F,
    p: f64,
    x: f64,
    cutoff: f64,
    opts: HankelOptions,
) -> Result<f64, SpecfunError>
where
    F: Fn(f64) -> f64,
{
    if !(x > 0.0) || !(cutoff > 0.0) {
        return Err(SpecfunError::Domain("hankel_transform needs x > 0 and cutoff > 0".into()));
    }
    let integrand = |y: f64| -> Complex64 {
        let j = bessel_j(p, x * y).unwrap_or(f64::NAN);
        Complex64::new((x * y).sqrt() * j * f(y), 0.0)
    };
    // zeros of J_p(xy) in y, a few waves past the cutoff for the tail
    let arg_max = x * cutoff + (opts.max_tail_pieces as f64 + 2.0) * std::f64::consts::PI;
    let zeros: Vec<f64> = bessel_j_zeros(p, arg_max)?.into_iter().map(|z| z / x).collect();
    let mut breaks = vec![0.0];
    breaks.extend(zeros.iter().copied().filter(|&y| y < cutoff));
    let head_end = zeros.iter().copied().find(|&y| y >= cutoff).ok_or(SpecfunError::NonConvergence(
        "no Bessel zero found beyond the cutoff".into(),
    ))?;
    breaks.push(head_end);
    let mut head = 0.0;
    for w in breaks.windows(2) {
        head += integrate(integrand, w[0], w[1], opts.tol)?.value.re;
    }
    let tail_nodes: Vec<f64> = zeros.iter().copied().filter(|&y| y >= head_end).collect();
    let mut partial = Vec::new();
    let mut acc = 0.0;
    for w in tail_nodes.windows(2).take(opts.max_tail_pieces) {
        acc += integrate(integrand, w[0], w[1], opts.tol)?.value.re;
        partial.push(acc);
        if partial.len() >= 4 {
            let e1 = euler_average(&partial);
            let e0 = euler_average(&partial[..partial.len() - 1]);
            if (e1 - e0).abs() <= opts.tail_tol * (1.0 + (head + e1).abs()) {
                return Ok(head + e1);
            }
        }
    }
    Err(SpecfunError::NonConvergence(format!(
        "Hankel tail did not settle after {} half-waves (last partial sum {acc:e})",
        partial.len()
    )))
}

/// Repeated pairwise averaging of the trailing partial sums.
fn euler_average(partial: &[f64]) -> f64 {
    let depth = partial.len().min(8);
    let mut level: Vec<f64> = partial[partial.len() - depth..].to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    level[0]
}
