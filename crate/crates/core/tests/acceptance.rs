//! Acceptance harness: one PASS/FAIL line per criterion.

use cone_spectra::cone::{
    bessel_weight, eta_function_scalable, eta_hat_residues, fit_powers, heat_kernel_lp, heat_trace_expansion, laurent_fit,
    residues_at_zero, scalar_cone_trace, scalar_heat_inputs, zeta_hat_lp, CrossSectionSpectrum, FirstOrderSpectrum, PChoice,
    SpectralDatum,
};
use cone_spectra::deficiency::{
    clk_def_ind, deficiency_brute_force, deficiency_indices, dirac_schrodinger_index, dirac_schrodinger_index_exact,
    index_a_eps, ClkModuleData, ClkResidue, Extension,
};
use cone_spectra::expansions::catalog::{
    cutoff_over_x, exp_decay, monomial, monomial_on_tail, monomial_on_unit_interval, rational_decay, tail_over_x,
};
use cone_spectra::expansions::ExpandableFunction;
use cone_spectra::mellin::{mellin_transform, regularized_integral, regularized_integral_partial, scale_rule, vertical_strip_decay, Side};
use cone_spectra::quad::{integrate, integrate_half_line, integrate_to_infinity, Tolerance};
use cone_spectra::report::slope;
use cone_spectra::sal::catalog::{gaussian, smooth_cutoff};
use cone_spectra::sal::expand_phi_tx;
use cone_spectra::specfun::{
    bessel_j, evaluate_ratio, gamma_quotient, gamma_ratio_expansion, hankel_transform, l_fn, rgamma, PowerFamily, RationalPoly,
};
use cone_spectra::verify::random_graded;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// ⨍_0^1 x^α log^k x dx; the [1, ∞) piece is its negative.
fn unit_interval_closed_form(alpha: f64, k: u32) -> f64 {
    if alpha == -1.0 {
        0.0
    } else {
        (-1f64).powi(k as i32) * factorial(k) / (alpha + 1.0).powi(k as i32 + 1)
    }
}

fn criterion_1() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for &alpha in &[-3.0, -2.0, -1.0, -0.5, 0.0, 1.7] {
        for k in 0..3 {
            let z = unit_interval_closed_form(alpha, k);
            let f = monomial(alpha, k);
            let partial = [
                (regularized_integral_partial(&f, 1.0, Side::ZeroToC)?, z),
                (regularized_integral_partial(&f, 1.0, Side::CToInf)?, -z),
                (regularized_integral(&monomial_on_unit_interval(alpha, k))?, z),
                (regularized_integral(&monomial_on_tail(alpha, k))?, -z),
            ];
            worst = partial.iter().fold(worst, |m, (v, e)| m.max((v - e).norm()));
            worst = worst.max(regularized_integral(&f)?.norm());
            cases += 2;
        }
    }
    Ok((worst <= 1e-12, format!("{cases} cases (partial and full), max abs error {worst:.2e} (tol 1e-12)")))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let k = rng.random_range(1..3);
        let a = if rng.random_bool(0.5) { 1.0 } else { -1.0 } * rng.random_range(0.5..2.0);
        let f: ExpandableFunction = cutoff_over_x()
            .scale(c(a))
            .add(&monomial_on_unit_interval(-1.0, k).scale(c(rng.random_range(-2.0..2.0))))?
            .add(&tail_over_x().scale(c(rng.random_range(-2.0..2.0))))?
            .add(&exp_decay(4).scale(c(rng.random_range(-2.0..2.0))))?;
        let lambda = 10f64.powf(rng.random_range(-1.0..1.0));
        let direct = regularized_integral(&f.rescale_argument(lambda)?)?;
        worst = worst.max((scale_rule(&f, lambda)? - direct).norm());
    }
    Ok((worst <= 1e-8, format!("20 random pairs, max |scale_rule − direct| = {worst:.2e} (tol 1e-8)")))
}

fn criterion_3() -> Outcome {
    // f − T_q is only known to rounding level near 0, so accuracy at Re z
    // degrades like ε^{1 + Re z/q}; order 12 keeps Re z ≥ −4 well conditioned
    let samples = [exp_decay(12), rational_decay(12), exp_decay(12).multiply_power(0.5)?];
    let mut worst: f64 = 0.0;
    for f in &samples {
        let mf = mellin_transform(f, 1.0)?;
        let mdf = mellin_transform(&f.apply_minus_x_dx()?, 1.0)?;
        let (lo, hi) = (mf.strip().0.max(mdf.strip().0).max(-4.0), mf.strip().1.min(mdf.strip().1).min(4.0));
        for j in 0..10 {
            let z = Complex64::new(lo + (hi - lo) * (j as f64 + 0.5) / 10.0, 0.7 * (j as f64 - 4.5));
            worst = worst.max((mdf.eval(z)? - z * mf.eval(z)?).norm());
        }
    }
    let decay = vertical_strip_decay(&exp_decay(3), (2.0, 3.0), 3)?;
    let s = decay.slope.unwrap_or(f64::NAN);
    Ok((
        worst <= 1e-8 && s >= 2.5,
        format!("max |M(Df) − zMf| = {worst:.2e} (tol 1e-8) over 30 points; decay slope {s:.2} (need ≥ 2.5)"),
    ))
}

fn criterion_4() -> Outcome {
    let phi = gaussian(12);
    let f = exp_decay(12);
    let report = expand_phi_tx(&phi, &f, 5.0)?;
    let tol = Tolerance { abs: 1e-15, rel: 1e-13, max_intervals: 4000 };
    let lhs = |t: f64| -> Result<f64, Box<dyn std::error::Error>> {
        Ok(integrate_half_line(|x| c((-t * t * x * x - x).exp()), 1.0, tol)?.value.re)
    };
    let mut pts = Vec::new();
    for &t in &[1e-1, 10f64.powf(-1.5), 1e-2] {
        let r = (lhs(t)? - report.evaluate_through(t, 4.0).re).abs();
        pts.push((t.ln(), r.ln()));
    }
    let order = slope(&pts).unwrap_or(f64::NAN);
    let ts: Vec<f64> = (0..30).map(|i| 0.005 * 10f64.powf(i as f64 / 29.0)).collect();
    let values = ts.iter().map(|&t| lhs(t)).collect::<Result<Vec<_>, _>>()?;
    let basis: Vec<(f64, u32)> = (0..10).map(|j| (j as f64, 0)).collect();
    let fit = fit_powers(&ts, &values, &basis)?;
    let expected = [1.0, 0.0, -2.0, 0.0, 12.0];
    let mut ok = true;
    for (j, &e) in expected.iter().enumerate() {
        let derived = report.coefficient(c(j as f64), 0).re;
        // zero coefficients are judged on the scale of the leading one
        ok &= (derived - e).abs() <= 1e-10 && (fit.coefficients[j] - derived).abs() <= 0.01 * derived.abs().max(1.0);
    }
    let fitted: Vec<String> = fit.coefficients[..5].iter().map(|v| format!("{v:.5}")).collect();
    Ok((
        ok && order >= 4.5,
        format!("remainder slope {order:.2} (need ≥ 4.5); fitted coefficients [{}] vs (1, 0, −2, 0, 12)", fitted.join(", ")),
    ))
}

fn criterion_5() -> Outcome {
    let xs: Vec<f64> = (0..15).map(|i| 0.2 + 2.8 * i as f64 / 14.0).collect();
    let mut worst: f64 = 0.0;
    for &(p, n) in &[(0.5, 0usize), (0.5, 1), (1.0, 2), (2.0, 3)] {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for &x in &xs {
            let h = hankel_transform(|y| l_fn(n, p, y).unwrap_or(f64::NAN), p, x, 9.0)?;
            worst = worst.max((h - sign * l_fn(n, p, x)?).abs());
        }
    }
    let inner = |y: f64| hankel_transform(|u| l_fn(1, 1.0, u).unwrap_or(f64::NAN), 1.0, y, 9.0).unwrap_or(f64::NAN);
    let mut inv: f64 = 0.0;
    for &x in xs.iter().step_by(2) {
        inv = inv.max((hankel_transform(inner, 1.0, x, 9.0)? - l_fn(1, 1.0, x)?).abs());
    }
    Ok((
        worst <= 1e-6 && inv <= 1e-5,
        format!("eigenrelation sup error {worst:.2e} (tol 1e-6); involution sup error {inv:.2e} (tol 1e-5)"),
    ))
}

fn weber(p: f64, t: f64, x: f64, y: f64) -> Result<f64, Box<dyn std::error::Error>> {
    // e^{−tΞ²} = e^{−40} at the truncation point
    let xi = (40.0 / t).sqrt();
    let tol = Tolerance { abs: 1e-14, rel: 1e-12, max_intervals: 4000 };
    let f = |u: f64| c(bessel_j(p, x * u).unwrap_or(f64::NAN) * bessel_j(p, y * u).unwrap_or(f64::NAN) * u * (-t * u * u).exp());
    Ok((x * y).sqrt() * integrate(f, 0.0, xi, tol)?.value.re)
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for &p in &[0.5, 1.0, 2.5] {
        for &t in &[0.2, 0.7, 2.0] {
            for &x in &[0.5, 1.2, 2.5] {
                for &y in &[0.5, 1.2, 2.5] {
                    worst = worst.max((heat_kernel_lp(p, t, x, y)? - weber(p, t, x, y)?).abs());
                }
            }
        }
    }
    let tol = Tolerance { abs: 1e-13, rel: 1e-11, max_intervals: 4000 };
    let mut semi: f64 = 0.0;
    for &(p, t, s, x, y) in &[(1.5, 0.4, 0.6, 0.8, 1.3), (0.5, 0.2, 1.0, 1.5, 0.6)] {
        let f = |z: f64| c(heat_kernel_lp(p, t, x, z).unwrap_or(f64::NAN) * heat_kernel_lp(p, s, z, y).unwrap_or(f64::NAN));
        let lhs = integrate(f, 0.0, 1.0, tol)?.value.re + integrate_to_infinity(f, 1.0, tol)?.value.re;
        semi = semi.max((lhs - heat_kernel_lp(p, t + s, x, y)?).abs());
    }
    Ok((
        worst <= 1e-8 && semi <= 1e-6,
        format!("Weber oracle max error {worst:.2e} on 81 points (tol 1e-8); semigroup error {semi:.2e} (tol 1e-6)"),
    ))
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for &(p, s) in &[(0.5, 0.8), (1.0, 1.0), (2.5, 1.5), (2.5, 2.0)] {
        let oracle = regularized_integral(&bessel_weight(p, s))? * 2f64.powf(-s) * rgamma(c(s));
        let v = zeta_hat_lp(p, c(s))?;
        worst = worst.max((oracle - v).norm() / v.norm());
    }
    let half = (zeta_hat_lp(0.5, c(1.0))? - 1.0).norm();
    Ok((
        worst <= 1e-6 && half <= 1e-10,
        format!("max relative error {worst:.2e} (tol 1e-6); |ζ̂(L_1/2, 1) − 1| = {half:.2e} (tol 1e-10)"),
    ))
}

fn criterion_8() -> Outcome {
    let exp = gamma_ratio_expansion(4)?;
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let q2_exact = exp.q(2) == &RationalPoly(vec![r(0, 1), r(1, 6), r(-1, 2), r(1, 3)]);
    let direct = |nu: f64, s: Complex64| gamma_quotient(c(nu + 1.0) - s, c(nu) + s);
    let mut worst: f64 = 0.0;
    for &s in &[c(0.3), Complex64::new(0.3, 0.2)] {
        let d = direct(50.0, s)?;
        worst = worst.max((evaluate_ratio(&exp, 50.0, s)? - d).norm() / d.norm());
    }
    let mut pts = Vec::new();
    for &nu in &[10.0, 20.0, 40.0, 80.0] {
        let d = direct(nu, c(0.3))?;
        pts.push((f64::ln(nu), ((evaluate_ratio(&exp, nu, c(0.3))? - d).norm() / d.norm()).ln()));
    }
    let order = slope(&pts).unwrap_or(f64::NAN);
    Ok((
        q2_exact && worst <= 1e-8 && (order + 5.0).abs() <= 0.3,
        format!("Q_2 exact: {q2_exact}; relative error at ν=50 {worst:.2e} (tol 1e-8); remainder slope {order:.3} (target −5 ± 0.3)"),
    ))
}

fn criterion_9() -> Outcome {
    let d = |l: f64, w: f64| SpectralDatum::new(l, c(w));
    let symmetric = FirstOrderSpectrum::finite(vec![d(1.5, 1.0), d(-1.5, 1.0), d(2.7, 2.0), d(-2.7, 2.0)])?;
    let kernel = FirstOrderSpectrum::finite(vec![d(0.0, 2.0), d(1.5, 1.0), d(-1.5, 1.0)])?;
    let small = FirstOrderSpectrum::finite(vec![d(0.0, 2.0), d(1.5, 1.0), d(-1.5, 1.0), d(-0.3, 1.0)])?;
    let mut worst: f64 = 0.0;
    for spec in [&symmetric, &kernel, &small] {
        let r = eta_hat_residues(spec)?;
        let fit = laurent_fit(|s| eta_function_scalable(spec, s), 1e-3)?;
        worst = worst.max((fit.0 - r.res1).norm()).max((fit.1 - r.res0).norm());
    }
    let sym = eta_hat_residues(&symmetric)?;
    let sym_zero = sym.res1 == c(0.0) && sym.res0 == c(0.0);
    let circle = CrossSectionSpectrum::new(
        vec![SpectralDatum::new(0.0, c(1.0))],
        vec![PowerFamily::new(1.0, 1.0, 0.0, 1, c(2.0))?],
        PChoice::default(),
    )?;
    let res1 = residues_at_zero(&circle)?.res1.norm();
    Ok((
        worst <= 1e-5 && sym_zero && res1 <= 1e-8,
        format!("max |residue − Laurent fit| {worst:.2e} (tol 1e-5); symmetric exactly (0,0): {sym_zero}; circle |Res₁| {res1:.2e} (tol 1e-8)"),
    ))
}

fn criterion_10() -> Outcome {
    let phi = smooth_cutoff(16);
    let ts: Vec<f64> = (0..25).map(|i| 10f64.powf(-4.0 + 2.0 * i as f64 / 24.0)).collect();
    let basis = [(-0.5, 0), (0.0, 0), (0.0, 1), (0.5, 0), (1.0, 0), (1.5, 0)];
    let mut ok = true;
    let mut lines = Vec::new();
    for &p in &[0.5, 1.0, 2.5] {
        let spec = CrossSectionSpectrum::finite(vec![SpectralDatum::new(p * p, c(1.0))])?;
        let values = ts.iter().map(|&t| scalar_cone_trace(&spec, &phi, t).map(|v| v.re)).collect::<Result<Vec<_>, _>>()?;
        let fit = fit_powers(&ts, &values, &basis)?;
        let report = heat_trace_expansion(&spec, &scalar_heat_inputs(&spec, &phi, 4)?)?;
        let predicted = [
            report.coefficient(c(-0.5), 0).re,
            report.coefficient(c(0.0), 0).re,
            report.coefficient(c(0.0), 1).re,
        ];
        // the log coefficient is predicted to vanish, so each coefficient is
        // judged against the largest predicted magnitude as well as its own
        let scale = predicted.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (j, &e) in predicted.iter().enumerate() {
            ok &= (fit.coefficients[j] - e).abs() <= 0.005 * e.abs().max(scale);
        }
        lines.push(format!(
            "p={p}: fit ({:.6}, {:.6}, {:.1e}) vs ({:.6}, {:.6}, {:.1e})",
            fit.coefficients[0], fit.coefficients[1], fit.coefficients[2], predicted[0], predicted[1], predicted[2]
        ));
    }
    Ok((ok, format!("{} (tol 0.5%)", lines.join("; "))))
}

fn clk_oracle(m: &ClkModuleData) -> Option<ClkResidue> {
    match m.k % 8 {
        1 => Some(ClkResidue::Mod2((m.e_plus_dim_real % 2) as u8)),
        2 if m.e_plus_dim_real % 2 == 0 => {
            let via_total = m.e_dim_real.map(|e| (e / 4) % 2);
            let via_plus = (m.e_plus_dim_real / 2) % 2;
            (via_total.unwrap_or(via_plus) == via_plus).then_some(ClkResidue::Mod2(via_plus as u8))
        }
        2 => None,
        0 | 4 => m.reduced_index.map(ClkResidue::Integer),
        _ => Some(ClkResidue::StructurallyZero),
    }
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut matched, mut identity) = (0, 0);
    for i in 0..100 {
        let g = random_graded(&mut rng)?;
        let d = deficiency_indices(&g);
        let (bp, bm) = deficiency_brute_force(&g, 1000 + i)?;
        matched += usize::from(d.n_plus == c(bp as f64) && d.n_minus == c(bm as f64));
        identity += usize::from(d.n_plus - d.n_minus == index_a_eps(&g));
    }
    let mut clk_ok = 0;
    for k in 0..20u32 {
        let e_plus = rng.random_range(0..13u64);
        let m = ClkModuleData {
            k,
            e_plus_dim_real: e_plus,
            e_dim_real: (k % 8 == 2).then_some(2 * e_plus),
            reduced_index: (k % 4 == 0).then(|| rng.random_range(-5..6)),
        };
        clk_ok += usize::from(clk_def_ind(&m).ok() == clk_oracle(&m));
    }
    Ok((
        matched == 100 && identity == 100 && clk_ok == 20,
        format!("brute force agrees on {matched}/100; index identity on {identity}/100; Cl_k cases {clk_ok}/20"),
    ))
}

fn criterion_12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut good = 0;
    for _ in 0..50 {
        let (np, nm): (i64, i64) = (rng.random_range(0..40), rng.random_range(0..40));
        let a_eq_i = dirac_schrodinger_index_exact(np + nm, np - nm, 0, Extension::Min) == Rational64::from_integer(-np);
        let s: i64 = rng.random_range(-40..41);
        let complete = [Extension::Min, Extension::Max]
            .iter()
            .all(|&e| dirac_schrodinger_index_exact(0, s, -s, e) == Rational64::from_integer(-s));
        let float = dirac_schrodinger_index(c((np + nm) as f64), c((np - nm) as f64), c(0.0), Extension::Min) == c(-np as f64);
        good += usize::from(a_eq_i && complete && float);
    }
    Ok((good == 50, format!("{good}/50 tuples satisfy both specializations exactly")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("regularized-integral closed forms", criterion_1),
        ("change of variables", criterion_2),
        ("Mellin functional equation and strip decay", criterion_3),
        ("singular asymptotics order", criterion_4),
        ("Hankel eigenrelation and involution", criterion_5),
        ("heat kernel closed form", criterion_6),
        ("zeta-hat closed form", criterion_7),
        ("Gamma-ratio asymptotics", criterion_8),
        ("eta-hat and zeta-hat residues", criterion_9),
        ("heat-trace constant and log terms", criterion_10),
        ("deficiency oracle equivalence", criterion_11),
        ("Dirac-Schroedinger consistency", criterion_12),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!pass);
        let secs = start.elapsed().as_secs_f64();
        println!("{} [{:2}] {name}: {detail} ({secs:.1}s)", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
