use crate::error::CliError;
use crate::options::{parse_grid, Command, GridVar, Options};
use cone_spectra::cone::{
    eta_function_scalable, eta_hat_residues, heat_trace_expansion, index_first_order, residues_at_zero, scalar_cone_trace,
    scalar_heat_inputs, zeta_hat_lp, zeta_hat_operator, CrossSectionSpectrum, FirstOrderSpectrum, Residues,
};
use cone_spectra::deficiency::{deficiency_indices, GradedSpectrum};
use cone_spectra::expansions::{catalog as fcat, ExpandableFunction};
use cone_spectra::sal::{catalog as phicat, expand_phi_tx, expand_phi_x_over_t, TestFunction, MAX_SAL_ORDER};
use cone_spectra::verify::run_suite;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

pub const THREADS_ENV: &str = "CONE_SPECTRA_THREADS";
const MAX_HEAT_ORDER: u32 = 12;

pub struct Outcome {
    pub value: Value,
    /// Reported after the artifact has been written.
    pub failure: Option<CliError>,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, failure: None }
    }
}

pub fn dispatch(command: Command, opts: &Options) -> Result<Outcome, CliError> {
    match command {
        Command::ZetaLp => zeta_lp(opts).map(Into::into),
        Command::ZetaOp => zeta_op(opts).map(Into::into),
        Command::Eta => eta(opts).map(Into::into),
        Command::HeatTrace => heat_trace(opts).map(Into::into),
        Command::Deficiency => deficiency(opts).map(Into::into),
        Command::SalExpand => sal_expand(opts).map(Into::into),
        Command::Verify => Ok(verify(opts)),
    }
}

/// Adding 0.0 folds −0.0 into 0.0 so signs of zero never differ in output.
fn complex(z: Complex64) -> Value {
    json!({"re": z.re + 0.0, "im": z.im + 0.0})
}

fn residues(r: &Residues) -> Value {
    json!({"res1": complex(r.res1), "res0": complex(r.res0)})
}

/// Evaluates `f` on every grid point in parallel; results keep input order.
fn on_grid<F>(values: &[f64], f: F) -> Result<Value, CliError>
where
    F: Fn(f64) -> Result<Value, CliError> + Sync,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Schema(format!("{THREADS_ENV}={raw} is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Other(e.to_string()))?;
    let rows = pool.install(|| values.par_iter().map(|&v| f(v)).collect::<Result<Vec<_>, _>>())?;
    Ok(Value::Array(rows))
}

/// Runs `f` at the single point from the flags, or across `--grid` over s.
fn over_s<F>(opts: &Options, f: F) -> Result<Value, CliError>
where
    F: Fn(Complex64) -> Result<Value, CliError> + Sync,
{
    let im = opts.s_im.unwrap_or(0.0);
    match &opts.grid {
        Some(g) => match parse_grid(g)? {
            (GridVar::S, values) => on_grid(&values, |re| f(Complex64::new(re, im))),
            (GridVar::P, _) => Err(CliError::Schema("this command only grids over s".into())),
        },
        None => f(Complex64::new(Options::require(opts.s_re, "s-re")?, im)),
    }
}

fn check_accuracy(value: Complex64, error: f64, tol: Option<f64>) -> Result<(), CliError> {
    match tol {
        Some(tol) if error > tol * value.norm().max(1.0) => Err(CliError::NonConvergence(format!(
            "estimated error {error:e} exceeds the requested tolerance {tol:e}"
        ))),
        _ => Ok(()),
    }
}

fn zeta_lp(opts: &Options) -> Result<Value, CliError> {
    let im = opts.s_im.unwrap_or(0.0);
    let point = |p: f64, re: f64| -> Result<Value, CliError> {
        let v = zeta_hat_lp(p, Complex64::new(re, im))?;
        Ok(json!({"p": p, "s_re": re, "s_im": im, "re": v.re, "im": v.im}))
    };
    match &opts.grid {
        Some(g) => match parse_grid(g)? {
            (GridVar::P, ps) => {
                let re = Options::require(opts.s_re, "s-re")?;
                on_grid(&ps, |p| point(p, re))
            }
            (GridVar::S, ss) => {
                let p = Options::require(opts.p, "p")?;
                on_grid(&ss, |re| point(p, re))
            }
        },
        None => point(Options::require(opts.p, "p")?, Options::require(opts.s_re, "s-re")?),
    }
}

fn zeta_op(opts: &Options) -> Result<Value, CliError> {
    let spec = CrossSectionSpectrum::from_json(&opts.input_json()?)?;
    if opts.residues {
        return Ok(residues(&residues_at_zero(&spec)?));
    }
    over_s(opts, |s| {
        let v = zeta_hat_operator(&spec, s)?;
        check_accuracy(v.value, v.error_estimate, opts.tol)?;
        Ok(json!({"s_re": s.re, "s_im": s.im, "re": v.value.re, "im": v.value.im, "error_estimate": v.error_estimate}))
    })
}

fn eta(opts: &Options) -> Result<Value, CliError> {
    let spec = FirstOrderSpectrum::from_json(&opts.input_json()?)?;
    if opts.s_re.is_some() || opts.grid.is_some() {
        return over_s(opts, |s| {
            let v = eta_function_scalable(&spec, s)?;
            Ok(json!({"s_re": s.re, "s_im": s.im, "re": v.re, "im": v.im}))
        });
    }
    let mut out = residues(&eta_hat_residues(&spec)?);
    if let Some(interior) = opts.interior {
        out["index"] = complex(index_first_order(&spec, interior)?);
    }
    Ok(out)
}

fn test_function(name: Option<&str>) -> Result<TestFunction, CliError> {
    match name.unwrap_or("smooth-cutoff") {
        "gaussian" => Ok(phicat::gaussian(16)),
        "exponential" => Ok(phicat::exponential(16)),
        "smooth-cutoff" => Ok(phicat::smooth_cutoff(16)),
        other => Err(CliError::Schema(format!("unknown test function {other}"))),
    }
}

fn integrand(name: Option<&str>) -> Result<ExpandableFunction, CliError> {
    match name.unwrap_or("exp-decay") {
        "exp-decay" => Ok(fcat::exp_decay(8)),
        "rational-decay" => Ok(fcat::rational_decay(8)),
        "tail-over-x" => Ok(fcat::tail_over_x()),
        "cutoff-over-x" => Ok(fcat::cutoff_over_x()),
        other => Err(CliError::Schema(format!("unknown integrand {other}"))),
    }
}

fn heat_trace(opts: &Options) -> Result<Value, CliError> {
    let spec = CrossSectionSpectrum::from_json(&opts.input_json()?)?;
    let phi = test_function(opts.phi.as_deref())?;
    let order = opts.order.unwrap_or(4);
    if order < 1 || order > MAX_HEAT_ORDER {
        return Err(CliError::Schema(format!("--order {order} outside [1, {MAX_HEAT_ORDER}]")));
    }
    let inputs = scalar_heat_inputs(&spec, &phi, order as usize)?;
    let report = heat_trace_expansion(&spec, &inputs)?;
    let mut out = report.to_json();
    if let Some(t) = opts.t {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Schema(format!("--t {t} must be positive")));
        }
        out["t"] = json!(t);
        out["expansion"] = complex(report.evaluate(t));
        out["trace"] = complex(scalar_cone_trace(&spec, &phi, t)?);
    }
    Ok(out)
}

/// Integral values print as integers, others as reals or {re, im}.
fn count(z: Complex64) -> Value {
    if z.im != 0.0 {
        complex(z)
    } else if z.re.fract() == 0.0 && z.re.abs() < 1e15 {
        json!(z.re as i64)
    } else {
        json!(z.re)
    }
}

fn deficiency(opts: &Options) -> Result<Value, CliError> {
    let g = GradedSpectrum::from_json(&opts.input_json()?)?;
    let d = deficiency_indices(&g);
    if g.fredholm && d.n_plus != d.n_minus {
        return Err(CliError::Schema(format!(
            "input is declared Fredholm but n_+ = {} differs from n_- = {}",
            d.n_plus, d.n_minus
        )));
    }
    let mut out = json!({"n_plus": count(d.n_plus), "n_minus": count(d.n_minus)});
    if !d.warnings.is_empty() {
        out["warnings"] = json!(d.warnings);
    }
    Ok(out)
}

fn sal_expand(opts: &Options) -> Result<Value, CliError> {
    let phi = test_function(opts.phi.as_deref())?;
    let f = integrand(opts.f.as_deref())?;
    let q = opts.order.unwrap_or(4);
    if q as usize > MAX_SAL_ORDER {
        return Err(CliError::Schema(format!("--order {q} exceeds {MAX_SAL_ORDER}")));
    }
    let report = match opts.mode.as_deref().unwrap_or("tx") {
        "tx" => expand_phi_tx(&phi, &f, q as f64)?,
        "x-over-t" => expand_phi_x_over_t(&phi, &f, q as f64)?,
        other => return Err(CliError::Schema(format!("unknown mode {other}"))),
    };
    Ok(report.to_json())
}

fn verify(opts: &Options) -> Outcome {
    let checks = run_suite(opts.seed.unwrap_or(0));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let failure = (!failed.is_empty()).then(|| CliError::Mismatch(format!("failed checks: {}", failed.join("; "))));
    let value = json!(checks
        .iter()
        .map(|c| json!({"name": c.name, "residual": c.residual, "tolerance": c.tolerance, "passed": c.passed}))
        .collect::<Vec<_>>());
    Outcome { value, failure }
}
