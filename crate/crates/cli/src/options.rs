use crate::error::CliError;
use crate::output::Format;
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "cone-spectra", version, about = "Spectral invariants of model-cone operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// ζ̂ of the Bessel operator L_p at s
    ZetaLp,
    /// ζ̂ of the cone operator over a cross-section spectrum, or its residues at 0
    ZetaOp,
    /// η̂ residues (or values) for a first-order cross-section spectrum
    Eta,
    /// Small-t heat-trace expansion of the scalar cone Laplacian
    HeatTrace,
    /// Deficiency indices of a graded cross-section spectrum
    Deficiency,
    /// Singular asymptotic expansion of ∫φ(tx)f(x)dx or ∫φ(x/t)f(x)dx
    SalExpand,
    /// Runs the invariant suite
    Verify,
}

/// Every flag, also accepted as a key of the `--config` JSON object.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// JSON file holding any of these options; flags win on conflict
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub p: Option<f64>,
    #[arg(long = "s-re", visible_alias = "s", global = true, allow_negative_numbers = true)]
    pub s_re: Option<f64>,
    #[arg(long = "s-im", global = true, allow_negative_numbers = true)]
    pub s_im: Option<f64>,
    #[arg(long, global = true)]
    pub t: Option<f64>,
    /// Input spectrum: a file path or inline JSON
    #[arg(long = "in", global = true)]
    #[serde(rename = "in")]
    pub input: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Truncation order (heat-trace: highest interior index; sal-expand: remainder order)
    #[arg(long, global = true)]
    pub order: Option<u32>,
    /// Requested relative accuracy, in [1e-12, 1e-4]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Grid over one variable: `p=a:b:n`, `s=a:b:n` or a comma list such as `p=0.5,1,2.5`
    #[arg(long, global = true)]
    pub grid: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Report residues at 0 instead of a value
    #[arg(long, global = true)]
    #[serde(default)]
    pub residues: bool,
    /// Interior contribution for the first-order index formula
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub interior: Option<f64>,
    /// Test function: gaussian, exponential or smooth-cutoff
    #[arg(long, global = true)]
    pub phi: Option<String>,
    /// Integrand f for sal-expand: exp-decay, rational-decay, tail-over-x or cutoff-over-x
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// sal-expand scaling: tx or x-over-t
    #[arg(long, global = true)]
    pub mode: Option<String>,
}

macro_rules! merge {
    ($dst:expr, $src:expr, $($field:ident),*) => {
        $( if $dst.$field.is_none() { $dst.$field = $src.$field.clone(); } )*
    };
}

impl Cli {
    pub fn resolve(self) -> Result<(Command, Options), CliError> {
        let mut opts = self.opts;
        if let Some(path) = &opts.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Schema(format!("cannot read config {}: {e}", path.display())))?;
            let cfg: Options =
                serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("config {}: {e}", path.display())))?;
            merge!(opts, cfg, p, s_re, s_im, t, input, out, format, order, tol, grid, seed, interior, phi, f, mode);
            opts.residues |= cfg.residues;
        }
        if let Some(tol) = opts.tol {
            if !(1e-12..=1e-4).contains(&tol) {
                return Err(CliError::Schema(format!("--tol {tol} outside [1e-12, 1e-4]")));
            }
        }
        Ok((self.command, opts))
    }
}

impl Options {
    pub fn input_json(&self) -> Result<serde_json::Value, CliError> {
        let raw = self.input.as_deref().ok_or_else(|| CliError::Schema("--in is required".into()))?;
        let text = if raw.trim_start().starts_with('{') {
            raw.to_string()
        } else {
            std::fs::read_to_string(raw).map_err(|e| CliError::Schema(format!("cannot read {raw}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("malformed JSON: {e}")))
    }

    pub fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Schema(format!("--{flag} is required")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridVar {
    P,
    S,
}

/// Parses `var=a:b:n` (n equally spaced points, ends included) or `var=x1,x2,…`.
pub fn parse_grid(spec: &str) -> Result<(GridVar, Vec<f64>), CliError> {
    let bad = |why: &str| CliError::Schema(format!("--grid {spec}: {why}"));
    let (var, rest) = spec.split_once('=').ok_or_else(|| bad("expected var=range"))?;
    let var = match var.trim() {
        "p" => GridVar::P,
        "s" | "s-re" => GridVar::S,
        other => return Err(bad(&format!("unknown variable {other}"))),
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad(&format!("not a number: {x}")));
    let values = if rest.contains(':') {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("range must be a:b:n"));
        }
        let (a, b) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|_| bad("point count must be an integer"))?;
        match n {
            0 => return Err(bad("point count must be positive")),
            1 => vec![a],
            _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
        }
    } else {
        rest.split(',').map(num).collect::<Result<_, _>>()?
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite"));
    }
    Ok((var, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("p=0:1:3").unwrap(), (GridVar::P, vec![0.0, 0.5, 1.0]));
        assert_eq!(parse_grid("s=1.5,2").unwrap(), (GridVar::S, vec![1.5, 2.0]));
        assert!(parse_grid("q=1").is_err());
        assert!(parse_grid("p=0:1").is_err());
    }
}
