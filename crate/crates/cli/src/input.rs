//! Command-line values that are either inline numbers or document paths.

use std::path::Path;

use qmask::{AngleState, GeneralLinearOp, MaskerParams, Scheme};

use crate::docs::{read_doc, MaskerDoc, OperatorDoc, SchemeDoc, StateDoc};
use crate::error::{CliError, Result};

const DEFAULT_TOL: f64 = 1e-10;

/// Verification tolerance, overridable through `QMASK_TOL`.
pub fn verification_tol() -> Result<f64> {
    match std::env::var("QMASK_TOL") {
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(CliError::Input(format!(
                "QMASK_TOL must be a positive number, got '{v}'"
            ))),
        },
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn reject_degrees(arg: &str) -> Result<()> {
    let lower = arg.to_ascii_lowercase();
    if arg.contains('°') || lower.ends_with("deg") || lower.contains("deg,") {
        return Err(CliError::Input(format!("'{arg}': angles are radians only")));
    }
    Ok(())
}

/// Splits `"a,b"` (or `"a,b,c"`) into reals. `None` when the argument is
/// not an inline list, in which case it is taken as a path.
fn inline_reals(arg: &str, count: usize) -> Result<Option<Vec<f64>>> {
    reject_degrees(arg)?;
    if !arg.contains(',') || Path::new(arg).exists() {
        return Ok(None);
    }
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(CliError::Input(format!(
            "'{arg}': expected {count} comma-separated reals"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliError::Input(format!("'{arg}': '{p}' is not a real number")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

pub fn parse_state(arg: &str) -> Result<AngleState<f64>> {
    match inline_reals(arg, 2)? {
        Some(v) => StateDoc { x: v[0], y: v[1] }.to_state(),
        None => read_doc::<StateDoc>(Path::new(arg))?
            .to_state()
            .map_err(|e| e.in_file(Path::new(arg))),
    }
}

pub fn parse_masker(arg: &str) -> Result<MaskerParams<f64>> {
    match inline_reals(arg, 2)? {
        Some(v) => MaskerDoc {
            alpha: v[0],
            theta: v[1],
        }
        .to_params(),
        None => read_doc::<MaskerDoc>(Path::new(arg))?
            .to_params()
            .map_err(|e| e.in_file(Path::new(arg))),
    }
}

pub fn parse_operator(path: &Path) -> Result<GeneralLinearOp<f64>> {
    read_doc::<OperatorDoc>(path)?
        .to_operator()
        .map_err(|e| e.in_file(path))
}

/// A preset name (`fig1_axes`, `fig3_pole:N`, `fig2_vertical:N`,
/// `general:N`) or a scheme document.
pub fn parse_scheme(arg: &str) -> Result<Scheme<f64>> {
    let path = Path::new(arg);
    if path.exists() {
        return read_doc::<SchemeDoc>(path)?.to_scheme().map_err(|e| e.in_file(path));
    }
    Ok(Scheme::preset(arg)?)
}

/// `"x,y,delta"`.
pub fn parse_neighborhood(arg: &str) -> Result<qmask::Neighborhood<f64>> {
    let v = inline_reals(arg, 3)?.ok_or_else(|| CliError::Input(format!("'{arg}': expected x,y,delta")))?;
    if v[2].is_nan() || v[2] <= 0.0 {
        return Err(CliError::Input("neighborhood delta must be positive".into()));
    }
    Ok(qmask::Neighborhood {
        center: (v[0], v[1]),
        delta: v[2],
    })
}
