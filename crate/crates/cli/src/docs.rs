//! JSON documents read and written by the CLI.
//!
//! Reals are written in shortest round-trip form, so every document reads
//! back bit for bit.

use std::path::Path;

use qmask::{AngleState, CMat2, Complex, GeneralLinearOp, MaskerParams, Scheme, Share, SphericalCircle};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub x: f64,
    pub y: f64,
}

impl StateDoc {
    pub fn to_state(self) -> Result<AngleState<f64>> {
        Ok(AngleState::new(self.x, self.y)?)
    }
}

impl From<&AngleState<f64>> for StateDoc {
    fn from(s: &AngleState<f64>) -> Self {
        Self { x: s.x(), y: s.y() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaskerDoc {
    pub alpha: f64,
    pub theta: f64,
}

impl MaskerDoc {
    pub fn to_params(self) -> Result<MaskerParams<f64>> {
        Ok(MaskerParams::new(self.alpha, self.theta)?)
    }
}

impl From<&MaskerParams<f64>> for MaskerDoc {
    fn from(m: &MaskerParams<f64>) -> Self {
        Self {
            alpha: m.alpha(),
            theta: m.theta(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexDoc> for Complex<f64> {
    fn from(z: ComplexDoc) -> Self {
        Complex::new(z.re, z.im)
    }
}

impl From<Complex<f64>> for ComplexDoc {
    fn from(z: Complex<f64>) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// `|0⟩ ↦ a₀|00⟩ + a₁|01⟩ + c₀|10⟩ + c₁|11⟩`, `|1⟩ ↦ b₀|00⟩ + b₁|01⟩ + d₀|10⟩ + d₁|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub a0: ComplexDoc,
    pub a1: ComplexDoc,
    pub b0: ComplexDoc,
    pub b1: ComplexDoc,
    pub c0: ComplexDoc,
    pub c1: ComplexDoc,
    pub d0: ComplexDoc,
    pub d1: ComplexDoc,
}

impl OperatorDoc {
    pub fn to_operator(self) -> Result<GeneralLinearOp<f64>> {
        let k = [self.a0, self.a1, self.b0, self.b1, self.c0, self.c1, self.d0, self.d1].map(Complex::from);
        Ok(GeneralLinearOp::from_coefficients(k)?)
    }
}

impl From<&GeneralLinearOp<f64>> for OperatorDoc {
    fn from(op: &GeneralLinearOp<f64>) -> Self {
        let [a0, a1, b0, b1, c0, c1, d0, d1] = op.coefficients().map(ComplexDoc::from);
        Self {
            a0,
            a1,
            b0,
            b1,
            c0,
            c1,
            d0,
            d1,
        }
    }
}

/// 2×2 complex matrix as rows of `[re, im]` pairs.
pub type MatrixDoc = [[[f64; 2]; 2]; 2];

pub fn matrix_doc(m: &CMat2<f64>) -> MatrixDoc {
    let e = |r, c| {
        let z = m.get(r, c);
        [z.re, z.im]
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn matrix_from_doc(d: &MatrixDoc) -> CMat2<f64> {
    let z = |r: usize, c: usize| Complex::new(d[r][c][0], d[r][c][1]);
    CMat2::new(z(0, 0), z(0, 1), z(1, 0), z(1, 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShareDoc {
    pub alpha: f64,
    pub theta: f64,
    pub rho_b: MatrixDoc,
}

impl ShareDoc {
    pub fn to_share(self) -> Result<Share<f64>> {
        let masker = MaskerParams::new(self.alpha, self.theta)?;
        Ok(Share::new(
            masker,
            matrix_from_doc(&self.rho_b),
            qmask::protocol::share_tolerance(),
        )?)
    }
}

impl From<&Share<f64>> for ShareDoc {
    fn from(s: &Share<f64>) -> Self {
        Self {
            alpha: s.masker().alpha(),
            theta: s.masker().theta(),
            rho_b: matrix_doc(s.rho_b()),
        }
    }
}

/// Plane `n·(X, Y, Z) = c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleDoc {
    pub n: [f64; 3],
    pub c: f64,
}

impl From<&SphericalCircle<f64>> for CircleDoc {
    fn from(c: &SphericalCircle<f64>) -> Self {
        Self {
            n: c.normal().to_array().map(|v| v + 0.0),
            c: c.offset(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDoc {
    #[serde(default)]
    pub label: Option<String>,
    pub maskers: Vec<MaskerDoc>,
}

impl SchemeDoc {
    pub fn to_scheme(&self) -> Result<Scheme<f64>> {
        let maskers = self.maskers.iter().map(|m| m.to_params()).collect::<Result<Vec<_>>>()?;
        Ok(Scheme::new(
            self.label.clone().unwrap_or_else(|| "custom".into()),
            maskers,
        )?)
    }
}

impl From<&Scheme<f64>> for SchemeDoc {
    fn from(s: &Scheme<f64>) -> Self {
        Self {
            label: Some(s.label().to_string()),
            maskers: s.maskers().iter().map(MaskerDoc::from).collect(),
        }
    }
}

pub fn read_doc<D: DeserializeOwned>(path: &Path) -> Result<D> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_doc(&text).map_err(|e| e.in_file(path))
}

/// serde_json messages already carry the field name and line/column.
pub fn parse_doc<D: DeserializeOwned>(text: &str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<D: Serialize>(doc: &D) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
