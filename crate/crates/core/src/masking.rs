//! The `S_θ^α` masker family and its maskable circles.
//!
//! `S_θ^α` sends `|0⟩ ↦ |0⟩|u₀⟩ + |1⟩|u₁⟩` and `|1⟩ ↦ |0⟩|v₀⟩ + |1⟩|v₁⟩`.
//! For an input `|(x,y)⟩` both reduced states depend on the input only through
//!
//! ```text
//! ħ_θ^α(x, y) = cos α cos x − sin α sin x cos(y − θ)
//! ```
//!
//! so every level set of `ħ_θ^α` (a spherical circle) is masked:
//! `ρ_A = diag(½ + ħ/2, ½ − ħ/2)` and `ρ_B = ½I + (ħ/2)σ_x`.

use crate::bloch::{
    angles_to_bloch, angles_to_state, canonical_mask_params, circle_from_mask_params, circle_through_three, AngleState,
    SphericalCircle,
};
use crate::error::{Error, Result};
use crate::linalg::{trace_out_a, trace_out_b, CMat2, CVec2, CVec4, Complex};
use crate::scalar::Real;

/// Masker angles: `α ∈ [0, π)`, `θ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskerParams<T> {
    alpha: T,
    theta: T,
}

impl<T: Real> MaskerParams<T> {
    pub fn new(alpha: T, theta: T) -> Result<Self> {
        if !(alpha.is_finite() && theta.is_finite()) {
            return Err(Error::InvalidInput("masker angles must be finite".into()));
        }
        if alpha < T::zero() || alpha >= T::PI() {
            return Err(Error::InvalidInput(format!("alpha = {alpha} outside [0, π)")));
        }
        if theta < T::zero() || theta >= T::TAU() {
            return Err(Error::InvalidInput(format!("theta = {theta} outside [0, 2π)")));
        }
        Ok(Self { alpha, theta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn theta(&self) -> T {
        self.theta
    }
}

/// A 4×2 isometry: the images of `|0⟩` and `|1⟩` in the two-qubit space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry42<T> {
    col0: CVec4<T>,
    col1: CVec4<T>,
}

impl<T: Real> Isometry42<T> {
    /// Checks orthonormality of the columns at `consistency_eps`.
    pub fn from_columns(col0: CVec4<T>, col1: CVec4<T>) -> Result<Self> {
        let iso = Self { col0, col1 };
        let defect = iso.isometry_defect();
        if defect.is_nan() || defect > T::consistency_eps() {
            return Err(Error::InvalidInput(format!(
                "columns are not orthonormal (‖S†S − I‖ = {defect})"
            )));
        }
        Ok(iso)
    }

    pub fn col0(&self) -> &CVec4<T> {
        &self.col0
    }

    pub fn col1(&self) -> &CVec4<T> {
        &self.col1
    }

    /// `S†S`.
    pub fn gram(&self) -> CMat2<T> {
        CMat2::new(
            self.col0.inner(&self.col0),
            self.col0.inner(&self.col1),
            self.col1.inner(&self.col0),
            self.col1.inner(&self.col1),
        )
    }

    /// Largest entry of `|S†S − I|`.
    pub fn isometry_defect(&self) -> T {
        let d = self.gram() - CMat2::identity();
        d.m.iter().flatten().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// `cos(x/2)·col0 + e^{iy} sin(x/2)·col1`.
    pub fn apply(&self, s: &AngleState<T>) -> CVec4<T> {
        let p = angles_to_state(s);
        self.col0.scale(p.e0) + self.col1.scale(p.e1)
    }
}

/// `ħ_θ^α(x, y) = cos α cos x − sin α sin x cos(y − θ)`.
pub fn hbar<T: Real>(params: &MaskerParams<T>, s: &AngleState<T>) -> T {
    let (sa, ca) = params.alpha.sin_cos();
    let (sx, cx) = s.x().sin_cos();
    let v = ca * cx - sa * sx * (s.y() - params.theta).cos();
    v.max(-T::one()).min(T::one())
}

/// Builds `S_θ^α` as its two image columns.
pub fn build_masker<T: Real>(params: &MaskerParams<T>) -> Isometry42<T> {
    let half = T::lit(0.5);
    let amp = T::SQRT_2() * half;
    let (sh, ch) = (params.alpha * half).sin_cos();
    let quarter = T::FRAC_PI_4();
    let plus = |k: Complex<T>| CVec2::new(k, k);
    let minus = |k: Complex<T>| CVec2::new(k, -k);

    let u0 = plus(Complex::from_polar(amp * ch, params.theta + quarter));
    let u1 = minus(Complex::from_polar(amp * sh, params.theta - quarter));
    let v0 = plus(Complex::from_polar(-amp * sh, quarter));
    let v1 = minus(Complex::from_polar(amp * ch, -quarter));

    Isometry42 {
        col0: CVec4::from_blocks(u0, u1),
        col1: CVec4::from_blocks(v0, v1),
    }
}

pub fn apply_masker<T: Real>(iso: &Isometry42<T>, s: &AngleState<T>) -> CVec4<T> {
    iso.apply(s)
}

/// Closed-form `(ρ_A, ρ_B)` of `S_θ^α|(x,y)⟩`.
pub fn predicted_reduced<T: Real>(params: &MaskerParams<T>, s: &AngleState<T>) -> (CMat2<T>, CMat2<T>) {
    reduced_from_hbar(hbar(params, s))
}

pub(crate) fn reduced_from_hbar<T: Real>(h: T) -> (CMat2<T>, CMat2<T>) {
    let half = T::lit(0.5);
    let rho_a = CMat2::diag(half + half * h, half - half * h);
    let rho_b = CMat2::from_real(half, half * h, half * h, half);
    (rho_a, rho_b)
}

/// The maskable set `D_θ^α(anchor)`: all states sharing the anchor's `ħ` value.
pub fn maskable_circle<T: Real>(params: &MaskerParams<T>, anchor: &AngleState<T>) -> SphericalCircle<T> {
    circle_from_mask_params(params.alpha, params.theta, hbar(params, anchor)).expect("|ħ| ≤ 1 always yields a circle")
}

/// Outcome of comparing the marginals of a masker's outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskReport<T> {
    pub ok: bool,
    pub max_deviation_a: T,
    pub max_deviation_b: T,
    /// First pair `(reference, offender)` whose marginals differ beyond tolerance.
    pub witness: Option<(AngleState<T>, AngleState<T>)>,
}

/// Checks that every state's two marginals equal those of the first state
/// within Frobenius tolerance `tol`.
pub fn verify_mask<T: Real>(iso: &Isometry42<T>, states: &[AngleState<T>], tol: T) -> Result<MaskReport<T>> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| Error::InvalidInput("verify_mask needs at least one state".into()))?;
    let reduced = |s: &AngleState<T>| {
        let psi = iso.apply(s);
        (trace_out_b(&psi), trace_out_a(&psi))
    };
    let (ref_a, ref_b) = reduced(first);
    let mut report = MaskReport {
        ok: true,
        max_deviation_a: T::zero(),
        max_deviation_b: T::zero(),
        witness: None,
    };
    for s in rest {
        let (ra, rb) = reduced(s);
        let da = (ra - ref_a).frobenius();
        let db = (rb - ref_b).frobenius();
        report.max_deviation_a = report.max_deviation_a.max(da);
        report.max_deviation_b = report.max_deviation_b.max(db);
        if (da > tol || db > tol) && report.witness.is_none() {
            report.ok = false;
            report.witness = Some((*first, *s));
        }
    }
    Ok(report)
}

/// A masker whose maskable circle passes through all three states, together
/// with the common `ħ` value of the circle.
pub fn masker_for_states<T: Real>(
    s1: &AngleState<T>,
    s2: &AngleState<T>,
    s3: &AngleState<T>,
) -> Result<(MaskerParams<T>, T)> {
    let circle = circle_through_three(&angles_to_bloch(s1), &angles_to_bloch(s2), &angles_to_bloch(s3))?;
    let (alpha, theta, cval) = canonical_mask_params(&circle);
    Ok((MaskerParams::new(alpha, theta)?, cval))
}
