//! Secret sharing with a family of maskers.
//!
//! Alice masks the message state `|(x₀,y₀)⟩` once per masker `S_{θₖ}^{αₖ}`
//! and hands qubit B of the k-th copy to Bob k. A single share only reveals
//! `ħₖ(x₀,y₀)`, i.e. a circle of candidates. Bobs who pool their shares
//! intersect their circles.

use crate::bloch::{
    intersect_circles_with, plane_line, AngleState, BlochPoint, CircleIntersection, PlaneLine, SphericalCircle,
};
use crate::error::{Error, Result};
use crate::linalg::{trace_out_a, CMat2};
use crate::masking::{build_masker, MaskerParams};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Scheme<T> {
    maskers: Vec<MaskerParams<T>>,
    label: String,
}

impl<T: Real> Scheme<T> {
    pub fn new(label: impl Into<String>, maskers: Vec<MaskerParams<T>>) -> Result<Self> {
        if maskers.is_empty() {
            return Err(Error::InvalidScheme("a scheme needs at least one masker".into()));
        }
        Ok(Self {
            maskers,
            label: label.into(),
        })
    }

    pub fn maskers(&self) -> &[MaskerParams<T>] {
        &self.maskers
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `{S_0^0, S_0^{π/2}, S_{π/2}^{π/2}}`: the three shares pin `Z`, `X`, `Y`.
    pub fn fig1_axes() -> Self {
        let h = T::FRAC_PI_2();
        let z = T::zero();
        Self::from_pairs("fig1_axes", &[(z, z), (h, z), (h, h)])
    }

    /// `{(α = kπ/n, θ = 0)}` for `k = 1..n−1`, `n ≥ 3`: every circle of the
    /// message `|0⟩` is tangent at the north pole.
    pub fn fig3_pole(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidScheme(format!("fig3_pole needs n ≥ 3, got {n}")));
        }
        let step = T::PI() / T::from_usize(n).unwrap();
        let pairs: Vec<_> = (1..n).map(|k| (step * T::from_usize(k).unwrap(), T::zero())).collect();
        Ok(Self::from_pairs(&format!("fig3_pole:{n}"), &pairs))
    }

    /// `{(α = π/2, θ = kπ/n)}` for `k = 0..n−1`, `n ≥ 4`: vertical circles
    /// that all share the message's vertical chord.
    pub fn fig2_vertical(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidScheme(format!("fig2_vertical needs n ≥ 4, got {n}")));
        }
        let step = T::PI() / T::from_usize(n).unwrap();
        let pairs: Vec<_> = (0..n)
            .map(|k| (T::FRAC_PI_2(), step * T::from_usize(k).unwrap()))
            .collect();
        Ok(Self::from_pairs(&format!("fig2_vertical:{n}"), &pairs))
    }

    /// `{(α = θ = kπ/n)}` for `k = 1..n−1`, `n ≥ 4`.
    ///
    /// For odd `n` any three shares decode. For even `n` the normals of
    /// maskers `k`, `n/2` and `n−k` are coplanar, so those triples leave two
    /// candidates; all other triples decode.
    pub fn general(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidScheme(format!("general needs n ≥ 4, got {n}")));
        }
        let step = T::PI() / T::from_usize(n).unwrap();
        let pairs: Vec<_> = (1..n)
            .map(|k| {
                let a = step * T::from_usize(k).unwrap();
                (a, a)
            })
            .collect();
        Ok(Self::from_pairs(&format!("general:{n}"), &pairs))
    }

    /// Parses `fig1_axes`, `fig3_pole:N`, `fig2_vertical:N` or `general:N`.
    pub fn preset(name: &str) -> Result<Self> {
        let (base, arg) = match name.split_once(':') {
            Some((b, a)) => (b, Some(a)),
            None => (name, None),
        };
        let count = |default: usize| -> Result<usize> {
            arg.map_or(Ok(default), |a| {
                a.parse()
                    .map_err(|_| Error::InvalidScheme(format!("bad scheme size '{a}'")))
            })
        };
        match base {
            "fig1_axes" if arg.is_none() => Ok(Self::fig1_axes()),
            "fig3_pole" => Self::fig3_pole(count(8)?),
            "fig2_vertical" => Self::fig2_vertical(count(8)?),
            "general" => Self::general(count(5)?),
            _ => Err(Error::InvalidScheme(format!("unknown preset scheme '{name}'"))),
        }
    }

    fn from_pairs(label: &str, pairs: &[(T, T)]) -> Self {
        let maskers = pairs
            .iter()
            .map(|&(a, t)| MaskerParams::new(a, t).expect("preset angles in range"))
            .collect();
        Self {
            maskers,
            label: label.to_string(),
        }
    }
}

/// Named presets with their default sizes.
pub fn preset_schemes<T: Real>() -> Vec<Scheme<T>> {
    vec![
        Scheme::fig1_axes(),
        Scheme::fig3_pole(8).expect("n ≥ 3"),
        Scheme::fig2_vertical(8).expect("n ≥ 4"),
        Scheme::general(5).expect("n ≥ 4"),
    ]
}

/// What one Bob holds: the public masker and his reduced state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Share<T> {
    masker: MaskerParams<T>,
    rho_b: CMat2<T>,
}

impl<T: Real> Share<T> {
    /// Validates the structure every honest share has:
    /// `ρ_B = ½I + (c/2)σ_x` with `|c| ≤ 1`.
    pub fn new(masker: MaskerParams<T>, rho_b: CMat2<T>, tol: T) -> Result<Self> {
        let share = Self { masker, rho_b };
        share.check(tol)?;
        Ok(share)
    }

    fn check(&self, tol: T) -> Result<()> {
        let r = &self.rho_b;
        let half = T::lit(0.5);
        if !r.is_finite() {
            return Err(Error::CorruptShare("rho_B has non-finite entries".into()));
        }
        if !r.is_hermitian(tol) {
            return Err(Error::CorruptShare("rho_B is not Hermitian".into()));
        }
        if (r.get(0, 0).re - half).abs() > tol || (r.get(1, 1).re - half).abs() > tol {
            return Err(Error::CorruptShare("rho_B diagonal entries must be 1/2".into()));
        }
        if r.get(0, 1).im.abs() > tol {
            return Err(Error::CorruptShare("rho_B off-diagonal must be real".into()));
        }
        if r.get(0, 1).re.abs() > half + tol {
            return Err(Error::CorruptShare("rho_B is not positive semidefinite".into()));
        }
        Ok(())
    }

    pub fn masker(&self) -> &MaskerParams<T> {
        &self.masker
    }

    pub fn rho_b(&self) -> &CMat2<T> {
        &self.rho_b
    }
}

/// Shares of `message` for every masker of the scheme, in scheme order.
pub fn encode<T: Real>(message: &AngleState<T>, scheme: &Scheme<T>) -> Vec<Share<T>> {
    scheme
        .maskers
        .iter()
        .map(|m| {
            let psi = build_masker(m).apply(message);
            Share {
                masker: *m,
                rho_b: trace_out_a(&psi),
            }
        })
        .collect()
}

/// Tolerance for share validation in [`share_constraint`].
pub fn share_tolerance<T: Real>() -> T {
    T::lit(1e-8).max(T::geometry_eps())
}

/// The circle of messages consistent with one share:
/// `ħ_{θₖ}^{αₖ} = 2 Re ρ_B[0][1]`.
pub fn share_constraint<T: Real>(share: &Share<T>) -> Result<SphericalCircle<T>> {
    share.check(share_tolerance())?;
    let c = (T::lit(2.0) * share.rho_b.get(0, 1).re).max(-T::one()).min(T::one());
    SphericalCircle::from_mask_angles(share.masker.alpha(), share.masker.theta(), c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecodeResult<T> {
    Unique(AngleState<T>),
    TwoCandidates(AngleState<T>, AngleState<T>),
    AmbiguousCircle(SphericalCircle<T>),
    Inconsistent,
}

impl<T: Real> DecodeResult<T> {
    pub fn name(&self) -> &'static str {
        match self {
            DecodeResult::Unique(_) => "Unique",
            DecodeResult::TwoCandidates(..) => "TwoCandidates",
            DecodeResult::AmbiguousCircle(_) => "AmbiguousCircle",
            DecodeResult::Inconsistent => "Inconsistent",
        }
    }

    pub fn candidates(&self) -> Vec<AngleState<T>> {
        match self {
            DecodeResult::Unique(s) => vec![*s],
            DecodeResult::TwoCandidates(a, b) => vec![*a, *b],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeOptions<T> {
    /// Plane residual allowed for a candidate point.
    pub candidate_tol: T,
    /// Tangency and parallel-plane threshold.
    pub geometry_eps: T,
}

impl<T: Real> Default for DecodeOptions<T> {
    fn default() -> Self {
        Self {
            candidate_tol: T::lit(1e-8).max(T::geometry_eps()),
            geometry_eps: T::geometry_eps(),
        }
    }
}

pub fn decode<T: Real>(shares: &[Share<T>]) -> Result<DecodeResult<T>> {
    decode_with(shares, &DecodeOptions::default())
}

// Candidate set during decoding. Two crossing circles leave the sphere points
// of their planes' common line; that line is kept exactly rather than as two
// rounded points, so a later transverse plane pins the message without
// inheriting the ill-conditioning of a near-tangent crossing.
enum Candidates<T> {
    Circle(SphericalCircle<T>),
    Line(PlaneLine<T>),
    Points(Vec<BlochPoint<T>>),
    Nothing,
}

/// Intersects the share circles one after another.
pub fn decode_with<T: Real>(shares: &[Share<T>], opts: &DecodeOptions<T>) -> Result<DecodeResult<T>> {
    let circles = shares.iter().map(share_constraint).collect::<Result<Vec<_>>>()?;
    let (first, rest) = circles
        .split_first()
        .ok_or_else(|| Error::InvalidInput("decode needs at least one share".into()))?;

    let mut state = Candidates::Circle(*first);
    for circle in rest {
        state = match state {
            Candidates::Circle(current) => match intersect_circles_with(&current, circle, opts.geometry_eps) {
                CircleIntersection::Coincident(_) => Candidates::Circle(current),
                CircleIntersection::Empty => Candidates::Nothing,
                CircleIntersection::OnePoint(p) => match plane_line(&current, circle, opts.geometry_eps) {
                    Some(line) if !current.is_point() && !circle.is_point() => Candidates::Line(line),
                    _ => Candidates::Points(vec![p]),
                },
                CircleIntersection::TwoPoints(..) => {
                    let line = plane_line(&current, circle, opts.geometry_eps)
                        .expect("crossing circles have non-parallel planes");
                    Candidates::Line(line)
                }
            },
            Candidates::Line(line) => cut_line(&line, circle, opts),
            Candidates::Points(points) => {
                let kept: Vec<_> = points
                    .into_iter()
                    .filter(|p| circle.contains(p, opts.candidate_tol))
                    .collect();
                if kept.is_empty() {
                    Candidates::Nothing
                } else {
                    Candidates::Points(kept)
                }
            }
            Candidates::Nothing => Candidates::Nothing,
        };
        if matches!(state, Candidates::Nothing) {
            break;
        }
    }

    let points = match state {
        Candidates::Circle(c) => return Ok(DecodeResult::AmbiguousCircle(c)),
        Candidates::Nothing => return Ok(DecodeResult::Inconsistent),
        Candidates::Line(line) => match line.sphere_points(opts.geometry_eps) {
            CircleIntersection::TwoPoints(a, b) => vec![a, b],
            CircleIntersection::OnePoint(p) => vec![p],
            _ => Vec::new(),
        },
        Candidates::Points(p) => p,
    };
    Ok(match points.as_slice() {
        [] => DecodeResult::Inconsistent,
        [p] => DecodeResult::Unique(p.to_angles()),
        [a, b] => DecodeResult::TwoCandidates(a.to_angles(), b.to_angles()),
        _ => unreachable!("at most two candidate points"),
    })
}

fn cut_line<T: Real>(line: &PlaneLine<T>, circle: &SphericalCircle<T>, opts: &DecodeOptions<T>) -> Candidates<T> {
    let n = circle.normal();
    let along = n.dot(&line.direction);
    let foot_residual = n.dot(&line.foot) - circle.offset();
    if along.abs() <= opts.geometry_eps {
        // Plane parallel to the line: either contains it or misses it.
        return if foot_residual.abs() <= opts.candidate_tol {
            Candidates::Line(*line)
        } else {
            Candidates::Nothing
        };
    }
    let t = -foot_residual / along;
    let q = line.foot + line.direction * t;
    if (q.norm() - T::one()).abs() <= opts.candidate_tol {
        Candidates::Points(vec![BlochPoint::project(q)])
    } else {
        Candidates::Nothing
    }
}
