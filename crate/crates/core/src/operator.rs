//! Maskable sets of arbitrary linear maps `ℂ² → ℂ²⊗ℂ²`.
//!
//! A map is written through its four qubit-B blocks:
//! `|0⟩ ↦ |0⟩|μ₀⟩ + |1⟩|μ₁⟩`, `|1⟩ ↦ |0⟩|ν₀⟩ + |1⟩|ν₁⟩`, with
//! `μ₀ = (a₀, a₁)`, `μ₁ = (c₀, c₁)`, `ν₀ = (b₀, b₁)`, `ν₁ = (d₀, d₁)`.
//!
//! Each real entry function of the (unnormalized) reduced states is affine in
//! the Bloch vector of the input, so the set of inputs sharing both reduced
//! states with an anchor is the sphere cut by a stack of planes through the
//! anchor. Its rank decides between a circle, two points and a single point.

use crate::bloch::{AngleState, BlochPoint, SphericalCircle, Vec3};
use crate::error::{Error, Result};
use crate::linalg::{svd_three_columns, trace_out_a, trace_out_b, CMat2, CVec2, CVec4, Complex};
use crate::masking::Isometry42;
use crate::scalar::Real;

/// A nonzero linear map from one qubit into two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralLinearOp<T> {
    mu0: CVec2<T>,
    mu1: CVec2<T>,
    nu0: CVec2<T>,
    nu1: CVec2<T>,
}

impl<T: Real> GeneralLinearOp<T> {
    /// Coefficients in the order `[a0, a1, b0, b1, c0, c1, d0, d1]`.
    pub fn from_coefficients(k: [Complex<T>; 8]) -> Result<Self> {
        let [a0, a1, b0, b1, c0, c1, d0, d1] = k;
        Self::from_blocks(
            CVec2::new(a0, a1),
            CVec2::new(c0, c1),
            CVec2::new(b0, b1),
            CVec2::new(d0, d1),
        )
    }

    pub fn from_blocks(mu0: CVec2<T>, mu1: CVec2<T>, nu0: CVec2<T>, nu1: CVec2<T>) -> Result<Self> {
        let op = Self { mu0, mu1, nu0, nu1 };
        if ![mu0, mu1, nu0, nu1].iter().all(CVec2::is_finite) {
            return Err(Error::InvalidInput("operator coefficients must be finite".into()));
        }
        if op.scale() == T::zero() {
            return Err(Error::InvalidInput("operator must be nonzero".into()));
        }
        Ok(op)
    }

    /// Images of `|0⟩` and `|1⟩` as columns.
    pub fn from_columns(col0: &CVec4<T>, col1: &CVec4<T>) -> Result<Self> {
        Self::from_blocks(col0.block(0), col0.block(1), col1.block(0), col1.block(1))
    }

    pub fn from_isometry(iso: &Isometry42<T>) -> Self {
        Self::from_columns(iso.col0(), iso.col1()).expect("isometries are nonzero")
    }

    /// `[a0, a1, b0, b1, c0, c1, d0, d1]`.
    pub fn coefficients(&self) -> [Complex<T>; 8] {
        [
            self.mu0.e0,
            self.mu0.e1,
            self.nu0.e0,
            self.nu0.e1,
            self.mu1.e0,
            self.mu1.e1,
            self.nu1.e0,
            self.nu1.e1,
        ]
    }

    pub fn mu0(&self) -> &CVec2<T> {
        &self.mu0
    }
    pub fn mu1(&self) -> &CVec2<T> {
        &self.mu1
    }
    pub fn nu0(&self) -> &CVec2<T> {
        &self.nu0
    }
    pub fn nu1(&self) -> &CVec2<T> {
        &self.nu1
    }

    pub fn col0(&self) -> CVec4<T> {
        CVec4::from_blocks(self.mu0, self.mu1)
    }

    pub fn col1(&self) -> CVec4<T> {
        CVec4::from_blocks(self.nu0, self.nu1)
    }

    /// Squared Frobenius norm `Σ|coefficient|²`; 2 for an isometry.
    pub fn scale(&self) -> T {
        self.mu0.norm_sqr() + self.mu1.norm_sqr() + self.nu0.norm_sqr() + self.nu1.norm_sqr()
    }

    /// `cos(x/2)|Ψ₀⟩ + e^{iy} sin(x/2)|Ψ₁⟩`.
    pub fn apply(&self, s: &AngleState<T>) -> CVec4<T> {
        let p = s.to_state();
        self.apply_vec(&p)
    }

    pub fn apply_vec(&self, p: &CVec2<T>) -> CVec4<T> {
        self.col0().scale(p.e0) + self.col1().scale(p.e1)
    }
}

/// Unnormalized `(Tr_B|Φ⟩⟨Φ|, Tr_A|Φ⟩⟨Φ|)` for `|Φ⟩ = op|(x,y)⟩`.
pub fn reduced_pair_raw<T: Real>(op: &GeneralLinearOp<T>, s: &AngleState<T>) -> (CMat2<T>, CMat2<T>) {
    let psi = op.apply(s);
    (trace_out_b(&psi), trace_out_a(&psi))
}

/// Which real-valued reduced-state entry a constraint describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryFunction {
    ReA00,
    ReA11,
    ReA01,
    ImA01,
    ReB00,
    ReB11,
    ReB01,
    ImB01,
}

impl EntryFunction {
    pub const ALL: [EntryFunction; 8] = [
        EntryFunction::ReA00,
        EntryFunction::ReA11,
        EntryFunction::ReA01,
        EntryFunction::ImA01,
        EntryFunction::ReB00,
        EntryFunction::ReB11,
        EntryFunction::ReB01,
        EntryFunction::ImB01,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EntryFunction::ReA00 => "Re rho_A[0][0]",
            EntryFunction::ReA11 => "Re rho_A[1][1]",
            EntryFunction::ReA01 => "Re rho_A[0][1]",
            EntryFunction::ImA01 => "Im rho_A[0][1]",
            EntryFunction::ReB00 => "Re rho_B[0][0]",
            EntryFunction::ReB11 => "Re rho_B[1][1]",
            EntryFunction::ReB01 => "Re rho_B[0][1]",
            EntryFunction::ImB01 => "Im rho_B[0][1]",
        }
    }

    pub fn read<T: Real>(&self, pair: &(CMat2<T>, CMat2<T>)) -> T {
        let (a, b) = pair;
        match self {
            EntryFunction::ReA00 => a.get(0, 0).re,
            EntryFunction::ReA11 => a.get(1, 1).re,
            EntryFunction::ReA01 => a.get(0, 1).re,
            EntryFunction::ImA01 => a.get(0, 1).im,
            EntryFunction::ReB00 => b.get(0, 0).re,
            EntryFunction::ReB11 => b.get(1, 1).re,
            EntryFunction::ReB01 => b.get(0, 1).re,
            EntryFunction::ImB01 => b.get(0, 1).im,
        }
    }
}

/// `entry(p) = normal·(X, Y, Z) + offset` on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineConstraint<T> {
    pub entry: EntryFunction,
    pub normal: Vec3<T>,
    pub offset: T,
}

impl<T: Real> AffineConstraint<T> {
    pub fn evaluate(&self, p: &BlochPoint<T>) -> T {
        self.normal.dot(&p.vec()) + self.offset
    }
}

// Fit points: north, south, +X, +Y, and the check point −Y.
fn fit_states<T: Real>() -> [AngleState<T>; 5] {
    let h = T::FRAC_PI_2();
    let st = |x, y| AngleState::new(x, y).expect("fit points are valid angles");
    [
        st(T::zero(), T::zero()),
        st(T::PI(), T::zero()),
        st(h, T::zero()),
        st(h, h),
        st(h, T::lit(3.0) * h),
    ]
}

/// Affine Bloch-coordinate forms of the eight real reduced-state entries,
/// fitted from four sphere points and cross-checked at a fifth.
pub fn extract_constraints<T: Real>(op: &GeneralLinearOp<T>) -> Result<[AffineConstraint<T>; 8]> {
    let [north, south, px, py, my] = fit_states::<T>().map(|s| reduced_pair_raw(op, &s));
    let half = T::lit(0.5);
    let tol = T::match_eps() * op.scale().max(T::one());
    let mut out = Vec::with_capacity(8);
    for entry in EntryFunction::ALL {
        let (gn, gs, gx, gy, gm) = (
            entry.read(&north),
            entry.read(&south),
            entry.read(&px),
            entry.read(&py),
            entry.read(&my),
        );
        let nz = (gn - gs) * half;
        let r = (gn + gs) * half;
        let c = AffineConstraint {
            entry,
            normal: Vec3::new(gx - r, gy - r, nz),
            offset: r,
        };
        let predicted = r - c.normal.y;
        let residual = (predicted - gm).abs();
        if residual.is_nan() || residual > tol {
            return Err(Error::InternalConsistency(format!(
                "{} is not affine on the sphere (residual {residual})",
                entry.name()
            )));
        }
        out.push(c);
    }
    Ok(out.try_into().expect("eight constraints"))
}

/// Closed-form complex coefficients `(p₀₁, q₀₁, h₀₁, r₀₁)` of
/// `ρ_A[0][1] = p·Z + q·X + h·Y + r`:
///
/// ```text
/// p = (⟨μ₁|μ₀⟩ − ⟨ν₁|ν₀⟩)/2,   q = (⟨ν₁|μ₀⟩ + ⟨μ₁|ν₀⟩)/2,
/// h = i(⟨μ₁|ν₀⟩ − ⟨ν₁|μ₀⟩)/2,  r = (⟨μ₁|μ₀⟩ + ⟨ν₁|ν₀⟩)/2.
/// ```
pub fn f01_coefficients<T: Real>(op: &GeneralLinearOp<T>) -> [Complex<T>; 4] {
    let half = T::lit(0.5);
    let m10 = op.mu1.inner(&op.mu0);
    let n10 = op.nu1.inner(&op.nu0);
    let n1m0 = op.nu1.inner(&op.mu0);
    let m1n0 = op.mu1.inner(&op.nu0);
    let i = Complex::new(T::zero(), T::one());
    [
        (m10 - n10).scale(half),
        (n1m0 + m1n0).scale(half),
        i * (m1n0 - n1m0).scale(half),
        (m10 + n10).scale(half),
    ]
}

/// Shape of a maximal maskable set `Ω_U(anchor)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaskableClass<T> {
    SinglePoint(BlochPoint<T>),
    PointPair(BlochPoint<T>, BlochPoint<T>),
    Circle(SphericalCircle<T>),
    FullSphere,
}

impl<T: Real> MaskableClass<T> {
    pub fn name(&self) -> &'static str {
        match self {
            MaskableClass::SinglePoint(_) => "SinglePoint",
            MaskableClass::PointPair(..) => "PointPair",
            MaskableClass::Circle(_) => "Circle",
            MaskableClass::FullSphere => "FullSphere",
        }
    }

    /// Euclidean distance from `p` to the set.
    pub fn distance_to(&self, p: &BlochPoint<T>) -> T {
        match self {
            MaskableClass::SinglePoint(q) => q.distance(p),
            MaskableClass::PointPair(a, b) => a.distance(p).min(b.distance(p)),
            MaskableClass::Circle(c) => c.distance_to(p),
            MaskableClass::FullSphere => T::zero(),
        }
    }

    pub fn contains(&self, p: &BlochPoint<T>, tol: T) -> bool {
        self.distance_to(p) <= tol
    }
}

/// Rank of the stacked constraint normals after row normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintRank<T> {
    pub rank: usize,
    pub singular_values: [T; 3],
    /// Right singular vectors, ordered like `singular_values`.
    pub directions: [Vec3<T>; 3],
}

/// Row-normalizes the nonzero constraint normals and computes the rank of
/// the resulting matrix.
pub fn constraint_rank<T: Real>(normals: &[Vec3<T>], zero_row: T) -> ConstraintRank<T> {
    let rows: Vec<[T; 3]> = normals
        .iter()
        .filter(|n| n.norm() > zero_row)
        .map(|n| (*n * n.norm().recip()).to_array())
        .collect();
    if rows.is_empty() {
        return ConstraintRank {
            rank: 0,
            singular_values: [T::zero(); 3],
            directions: [
                Vec3::new(T::one(), T::zero(), T::zero()),
                Vec3::new(T::zero(), T::one(), T::zero()),
                Vec3::new(T::zero(), T::zero(), T::one()),
            ],
        };
    }
    let (sigma, v) = svd_three_columns(&rows);
    let rank = sigma.iter().filter(|s| **s > T::geometry_eps()).count();
    ConstraintRank {
        rank,
        singular_values: sigma,
        directions: v.map(Vec3::from_array),
    }
}

/// Classifies the anchored solution set of planes `nᵢ·(p − p₀) = 0` on the sphere.
pub fn classify_anchored<T: Real>(rank: &ConstraintRank<T>, anchor: &BlochPoint<T>) -> Result<MaskableClass<T>> {
    let p0 = anchor.vec();
    match rank.rank {
        0 => Err(Error::InvariantViolation(
            "maskable set is the full sphere, which no nonzero linear map allows".into(),
        )),
        1 => {
            let n = rank.directions[0];
            let circle = SphericalCircle::new(n, n.dot(&p0))?;
            if circle.is_point() {
                Ok(MaskableClass::SinglePoint(*anchor))
            } else {
                Ok(MaskableClass::Circle(circle))
            }
        }
        2 => {
            // Line through the anchor along the null direction; its second
            // sphere crossing sits at t = −2 p₀·d.
            let d = rank.directions[2];
            let t = -T::lit(2.0) * p0.dot(&d);
            if t.abs() <= T::geometry_eps() {
                Ok(MaskableClass::SinglePoint(*anchor))
            } else {
                let other = BlochPoint::project(p0 + d * t);
                Ok(MaskableClass::PointPair(*anchor, other))
            }
        }
        _ => Ok(MaskableClass::SinglePoint(*anchor)),
    }
}

/// The largest set `Ω_U(anchor)` of inputs whose raw reduced states both equal
/// the anchor's.
pub fn maskable_set<T: Real>(op: &GeneralLinearOp<T>, anchor: &AngleState<T>) -> Result<MaskableClass<T>> {
    let constraints = extract_constraints(op)?;
    let normals = constraints.map(|c| c.normal);
    let zero_row = T::geometry_eps() * op.scale();
    let rank = constraint_rank(&normals, zero_row);
    classify_anchored(&rank, &anchor.to_bloch())
}

/// Diagnosis of the degenerate "product form" in which the output factors as
/// `(|0⟩ + λ|1⟩) ⊗ (input-dependent vector)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductFormReport<T> {
    /// `max |⟨ν₀|μ₀⟩|, |⟨ν₁|μ₁⟩|, |⟨ν₁|μ₀⟩|, |⟨ν₀|μ₁⟩|`.
    pub orthogonality_residual: T,
    /// `max |⟨μ₁|μ₀⟩ − ⟨ν₁|ν₀⟩|, |‖μᵢ‖² − ‖νᵢ‖²|`.
    pub norm_residual: T,
    /// Orthogonality holds and `μ₁ = λμ₀`, `ν₁ = λν₀` for a common `λ`.
    pub is_product_form: bool,
    pub lambda: Option<Complex<T>>,
}

pub fn product_form_diagnosis<T: Real>(op: &GeneralLinearOp<T>) -> ProductFormReport<T> {
    let (m0, m1, n0, n1) = (&op.mu0, &op.mu1, &op.nu0, &op.nu1);
    let orthogonality_residual = [n0.inner(m0), n1.inner(m1), n1.inner(m0), n0.inner(m1)]
        .iter()
        .fold(T::zero(), |acc, z| acc.max(z.norm()));
    let norm_residual = (m1.inner(m0) - n1.inner(n0))
        .norm()
        .max((m0.norm_sqr() - n0.norm_sqr()).abs())
        .max((m1.norm_sqr() - n1.norm_sqr()).abs());

    let tol = T::match_eps() * op.scale().max(T::one());
    let lambda = if orthogonality_residual <= tol {
        common_ratio(m0, m1, n0, n1, tol)
    } else {
        None
    };
    ProductFormReport {
        orthogonality_residual,
        norm_residual,
        is_product_form: lambda.is_some(),
        lambda,
    }
}

/// `λ` with `μ₁ = λμ₀` and `ν₁ = λν₀`, if one exists.
fn common_ratio<T: Real>(m0: &CVec2<T>, m1: &CVec2<T>, n0: &CVec2<T>, n1: &CVec2<T>, tol: T) -> Option<Complex<T>> {
    let base = if m0.norm_sqr() >= n0.norm_sqr() {
        (m0, m1)
    } else {
        (n0, n1)
    };
    let denom = base.0.norm_sqr();
    if denom <= tol * tol {
        return None;
    }
    let lambda = base.0.inner(base.1).unscale(denom);
    let fits = (*m1 - m0.scale(lambda)).norm() <= tol && (*n1 - n0.scale(lambda)).norm() <= tol;
    fits.then_some(lambda)
}
