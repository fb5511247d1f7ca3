//! Bloch-sphere parametrization and spherical-circle geometry.
//!
//! A pure qubit `cos(x/2)|0⟩ + e^{iy} sin(x/2)|1⟩` is the point
//! `(sin x cos y, sin x sin y, cos x)` on the unit sphere. A spherical circle
//! is the intersection of the plane `n·p = c` with that sphere.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{CVec2, Complex};
use crate::scalar::{wrap_two_pi, Real};

/// A plain 3-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sqr(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Unit vector in the same direction; `None` for (near-)zero input.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n > T::min_positive_value() && n.is_finite() {
            Some(*self * n.recip())
        } else {
            None
        }
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Pure qubit state in Bloch angles: `x ∈ [0, π]`, `y ∈ [0, 2π)`.
///
/// The poles are stored with `y = 0`, so `|(0,0)⟩ = |0⟩` and `|(π,0)⟩ = |1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleState<T> {
    x: T,
    y: T,
}

impl<T: Real> AngleState<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidInput("state angles must be finite".into()));
        }
        if x < T::zero() || x > T::PI() {
            return Err(Error::InvalidInput(format!("polar angle x = {x} outside [0, π]")));
        }
        if y < T::zero() || y >= T::TAU() {
            return Err(Error::InvalidInput(format!("azimuth y = {y} outside [0, 2π)")));
        }
        Ok(Self::canonical(x, y))
    }

    /// Accepts any finite azimuth and reduces it into `[0, 2π)`.
    pub fn wrapped(x: T, y: T) -> Result<Self> {
        if !y.is_finite() {
            return Err(Error::InvalidInput("state angles must be finite".into()));
        }
        Self::new(x, wrap_two_pi(y))
    }

    fn canonical(x: T, y: T) -> Self {
        if x == T::zero() || x == T::PI() {
            Self { x, y: T::zero() }
        } else {
            Self { x, y }
        }
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn to_bloch(&self) -> BlochPoint<T> {
        angles_to_bloch(self)
    }

    pub fn to_state(&self) -> CVec2<T> {
        angles_to_state(self)
    }
}

/// A point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint<T> {
    v: Vec3<T>,
}

impl<T: Real> BlochPoint<T> {
    /// Accepts vectors with `| |p| − 1 | ≤ geometry_eps` and renormalizes them.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(v: Vec3<T>) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::InvalidInput("Bloch vector must be finite".into()));
        }
        let n = v.norm();
        if (n - T::one()).abs() > T::geometry_eps() {
            return Err(Error::InvalidInput(format!(
                "Bloch vector has norm {n}, expected a unit vector"
            )));
        }
        Ok(Self { v: v * n.recip() })
    }

    /// Projects any nonzero vector onto the sphere.
    pub(crate) fn project(v: Vec3<T>) -> Self {
        Self {
            v: v.normalized().unwrap_or(Vec3::new(T::zero(), T::zero(), T::one())),
        }
    }

    pub fn x(&self) -> T {
        self.v.x
    }

    pub fn y(&self) -> T {
        self.v.y
    }

    pub fn z(&self) -> T {
        self.v.z
    }

    pub fn vec(&self) -> Vec3<T> {
        self.v
    }

    pub fn distance(&self, other: &Self) -> T {
        (self.v - other.v).norm()
    }

    pub fn to_angles(&self) -> AngleState<T> {
        bloch_to_angles(self)
    }
}

pub fn angles_to_bloch<T: Real>(s: &AngleState<T>) -> BlochPoint<T> {
    let (sx, cx) = s.x.sin_cos();
    let (sy, cy) = s.y.sin_cos();
    BlochPoint {
        v: Vec3::new(sx * cy, sx * sy, cx),
    }
}

pub fn bloch_to_angles<T: Real>(p: &BlochPoint<T>) -> AngleState<T> {
    let rho = p.v.x.hypot(p.v.y);
    if rho <= T::consistency_eps() {
        let x = if p.v.z > T::zero() { T::zero() } else { T::PI() };
        return AngleState { x, y: T::zero() };
    }
    // atan2 keeps accuracy near the poles where arccos(Z) loses it.
    let x = rho.atan2(p.v.z);
    let y = wrap_two_pi(p.v.y.atan2(p.v.x));
    AngleState::canonical(x, y)
}

/// `(cos(x/2), e^{iy} sin(x/2))`, with a real non-negative `|0⟩` amplitude.
pub fn angles_to_state<T: Real>(s: &AngleState<T>) -> CVec2<T> {
    let half = s.x * T::lit(0.5);
    CVec2::new(
        Complex::new(half.cos(), T::zero()),
        Complex::from_polar(half.sin(), s.y),
    )
}

/// The point set `{p : |p| = 1, n·p = c}` with a unit normal, canonically
/// oriented so that `c > 0`, or, when `|c| ≤ ε`, the first non-negligible
/// component of `n` is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalCircle<T> {
    normal: Vec3<T>,
    offset: T,
}

impl<T: Real> SphericalCircle<T> {
    /// Builds the circle of plane `normal·p = offset`. The normal need not be
    /// unit length; the offset is rescaled along with it.
    pub fn new(normal: Vec3<T>, offset: T) -> Result<Self> {
        if !normal.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidInput("circle plane must be finite".into()));
        }
        let len = normal.norm();
        if len <= T::consistency_eps() {
            return Err(Error::DegenerateInput("circle plane normal is zero".into()));
        }
        let n = normal * len.recip();
        let mut c = offset / len;
        if c.abs() > T::one() + T::geometry_eps() {
            return Err(Error::EmptyCircle(c.to_f64().unwrap_or(f64::NAN)));
        }
        c = c.max(-T::one()).min(T::one());
        Ok(Self::oriented(n, c))
    }

    fn oriented(n: Vec3<T>, c: T) -> Self {
        let eps = T::geometry_eps();
        let flip = if c > eps {
            false
        } else if c < -eps {
            true
        } else {
            let lead = n.to_array().into_iter().find(|v| v.abs() > eps).unwrap_or(T::one());
            lead < T::zero()
        };
        if flip {
            Self { normal: -n, offset: -c }
        } else {
            Self { normal: n, offset: c }
        }
    }

    /// Circle of the level set `ħ_θ^α = cval`. In Bloch coordinates
    /// `ħ_θ^α = cos α·Z − sin α cos θ·X − sin α sin θ·Y`.
    pub fn from_mask_angles(alpha: T, theta: T, cval: T) -> Result<Self> {
        if !cval.is_finite() {
            return Err(Error::InvalidInput("circle offset must be finite".into()));
        }
        if cval.abs() > T::one() + T::consistency_eps() {
            return Err(Error::EmptyCircle(cval.to_f64().unwrap_or(f64::NAN)));
        }
        Self::new(mask_normal(alpha, theta), cval)
    }

    pub fn normal(&self) -> Vec3<T> {
        self.normal
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    /// Euclidean radius `√(1 − c²)`.
    pub fn radius(&self) -> T {
        (T::one() - self.offset * self.offset).max(T::zero()).sqrt()
    }

    pub fn center(&self) -> Vec3<T> {
        self.normal * self.offset
    }

    pub fn is_point(&self) -> bool {
        self.radius() < T::geometry_eps()
    }

    /// Signed plane residual `n·p − c`.
    pub fn residual(&self, p: &BlochPoint<T>) -> T {
        self.normal.dot(&p.v) - self.offset
    }

    pub fn contains(&self, p: &BlochPoint<T>, tol: T) -> bool {
        self.residual(p).abs() <= tol
    }

    /// Same point set, comparing both plane orientations.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let same = (self.normal - other.normal).norm() <= tol && (self.offset - other.offset).abs() <= tol;
        let flipped = (self.normal + other.normal).norm() <= tol && (self.offset + other.offset).abs() <= tol;
        same || flipped
    }

    /// Euclidean distance from a sphere point to the nearest circle point.
    pub fn distance_to(&self, p: &BlochPoint<T>) -> T {
        let h = self.normal.dot(&p.v);
        let in_plane = p.v - self.normal * h;
        let rho = in_plane.norm();
        let r = self.radius();
        let dh = h - self.offset;
        let dr = rho - r;
        (dh * dh + dr * dr).sqrt()
    }
}

/// Plane normal of the `ħ_θ^α` level sets.
pub fn mask_normal<T: Real>(alpha: T, theta: T) -> Vec3<T> {
    let (sa, ca) = alpha.sin_cos();
    let (st, ct) = theta.sin_cos();
    Vec3::new(-sa * ct, -sa * st, ca)
}

/// Circle of the level set `ħ_θ^α = cval`.
pub fn circle_from_mask_params<T: Real>(alpha: T, theta: T, cval: T) -> Result<SphericalCircle<T>> {
    SphericalCircle::from_mask_angles(alpha, theta, cval)
}

/// Recovers `(α, θ, c)` with `α ∈ [0, π)`, `θ ∈ [0, 2π)` such that
/// `circle_from_mask_params(α, θ, c)` is the same point set.
///
/// A horizontal plane gets `α = 0, θ = 0`. Otherwise the plane orientation is
/// the canonical one (`c > 0`), except that when `c ≈ 0` the orientation
/// giving `θ ∈ [0, π)` is used.
pub fn canonical_mask_params<T: Real>(circle: &SphericalCircle<T>) -> (T, T, T) {
    let eps = T::geometry_eps();
    let n = circle.normal;
    let c = circle.offset;
    let lateral = n.x.hypot(n.y);
    if lateral <= eps {
        let s = if n.z >= T::zero() { T::one() } else { -T::one() };
        return (T::zero(), T::zero(), c * s);
    }
    let params = |m: Vec3<T>, off: T| {
        let alpha = lateral.atan2(m.z);
        let theta = wrap_two_pi((-m.y).atan2(-m.x));
        (alpha, theta, off)
    };
    let (alpha, theta, off) = params(n, c);
    if c.abs() <= eps && theta >= T::PI() {
        params(-n, -c)
    } else {
        (alpha, theta, off)
    }
}

/// The plane through three distinct points of the sphere.
pub fn circle_through_three<T: Real>(
    p1: &BlochPoint<T>,
    p2: &BlochPoint<T>,
    p3: &BlochPoint<T>,
) -> Result<SphericalCircle<T>> {
    let min_sep = T::lit(1e-8).max(T::consistency_eps());
    for (a, b) in [(p1, p2), (p2, p3), (p1, p3)] {
        if a.distance(b) <= min_sep {
            return Err(Error::DegenerateInput(
                "the three states must be pairwise distinct".into(),
            ));
        }
    }
    // Symmetric form of (p2 − p1) × (p3 − p1).
    let n = p1.v.cross(&p2.v) + p2.v.cross(&p3.v) + p3.v.cross(&p1.v);
    let n = n
        .normalized()
        .ok_or_else(|| Error::DegenerateInput("the three points do not span a plane".into()))?;
    let third = T::one() / T::lit(3.0);
    let c = (n.dot(&p1.v) + n.dot(&p2.v) + n.dot(&p3.v)) * third;
    SphericalCircle::new(n, c)
}

/// Classification of the intersection of two spherical circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection<T> {
    Coincident(SphericalCircle<T>),
    TwoPoints(BlochPoint<T>, BlochPoint<T>),
    OnePoint(BlochPoint<T>),
    Empty,
}

/// The line where two non-parallel circle planes meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneLine<T> {
    /// Point of the line closest to the origin.
    pub foot: Vec3<T>,
    /// Unit direction.
    pub direction: Vec3<T>,
}

impl<T: Real> PlaneLine<T> {
    /// `1 − |foot|²`: positive when the line cuts the sphere twice.
    pub fn discriminant(&self) -> T {
        T::one() - self.foot.norm_sqr()
    }

    /// Sphere points of the line under tangency threshold `eps`.
    pub fn sphere_points(&self, eps: T) -> CircleIntersection<T> {
        let disc = self.discriminant();
        if disc > eps {
            let t = disc.sqrt();
            let a = BlochPoint::project(self.foot + self.direction * t);
            let b = BlochPoint::project(self.foot - self.direction * t);
            let (a, b) = ordered_pair(a, b);
            CircleIntersection::TwoPoints(a, b)
        } else if disc >= -eps {
            CircleIntersection::OnePoint(BlochPoint::project(self.foot))
        } else {
            CircleIntersection::Empty
        }
    }
}

fn ordered_pair<T: Real>(a: BlochPoint<T>, b: BlochPoint<T>) -> (BlochPoint<T>, BlochPoint<T>) {
    let ka = a.v.to_array();
    let kb = b.v.to_array();
    for (l, r) in ka.iter().zip(kb.iter()) {
        if l < r {
            return (a, b);
        }
        if l > r {
            return (b, a);
        }
    }
    (a, b)
}

/// Intersection line of the two circle planes, `None` if they are parallel
/// within `eps`.
pub fn plane_line<T: Real>(c1: &SphericalCircle<T>, c2: &SphericalCircle<T>, eps: T) -> Option<PlaneLine<T>> {
    let d = c1.normal.cross(&c2.normal);
    let dn = d.norm();
    if dn <= eps {
        return None;
    }
    let g = c1.normal.dot(&c2.normal);
    let denom = T::one() - g * g;
    let foot = (c1.normal * (c1.offset - c2.offset * g) + c2.normal * (c2.offset - c1.offset * g)) * denom.recip();
    Some(PlaneLine {
        foot,
        direction: d * dn.recip(),
    })
}

/// Intersects two circles with the default tangency threshold.
pub fn intersect_circles<T: Real>(c1: &SphericalCircle<T>, c2: &SphericalCircle<T>) -> CircleIntersection<T> {
    intersect_circles_with(c1, c2, T::geometry_eps())
}

pub fn intersect_circles_with<T: Real>(
    c1: &SphericalCircle<T>,
    c2: &SphericalCircle<T>,
    eps: T,
) -> CircleIntersection<T> {
    let parallel = c1.normal.cross(&c2.normal).norm() <= eps;
    if parallel {
        let s = if c1.normal.dot(&c2.normal) >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        return if (c1.offset - s * c2.offset).abs() <= eps {
            CircleIntersection::Coincident(*c1)
        } else {
            CircleIntersection::Empty
        };
    }
    // A point circle reduces to a membership test.
    for (point_circle, other) in [(c1, c2), (c2, c1)] {
        if point_circle.is_point() {
            let p = BlochPoint::project(point_circle.normal * point_circle.offset.signum());
            return if other.contains(&p, eps) {
                CircleIntersection::OnePoint(p)
            } else {
                CircleIntersection::Empty
            };
        }
    }
    match plane_line(c1, c2, eps) {
        Some(line) => line.sphere_points(eps),
        None => CircleIntersection::Empty,
    }
}

/// `k` points evenly spaced by central angle around the circle. A point
/// circle yields `k` copies of its single point.
pub fn sample_circle<T: Real>(circle: &SphericalCircle<T>, k: usize) -> Vec<AngleState<T>> {
    let n = circle.normal;
    if circle.is_point() {
        let p = BlochPoint::project(n * circle.offset.signum());
        return vec![p.to_angles(); k];
    }
    let (u, v) = orthonormal_basis(&n);
    let center = circle.center();
    let r = circle.radius();
    let kt = T::from_usize(k).unwrap_or_else(T::one);
    (0..k)
        .map(|j| {
            let phi = T::TAU() * T::from_usize(j).unwrap_or_else(T::zero) / kt;
            let (s, c) = phi.sin_cos();
            let p = center + (u * c + v * s) * r;
            BlochPoint::project(p).to_angles()
        })
        .collect()
}

/// Two unit vectors completing `n` to a right-handed orthonormal frame.
pub(crate) fn orthonormal_basis<T: Real>(n: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    let ax = n.x.abs();
    let ay = n.y.abs();
    let az = n.z.abs();
    let e = if ax <= ay && ax <= az {
        Vec3::new(T::one(), T::zero(), T::zero())
    } else if ay <= az {
        Vec3::new(T::zero(), T::one(), T::zero())
    } else {
        Vec3::new(T::zero(), T::zero(), T::one())
    };
    let u = n.cross(&e).normalized().expect("axis chosen least parallel to n");
    let v = n.cross(&u);
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI};

    fn st(x: f64, y: f64) -> AngleState<f64> {
        AngleState::new(x, y).unwrap()
    }

    fn bp(x: f64, y: f64, z: f64) -> BlochPoint<f64> {
        BlochPoint::new(x, y, z).unwrap()
    }

    #[test]
    fn poles_and_anchor_point() {
        let n = angles_to_bloch(&st(0.0, 0.0));
        assert_eq!((n.x(), n.y(), n.z()), (0.0, 0.0, 1.0));
        let s = angles_to_bloch(&st(PI, 0.0));
        assert!(s.x().abs() < 1e-15 && (s.z() + 1.0).abs() < 1e-15);
        // Frozen from direct evaluation: sin(π/3)cos(π/4), sin(π/3)sin(π/4), cos(π/3).
        let p = angles_to_bloch(&st(FRAC_PI_3, FRAC_PI_4));
        assert!((p.x() - 0.612_372_435_695_794_5).abs() < 1e-15);
        assert!((p.y() - 0.612_372_435_695_794_5).abs() < 1e-15);
        assert!((p.z() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn inverse_parametrization() {
        assert_eq!(bloch_to_angles(&bp(0.0, 0.0, 1.0)), st(0.0, 0.0));
        let e = bloch_to_angles(&bp(1.0, 0.0, 0.0));
        assert!((e.x() - FRAC_PI_2).abs() < 1e-15 && e.y() == 0.0);
        let back = bloch_to_angles(&bp(0.612_372_435_695_794_5, 0.612_372_435_695_794_5, 0.5));
        assert!((back.x() - FRAC_PI_3).abs() < 1e-9);
        assert!((back.y() - FRAC_PI_4).abs() < 1e-9);
        // Negative azimuth lands in [0, 2π).
        let w = bloch_to_angles(&bp(0.0, -1.0, 0.0));
        assert!((w.y() - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn pole_states_are_canonical() {
        assert_eq!(st(0.0, 1.3).y(), 0.0);
        assert_eq!(st(PI, 5.0).y(), 0.0);
        let south = bloch_to_angles(&bp(0.0, 0.0, -1.0));
        assert_eq!((south.x(), south.y()), (PI, 0.0));
    }

    #[test]
    fn angle_range_enforced() {
        assert!(AngleState::new(-0.1, 0.0).is_err());
        assert!(AngleState::new(3.2, 0.0).is_err());
        assert!(AngleState::new(1.0, 2.0 * PI).is_err());
        assert!(AngleState::new(f64::NAN, 0.0).is_err());
        let w = AngleState::wrapped(1.0, -FRAC_PI_2).unwrap();
        assert!((w.y() - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn non_unit_vector_rejected() {
        assert!(matches!(BlochPoint::new(1.0, 1.0, 0.0), Err(Error::InvalidInput(_))));
        assert!(BlochPoint::new(0.0, 0.0, 1.0 + 1e-12).is_ok());
    }

    #[test]
    fn state_vectors() {
        let z = angles_to_state(&st(0.0, 0.0));
        assert_eq!((z.e0.re, z.e1.norm()), (1.0, 0.0));
        let o = angles_to_state(&st(PI, 0.0));
        assert!(o.e0.norm() < 1e-15 && (o.e1.re - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let iplus = angles_to_state(&st(FRAC_PI_2, FRAC_PI_2));
        assert!((iplus.e0.re - h).abs() < 1e-15 && iplus.e0.im == 0.0);
        assert!(iplus.e1.re.abs() < 1e-15 && (iplus.e1.im - h).abs() < 1e-15);
    }

    #[test]
    fn mask_circles_have_expected_orientation() {
        let x0 = FRAC_PI_3;
        let horiz = circle_from_mask_params(0.0, 0.0, x0.cos()).unwrap();
        assert!((horiz.normal() - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!((horiz.offset() - 0.5).abs() < 1e-15);

        for theta in [0.0, 0.7, 2.5, 4.0] {
            let vert = circle_from_mask_params(FRAC_PI_2, theta, 0.3).unwrap();
            assert!(vert.normal().z.abs() < 1e-15);
        }

        // ħ(π/3, π/4) for α = θ = π/4 is cos(7π/12).
        let cval = (7.0 * PI / 12.0).cos();
        let gamma2 = circle_from_mask_params(FRAC_PI_4, FRAC_PI_4, cval).unwrap();
        assert!(gamma2.contains(&angles_to_bloch(&st(FRAC_PI_3, FRAC_PI_4)), 1e-15));
    }

    #[test]
    fn empty_circle_rejected() {
        assert!(matches!(
            circle_from_mask_params(0.3, 0.2, 1.2),
            Err(Error::EmptyCircle(_))
        ));
    }

    #[test]
    fn canonical_params_examples() {
        let horiz = SphericalCircle::new(Vec3::new(0.0, 0.0, 1.0), 0.5).unwrap();
        assert_eq!(canonical_mask_params(&horiz), (0.0, 0.0, 0.5));

        let great = SphericalCircle::new(Vec3::new(0.0, 1.0, 0.0), 0.0).unwrap();
        let (a, t, c) = canonical_mask_params(&great);
        assert!((a - FRAC_PI_2).abs() < 1e-15);
        assert!((t - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(c, 0.0);
        let back = circle_from_mask_params(a, t, c).unwrap();
        assert!(back.approx_eq(&great, 1e-15));
    }

    #[test]
    fn circle_through_poles_and_plus() {
        let c = circle_through_three(&bp(0.0, 0.0, 1.0), &bp(0.0, 0.0, -1.0), &bp(1.0, 0.0, 0.0)).unwrap();
        assert!(c.offset().abs() < 1e-15);
        assert!((c.normal().y.abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn circle_through_shared_latitude() {
        let z = 0.3f64;
        let r = (1.0 - z * z).sqrt();
        let pts: Vec<_> = [0.1, 2.0, 4.1]
            .iter()
            .map(|y: &f64| bp(r * y.cos(), r * y.sin(), z))
            .collect();
        let c = circle_through_three(&pts[0], &pts[1], &pts[2]).unwrap();
        let (alpha, _, cval) = canonical_mask_params(&c);
        assert_eq!(alpha, 0.0);
        assert!((cval - z).abs() < 1e-14);
    }

    #[test]
    fn circle_through_coincident_points_is_degenerate() {
        let p = bp(0.0, 0.0, 1.0);
        let q = bp(1.0, 0.0, 0.0);
        assert!(matches!(
            circle_through_three(&p, &p, &q),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn pole_tangency_gives_one_point() {
        let c1 = circle_from_mask_params(FRAC_PI_8, 0.0, FRAC_PI_8.cos()).unwrap();
        let c2 = circle_from_mask_params(FRAC_PI_4, 0.0, FRAC_PI_4.cos()).unwrap();
        match intersect_circles(&c1, &c2) {
            CircleIntersection::OnePoint(p) => {
                assert!(p.distance(&bp(0.0, 0.0, 1.0)) < 1e-12);
            }
            other => panic!("expected tangency, got {other:?}"),
        }
    }

    #[test]
    fn vertical_circles_share_a_chord() {
        let anchor = st(FRAC_PI_6, FRAC_PI_4);
        let p = angles_to_bloch(&anchor);
        let mk = |theta: f64| {
            let n = mask_normal(FRAC_PI_2, theta);
            SphericalCircle::new(n, n.dot(&p.vec())).unwrap()
        };
        let res = intersect_circles(&mk(FRAC_PI_4), &mk(FRAC_PI_4 + FRAC_PI_8));
        let mirror = angles_to_bloch(&st(5.0 * FRAC_PI_6, FRAC_PI_4));
        match res {
            CircleIntersection::TwoPoints(a, b) => {
                let hits = |q: &BlochPoint<f64>| [a, b].iter().any(|r| r.distance(q) < 1e-12);
                assert!(hits(&p) && hits(&mirror));
            }
            other => panic!("expected two points, got {other:?}"),
        }
    }

    #[test]
    fn identical_and_parallel_circles() {
        let c = circle_from_mask_params(0.4, 1.0, 0.2).unwrap();
        assert!(matches!(intersect_circles(&c, &c), CircleIntersection::Coincident(_)));
        let d = circle_from_mask_params(0.4, 1.0, 0.5).unwrap();
        assert_eq!(intersect_circles(&c, &d), CircleIntersection::Empty);
        // Same plane written with the opposite orientation.
        let flipped = SphericalCircle::new(-c.normal(), -c.offset()).unwrap();
        assert!(matches!(
            intersect_circles(&c, &flipped),
            CircleIntersection::Coincident(_)
        ));
    }

    #[test]
    fn disjoint_circles_are_empty() {
        let north = circle_from_mask_params(0.0, 0.0, 0.9).unwrap();
        let east = SphericalCircle::new(Vec3::new(1.0, 0.0, 0.0), 0.9).unwrap();
        assert_eq!(intersect_circles(&north, &east), CircleIntersection::Empty);
    }

    #[test]
    fn point_circle_membership() {
        let pole = circle_from_mask_params(0.0, 0.0, 1.0).unwrap();
        assert!(pole.is_point());
        let through = circle_from_mask_params(FRAC_PI_4, 0.0, FRAC_PI_4.cos()).unwrap();
        assert!(matches!(
            intersect_circles(&pole, &through),
            CircleIntersection::OnePoint(_)
        ));
        let miss = circle_from_mask_params(FRAC_PI_4, 0.0, 0.0).unwrap();
        assert_eq!(intersect_circles(&pole, &miss), CircleIntersection::Empty);
    }

    #[test]
    fn sampling_examples() {
        let eq = SphericalCircle::new(Vec3::new(0.0, 0.0, 1.0), 0.0).unwrap();
        let pts = sample_circle(&eq, 4);
        assert_eq!(pts.len(), 4);
        let mut ys: Vec<f64> = pts.iter().map(|s| s.y()).collect();
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in ys.iter().zip([0.0, FRAC_PI_2, PI, 1.5 * PI]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(pts.iter().all(|s| (s.x() - FRAC_PI_2).abs() < 1e-12));

        let pole = SphericalCircle::new(Vec3::new(0.0, 0.0, 1.0), 1.0).unwrap();
        assert_eq!(sample_circle(&pole, 3), vec![st(0.0, 0.0); 3]);
    }

    #[test]
    fn single_precision_smoke() {
        let s = AngleState::<f32>::new(1.0, 2.0).unwrap();
        let back = bloch_to_angles(&angles_to_bloch(&s));
        assert!((back.x() - 1.0).abs() < 1e-5 && (back.y() - 2.0).abs() < 1e-5);
        let c = circle_from_mask_params(0.0f32, 0.0, 0.5).unwrap();
        assert_eq!(sample_circle(&c, 8).len(), 8);
    }
}
