//! Scalar abstraction shared by every module.
//!
//! All geometry and linear algebra in this crate is written against [`Real`],
//! which is implemented for `f32` and `f64`. The numeric thresholds used for
//! tie-breaking and self-consistency checks live on the trait so that each
//! precision carries defaults it can actually meet.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Geometric tie threshold: tangency discriminant, parallel normals,
    /// point-circle radius, singular-value rank cut.
    fn geometry_eps() -> Self;

    /// Self-consistency threshold: traces, Hermiticity, isometry columns.
    fn consistency_eps() -> Self;

    /// Default matrix-equality tolerance for masking verification.
    fn match_eps() -> Self;

    /// Converts an `f64` literal. Every literal used in this crate is
    /// representable in both supported precisions.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }
}

impl Real for f64 {
    fn geometry_eps() -> Self {
        1e-9
    }
    fn consistency_eps() -> Self {
        1e-12
    }
    fn match_eps() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn geometry_eps() -> Self {
        1e-4
    }
    fn consistency_eps() -> Self {
        2e-6
    }
    fn match_eps() -> Self {
        1e-5
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn wrap_two_pi<T: Real>(angle: T) -> T {
    let tau = T::TAU();
    let mut a = angle % tau;
    if a < T::zero() {
        a += tau;
    }
    // `-tiny + 2π` can round up to exactly 2π.
    if a >= tau {
        a = T::zero();
    }
    a
}
