//! Information masking of qubit states.
//!
//! A masker is a linear map from one qubit into two that hides the input
//! from both output qubits individually: every reduced state is the same for
//! all inputs in the masked set. For isometries `S_θ^α` the masked set is a
//! circle on the Bloch sphere. For a general linear map `ℂ² → ℂ²⊗ℂ²` it is a
//! single point, a pair of points or a circle, never the whole sphere.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix the scalar.

pub mod bloch;
pub mod error;
pub mod linalg;
pub mod masking;
pub mod operator;
pub mod oracle;
pub mod protocol;
pub mod scalar;

pub use bloch::{
    angles_to_bloch, angles_to_state, bloch_to_angles, canonical_mask_params, circle_from_mask_params,
    circle_through_three, intersect_circles, intersect_circles_with, mask_normal, plane_line, sample_circle,
    AngleState, BlochPoint, CircleIntersection, PlaneLine, SphericalCircle, Vec3,
};
pub use error::{Error, Result};
pub use linalg::{mat_distance, partial_trace_a, partial_trace_b, CMat2, CVec2, CVec4, Complex};
pub use masking::{
    apply_masker, build_masker, hbar, maskable_circle, masker_for_states, predicted_reduced, verify_mask, Isometry42,
    MaskReport, MaskerParams,
};
pub use operator::{
    constraint_rank, extract_constraints, f01_coefficients, maskable_set, product_form_diagnosis, reduced_pair_raw,
    AffineConstraint, ConstraintRank, EntryFunction, GeneralLinearOp, MaskableClass, ProductFormReport,
};
pub use oracle::{
    grid_scan, masked_fraction_scaling, oracle_agreement, Agreement, GridNode, GridSpec, Neighborhood, Rect, TolRule,
};
pub use protocol::{
    decode, decode_with, encode, preset_schemes, share_constraint, DecodeOptions, DecodeResult, Scheme, Share,
};
pub use scalar::{wrap_two_pi, Real};

pub type AngleState64 = AngleState<f64>;
pub type AngleState32 = AngleState<f32>;
pub type BlochPoint64 = BlochPoint<f64>;
pub type BlochPoint32 = BlochPoint<f32>;
pub type Circle64 = SphericalCircle<f64>;
pub type Circle32 = SphericalCircle<f32>;
pub type MaskerParams64 = MaskerParams<f64>;
pub type MaskerParams32 = MaskerParams<f32>;
pub type Isometry64 = Isometry42<f64>;
pub type Isometry32 = Isometry42<f32>;
pub type LinearOp64 = GeneralLinearOp<f64>;
pub type LinearOp32 = GeneralLinearOp<f32>;
pub type Class64 = MaskableClass<f64>;
pub type Scheme64 = Scheme<f64>;
pub type Share64 = Share<f64>;
pub type Decode64 = DecodeResult<f64>;
