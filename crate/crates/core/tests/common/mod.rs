#![allow(dead_code)]

use proptest::prelude::*;
use qmask::{AngleState, Complex, GeneralLinearOp, MaskerParams};
use std::f64::consts::{PI, TAU};

pub fn st(x: f64, y: f64) -> AngleState<f64> {
    AngleState::new(x, y).unwrap()
}

pub fn state() -> impl Strategy<Value = AngleState<f64>> {
    (0.0..=PI, 0.0..TAU).prop_map(|(x, y)| st(x, y))
}

/// States away from the poles, where the azimuth is meaningful.
pub fn interior_state() -> impl Strategy<Value = AngleState<f64>> {
    (0.05..PI - 0.05, 0.0..TAU).prop_map(|(x, y)| st(x, y))
}

pub fn masker() -> impl Strategy<Value = MaskerParams<f64>> {
    (0.0..PI, 0.0..TAU).prop_map(|(a, t)| MaskerParams::new(a, t).unwrap())
}

pub fn complex() -> impl Strategy<Value = Complex<f64>> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

pub fn operator() -> impl Strategy<Value = GeneralLinearOp<f64>> {
    proptest::array::uniform8(complex())
        .prop_filter("nonzero", |k| k.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3)
        .prop_map(|k| GeneralLinearOp::from_coefficients(k).unwrap())
}
