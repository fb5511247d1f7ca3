//! Fixed-size complex linear algebra for one and two qubits.
//!
//! Two-qubit amplitudes are stored at index `2a + b`, where `a` is the state
//! of qubit A (the left tensor factor) and `b` the state of qubit B. Every
//! other module inherits this convention.

use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[inline]
fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
fn finite<T: Real>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A single-qubit amplitude vector. Not required to be normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec2<T> {
    pub e0: Complex<T>,
    pub e1: Complex<T>,
}

impl<T: Real> CVec2<T> {
    pub fn new(e0: Complex<T>, e1: Complex<T>) -> Self {
        Self { e0, e1 }
    }

    pub fn zero() -> Self {
        Self::new(Complex::default(), Complex::default())
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.e0.conj() * other.e0 + self.e1.conj() * other.e1
    }

    pub fn norm_sqr(&self) -> T {
        self.e0.norm_sqr() + self.e1.norm_sqr()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self::new(self.e0 * k, self.e1 * k)
    }

    pub fn is_finite(&self) -> bool {
        finite(&self.e0) && finite(&self.e1)
    }

    /// `self ⊗ other` with `self` on qubit A.
    pub fn tensor(&self, other: &Self) -> CVec4<T> {
        CVec4::new([
            self.e0 * other.e0,
            self.e0 * other.e1,
            self.e1 * other.e0,
            self.e1 * other.e1,
        ])
    }
}

impl<T: Real> Add for CVec2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.e0 + rhs.e0, self.e1 + rhs.e1)
    }
}

impl<T: Real> Sub for CVec2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.e0 - rhs.e0, self.e1 - rhs.e1)
    }
}

/// A two-qubit amplitude vector, amplitude of `|ab⟩` at index `2a + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec4<T> {
    pub amps: [Complex<T>; 4],
}

impl<T: Real> CVec4<T> {
    pub fn new(amps: [Complex<T>; 4]) -> Self {
        Self { amps }
    }

    pub fn zero() -> Self {
        Self::new([Complex::default(); 4])
    }

    /// Amplitude of `|ab⟩`.
    #[inline]
    pub fn amp(&self, a: usize, b: usize) -> Complex<T> {
        self.amps[2 * a + b]
    }

    /// Builds `|0⟩⊗b0 + |1⟩⊗b1`, the form every operator column takes.
    pub fn from_blocks(b0: CVec2<T>, b1: CVec2<T>) -> Self {
        Self::new([b0.e0, b0.e1, b1.e0, b1.e1])
    }

    /// The qubit-B vector conditioned on qubit A being `|a⟩`.
    pub fn block(&self, a: usize) -> CVec2<T> {
        CVec2::new(self.amps[2 * a], self.amps[2 * a + 1])
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .fold(Complex::default(), |acc, (l, r)| acc + l.conj() * r)
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self::new(self.amps.map(|z| z * k))
    }

    pub fn is_finite(&self) -> bool {
        self.amps.iter().all(finite)
    }
}

impl<T: Real> Add for CVec4<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut amps = self.amps;
        for (l, r) in amps.iter_mut().zip(rhs.amps) {
            *l += r;
        }
        Self::new(amps)
    }
}

impl<T: Real> Sub for CVec4<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut amps = self.amps;
        for (l, r) in amps.iter_mut().zip(rhs.amps) {
            *l -= r;
        }
        Self::new(amps)
    }
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> CMat2<T> {
    pub fn new(m00: Complex<T>, m01: Complex<T>, m10: Complex<T>, m11: Complex<T>) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn from_real(m00: T, m01: T, m10: T, m11: T) -> Self {
        let z = T::zero();
        Self::new(c(m00, z), c(m01, z), c(m10, z), c(m11, z))
    }

    pub fn identity() -> Self {
        Self::from_real(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn diag(d0: T, d1: T) -> Self {
        Self::from_real(d0, T::zero(), T::zero(), d1)
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &CVec2<T>) -> Self {
        Self::new(
            v.e0 * v.e0.conj(),
            v.e0 * v.e1.conj(),
            v.e1 * v.e0.conj(),
            v.e1 * v.e1.conj(),
        )
    }

    #[inline]
    pub fn get(&self, r: usize, col: usize) -> Complex<T> {
        self.m[r][col]
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn scale(&self, k: T) -> Self {
        Self {
            m: self.m.map(|row| row.map(|z| z * k)),
        }
    }

    pub fn frobenius(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(finite)
    }

    /// Largest deviation from Hermiticity: `|m10 - conj(m01)|` or an
    /// imaginary diagonal part.
    pub fn hermiticity_defect(&self) -> T {
        let off = (self.m[1][0] - self.m[0][1].conj()).norm();
        off.max(self.m[0][0].im.abs()).max(self.m[1][1].im.abs())
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Eigenvalues `(low, high)` of the Hermitian part of the matrix.
    pub fn hermitian_eigenvalues(&self) -> (T, T) {
        let half = T::lit(0.5);
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let b = (self.m[0][1] + self.m[1][0].conj()).scale(half);
        let mean = (a + d) * half;
        let radius = (((a - d) * half).powi(2) + b.norm_sqr()).sqrt();
        (mean - radius, mean + radius)
    }
}

impl<T: Real> Add for CMat2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self.m;
        for (row, other) in m.iter_mut().zip(rhs.m) {
            for (v, w) in row.iter_mut().zip(other) {
                *v += w;
            }
        }
        Self { m }
    }
}

impl<T: Real> Sub for CMat2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for CMat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            m: self.m.map(|row| row.map(|z| -z)),
        }
    }
}

impl<T: Real> Mul for CMat2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [[Complex::default(); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (col, slot) in row.iter_mut().enumerate() {
                *slot = self.m[r][0] * rhs.m[0][col] + self.m[r][1] * rhs.m[1][col];
            }
        }
        Self { m: out }
    }
}

fn ensure_finite<T: Real>(psi: &CVec4<T>) -> Result<()> {
    if psi.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput("two-qubit vector has non-finite amplitudes".into()))
    }
}

/// Reduced state of qubit A: `Tr_B |ψ⟩⟨ψ|`.
pub fn partial_trace_b<T: Real>(psi: &CVec4<T>) -> Result<CMat2<T>> {
    ensure_finite(psi)?;
    Ok(trace_out_b(psi))
}

/// Reduced state of qubit B: `Tr_A |ψ⟩⟨ψ|`.
pub fn partial_trace_a<T: Real>(psi: &CVec4<T>) -> Result<CMat2<T>> {
    ensure_finite(psi)?;
    Ok(trace_out_a(psi))
}

// Unchecked variants for hot loops whose inputs are finite by construction.
pub(crate) fn trace_out_b<T: Real>(psi: &CVec4<T>) -> CMat2<T> {
    let mut m = [[Complex::default(); 2]; 2];
    for (a, row) in m.iter_mut().enumerate() {
        for (a2, slot) in row.iter_mut().enumerate() {
            *slot = (0..2).fold(Complex::default(), |acc, b| acc + psi.amp(a, b) * psi.amp(a2, b).conj());
        }
    }
    CMat2 { m }
}

pub(crate) fn trace_out_a<T: Real>(psi: &CVec4<T>) -> CMat2<T> {
    let mut m = [[Complex::default(); 2]; 2];
    for (b, row) in m.iter_mut().enumerate() {
        for (b2, slot) in row.iter_mut().enumerate() {
            *slot = (0..2).fold(Complex::default(), |acc, a| acc + psi.amp(a, b) * psi.amp(a, b2).conj());
        }
    }
    CMat2 { m }
}

/// Frobenius distance `‖a − b‖_F`.
pub fn mat_distance<T: Real>(a: &CMat2<T>, b: &CMat2<T>) -> T {
    (*a - *b).frobenius()
}

/// Singular values and right singular vectors of a tall matrix with three
/// columns, by one-sided Jacobi rotations.
///
/// Returns singular values in descending order and `v[k]`, the right singular
/// vector belonging to `sigma[k]`.
pub fn svd_three_columns<T: Real>(rows: &[[T; 3]]) -> ([T; 3], [[T; 3]; 3]) {
    let mut a: Vec<[T; 3]> = rows.to_vec();
    let mut v = [[T::zero(); 3]; 3];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = T::one();
    }
    // v is stored column-major here: v[j] is column j of V.
    let eps = T::epsilon();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..2 {
            for q in (p + 1)..3 {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for row in &a {
                    alpha += row[p] * row[p];
                    beta += row[q] * row[q];
                    gamma += row[p] * row[q];
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                for row in a.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = cs * xp - sn * xq;
                    row[q] = sn * xp + cs * xq;
                }
                let (vp, vq) = (v[p], v[q]);
                for k in 0..3 {
                    v[p][k] = cs * vp[k] - sn * vq[k];
                    v[q][k] = sn * vp[k] + cs * vq[k];
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma = [T::zero(); 3];
    for (j, s) in sigma.iter_mut().enumerate() {
        *s = a.iter().fold(T::zero(), |acc, row| acc + row[j] * row[j]).sqrt();
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap_or(std::cmp::Ordering::Equal));
    (order.map(|i| sigma[i]), order.map(|i| v[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn close(a: &CMat2<f64>, b: &CMat2<f64>, tol: f64) -> bool {
        mat_distance(a, b) <= tol
    }

    #[test]
    fn product_state_traces() {
        let ket00 = CVec4::new([r(1.0), r(0.0), r(0.0), r(0.0)]);
        assert!(close(&partial_trace_b(&ket00).unwrap(), &CMat2::diag(1.0, 0.0), 1e-15));

        let ket01 = CVec4::new([r(0.0), r(1.0), r(0.0), r(0.0)]);
        assert!(close(&partial_trace_a(&ket01).unwrap(), &CMat2::diag(0.0, 1.0), 1e-15));
        assert!(close(&partial_trace_b(&ket01).unwrap(), &CMat2::diag(1.0, 0.0), 1e-15));
    }

    #[test]
    fn bell_state_is_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = CVec4::new([r(h), r(0.0), r(0.0), r(h)]);
        let half = CMat2::diag(0.5, 0.5);
        assert!(close(&partial_trace_b(&bell).unwrap(), &half, 1e-15));
        assert!(close(&partial_trace_a(&bell).unwrap(), &half, 1e-15));
    }

    #[test]
    fn trace_sides_are_not_swapped() {
        // |0⟩ ⊗ |+⟩: A is pure |0⟩, B is pure |+⟩.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = CVec2::new(r(1.0), r(0.0)).tensor(&CVec2::new(r(h), r(h)));
        assert!(close(&partial_trace_b(&psi).unwrap(), &CMat2::diag(1.0, 0.0), 1e-15));
        let plus = CMat2::from_real(0.5f64, 0.5, 0.5, 0.5);
        assert!(close(&partial_trace_a(&psi).unwrap(), &plus, 1e-15));
    }

    #[test]
    fn non_finite_input_rejected() {
        let bad = CVec4::new([Complex::new(f64::NAN, 0.0), r(0.0), r(0.0), r(0.0)]);
        assert!(matches!(partial_trace_a(&bad), Err(Error::InvalidInput(_))));
        assert!(matches!(partial_trace_b(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn distance_examples() {
        let x = CMat2::from_real(0.0, 1.0, 1.0, 0.0);
        assert_eq!(mat_distance(&x, &x), 0.0);
        let d = mat_distance(&CMat2::diag(1.0, 0.0), &CMat2::diag(0.0, 1.0));
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hermitian_eigenvalues_of_projector() {
        let plus = CMat2::from_real(0.5f64, 0.5, 0.5, 0.5);
        let (lo, hi) = plus.hermitian_eigenvalues();
        assert!(lo.abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn svd_recovers_rank_and_values() {
        // Rows spanning only the z axis.
        let rows: [[f64; 3]; 3] = [[0.0, 0.0, 2.0], [0.0, 0.0, -1.0], [0.0, 0.0, 0.5]];
        let (s, v) = svd_three_columns(&rows);
        assert!((s[0] - 5.25f64.sqrt()).abs() < 1e-14);
        assert!(s[1] < 1e-15 && s[2] < 1e-15);
        assert!((v[0][2].abs() - 1.0).abs() < 1e-14);

        // diag(3, 2, 1) with an extra zero row.
        let rows: [[f64; 3]; 4] = [[0.0, 2.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 3.0], [0.0; 3]];
        let (s, _) = svd_three_columns(&rows);
        assert!((s[0] - 3.0).abs() < 1e-14);
        assert!((s[1] - 2.0).abs() < 1e-14);
        assert!((s[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_matches_gram_eigenvalues_on_dense_matrix() {
        let rows = [
            [0.3f64, -1.2, 0.7],
            [2.1, 0.4, -0.5],
            [-0.9, 0.8, 1.6],
            [0.2, 0.1, -0.3],
            [1.1, -0.6, 0.05],
        ];
        let (s, v) = svd_three_columns(&rows);
        // A v_k has norm sigma_k and the v_k are orthonormal.
        for k in 0..3 {
            let av: f64 = rows
                .iter()
                .map(|row| (row[0] * v[k][0] + row[1] * v[k][1] + row[2] * v[k][2]).powi(2))
                .sum();
            assert!((av.sqrt() - s[k]).abs() < 1e-12);
            for l in 0..3 {
                let dot: f64 = (0..3).map(|i| v[k][i] * v[l][i]).sum();
                let want = if k == l { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
        // Sum of squared singular values equals the squared Frobenius norm.
        let fro: f64 = rows.iter().flatten().map(|x| x * x).sum();
        let ssum: f64 = s.iter().map(|x| x * x).sum();
        assert!((fro - ssum).abs() < 1e-12);
    }
}
