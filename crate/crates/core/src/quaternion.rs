//! Quaternions as 2x2 complex matrices `Q = r (cos(t) I + i sin(t) sigma(phi, eta))`.
//!
//! `sigma(phi, eta) = [[cos phi, e^{i eta} sin phi], [e^{-i eta} sin phi, -cos phi]]`
//! is the Pauli vector along `n = (sin phi cos eta, -sin phi sin eta, cos phi)`.
//! The quaternion conjugate is the matrix adjoint.

use crate::{Error, Result, C64};
use nalgebra::Matrix2;

pub type Mat2 = Matrix2<C64>;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn sigma(phi: f64, eta: f64) -> Mat2 {
    let (s, co) = phi.sin_cos();
    Mat2::new(c(co), C64::from_polar(s, eta), C64::from_polar(s, -eta), c(-co))
}

/// Unit vector `n` with `sigma(phi, eta) = n . sigma_vec`.
pub fn axis(phi: f64, eta: f64) -> [f64; 3] {
    [phi.sin() * eta.cos(), -phi.sin() * eta.sin(), phi.cos()]
}

/// Angles of an axis orthogonal to `axis(phi, eta)`.
pub fn orthogonal_angles(phi: f64, eta: f64) -> (f64, f64) {
    (phi + std::f64::consts::FRAC_PI_2, eta)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub eta: f64,
    pub mat: Mat2,
}

/// `cos(a) I + i sin(a) sigma`.
pub fn exp_i_sigma(a: f64, s: &Mat2) -> Mat2 {
    Mat2::identity() * c(a.cos()) + s * C64::new(0.0, a.sin())
}

impl Quaternion {
    pub fn make(r: f64, theta: f64, phi: f64, eta: f64) -> Result<Self> {
        if !(r >= 0.0) || ![theta, phi, eta].iter().all(|v| v.is_finite()) {
            return Err(Error::Parameter(format!("bad quaternion parameters r={r} theta={theta}")));
        }
        let mat = exp_i_sigma(theta, &sigma(phi, eta)) * c(r);
        Ok(Self { r, theta, phi, eta, mat })
    }

    pub fn sigma(&self) -> Mat2 {
        sigma(self.phi, self.eta)
    }

    pub fn conj(&self) -> Mat2 {
        self.mat.adjoint()
    }

    /// `Q^n = r^n (cos(n t) I + i sin(n t) sigma)`.
    pub fn power(&self, n: u32) -> Mat2 {
        exp_i_sigma(n as f64 * self.theta, &self.sigma()) * c(self.r.powi(n as i32))
    }

    /// Same quaternion with `theta` replaced.
    pub fn with_theta(&self, theta: f64) -> Self {
        Self::make(self.r, theta, self.phi, self.eta).expect("finite angle")
    }
}

/// Closed-form exponential of a 2x2 complex matrix:
/// `e^X = e^{tr/2} (cosh(s) I + sinh(s)/s B)` with `B = X - tr/2 I`, `s^2 = -det B`.
pub fn expm2(x: &Mat2) -> Mat2 {
    let half = x.trace() / 2.0;
    let b = x - Mat2::identity() * half;
    let s2 = -(b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)]);
    let s = s2.sqrt();
    let (ch, shc) = if s.norm() < 1e-4 {
        (1.0 + s2 / 2.0 + s2 * s2 / 24.0, 1.0 + s2 / 6.0 + s2 * s2 / 120.0)
    } else {
        (s.cosh(), s.sinh() / s)
    };
    (Mat2::identity() * ch + b * shc) * half.exp()
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm_series(x: &Mat2) -> Mat2 {
    let norm = x.iter().map(|v| v.norm()).sum::<f64>();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let y = x / C64::from(2f64.powi(squarings as i32));
    let mut term = Mat2::identity();
    let mut sum = Mat2::identity();
    for k in 1..=20 {
        term = term * y / C64::from(k as f64);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `u_xi = diag(e^{i xi/2}, e^{-i xi/2})`.
pub fn u_xi(xi: f64) -> Mat2 {
    Mat2::new(C64::from_polar(1.0, xi / 2.0), c(0.0), c(0.0), C64::from_polar(1.0, -xi / 2.0))
}

/// `u_phi = [[cos(phi/2), i sin(phi/2)], [i sin(phi/2), cos(phi/2)]]`.
pub fn u_phi(phi: f64) -> Mat2 {
    let (s, co) = (phi / 2.0).sin_cos();
    Mat2::new(c(co), C64::new(0.0, s), C64::new(0.0, s), c(co))
}

/// `u_{xi1} u_{phi} u_{xi2}`, an SU(2) element.
pub fn su2_factor(xi1: f64, phi: f64, xi2: f64) -> Mat2 {
    u_xi(xi1) * u_phi(phi) * u_xi(xi2)
}

/// `U diag(z, zbar) U^dagger`.
pub fn conjugate_label(z: C64, u: &Mat2) -> Mat2 {
    u * Mat2::new(z, c(0.0), c(0.0), z.conj()) * u.adjoint()
}

/// `Tr exp(conj(q2) q1 + q2 conj(q1))` on the doubled space
/// `C^2 (x) C^2` where the axis acts as `diag(sigma, sigma)`.
pub fn trace_exp_sum(q1: &Mat2, q2: &Mat2) -> C64 {
    let x = q2.adjoint() * q1 + q2 * q1.adjoint();
    expm2(&x).trace() * 2.0
}

/// `4 e^{2 r0 r cos t0 cos t} cos(2 r0 r sin t0 sin t)`.
pub fn trace_formula(r: f64, theta: f64, r0: f64, theta0: f64) -> f64 {
    let a = 2.0 * r0 * r;
    4.0 * (a * theta0.cos() * theta.cos()).exp() * (a * theta0.sin() * theta.sin()).cos()
}

/// Trace for axes with cosine `k` between them:
/// `4 e^{2 r r0 (cos t0 cos t + k sin t0 sin t)} cos(2 r r0 sqrt(1-k^2) sin t0 sin t)`.
/// Orthogonal axes (`k = 0`) give [`trace_formula`]; a shared axis gives
/// `4 e^{2 r r0 cos(t - t0)}`.
pub fn trace_formula_axes(r: f64, theta: f64, r0: f64, theta0: f64, k: f64) -> f64 {
    let a = 2.0 * r0 * r;
    let (s, s0) = (theta.sin(), theta0.sin());
    4.0 * (a * (theta0.cos() * theta.cos() + k * s0 * s)).exp() * (a * (1.0 - k * k).max(0.0).sqrt() * s0 * s).cos()
}

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
