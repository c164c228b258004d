//! Vector coherent states with a two-component internal index, and their
//! quaternionic version where the complex labels become quaternions.
//!
//! A state is fixed by the internal index `j` and the spectator indices
//! `(n~, m~)`; its coefficients live on the ket-bra grid `(m, n)`.

use crate::coherent::scaled_powers;
use crate::numerics::{factorial, gauss_laguerre, poisson_tail, required_cutoff};
use crate::quaternion::{exp_i_sigma, orthogonal_angles, trace_exp_sum, Mat2, Quaternion};
use crate::{Error, Model, Result, C64};
use nalgebra::Vector2;
use serde::Serialize;
use std::f64::consts::TAU;

pub type Spinor = Vector2<C64>;

/// Internal basis vector `chi^j`, `j` in `{0, 1}`.
pub fn chi(j: usize) -> Spinor {
    if j == 0 {
        Spinor::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    } else {
        Spinor::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0))
    }
}

const TAIL_TOLERANCE: f64 = 1e-12;

fn check_cutoff(lambda: f64, n_max: usize) -> Result<()> {
    let tail = poisson_tail(lambda, n_max);
    if tail > TAIL_TOLERANCE {
        return Err(Error::Truncation { tail, required: required_cutoff(lambda, TAIL_TOLERANCE) });
    }
    Ok(())
}

/// Labels of the diagonal-matrix vector coherent states: one complex pair
/// `(z_j, z'_j)` per internal component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VCSLabel {
    pub z: [C64; 2],
    pub z_prime: [C64; 2],
}

/// `N = e^{2(r1^2 + rho1^2)} + e^{2(r2^2 + rho2^2)}`.
pub fn vcs_norm_closed(label: &VCSLabel) -> f64 {
    (0..2).map(|j| (2.0 * (label.z[j].norm_sqr() + label.z_prime[j].norm_sqr())).exp()).sum()
}

/// Brute-force squared norm of the unnormalised family summed over
/// `j`, `n~`, `m~` and the ket-bra grid. Returns `(sum, closed form)`.
pub fn vcs_normalization(label: &VCSLabel, n_max: usize) -> Result<(f64, f64)> {
    let mut total = 0.0;
    for j in 0..2 {
        let (z, zp) = (label.z[j], label.z_prime[j]);
        check_cutoff(z.norm_sqr().max(zp.norm_sqr()), n_max)?;
        let a = scaled_powers(z, n_max);
        let b = scaled_powers(zp.conj(), n_max);
        let c = scaled_powers(z.conj(), n_max);
        let d = scaled_powers(zp, n_max);
        for nt in 0..=n_max {
            for mt in 0..=n_max {
                let spect = c[nt] * d[mt];
                let mut block = 0.0;
                for bm in &b {
                    for an in &a {
                        block += (an * bm * spect).norm_sqr();
                    }
                }
                total += block;
            }
        }
    }
    Ok((total, vcs_norm_closed(label)))
}

/// `N(r, rho) = 2 e^{2 (r^2 + rho^2)}`.
pub fn qvcs_norm(r: f64, rho: f64) -> f64 {
    2.0 * (2.0 * (r * r + rho * rho)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QVCSLabel {
    pub q: Quaternion,
    pub q_prime: Quaternion,
    pub j: usize,
    pub n_tilde: usize,
    pub m_tilde: usize,
    pub eta: f64,
}

/// Coefficients `psi[(m, n)]` in `C^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QVCSState {
    pub n_max: usize,
    pub coeffs: Vec<Spinor>,
}

impl QVCSState {
    pub fn zeros(n_max: usize) -> Self {
        let d = n_max + 1;
        Self { n_max, coeffs: vec![Spinor::zeros(); d * d] }
    }

    pub fn at(&self, m: usize, n: usize) -> &Spinor {
        &self.coeffs[m * (self.n_max + 1) + n]
    }

    pub fn at_mut(&mut self, m: usize, n: usize) -> &mut Spinor {
        let d = self.n_max + 1;
        &mut self.coeffs[m * d + n]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm_squared()).sum()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.dotc(b)).sum()
    }

    /// Right-index lowering `psi(m, n) <- sqrt(n+1) psi(m, n+1)`.
    pub fn lower(&self) -> Self {
        let mut out = Self::zeros(self.n_max);
        for m in 0..=self.n_max {
            for n in 0..self.n_max {
                *out.at_mut(m, n) = self.at(m, n + 1) * C64::from(((n + 1) as f64).sqrt());
            }
        }
        out
    }

    /// Right-index raising `psi(m, n) <- sqrt(n) psi(m, n-1)`.
    pub fn raise(&self) -> Self {
        let mut out = Self::zeros(self.n_max);
        for m in 0..=self.n_max {
            for n in 1..=self.n_max {
                *out.at_mut(m, n) = self.at(m, n - 1) * C64::from((n as f64).sqrt());
            }
        }
        out
    }

    pub fn scaled_sum(&self, a: C64, other: &Self, b: C64) -> Self {
        Self {
            n_max: self.n_max,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x * a + y * b).collect(),
        }
    }
}

/// `Q^n / sqrt(n!)` for `n = 0..=n_max`.
fn scaled_quaternion_powers(q: &Quaternion, n_max: usize) -> Vec<Mat2> {
    let s = q.sigma();
    let mut radial = 1.0;
    (0..=n_max)
        .map(|n| {
            if n > 0 {
                radial *= q.r / (n as f64).sqrt();
            }
            exp_i_sigma(n as f64 * q.theta, &s) * C64::from(radial)
        })
        .collect()
}

/// `N^{-1/2} Q^n conj(Q')^m conj(Q)^{n~} Q'^{m~} e^{-i eta n} chi^j / sqrt(n! m! n~! m~!)`.
pub fn build_qvcs(label: &QVCSLabel, n_max: usize) -> Result<QVCSState> {
    if label.j > 1 {
        return Err(Error::Index { index: label.j, max: 1 });
    }
    if label.n_tilde > n_max || label.m_tilde > n_max {
        return Err(Error::Index { index: label.n_tilde.max(label.m_tilde), max: n_max });
    }
    let (r, rho) = (label.q.r, label.q_prime.r);
    check_cutoff((r * r).max(rho * rho), n_max)?;
    let qn = scaled_quaternion_powers(&label.q, n_max);
    let qb = Quaternion { mat: label.q.conj(), ..label.q };
    let qpb = scaled_quaternion_powers(&label.q_prime, n_max);
    let nt = qb_power(&qb, label.n_tilde);
    let mt = &scaled_quaternion_powers(&label.q_prime, label.m_tilde)[label.m_tilde];
    let tail = nt * mt * chi(label.j) * C64::from(qvcs_norm(r, rho).powf(-0.5));
    let mut out = QVCSState::zeros(n_max);
    for m in 0..=n_max {
        let v = qpb[m].adjoint() * tail;
        for n in 0..=n_max {
            *out.at_mut(m, n) = qn[n] * v * C64::from_polar(1.0, -(n as f64) * label.eta);
        }
    }
    Ok(out)
}

/// `conj(Q)^k / sqrt(k!)`.
fn qb_power(qb: &Quaternion, k: usize) -> Mat2 {
    let mut m = Mat2::identity();
    for i in 1..=k {
        m = m * qb.mat / C64::from((i as f64).sqrt());
    }
    m
}

/// Total squared norm over `j`, `n~`, `m~` and the grid (should be 1),
/// together with `N(r, rho)`.
pub fn qvcs_normalization(q: &Quaternion, q_prime: &Quaternion, n_max: usize) -> Result<(f64, f64)> {
    let mut total = 0.0;
    for j in 0..2 {
        for n_tilde in 0..=n_max {
            for m_tilde in 0..=n_max {
                let label = QVCSLabel { q: *q, q_prime: *q_prime, j, n_tilde, m_tilde, eta: 0.0 };
                total += build_qvcs(&label, n_max)?.norm_sqr();
            }
        }
    }
    Ok((total, qvcs_norm(q.r, q_prime.r)))
}

/// Largest deviation from 1 of
/// `4 int int e^{-(r^2 + rho^2)} (r^{2n}/n!) (rho^{2m}/m!) r dr rho drho`
/// over `n, m <= max_index`, with `u = r^2` on a Gauss-Laguerre rule.
pub fn moment_problem_check(radial_order: usize, max_index: usize) -> Result<f64> {
    let rule = gauss_laguerre(radial_order)?;
    let moment = |k: usize| rule.integrate(|u| u.powi(k as i32)) / factorial(k);
    let mut worst: f64 = 0.0;
    for n in 0..=max_index {
        for m in 0..=max_index {
            // r dr = du/2 on each radial variable
            let v = 4.0 * (0.5 * moment(n)) * (0.5 * moment(m));
            worst = worst.max((v - 1.0).abs());
        }
    }
    Ok(worst)
}

/// `F = (2 r^2 cos^2 t + 1)(4 r^2 sin^2 t - 2 r^2 cos^2 phi sin^2 t + 1)`.
pub fn uncertainty_factor(r: f64, theta: f64, phi: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let r2 = r * r;
    (2.0 * r2 * c * c + 1.0) * (4.0 * r2 * s * s - 2.0 * r2 * phi.cos().powi(2) * s * s + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub dpx2: f64,
    pub dpy2: f64,
    pub product: f64,
    pub factor: f64,
    /// `|dpx2 dpy2 - hbar^4 F / (16 Theta^2)|`
    pub identity_defect: f64,
    /// `hbar^2 / (4 Theta)`, the value of `dPx dPy` at `r = 0`.
    pub minimum: f64,
}

pub fn uncertainty_report(r: f64, theta: f64, phi: f64, model: &Model) -> UncertaintyReport {
    let h2 = model.hbar().powi(2);
    let big = model.derived.big_theta;
    let (s, c) = theta.sin_cos();
    let r2 = r * r;
    let dpx2 = h2 / (4.0 * big) * (4.0 * r2 * s * s - 2.0 * r2 * phi.cos().powi(2) * s * s + 1.0);
    let dpy2 = h2 / (2.0 * big) * (r2 * c * c + 0.5);
    let factor = uncertainty_factor(r, theta, phi);
    let product = dpx2 * dpy2;
    UncertaintyReport {
        dpx2,
        dpy2,
        product,
        factor,
        identity_defect: (product - h2 * h2 * factor / (16.0 * big * big)).abs(),
        minimum: h2 / (4.0 * big),
    }
}

/// Expectations of `P_X`, `P_X^2`, `P_Y`, `P_Y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureMoments {
    pub px: f64,
    pub px2: f64,
    pub py: f64,
    pub py2: f64,
}

impl QuadratureMoments {
    pub fn max_difference(&self, o: &Self) -> f64 {
        [self.px - o.px, self.px2 - o.px2, self.py - o.py, self.py2 - o.py2]
            .iter()
            .fold(0.0f64, |a, b| a.max(b.abs()))
    }
}

/// Closed forms `<P_X> = hbar/sqrt(2 Theta) r cos phi sin t`,
/// `<P_X^2> = hbar^2/Theta (r^2 sin^2 t + 1/4)`, `<P_Y> = -hbar/sqrt(2 Theta) r cos t`,
/// `<P_Y^2> = hbar^2/Theta (r^2 cos^2 t + 1/4)`.
pub fn quadrature_closed_forms(r: f64, theta: f64, phi: f64, model: &Model) -> QuadratureMoments {
    let h = model.hbar();
    let big = model.derived.big_theta;
    let k = h / (2.0 * big).sqrt();
    let (s, c) = theta.sin_cos();
    QuadratureMoments {
        px: k * r * phi.cos() * s,
        px2: h * h / big * (r * r * s * s + 0.25),
        py: -k * r * c,
        py2: h * h / big * (r * r * c * c + 0.25),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureReport {
    pub brute: QuadratureMoments,
    pub closed: QuadratureMoments,
    pub max_difference: f64,
}

/// Brute-force moments with `P_X = -i hbar/sqrt(2 Theta) (A - A')` and
/// `P_Y = -hbar/sqrt(2 Theta) (A + A')` acting on the right index, summed
/// over `(n~, m~)` at fixed `j` as in the closed forms.
pub fn quadrature_expectations(
    q: &Quaternion,
    q_prime: &Quaternion,
    j: usize,
    model: &Model,
    n_max: usize,
) -> Result<QuadratureReport> {
    let k = model.hbar() / (2.0 * model.derived.big_theta).sqrt();
    let mut acc = QuadratureMoments { px: 0.0, px2: 0.0, py: 0.0, py2: 0.0 };
    let one = C64::new(1.0, 0.0);
    for n_tilde in 0..=n_max {
        for m_tilde in 0..=n_max {
            let label = QVCSLabel { q: *q, q_prime: *q_prime, j, n_tilde, m_tilde, eta: 0.0 };
            let psi = build_qvcs(&label, n_max)?;
            let (lo, hi) = (psi.lower(), psi.raise());
            let px = lo.scaled_sum(C64::new(0.0, -k), &hi, C64::new(0.0, k));
            let py = lo.scaled_sum(C64::from(-k), &hi, C64::from(-k));
            acc.px += psi.inner(&px).re;
            acc.py += psi.inner(&py).re;
            let pxx = px.lower().scaled_sum(C64::new(0.0, -k), &px.raise(), C64::new(0.0, k));
            let pyy = py.lower().scaled_sum(C64::from(-k) * one, &py.raise(), C64::from(-k));
            acc.px2 += psi.inner(&pxx).re;
            acc.py2 += psi.inner(&pyy).re;
        }
    }
    let closed = quadrature_closed_forms(q.r, q.theta, q.phi, model);
    Ok(QuadratureReport { brute: acc, closed, max_difference: acc.max_difference(&closed) })
}

/// `Q -> Q(t)` with `t -> theta - omega* t (mod 2 pi)`.
pub fn evolve_quaternion(q: &Quaternion, t: f64, model: &Model) -> Quaternion {
    q.with_theta((q.theta - model.omega_star() * t).rem_euclid(TAU))
}

pub fn evolve_qvcs(label: &QVCSLabel, t: f64, model: &Model) -> QVCSLabel {
    QVCSLabel { q: evolve_quaternion(&label.q, t, model), ..*label }
}

/// Entrywise matrix of the evolved quaternion:
/// `r [[cos a + i cos phi sin a, i e^{i eta} sin phi sin a],
///     [i e^{-i eta} sin phi sin a, cos a - i cos phi sin a]]`, `a = theta - omega* t`.
pub fn evolved_quaternion_matrix(q: &Quaternion, t: f64, model: &Model) -> Mat2 {
    let a = q.theta - model.omega_star() * t;
    let (sa, ca) = a.sin_cos();
    let (sp, cp) = q.phi.sin_cos();
    let i = C64::new(0.0, 1.0);
    Mat2::new(
        C64::new(ca, cp * sa),
        i * C64::from_polar(sp * sa, q.eta),
        i * C64::from_polar(sp * sa, -q.eta),
        C64::new(ca, -cp * sa),
    ) * C64::from(q.r)
}

/// `e^{-i omega* t n}` on the right index.
pub fn apply_qvcs_evolution(state: &QVCSState, t: f64, model: &Model) -> QVCSState {
    let mut out = state.clone();
    let w = model.omega_star();
    for m in 0..=state.n_max {
        for n in 0..=state.n_max {
            *out.at_mut(m, n) *= C64::from_polar(1.0, -w * t * n as f64);
        }
    }
    out
}

/// Parameters of the time-dependent density surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityParams {
    pub r: f64,
    pub r0: f64,
    pub theta0: f64,
    pub rho: f64,
    pub m: usize,
}

fn density_prefactor(p: &DensityParams) -> f64 {
    let pm = p.rho.powi(2 * p.m as i32) / factorial(p.m);
    2.0 / qvcs_norm(p.rho, p.rho).sqrt() * pm * pm / qvcs_norm(p.r, p.r0).sqrt()
}

/// `(2/sqrt N(rho,rho)) (rho^{2m}/m!)^2
///  4 e^{2 r0 r cos(t0 - w t) cos t} cos(2 r0 r sin(t0 - w t) sin t) / sqrt N(r, r0)`.
pub fn temporal_density(p: &DensityParams, theta: f64, t: f64, model: &Model) -> f64 {
    let a = p.theta0 - model.omega_star() * t;
    density_prefactor(p) * crate::quaternion::trace_formula(p.r, theta, p.r0, a)
}

/// Same density with the trace evaluated by matrix exponential: `Q` on the
/// axis `(phi, eta)` and `Q0(t)` on an orthogonal axis.
pub fn temporal_density_trace(p: &DensityParams, theta: f64, t: f64, phi: f64, eta: f64, model: &Model) -> Result<f64> {
    let q = Quaternion::make(p.r, theta, phi, eta)?;
    let (po, eo) = orthogonal_angles(phi, eta);
    let q0 = evolve_quaternion(&Quaternion::make(p.r0, p.theta0, po, eo)?, t, model);
    Ok(density_prefactor(p) * trace_exp_sum(&q.mat, &q0.mat).re)
}
