//! Coherent-state propagators built from Gaussian kernels
//! `K(z, z0) = A e^{-beta |z - z0|^2}`.
//!
//! Composition follows the coherent-state star rule
//! `1/beta = 1/beta_1 + 1/beta_2 - 1`, whose identity is `e^{-|z-z0|^2} / pi`.

use crate::numerics::{gauss_hermite, GaussRule};
use crate::{Error, Model, Result, C64};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianKernel {
    pub prefactor: C64,
    pub exponent: C64,
}

impl GaussianKernel {
    pub fn eval(&self, z: C64, z0: C64) -> C64 {
        self.prefactor * (-self.exponent * (z - z0).norm_sqr()).exp()
    }

    /// `prefactor / exponent`, which multiplies (times `pi`) under composition.
    pub fn weight(&self) -> C64 {
        self.prefactor / self.exponent
    }
}

/// Dimensionless complex momentum `p = sqrt((1 - eB theta)/(2 eB)) (p1 + i p2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumLabel {
    pub p: C64,
}

impl MomentumLabel {
    pub fn from_components(p1: f64, p2: f64, model: &Model) -> Result<Self> {
        let s = model.momentum_scale_sq();
        if !(s > 0.0) {
            return Err(Error::Parameter(format!("(1 - eB theta)/(2 eB) = {s} is not positive")));
        }
        Ok(Self { p: C64::new(p1, p2) * s.sqrt() })
    }
}

fn require_positive_theta(model: &Model) -> Result<()> {
    if !(model.params.theta > 0.0) {
        return Err(Error::Parameter(format!("theta must be positive, got {}", model.params.theta)));
    }
    Ok(())
}

/// `(z|p) = sqrt(theta / (2 pi hbar^2)) e^{-theta |p|^2 / (4 hbar^2)}
/// e^{(i/hbar) sqrt(theta/2) (p zbar + pbar z)}`.
pub fn cs_momentum_overlap(z: C64, p: MomentumLabel, model: &Model) -> Result<C64> {
    require_positive_theta(model)?;
    let th = model.params.theta;
    let h = model.hbar();
    let norm = (th / (2.0 * PI * h * h)).sqrt() * (-th * p.p.norm_sqr() / (4.0 * h * h)).exp();
    let phase = (th / 2.0).sqrt() / h * 2.0 * (p.p * z.conj()).re;
    Ok(C64::from_polar(norm, phase))
}

/// Two-dimensional Gauss-Hermite grid in a complex variable `q = s (x + i y)`,
/// with weights for `int d^2 q f(q)` when `f` carries `e^{-|q|^2 / s^2}`.
struct PlaneHermite {
    rule: GaussRule,
    scale: f64,
}

impl PlaneHermite {
    fn new(order: usize, scale: f64) -> Result<Self> {
        Ok(Self { rule: gauss_hermite(order)?, scale })
    }

    /// `int d^2 q e^{-|q|^2/s^2} g(q)`.
    fn integrate(&self, mut g: impl FnMut(C64) -> C64) -> C64 {
        let r = &self.rule;
        let mut acc = C64::new(0.0, 0.0);
        for (&x, &wx) in r.nodes.iter().zip(&r.weights) {
            for (&y, &wy) in r.nodes.iter().zip(&r.weights) {
                acc += g(C64::new(x, y) * self.scale) * (wx * wy);
            }
        }
        acc * self.scale * self.scale
    }
}

/// `int d^2 p (z|p)(p|z1)` by Gauss-Hermite; equals `e^{-|z - z1|^2}`.
pub fn momentum_completeness(z: C64, z1: C64, model: &Model, order: usize) -> Result<C64> {
    require_positive_theta(model)?;
    let h = model.hbar();
    let th = model.params.theta;
    let grid = PlaneHermite::new(order, h * (2.0 / th).sqrt())?;
    let strip = |q: C64| (th * q.norm_sqr() / (2.0 * h * h)).exp();
    let mut err = None;
    let v = grid.integrate(|q| {
        let label = MomentumLabel { p: q };
        match (cs_momentum_overlap(z, label, model), cs_momentum_overlap(z1, label, model)) {
            (Ok(a), Ok(b)) => a * b.conj() * strip(q),
            (Err(e), _) | (_, Err(e)) => {
                err = Some(e);
                C64::new(0.0, 0.0)
            }
        }
    });
    err.map_or(Ok(v), Err)
}

/// `int d^2 p e^{-A|p|^2 + B p + conj(B) pbar} = (pi / A) e^{|B|^2 / A}`.
pub fn gaussian_integral_closed(a: C64, b: C64) -> C64 {
    (b.norm_sqr() / a).exp() * PI / a
}

/// Same integral by a Gauss-Hermite grid scaled to `Re A`.
pub fn gaussian_integral_numeric(a: C64, b: C64, order: usize) -> Result<C64> {
    if !(a.re > 0.0) {
        return Err(Error::Parameter("Re A must be positive".into()));
    }
    let grid = PlaneHermite::new(order, 1.0 / a.re.sqrt())?;
    Ok(grid.integrate(|p| {
        let expo = -a * p.norm_sqr() + b * p + b.conj() * p.conj();
        (expo + a.re * p.norm_sqr()).exp()
    }))
}

fn check_kernel_model(model: &Model) -> Result<()> {
    require_positive_theta(model)?;
    if model.eb() == 0.0 {
        return Err(Error::Parameter("eB must be nonzero".into()));
    }
    Ok(())
}

/// Short-time kernel
/// `A = M theta / (2 e M B theta / (1 - eB theta) + i tau)`,
/// `beta = 2 M theta / (2 M theta + i tau (1/eB - theta))`.
pub fn short_time_kernel(tau: f64, model: &Model) -> Result<GaussianKernel> {
    check_kernel_model(model)?;
    let m = model.params.mass;
    let th = model.params.theta;
    let eb = model.eb();
    let a = C64::from(m * th) / C64::new(2.0 * eb * m * th / model.gap(), tau);
    let beta = C64::from(2.0 * m * th) / C64::new(2.0 * m * th, tau * (1.0 / eb - th));
    Ok(GaussianKernel { prefactor: a, exponent: beta })
}

/// Momentum-space quadrature for the short-time kernel:
/// `c int d^2 q e^{-i tau c |q|^2 / (2M)} (z1|q)(q|z0)` with
/// `c = (1 - eB theta)/(2 eB)` and the coherent-state momentum overlaps
/// evaluated at the integration variable.
pub fn short_time_quadrature(tau: f64, z1: C64, z0: C64, model: &Model, order: usize) -> Result<C64> {
    check_kernel_model(model)?;
    let h = model.hbar();
    let th = model.params.theta;
    let c = model.momentum_scale_sq();
    let m = model.params.mass;
    let grid = PlaneHermite::new(order, h * (2.0 / th).sqrt())?;
    let mut err = None;
    let v = grid.integrate(|q| {
        let label = MomentumLabel { p: q };
        let kin = C64::from_polar(1.0, -tau * c * q.norm_sqr() / (2.0 * m));
        let strip = (th * q.norm_sqr() / (2.0 * h * h)).exp();
        match (cs_momentum_overlap(z1, label, model), cs_momentum_overlap(z0, label, model)) {
            (Ok(a), Ok(b)) => kin * a * b.conj() * strip,
            (Err(e), _) | (_, Err(e)) => {
                err = Some(e);
                C64::new(0.0, 0.0)
            }
        }
    });
    err.map_or(Ok(v * c), Err)
}

/// Star composition of two Gaussian kernels:
/// `gamma = beta2/beta1`, `Lambda = 1 + gamma - beta2`,
/// prefactor `A1 A2 pi / (beta1 Lambda)`, exponent `beta1 gamma / Lambda`.
pub fn star_compose(k1: &GaussianKernel, k2: &GaussianKernel) -> Result<GaussianKernel> {
    let (b1, b2) = (k1.exponent, k2.exponent);
    if b1.norm() == 0.0 {
        return Err(Error::Numeric("first kernel has zero exponent".into()));
    }
    let gamma = b2 / b1;
    let lambda = 1.0 + gamma - b2;
    if lambda.norm() < 1e-300 {
        return Err(Error::Numeric("composition denominator vanishes".into()));
    }
    let out = GaussianKernel {
        prefactor: k1.prefactor * k2.prefactor * PI / (b1 * lambda),
        exponent: b1 * gamma / lambda,
    };
    if !out.prefactor.is_finite() || !out.exponent.is_finite() {
        return Err(Error::Numeric("composition overflowed".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropagatorReport {
    pub value: C64,
    /// `((1 - eB theta)/(2 eB theta)) beta(T) e^{-beta(T) |zf - z0|^2}`
    pub closed_form: C64,
    pub exponent: C64,
    /// Factor by which the printed slice measure `(1/theta)(1/pi^2)^n`
    /// would differ from the normalisation that makes the result
    /// independent of `n`; equals `(c/pi)^n`.
    pub printed_measure_ratio: f64,
}

/// Composes `n_slices + 1` short-time kernels of length `T/(n_slices+1)`.
/// Each intermediate integration carries the measure `1/(pi c)` and the
/// whole product `1/theta`, with `c = (1 - eB theta)/(2 eB)`.
pub fn full_propagator(z_f: C64, z_0: C64, t: f64, n_slices: usize, model: &Model) -> Result<PropagatorReport> {
    if n_slices == 0 {
        return Err(Error::Parameter("n_slices must be at least 1".into()));
    }
    let tau = t / (n_slices + 1) as f64;
    let k = short_time_kernel(tau, model)?;
    let c = model.momentum_scale_sq();
    let mut acc = k;
    for _ in 0..n_slices {
        acc = star_compose(&acc, &k)?;
        acc.prefactor /= PI * c;
    }
    let th = model.params.theta;
    let value = acc.eval(z_f, z_0) / th;
    let bt = short_time_kernel(t, model)?.exponent;
    let closed = c / th * bt * (-bt * (z_f - z_0).norm_sqr()).exp();
    Ok(PropagatorReport {
        value,
        closed_form: closed,
        exponent: acc.exponent,
        printed_measure_ratio: (c / PI).powi(n_slices as i32),
    })
}
