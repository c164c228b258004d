//! Two-parameter coherent states `|z, zbar'; m)` on the ket-bra basis.
//!
//! `c_{m',n} = delta_{m',m} e^{-(|z|^2+|z'|^2)/2} zbar'^m z^n e^{-i eta n} / sqrt(m! n!)`.
//! Summing over `m` gives a unit-norm Hilbert-Schmidt vector.

use crate::fock::{apply_action, hs_inner, FockConfig, HSOperator};
use crate::numerics::{poisson_tail, poisson_weights, required_cutoff, PlaneRule};
use crate::{Error, Model, Result, C64};
use nalgebra::DMatrix;
use serde::Serialize;

/// Largest Poisson tail accepted when building a state.
pub const TAIL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CSLabel {
    pub z: C64,
    pub z_prime: C64,
    pub m: usize,
    pub eta: f64,
}

impl CSLabel {
    pub fn new(z: C64, z_prime: C64, m: usize) -> Self {
        Self { z, z_prime, m, eta: 0.0 }
    }
}

/// `z^n / sqrt(n!)` for `n = 0..=n_max`, built by recurrence.
pub fn scaled_powers(z: C64, n_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut t = C64::new(1.0, 0.0);
    for n in 0..=n_max {
        if n > 0 {
            t = t * z / (n as f64).sqrt();
        }
        out.push(t);
    }
    out
}

fn check_labels(z: C64, z_prime: C64, cfg: FockConfig) -> Result<()> {
    let bound = cfg.n_max as f64 / 4.0;
    let (a, b) = (z.norm_sqr(), z_prime.norm_sqr());
    let tail = poisson_tail(a, cfg.n_max) + poisson_tail(b, cfg.n_max);
    if a > bound || b > bound || tail > TAIL_TOLERANCE {
        let lam = a.max(b);
        let required = required_cutoff(lam, TAIL_TOLERANCE).max((4.0 * lam).ceil() as usize);
        return Err(Error::Truncation { tail, required });
    }
    Ok(())
}

/// Poisson mass of both labels beyond the cutoff.
pub fn tail_mass(z: C64, z_prime: C64, cfg: FockConfig) -> f64 {
    poisson_tail(z.norm_sqr(), cfg.n_max) + poisson_tail(z_prime.norm_sqr(), cfg.n_max)
}

/// Coefficients of `|z, zbar'; m)`.
pub fn build_cs(label: &CSLabel, cfg: FockConfig) -> Result<HSOperator> {
    if label.m > cfg.n_max {
        return Err(Error::Index { index: label.m, max: cfg.n_max });
    }
    check_labels(label.z, label.z_prime, cfg)?;
    let mut op = HSOperator::zeros(cfg);
    let row = row_factor(label.z, label.z_prime, label.m);
    for (n, zn) in n_sector(label.z, label.eta, cfg.n_max).into_iter().enumerate() {
        op.coeffs[(label.m, n)] = row * zn;
    }
    Ok(op)
}

/// `sum_m |z, zbar'; m)`, the unit-norm vector of the whole family.
pub fn build_cs_summed(z: C64, z_prime: C64, eta: f64, cfg: FockConfig) -> Result<HSOperator> {
    check_labels(z, z_prime, cfg)?;
    let d = cfg.dim();
    let ns = n_sector(z, eta, cfg.n_max);
    let ms = scaled_powers(z_prime.conj(), cfg.n_max);
    let norm = (-(z.norm_sqr() + z_prime.norm_sqr()) / 2.0).exp();
    Ok(HSOperator { coeffs: DMatrix::from_fn(d, d, |m, n| ms[m] * ns[n] * norm) })
}

fn row_factor(z: C64, z_prime: C64, m: usize) -> C64 {
    let norm = (-(z.norm_sqr() + z_prime.norm_sqr()) / 2.0).exp();
    scaled_powers(z_prime.conj(), m)[m] * norm
}

fn n_sector(z: C64, eta: f64, n_max: usize) -> Vec<C64> {
    scaled_powers(z, n_max)
        .into_iter()
        .enumerate()
        .map(|(n, v)| v * C64::from_polar(1.0, -(n as f64) * eta))
        .collect()
}

/// `sum_m ||z, zbar'; m)||^2` by brute force, with the truncation tail.
pub fn normalization(z: C64, z_prime: C64, cfg: FockConfig) -> Result<(f64, f64)> {
    let mut total = 0.0;
    for m in 0..=cfg.n_max {
        total += build_cs(&CSLabel::new(z, z_prime, m), cfg)?.norm_sqr();
    }
    Ok((total, tail_mass(z, z_prime, cfg)))
}

/// `(a|b)` between truncated states.
pub fn overlap(a: &CSLabel, b: &CSLabel, cfg: FockConfig) -> Result<C64> {
    hs_inner(&build_cs(a, cfg)?, &build_cs(b, cfg)?)
}

/// Overlap of `(z, zbar'; m|` with `|z0, zbar'; m)` in closed form:
/// `e^{-|z'|^2} |z'|^{2m}/m! * e^{-(|z|^2+|z0|^2)/2} e^{z0 zbar}`.
pub fn overlap_closed_form(z: C64, z0: C64, z_prime: C64, m: usize) -> C64 {
    let pm = poisson_weights(z_prime.norm_sqr(), m)[m];
    let g = (-(z.norm_sqr() + z0.norm_sqr()) / 2.0 + z0 * z.conj()).exp();
    g * pm
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub numeric: f64,
    pub closed_form: f64,
}

/// Hilbert-Schmidt distance between the rank-one projectors onto the
/// states labelled `(z, zbar')` and `(z', zbar'')`, each summed over `m`.
/// Closed form `2 (1 - e^{-|z-z'|^2} e^{-|z'-z''|^2})`.
pub fn continuity_distance(z: C64, z1: C64, z2: C64, cfg: FockConfig) -> Result<ContinuityReport> {
    let a = build_cs_summed(z, z1, 0.0, cfg)?;
    let b = build_cs_summed(z1, z2, 0.0, cfg)?;
    let aa = hs_inner(&a, &a)?.re;
    let bb = hs_inner(&b, &b)?.re;
    let ab = hs_inner(&a, &b)?.norm_sqr();
    let closed = 2.0 * (1.0 - (-(z - z1).norm_sqr()).exp() * (-(z1 - z2).norm_sqr()).exp());
    Ok(ContinuityReport { numeric: aa * aa + bb * bb - 2.0 * ab, closed_form: closed })
}

/// Largest deviation from the identity of
/// `(1/pi^2) sum_m int int |z, zbar'; m)(z, zbar'; m| d^2z d^2z'`
/// on the block with all indices `<= max_index`.
pub fn resolution_check(rule: &PlaneRule, max_index: usize) -> Result<f64> {
    let k = max_index + 1;
    let mut gk = DMatrix::<C64>::zeros(k, k);
    let mut gp = vec![C64::new(0.0, 0.0); k];
    for (z, w) in rule.weighted_nodes() {
        let v = scaled_powers(z, max_index);
        let vb = scaled_powers(z.conj(), max_index);
        for n1 in 0..k {
            for n2 in 0..k {
                gk[(n1, n2)] += v[n1] * v[n2].conj() * w;
            }
            gp[n1] += vb[n1] * vb[n1].conj() * w;
        }
    }
    let mut worst: f64 = 0.0;
    for pm in &gp {
        for n1 in 0..k {
            for n2 in 0..k {
                let target = if n1 == n2 { 1.0 } else { 0.0 };
                worst = worst.max((pm * gk[(n1, n2)] - target).norm());
            }
        }
    }
    if !worst.is_finite() {
        return Err(Error::Numeric("resolution quadrature produced a non-finite value".into()));
    }
    Ok(worst)
}

/// Shift `eta -> eta + t` (dimensionless time).
pub fn evolve(label: &CSLabel, t: f64) -> CSLabel {
    CSLabel { eta: label.eta + t, ..*label }
}

/// Evolution by physical time `t`, i.e. `eta -> eta + omega* t`.
pub fn evolve_physical(label: &CSLabel, t: f64, model: &Model) -> CSLabel {
    evolve(label, model.omega_star() * t)
}

/// `e^{-i t A'A}` on the right index (dimensionless time).
pub fn apply_evolution(state: &HSOperator, t: f64) -> HSOperator {
    let mut out = state.clone();
    for n in 0..out.coeffs.ncols() {
        let ph = C64::from_polar(1.0, -(n as f64) * t);
        for m in 0..out.coeffs.nrows() {
            out.coeffs[(m, n)] *= ph;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionReport {
    /// `sum_m (z, zbar'; m| H - hbar omega*/2 |z, zbar'; m)`
    pub value: f64,
    /// `hbar omega* |z|^2`
    pub expected: f64,
    /// `hbar omega* |z|`, the linear form that disagrees with `value`.
    pub linear_form: f64,
}

pub fn action_expectation(z: C64, z_prime: C64, model: &Model, cfg: FockConfig) -> Result<ActionReport> {
    let psi = build_cs_summed(z, z_prime, 0.0, cfg)?;
    let value = hs_inner(&psi, &apply_action(&psi, model))?.re;
    let hw = model.hbar() * model.omega_star();
    Ok(ActionReport { value, expected: hw * z.norm_sqr(), linear_form: hw * z.norm() })
}

/// `z0(t) = z0 e^{-i omega* t}`.
pub fn evolved_center(z0: C64, t: f64, model: &Model) -> C64 {
    z0 * C64::from_polar(1.0, -model.omega_star() * t)
}

/// `|(z, zbar'; m | z0(t), zbar'; m)|^2` in closed form.
pub fn density(z0: C64, z: C64, z_prime: C64, m: usize, t: f64, model: &Model) -> f64 {
    let pm = poisson_weights(z_prime.norm_sqr(), m)[m];
    let zt = evolved_center(z0, t, model);
    let expo = zt * z.conj() + z * zt.conj() - z.norm_sqr() - z0.norm_sqr();
    pm * pm * expo.re.exp()
}

/// `G^{1,0}_{0,1}(w | 0)` from its residue series `sum_k (-w)^k / k!`.
pub fn meijer_g_1001(w: C64) -> C64 {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut k = 0usize;
    loop {
        k += 1;
        term = term * (-w) / k as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && k as f64 > w.norm() {
            break;
        }
        if k > 10_000 {
            break;
        }
    }
    sum
}

/// The same density through the Meijer-G factorisation
/// `G(-zbar0 z) G(-z0 zbar) / G(-(|z|^2 + |z0|^2))`.
pub fn density_meijer(z0: C64, z: C64, z_prime: C64, m: usize, t: f64, model: &Model) -> f64 {
    let pm = poisson_weights(z_prime.norm_sqr(), m)[m];
    let zt = evolved_center(z0, t, model);
    let num = meijer_g_1001(-(zt.conj() * z)) * meijer_g_1001(-(zt * z.conj()));
    let den = meijer_g_1001(C64::from(-(z.norm_sqr() + z0.norm_sqr())));
    pm * pm * (num / den).re
}

/// Joint number distribution `p(m, n)` and statistics of the `n` marginal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumberStatistics {
    /// `p[m][n]`
    pub table: Vec<Vec<f64>>,
    pub mean: f64,
    pub variance: f64,
    /// `(var - mean) / mean`; `None` when the mean vanishes.
    pub mandel_q: Option<f64>,
    /// Mass outside the tabulated range.
    pub tail: f64,
}

pub fn number_statistics(z: C64, z_prime: C64, m_max: usize, n_max: usize) -> NumberStatistics {
    let pm = poisson_weights(z_prime.norm_sqr(), m_max);
    let pn = poisson_weights(z.norm_sqr(), n_max);
    let table: Vec<Vec<f64>> = pm.iter().map(|a| pn.iter().map(|b| a * b).collect()).collect();
    let mut mass = 0.0;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for row in &table {
        for (n, p) in row.iter().enumerate() {
            let n = n as f64;
            mass += p;
            s1 += n * p;
            s2 += n * n * p;
        }
    }
    let mean = s1 / mass;
    let variance = s2 / mass - mean * mean;
    let mandel_q = if mean > 0.0 { Some((variance - mean) / mean) } else { None };
    let tail = poisson_tail(z_prime.norm_sqr(), m_max) + poisson_tail(z.norm_sqr(), n_max);
    NumberStatistics { table, mean, variance, mandel_q, tail }
}
