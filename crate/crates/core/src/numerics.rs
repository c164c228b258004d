//! Quadrature rules and small special-function helpers.
//!
//! Gaussian rules are built from the Jacobi matrix of the weight's
//! three-term recurrence: an implicit QL sweep gives the nodes, which
//! are then Newton-polished on the orthonormal polynomial and paired
//! with Christoffel weights `1 / sum_k p_k(x)^2`.

use crate::{Error, Result, C64};
use std::f64::consts::PI;

pub const MAX_GAUSS_ORDER: usize = 128;

/// Nodes and weights of a one-dimensional Gaussian rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Eigenvalues and first eigenvector components of the symmetric
/// tridiagonal matrix with diagonal `d` and off-diagonal `e`
/// (`e[i]` couples rows `i` and `i + 1`).
pub fn tridiagonal_eigen_first_row(d: &[f64], e: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    if n == 0 || e.len() + 1 < n {
        return Err(Error::Shape { expected: n.saturating_sub(1), got: e.len() });
    }
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.iter().copied().take(n - 1).chain(std::iter::once(0.0)).collect();
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Numeric(format!("QL sweep did not converge at row {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((idx.iter().map(|&i| d[i]).collect(), idx.iter().map(|&i| z[i]).collect()))
}

/// Orthonormal polynomial `p_n(x)`, its derivative, and `sum_{k<n} p_k(x)^2`.
fn recurrence_eval(a: &[f64], b: &[f64], mu0: f64, x: f64) -> (f64, f64, f64) {
    let n = a.len();
    let mut p_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut dp_prev = 0.0;
    let mut dp = 0.0;
    let mut sum_sq = 0.0;
    for k in 0..n {
        sum_sq += p * p;
        let bk = if k == 0 { 0.0 } else { b[k - 1] };
        let p_next = ((x - a[k]) * p - bk * p_prev) / b[k];
        let dp_next = ((x - a[k]) * dp + p - bk * dp_prev) / b[k];
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp, sum_sq)
}

/// Gauss rule from recurrence coefficients: `a` has `n` entries, `b[k]`
/// couples `p_k` and `p_{k+1}` and has `n` entries (the last one only
/// scales `p_n`).
fn gauss_from_recurrence(a: &[f64], b: &[f64], mu0: f64) -> Result<GaussRule> {
    let n = a.len();
    let (mut nodes, _) = tridiagonal_eigen_first_row(a, &b[..n - 1])?;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = recurrence_eval(a, b, mu0, *x);
            if dp == 0.0 || !dp.is_finite() {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
                break;
            }
            *x -= step;
        }
        let (_, _, s) = recurrence_eval(a, b, mu0, *x);
        weights.push(1.0 / s);
    }
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::Numeric("non-finite Gauss weight".into()));
    }
    Ok(GaussRule { nodes, weights })
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_GAUSS_ORDER {
        return Err(Error::Parameter(format!("quadrature order {order} outside 1..={MAX_GAUSS_ORDER}")));
    }
    Ok(())
}

/// Gauss-Laguerre rule for `int_0^inf e^{-x} f(x) dx`.
pub fn gauss_laguerre(order: usize) -> Result<GaussRule> {
    check_order(order)?;
    let a: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + 1.0).collect();
    let b: Vec<f64> = (1..=order).map(|k| k as f64).collect();
    gauss_from_recurrence(&a, &b, 1.0)
}

/// Gauss-Hermite rule for `int e^{-x^2} f(x) dx`.
pub fn gauss_hermite(order: usize) -> Result<GaussRule> {
    check_order(order)?;
    let a = vec![0.0; order];
    let b: Vec<f64> = (1..=order).map(|k| (k as f64 / 2.0).sqrt()).collect();
    gauss_from_recurrence(&a, &b, PI.sqrt())
}

/// Gauss-Legendre rule on `[lo, hi]`.
pub fn gauss_legendre(order: usize, lo: f64, hi: f64) -> Result<GaussRule> {
    check_order(order)?;
    let a = vec![0.0; order];
    let b: Vec<f64> = (1..=order)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let unit = gauss_from_recurrence(&a, &b, 2.0)?;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    Ok(GaussRule {
        nodes: unit.nodes.iter().map(|x| mid + half * x).collect(),
        weights: unit.weights.iter().map(|w| half * w).collect(),
    })
}

/// Trapezoid rule for a `2*pi`-periodic integrand: `(2 pi / N) sum_j f(2 pi j / N)`.
pub fn trapezoid_periodic(f: impl Fn(f64) -> C64, order: usize) -> C64 {
    let h = 2.0 * PI / order as f64;
    (0..order).map(|j| f(h * j as f64)).sum::<C64>() * h
}

/// Product rule for integrals over the complex plane in polar form,
/// with the radial variable `u = r^2` handled by Gauss-Laguerre.
#[derive(Debug, Clone)]
pub struct PlaneRule {
    radial: GaussRule,
    angles: Vec<f64>,
}

impl PlaneRule {
    pub fn new(radial_order: usize, angular_order: usize) -> Result<Self> {
        if angular_order == 0 {
            return Err(Error::Parameter("angular order must be positive".into()));
        }
        let radial = gauss_laguerre(radial_order)?;
        let h = 2.0 * PI / angular_order as f64;
        Ok(Self { radial, angles: (0..angular_order).map(|j| h * j as f64).collect() })
    }

    pub fn radial_order(&self) -> usize {
        self.radial.order()
    }

    pub fn angular_order(&self) -> usize {
        self.angles.len()
    }

    /// All nodes `z` with their weights for `(1/pi) int e^{-|z|^2} g(z) d^2z`.
    pub fn weighted_nodes(&self) -> impl Iterator<Item = (C64, f64)> + '_ {
        let na = self.angles.len() as f64;
        self.radial.nodes.iter().zip(&self.radial.weights).flat_map(move |(&u, &w)| {
            let r = u.sqrt();
            self.angles.iter().map(move |&t| (C64::from_polar(r, t), w / na))
        })
    }

    /// `(1/pi) int e^{-|z|^2} g(z) d^2z`.
    pub fn integrate_weighted(&self, g: impl Fn(C64) -> C64) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (z, w) in self.weighted_nodes() {
            let v = g(z);
            if !v.is_finite() {
                return Err(Error::Numeric(format!("integrand not finite at z = {z}")));
            }
            acc += v * w;
        }
        Ok(acc)
    }

    /// `(1/pi) int f(z) d^2z`; `f` must decay at least like `e^{-(1-eps)|z|^2}`.
    pub fn integrate(&self, f: impl Fn(C64) -> C64) -> Result<C64> {
        self.integrate_weighted(|z| f(z) * z.norm_sqr().exp())
    }
}

/// `(1/pi) int_C f(z) d^2z` on a Gauss-Laguerre x trapezoid product grid.
pub fn integrate_complex_plane(
    f: impl Fn(C64) -> C64,
    radial_order: usize,
    angular_order: usize,
) -> Result<C64> {
    PlaneRule::new(radial_order, angular_order)?.integrate(f)
}

/// `ln n!` by direct summation for small `n` and Stirling's series beyond.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 32 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64 + 1.0;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5))
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Poisson weights `e^{-lambda} lambda^n / n!` for `n = 0..=n_max`.
pub fn poisson_weights(lambda: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut term = (-lambda).exp();
    for n in 0..=n_max {
        if n > 0 {
            term *= lambda / n as f64;
        }
        out.push(term);
    }
    out
}

/// Poisson mass beyond `n_max`, summed forward so nothing cancels.
pub fn poisson_tail(lambda: f64, n_max: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let n0 = n_max + 1;
    let mut term = (-lambda + n0 as f64 * lambda.ln() - ln_factorial(n0)).exp();
    let mut sum = 0.0;
    let mut n = n0;
    while term > 1e-300 || (n as f64) < lambda {
        sum += term;
        n += 1;
        term *= lambda / n as f64;
        if n > n0 + 100_000 {
            break;
        }
    }
    sum
}

/// Smallest cutoff whose Poisson tail drops below `tol`.
pub fn required_cutoff(lambda: f64, tol: f64) -> usize {
    let mut n = lambda.ceil() as usize;
    while poisson_tail(lambda, n) > tol {
        n += 1;
    }
    n
}
