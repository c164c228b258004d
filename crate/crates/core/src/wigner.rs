//! Weyl operators, the Wigner map to `L^2(R^2)`, and the relabelling of
//! quaternionic states onto a Hermite tensor basis.
//!
//! `(U(x, y) f)(xi) = e^{-i x (xi - y/2)} f(xi - y)` and
//! `(W X)(x, y) = (2 pi)^{-1/2} Tr[U(x, y)^* X]`.

use crate::numerics::{gauss_hermite, gauss_legendre, trapezoid_periodic, GaussRule};
use crate::quaternion::{exp_i_sigma, sigma, Mat2};
use crate::vcs::{build_qvcs, moment_problem_check, QVCSLabel, Spinor};
use crate::{Error, Result, C64};
use nalgebra::DMatrix;
use std::collections::HashMap;
use std::f64::consts::{PI, SQRT_2};

/// Orthonormal Hermite functions `psi_0..psi_{k_max}` with a Gauss-Hermite
/// rule for integrals against `e^{-s^2}`.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    pub k_max: usize,
    rule: GaussRule,
}

impl HermiteBasis {
    pub fn new(k_max: usize, order: usize) -> Result<Self> {
        if order <= k_max {
            return Err(Error::Parameter(format!("quadrature order {order} must exceed k_max {k_max}")));
        }
        Ok(Self { k_max, rule: gauss_hermite(order)? })
    }

    /// `psi_k(s) e^{s^2/2}` for all `k`.
    pub fn stripped(&self, s: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.k_max + 1);
        out.push(PI.powf(-0.25));
        if self.k_max >= 1 {
            out.push(SQRT_2 * s * out[0]);
        }
        for k in 1..self.k_max {
            let kf = k as f64;
            let next = (2.0 / (kf + 1.0)).sqrt() * s * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
            out.push(next);
        }
        out
    }

    /// `psi_k(s)` for all `k`.
    pub fn values(&self, s: f64) -> Vec<f64> {
        let g = (-s * s / 2.0).exp();
        self.stripped(s).into_iter().map(|v| v * g).collect()
    }

    /// Numeric Gram matrix `<psi_k, psi_l>`.
    pub fn gram(&self) -> DMatrix<f64> {
        let d = self.k_max + 1;
        let mut g = DMatrix::zeros(d, d);
        for (&s, &w) in self.rule.nodes.iter().zip(&self.rule.weights) {
            let h = self.stripped(s);
            for k in 0..d {
                for l in 0..d {
                    g[(k, l)] += w * h[k] * h[l];
                }
            }
        }
        g
    }

    /// All matrix elements `<psi_k | U(x, y) psi_l>`.
    pub fn weyl_matrix(&self, x: f64, y: f64) -> DMatrix<C64> {
        let d = self.k_max + 1;
        let mut out = DMatrix::zeros(d, d);
        let g = (-y * y / 4.0).exp();
        for (&s, &w) in self.rule.nodes.iter().zip(&self.rule.weights) {
            let hp = self.stripped(s + y / 2.0);
            let hm = self.stripped(s - y / 2.0);
            let ph = C64::from_polar(w * g, -x * s);
            for k in 0..d {
                let a = ph * hp[k];
                for l in 0..d {
                    out[(k, l)] += a * hm[l];
                }
            }
        }
        out
    }

    pub fn weyl_matrix_element(&self, k: usize, l: usize, x: f64, y: f64) -> Result<C64> {
        if k > self.k_max || l > self.k_max {
            return Err(Error::Index { index: k.max(l), max: self.k_max });
        }
        Ok(self.weyl_matrix(x, y)[(k, l)])
    }
}

/// `(W X)(x, y)` for `X = sum X_{kl} |psi_k><psi_l|`.
pub fn wigner_transform(basis: &HermiteBasis, x_op: &DMatrix<C64>, x: f64, y: f64) -> Result<C64> {
    let d = basis.k_max + 1;
    if x_op.shape() != (d, d) {
        return Err(Error::Shape { expected: d, got: x_op.nrows() });
    }
    let w = basis.weyl_matrix(x, y);
    Ok(x_op.iter().zip(w.iter()).map(|(a, b)| a * b.conj()).sum::<C64>() / (2.0 * PI).sqrt())
}

/// The Wigner map sampled on a Gauss-Hermite product grid in `(x, y)`,
/// with columns scaled by the square roots of the grid weights so that
/// `T^dagger T` is the Gram matrix of the images.
#[derive(Debug, Clone)]
pub struct WignerGrid {
    pub points: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
    /// Rows: grid points; columns: `k * (k_max + 1) + l`.
    pub matrix: DMatrix<C64>,
}

impl WignerGrid {
    pub fn new(basis: &HermiteBasis, grid_order: usize) -> Result<Self> {
        let rule = gauss_hermite(grid_order)?;
        let axis: Vec<(f64, f64)> =
            rule.nodes.iter().zip(&rule.weights).map(|(&u, &w)| (SQRT_2 * u, SQRT_2 * w * (u * u).exp())).collect();
        let d = basis.k_max + 1;
        let mut points = Vec::with_capacity(axis.len() * axis.len());
        let mut weights = Vec::with_capacity(points.capacity());
        let mut matrix = DMatrix::zeros(axis.len() * axis.len(), d * d);
        let norm = (2.0 * PI).sqrt();
        for &(x, wx) in &axis {
            for &(y, wy) in &axis {
                let g = points.len();
                let sw = (wx * wy).sqrt();
                let wm = basis.weyl_matrix(x, y);
                for k in 0..d {
                    for l in 0..d {
                        matrix[(g, k * d + l)] = wm[(k, l)].conj() * (sw / norm);
                    }
                }
                points.push((x, y));
                weights.push(wx * wy);
            }
        }
        Ok(Self { points, weights, matrix })
    }

    /// Largest deviation of `T^dagger T` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let g = self.matrix.adjoint() * &self.matrix;
        let mut worst: f64 = 0.0;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let t = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - t).norm());
            }
        }
        worst
    }

    /// `<W X, W Y>_{L^2}` by grid quadrature.
    pub fn l2_inner(&self, x_op: &DMatrix<C64>, y_op: &DMatrix<C64>) -> C64 {
        let fx = &self.matrix * flatten(x_op);
        let fy = &self.matrix * flatten(y_op);
        fx.dotc(&fy)
    }

    /// Recovers `X` from grid samples of `W X` by the adjoint map.
    pub fn inverse(&self, samples: &[C64], d: usize) -> DMatrix<C64> {
        let scaled = nalgebra::DVector::from_iterator(
            samples.len(),
            samples.iter().zip(&self.weights).map(|(s, w)| s * w.sqrt()),
        );
        let v = self.matrix.adjoint() * scaled;
        DMatrix::from_fn(d, d, |k, l| v[k * d + l])
    }
}

fn flatten(x: &DMatrix<C64>) -> nalgebra::DVector<C64> {
    let d = x.nrows();
    nalgebra::DVector::from_fn(d * d, |i, _| x[(i / d, i % d)])
}

/// `J(|phi><psi|) = |psi><phi|`, antilinear; on a real basis this is the adjoint.
pub fn map_j(x: &DMatrix<C64>) -> DMatrix<C64> {
    x.adjoint()
}

/// Hermite tensor label on `(x', y', x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorLabel {
    pub x_prime: usize,
    pub y_prime: usize,
    pub x: usize,
    pub y: usize,
}

/// Ket-bra indices `(n, m, n~, m~)` to the tensor label `(m~, n~, n, m)`.
pub fn map_v(n: usize, m: usize, n_tilde: usize, m_tilde: usize, k_max: usize) -> Result<TensorLabel> {
    let top = n.max(m).max(n_tilde).max(m_tilde);
    if top > k_max {
        return Err(Error::Index { index: top, max: k_max });
    }
    Ok(TensorLabel { x_prime: m_tilde, y_prime: n_tilde, x: n, y: m })
}

/// Inverse of [`map_v`]: returns `(n, m, n~, m~)`.
pub fn map_v_inverse(t: TensorLabel) -> (usize, usize, usize, usize) {
    (t.x, t.y, t.y_prime, t.x_prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Direct relabelling.
    Eta,
    /// Relabelling after `J` on the ket-bra structure.
    Xi,
}

/// QVCS coefficients on the Hermite tensor basis, truncated at `k_max`.
pub fn mapped_qvcs(label: &QVCSLabel, n_max: usize, k_max: usize, family: Family) -> Result<Vec<(TensorLabel, Spinor)>> {
    let state = build_qvcs(label, n_max)?;
    let mut out = Vec::new();
    for m in 0..=k_max.min(n_max) {
        for n in 0..=k_max.min(n_max) {
            let c = *state.at(m, n);
            let (nt, mt) = (label.n_tilde, label.m_tilde);
            let entry = match family {
                Family::Eta => (map_v(n, m, nt, mt, k_max)?, c),
                Family::Xi => (map_v(m, n, mt, nt, k_max)?, c.map(|v| v.conj())),
            };
            out.push(entry);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngularOrders {
    pub polar: usize,
    pub azimuth: usize,
    pub phase: usize,
}

impl Default for AngularOrders {
    fn default() -> Self {
        Self { polar: 24, azimuth: 16, phase: 32 }
    }
}

/// `int sin(phi) e^{i s d t sigma(phi, eta)} dphi deta dt` on
/// `[0, pi] x [0, 2 pi) x [0, 2 pi)`.
fn sphere_phase_integral(d: i64, sign: f64, orders: AngularOrders) -> Result<Mat2> {
    let polar = gauss_legendre(orders.polar, 0.0, PI)?;
    let mut acc = Mat2::zeros();
    for (&phi, &w) in polar.nodes.iter().zip(&polar.weights) {
        for i in 0..4 {
            let entry = trapezoid_periodic(
                |eta| {
                    let s = sigma(phi, eta);
                    trapezoid_periodic(|t| exp_i_sigma(sign * d as f64 * t, &s)[(i / 2, i % 2)], orders.phase)
                },
                orders.azimuth,
            );
            acc[(i / 2, i % 2)] += entry * (w * phi.sin());
        }
    }
    Ok(acc)
}

/// Angular integral of `e^{-i d1 t sigma(n)} e^{i d2 g sigma~(k)}` with
/// `sin(phi) sin(phi~)` weights: `64 pi^4 I` at `(0, 0)`, zero otherwise.
pub fn angular_orthogonality(d1: i64, d2: i64, orders: AngularOrders) -> Result<Mat2> {
    Ok(sphere_phase_integral(d1, -1.0, orders)? * sphere_phase_integral(d2, 1.0, orders)?)
}

/// Assembles the mapped resolution of the identity on the block with all
/// Hermite indices `<= k_max`: Hermite Gram factors for the four slots,
/// the angular integral for the winding differences, and the radial
/// moment problems. Returns the largest deviation from the identity.
pub fn mapped_resolution_check(k_max: usize, radial_order: usize, orders: AngularOrders) -> Result<f64> {
    if k_max > 6 {
        return Err(Error::Parameter(format!("k_max {k_max} too large for the assembled block")));
    }
    let basis = HermiteBasis::new(k_max, 2 * k_max + 8)?;
    let gram = basis.gram();
    let moment_defect = moment_problem_check(radial_order, k_max)?;
    let scale = 64.0 * PI.powi(4);
    let mut angular: HashMap<(i64, i64), Mat2> = HashMap::new();
    let d = k_max + 1;
    let labels: Vec<[usize; 4]> = (0..d.pow(4)).map(|i| [i / d.pow(3), (i / d.pow(2)) % d, (i / d) % d, i % d]).collect();
    let mut worst: f64 = 0.0;
    for a in &labels {
        for b in &labels {
            let g: f64 = (0..4).map(|s| gram[(a[s], b[s])]).product();
            let (n, m, nt, mt) = (a[0] as i64, a[1] as i64, a[2] as i64, a[3] as i64);
            let (n2, m2, nt2, mt2) = (b[0] as i64, b[1] as i64, b[2] as i64, b[3] as i64);
            let key = ((n - nt) - (n2 - nt2), (mt - m) - (mt2 - m2));
            let ang = match angular.get(&key) {
                Some(v) => *v,
                None => {
                    let v = angular_orthogonality(key.0, key.1, orders)? / C64::from(scale);
                    angular.insert(key, v);
                    v
                }
            };
            let same = a == b;
            for j in 0..2 {
                for j2 in 0..2 {
                    let target = if same && j == j2 { 1.0 } else { 0.0 };
                    let v = ang[(j, j2)] * g;
                    worst = worst.max((v - target).norm());
                }
            }
        }
    }
    Ok(worst.max(moment_defect))
}
