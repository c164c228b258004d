//! Deterministic CSV grids for the density, number-distribution,
//! uncertainty, QVCS-density, trajectory and propagator surfaces.

use crate::classical::{integrate, Field, Observable, PhasePoint};
use crate::coherent::density;
use crate::numerics::{factorial, poisson_weights};
use crate::propagator::full_propagator;
use crate::vcs::{temporal_density, uncertainty_factor, DensityParams};
use crate::{Error, Model, Result, C64};
use std::f64::consts::PI;
use std::fmt::Write;

/// A grid of numbers with a column header and `# key=value` preamble.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self { params: Vec::new(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.params {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Largest value in column `col`.
    pub fn column_max(&self, col: usize) -> f64 {
        self.rows.iter().map(|r| r[col]).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn column_min(&self, col: usize) -> f64 {
        self.rows.iter().map(|r| r[col]).fold(f64::INFINITY, f64::min)
    }
}

/// `n` equally spaced points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` points on `[lo, hi)`.
fn periodic_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

fn check_grid(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Parameter(format!("grid needs at least 2 points, got {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySurface {
    pub abs_z: f64,
    pub abs_z0: f64,
    pub abs_z_prime: f64,
    pub m: usize,
    pub n_angle: usize,
    pub n_time: usize,
    pub t_max: f64,
}

impl Default for DensitySurface {
    fn default() -> Self {
        Self { abs_z: 1.0, abs_z0: 1.0, abs_z_prime: 1.0, m: 2, n_angle: 61, n_time: 51, t_max: 5.0 }
    }
}

/// Density against `arg z` in `[0, pi]` and physical time; `z0` is real.
pub fn density1(model: &Model, s: &DensitySurface) -> Result<Table> {
    check_grid(s.n_angle)?;
    check_grid(s.n_time)?;
    let mut t = Table::new(&["arg_z", "t", "density"])
        .param("abs_z", s.abs_z)
        .param("abs_z0", s.abs_z0)
        .param("abs_z_prime", s.abs_z_prime)
        .param("m", s.m)
        .param("omega_star", model.omega_star());
    let z0 = C64::new(s.abs_z0, 0.0);
    let zp = C64::new(s.abs_z_prime, 0.0);
    for &a in &linspace(0.0, PI, s.n_angle) {
        let z = C64::from_polar(s.abs_z, a);
        for &time in &linspace(0.0, s.t_max, s.n_time) {
            t.rows.push(vec![a, time, density(z0, z, zp, s.m, time, model)]);
        }
    }
    Ok(t)
}

/// Peak of the density surface, attained at `arg z = omega* t` and equal to
/// `p_m(|z'|^2)^2 e^{-(|z| - |z0|)^2}`.
pub fn density_peak(s: &DensitySurface) -> f64 {
    let pm = poisson_weights(s.abs_z_prime.powi(2), s.m)[s.m];
    pm * pm * (-(s.abs_z - s.abs_z0).powi(2)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PndSurface {
    pub m: usize,
    pub n: usize,
    pub x_max: f64,
    pub y_max: f64,
    pub n_x: usize,
    pub n_y: usize,
}

impl PndSurface {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n, x_max: 5.0, y_max: 5.0, n_x: 101, n_y: 101 }
    }
}

/// `p(m, n)` against `x = |z|` and `y = |z'|`.
pub fn pnd2(s: &PndSurface) -> Result<Table> {
    check_grid(s.n_x)?;
    check_grid(s.n_y)?;
    let mut t = Table::new(&["x", "y", "p"]).param("m", s.m).param("n", s.n);
    for &x in &linspace(0.0, s.x_max, s.n_x) {
        let pn = poisson_weights(x * x, s.n)[s.n];
        for &y in &linspace(0.0, s.y_max, s.n_y) {
            t.rows.push(vec![x, y, pn * poisson_weights(y * y, s.m)[s.m]]);
        }
    }
    Ok(t)
}

/// Trapezoid sum of the `p` column times the cell area.
pub fn pnd_grid_integral(s: &PndSurface, table: &Table) -> f64 {
    let dx = s.x_max / (s.n_x - 1) as f64;
    let dy = s.y_max / (s.n_y - 1) as f64;
    let edge = |i: usize, n: usize| if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
    let mut acc = 0.0;
    for i in 0..s.n_x {
        for j in 0..s.n_y {
            acc += edge(i, s.n_x) * edge(j, s.n_y) * table.rows[i * s.n_y + j][2];
        }
    }
    acc * dx * dy
}

/// `int_0^inf int_0^inf p(m, n) dx dy = Gamma(m + 1/2) Gamma(n + 1/2) / (4 m! n!)`.
pub fn pnd_integral_closed(m: usize, n: usize) -> f64 {
    let half = |k: usize| {
        let mut g = PI.sqrt();
        for i in 0..k {
            g *= i as f64 + 0.5;
        }
        g / (2.0 * factorial(k))
    };
    half(m) * half(n)
}

/// `F(r, v, u)` for `v` in `[0, 2 pi)` and `u` in `[0, pi]`.
pub fn fsurface3(r: f64, n_v: usize, n_u: usize) -> Result<Table> {
    check_grid(n_v)?;
    check_grid(n_u)?;
    let mut t = Table::new(&["v", "u", "F"]).param("r", r);
    for &v in &periodic_points(0.0, 2.0 * PI, n_v) {
        for &u in &linspace(0.0, PI, n_u) {
            t.rows.push(vec![v, u, uncertainty_factor(r, v, u)]);
        }
    }
    Ok(t)
}

/// Which angle is held at its fixed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedAngle {
    Theta(f64),
    Theta0(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QvcsSurface {
    pub r: f64,
    pub r0: f64,
    pub rho: f64,
    pub m: usize,
    pub omega_star: f64,
    pub fixed: FixedAngle,
    pub n_angle: usize,
    pub n_time: usize,
    pub t_max: f64,
}

impl QvcsSurface {
    pub fn new(m: usize, fixed: FixedAngle) -> Self {
        let omega_star = 2.5e-3;
        Self { r: 1.0, r0: 1.0, rho: 1.0, m, omega_star, fixed, n_angle: 64, n_time: 64, t_max: 2.0 * PI / omega_star }
    }
}

/// QVCS density against the free angle and time, with
/// `theta0(t) = theta0 - omega* t`.
pub fn qvcsdensity4(model: &Model, s: &QvcsSurface) -> Result<Table> {
    check_grid(s.n_angle)?;
    check_grid(s.n_time)?;
    let (free, fixed_name, fixed_value) = match s.fixed {
        FixedAngle::Theta(v) => ("theta0", "theta", v),
        FixedAngle::Theta0(v) => ("theta", "theta0", v),
    };
    let mut t = Table::new(&[free, "t", "theta0_t", "density"])
        .param("r", s.r)
        .param("r0", s.r0)
        .param("rho", s.rho)
        .param("m", s.m)
        .param("omega_star", s.omega_star)
        .param(fixed_name, fixed_value);
    for &a in &periodic_points(0.0, 2.0 * PI, s.n_angle) {
        for &time in &linspace(0.0, s.t_max, s.n_time) {
            let (theta, theta0) = match s.fixed {
                FixedAngle::Theta(v) => (v, a),
                FixedAngle::Theta0(v) => (a, v),
            };
            let shifted = theta0 - s.omega_star * time;
            let p = DensityParams { r: s.r, r0: s.r0, theta0: shifted, rho: s.rho, m: s.m };
            t.rows.push(vec![a, time, shifted.rem_euclid(2.0 * PI), temporal_density(&p, theta, 0.0, model)]);
        }
    }
    Ok(t)
}

/// Largest QVCS density over both angles, searched on an `n x n` grid.
pub fn qvcs_density_peak(r: f64, r0: f64, rho: f64, m: usize, model: &Model, n: usize) -> f64 {
    let pts = periodic_points(0.0, 2.0 * PI, n);
    let mut best = f64::NEG_INFINITY;
    for &a in &pts {
        for &b in &pts {
            let p = DensityParams { r, r0, theta0: b, rho, m };
            best = best.max(temporal_density(&p, a, 0.0, model));
        }
    }
    best
}

/// RK4 trajectory with the conserved charges and energy.
pub fn classical(model: &Model, field: Field, initial: PhasePoint, dt: f64, steps: usize) -> Result<Table> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Parameter(format!("time step must be positive, got {dt}")));
    }
    let obs = [
        Observable::momentum_charge(0, model, field),
        Observable::momentum_charge(1, model, field),
        Observable::boost_charge(0, model, field),
        Observable::boost_charge(1, model, field),
        Observable::hamiltonian(model, field),
    ];
    let mut t = Table::new(&["t", "x1", "x2", "p1", "p2", "P1", "P2", "K1", "K2", "H"])
        .param("dt", dt)
        .param("steps", steps)
        .param("E1", field.e[0])
        .param("E2", field.e[1]);
    for s in integrate(initial, model, field, dt, steps) {
        let mut row = vec![s.t, s.x[0], s.x[1], s.p[0], s.p[1]];
        row.extend(obs.iter().map(|o| o.value(&s)));
        t.rows.push(row);
    }
    Ok(t)
}

/// Slice-composition convergence against the closed form.
pub fn propagator_convergence(model: &Model, z_f: C64, z_0: C64, t: f64, slices: &[usize]) -> Result<Table> {
    let mut tab = Table::new(&["n_slices", "re", "im", "abs_error"])
        .param("z_f", z_f)
        .param("z_0", z_0)
        .param("T", t);
    for &n in slices {
        let rep = full_propagator(z_f, z_0, t, n, model)?;
        tab.rows.push(vec![n as f64, rep.value.re, rep.value.im, (rep.value - rep.closed_form).norm()]);
    }
    Ok(tab)
}

/// `|K(z_f, z_0; T)|` over a square of final labels centred on `z_0`.
pub fn propagator_grid(model: &Model, z_0: C64, t: f64, n_slices: usize, half_width: f64, n: usize) -> Result<Table> {
    check_grid(n)?;
    let mut tab = Table::new(&["re_zf", "im_zf", "abs_k"])
        .param("z_0", z_0)
        .param("T", t)
        .param("n_slices", n_slices);
    let axis = linspace(-half_width, half_width, n);
    for &a in &axis {
        for &b in &axis {
            let zf = z_0 + C64::new(a, b);
            tab.rows.push(vec![zf.re, zf.im, full_propagator(zf, z_0, t, n_slices, model)?.value.norm()]);
        }
    }
    Ok(tab)
}
