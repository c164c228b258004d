//! The full verification suite: every closed form checked against an
//! independent numeric route, with known printed discrepancies reported
//! separately from failures.

use crate::classical::{
    crossing_frequency, integrate, poisson_bracket, verify_charge_algebra, Field, Observable, PhasePoint,
};
use crate::coherent::{
    action_expectation, apply_evolution, build_cs, continuity_distance, density, density_meijer, evolve,
    evolved_center, normalization, number_statistics, resolution_check, CSLabel,
};
use crate::fock::FockConfig;
use crate::numerics::{factorial, gauss_laguerre, PlaneRule};
use crate::propagator::{full_propagator, momentum_completeness, short_time_kernel, short_time_quadrature};
use crate::quaternion::{
    axis, conjugate_label, dot3, exp_i_sigma, expm_series, orthogonal_angles, sigma, su2_factor, trace_exp_sum,
    trace_formula, Quaternion,
};
use crate::vcs::{
    apply_qvcs_evolution, build_qvcs, evolve_qvcs, evolve_quaternion, evolved_quaternion_matrix,
    moment_problem_check, quadrature_expectations, qvcs_normalization, temporal_density, temporal_density_trace,
    uncertainty_factor, uncertainty_report, vcs_normalization, DensityParams, QVCSLabel, VCSLabel,
};
use crate::wigner::{angular_orthogonality, map_j, mapped_resolution_check, AngularOrders, HermiteBasis, WignerGrid};
use crate::{Model, ModelParams, Result, C64};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DocumentedMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_anchor: String,
    /// Measured deviation; `None` when the check could not be evaluated.
    pub value: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub params: ModelParams,
    pub n_max: usize,
    pub radial_order: usize,
    pub angular_order: usize,
    pub seed: u64,
    /// Random samples per randomized check.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { params: ModelParams::default(), n_max: 64, radial_order: 64, angular_order: 128, seed: 7, samples: 20 }
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn measure(&mut self, name: &str, anchor: &str, tolerance: f64, value: Result<f64>) {
        let (value, status) = match value {
            Ok(v) if v.is_finite() && v <= tolerance => (Some(v), Status::Pass),
            Ok(v) => (v.is_finite().then_some(v), Status::Fail),
            Err(_) => (None, Status::Fail),
        };
        self.push(name, anchor, tolerance, value, status);
    }

    fn mismatch(&mut self, name: &str, anchor: &str, tolerance: f64, value: Result<f64>) {
        let value = value.ok().filter(|v| v.is_finite());
        let status = if value.is_some() { Status::DocumentedMismatch } else { Status::Fail };
        self.push(name, anchor, tolerance, value, status);
    }

    fn push(&mut self, name: &str, anchor: &str, tolerance: f64, value: Option<f64>, status: Status) {
        self.checks.push(Check { name: name.into(), paper_anchor: anchor.into(), value, tolerance, status });
    }
}

fn random_c64(rng: &mut ChaCha8Rng, max_abs: f64) -> C64 {
    C64::from_polar(max_abs * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

fn mat_diff(a: &crate::quaternion::Mat2, b: &crate::quaternion::Mat2) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for v in it {
        worst = worst.max(v?);
    }
    Ok(worst)
}

pub fn run_verification(cfg: &VerifyConfig) -> Result<Report> {
    let model = Model::new(cfg.params)?;
    let fock = FockConfig::new(cfg.n_max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut s = Suite { checks: Vec::new() };

    classical_checks(&mut s, &model, &mut rng, cfg.samples);
    numeric_checks(&mut s, cfg);
    coherent_checks(&mut s, &model, fock, cfg, &mut rng);
    propagator_checks(&mut s, &model, &mut rng);
    quaternion_checks(&mut s, &mut rng, cfg.samples);
    vcs_checks(&mut s, &model, cfg, &mut rng);
    wigner_checks(&mut s, &mut rng);
    Ok(Report { checks: s.checks })
}

fn classical_checks(s: &mut Suite, model: &Model, rng: &mut ChaCha8Rng, samples: usize) {
    let field = Field::default();
    let period = TAU / model.omega_star();
    let init = PhasePoint { x: [0.2, -0.1], p: [1.0, 0.3], t: 0.0 };
    let traj = integrate(init, model, field, period / 1000.0, 10_000);
    let charges: Vec<Observable> = (0..2)
        .map(|i| Observable::momentum_charge(i, model, field))
        .chain((0..2).map(|i| Observable::boost_charge(i, model, field)))
        .collect();
    let drift = charges
        .iter()
        .map(|q| {
            let q0 = q.value(&traj[0]);
            let scale = charges.iter().map(|c| c.value(&traj[0]).abs()).fold(0.0, f64::max);
            traj.iter().map(|p| (q.value(p) - q0).abs()).fold(0.0, f64::max) / scale
        })
        .fold(0.0, f64::max);
    s.measure("classical_charge_conservation", "conserved magnetic translations and boosts", 1e-6, Ok(drift));
    let freq = crossing_frequency(&traj, model, field)
        .map(|w| (w - model.omega_star()).abs())
        .ok_or_else(|| crate::Error::Numeric("no velocity crossings".into()));
    s.measure("classical_cyclotron_frequency", "effective cyclotron frequency", 1e-4, freq);

    let points: Vec<PhasePoint> = (0..samples.max(1))
        .map(|_| PhasePoint {
            x: [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
            p: [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
            t: rng.gen_range(0.0..5.0),
        })
        .collect();
    let alg = points.iter().map(|p| verify_charge_algebra(p, model).max_defect()).fold(0.0, f64::max);
    s.measure("charge_bracket_algebra", "Poisson bracket algebra of the charges", 1e-8, Ok(alg));
    let h = Observable::hamiltonian(model, field);
    let x1 = Observable::x(0);
    let anti = points
        .iter()
        .map(|p| (poisson_bracket(&x1, &h, p, model) + poisson_bracket(&h, &x1, p, model)).abs())
        .fold(0.0, f64::max);
    s.measure("bracket_antisymmetry", "noncommutative symplectic structure", 1e-14, Ok(anti));
}

fn numeric_checks(s: &mut Suite, cfg: &VerifyConfig) {
    let v = gauss_laguerre(cfg.radial_order).map(|rule| {
        (0..=20).map(|k| (rule.integrate(|u| u.powi(k)) / factorial(k as usize) - 1.0).abs()).fold(0.0, f64::max)
    });
    s.measure("gauss_laguerre_moments", "radial moment quadrature", 1e-12, v);
}

fn coherent_checks(s: &mut Suite, model: &Model, fock: FockConfig, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) {
    let n = cfg.samples;
    let norm_samples: Vec<(C64, C64)> = (0..n).map(|_| (random_c64(rng, 2.0), random_c64(rng, 2.0))).collect();
    let v = max_of(norm_samples.iter().map(|&(z, zp)| normalization(z, zp, fock).map(|(t, _)| (t - 1.0).abs())));
    s.measure("cs_normalization", "Klauder: normalization", 1e-10, v);

    let triples: Vec<[C64; 3]> =
        (0..n).map(|_| [random_c64(rng, 1.5), random_c64(rng, 1.5), random_c64(rng, 1.5)]).collect();
    let v = max_of(triples.iter().map(|t| {
        continuity_distance(t[0], t[1], t[2], fock).map(|r| (r.numeric - r.closed_form).abs())
    }));
    s.measure("cs_continuity", "Klauder: label continuity", 1e-8, v);

    let v = PlaneRule::new(cfg.radial_order, cfg.angular_order).and_then(|rule| resolution_check(&rule, cfg.n_max / 2));
    s.measure("cs_resolution_of_identity", "Klauder: resolution of the identity", 1e-6, v);

    let v = max_of((0..n).map(|k| {
        let label = CSLabel::new(random_c64(rng, 1.5), random_c64(rng, 1.5), k % 4);
        let t = rng.gen_range(-10.0..10.0);
        let a = apply_evolution(&build_cs(&label, fock)?, t);
        let b = build_cs(&evolve(&label, t), fock)?;
        Ok((a.coeffs - b.coeffs).iter().map(|c| c.norm()).fold(0.0, f64::max))
    }));
    s.measure("cs_temporal_stability", "Klauder: temporal stability", 1e-14, v);

    let zs = [0.5, 1.0, 1.5];
    let v = max_of(zs.iter().map(|&r| {
        let rep = action_expectation(C64::from_polar(r, 0.3), C64::new(0.8, -0.4), model, fock)?;
        Ok((rep.value - rep.expected).abs() / rep.expected)
    }));
    s.measure("cs_action_identity", "Klauder: action identity (quadratic in |z|)", 1e-10, v);
    let v = action_expectation(C64::new(1.5, 0.0), C64::new(0.8, -0.4), model, fock)
        .map(|rep| (rep.value - rep.linear_form).abs() / rep.value);
    s.mismatch("cs_action_identity_printed_linear", "action identity as printed, linear in |z|", 1e-10, v);

    let v = zs
        .iter()
        .map(|&r| {
            let st = number_statistics(C64::new(r, 0.0), C64::new(0.7, 0.2), 40, cfg.n_max);
            let lam = r * r;
            (st.mean - lam).abs().max((st.variance - lam).abs()).max(st.mandel_q.unwrap_or(f64::NAN).abs())
        })
        .fold(0.0, f64::max);
    s.measure("pnd_poisson_statistics", "photon number distribution and Mandel parameter", 1e-10, Ok(v));

    let v = (0..n)
        .map(|k| {
            let (z0, z, zp) = (random_c64(rng, 1.5), random_c64(rng, 1.5), random_c64(rng, 1.0));
            let t = rng.gen_range(0.0..5.0);
            let a = density(z0, z, zp, k % 8, t, model);
            let b = density_meijer(z0, z, zp, k % 8, t, model);
            (a - b).abs() / a.abs().max(1e-300)
        })
        .fold(0.0, f64::max);
    s.measure("density_meijer_route", "temporal density via Meijer G", 1e-10, Ok(v));
    let period = TAU / model.omega_star();
    let v = (0..n)
        .map(|_| {
            let (z0, z) = (random_c64(rng, 1.5), random_c64(rng, 1.5));
            let t = rng.gen_range(0.0..5.0);
            let d0 = density(z0, z, C64::new(1.0, 0.0), 2, t, model);
            let d1 = density(z0, z, C64::new(1.0, 0.0), 2, t + period, model);
            let modulus = (evolved_center(z0, t, model).norm() - z0.norm()).abs();
            ((d0 - d1).abs() / d0.max(1e-300)).max(modulus)
        })
        .fold(0.0, f64::max);
    s.measure("density_periodicity", "evolved centre on a circle, period 2 pi / omega*", 1e-12, Ok(v));
}

fn propagator_checks(s: &mut Suite, model: &Model, rng: &mut ChaCha8Rng) {
    let (z, z1) = (random_c64(rng, 1.0), random_c64(rng, 1.0));
    let v = momentum_completeness(z, z1, model, 64).map(|c| (c - (-(z - z1).norm_sqr()).exp()).norm());
    s.measure("momentum_completeness", "coherent-state overlap through momentum states", 1e-12, v);

    let v = max_of([0.01, 0.1, 1.0].iter().map(|&tau| {
        let (a, b) = (random_c64(rng, 1.0), random_c64(rng, 1.0));
        let num = short_time_quadrature(tau, a, b, model, 96)?;
        let closed = short_time_kernel(tau, model)?.eval(a, b);
        Ok((num - closed).norm() / closed.norm())
    }));
    s.measure("propagator_short_time", "short-time kernel", 1e-8, v);

    let (zf, z0) = (C64::new(0.4, -0.3), C64::new(-0.2, 0.5));
    let v = max_of([1usize, 2, 4, 8, 16, 32, 64].iter().map(|&n| {
        let rep = full_propagator(zf, z0, 1.3, n, model)?;
        Ok((rep.value - rep.closed_form).norm() / rep.closed_form.norm())
    }));
    s.measure("propagator_composition", "sliced composition of Gaussian kernels", 1e-10, v);

    let v = full_propagator(zf, z0, 1e-6, 8, model).map(|rep| {
        let c = model.momentum_scale_sq() / model.params.theta;
        let want = c * (-(zf - z0).norm_sqr()).exp();
        (rep.value.norm() - want).abs() / want
    });
    s.measure("propagator_small_time", "Gaussian transition amplitude at short times", 1e-4, v);

    let v = full_propagator(zf, z0, 1.3, 4, model).map(|rep| (rep.printed_measure_ratio - 1.0).abs());
    s.mismatch("propagator_printed_measure", "slice measure as printed", 1e-10, v);
}

fn quaternion_checks(s: &mut Suite, rng: &mut ChaCha8Rng, samples: usize) {
    let v = (0..samples)
        .map(|_| {
            let sg = sigma(rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU));
            let a = rng.gen_range(-6.0..6.0);
            mat_diff(&exp_i_sigma(a, &sg), &expm_series(&(sg * C64::new(0.0, a))))
        })
        .fold(0.0, f64::max);
    s.measure("quaternion_exponential", "exponential of i a sigma", 1e-12, Ok(v));

    let mut orth: f64 = 0.0;
    let mut same: f64 = 0.0;
    for _ in 0..samples {
        let (r, th, r0, th0) =
            (rng.gen_range(0.0..1.5), rng.gen_range(0.0..TAU), rng.gen_range(0.0..1.5), rng.gen_range(0.0..TAU));
        let (phi, eta) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU));
        let want = trace_formula(r, th, r0, th0);
        let q = Quaternion::make(r, th, phi, eta).expect("valid");
        let (po, eo) = orthogonal_angles(phi, eta);
        let q0 = Quaternion::make(r0, th0, po, eo).expect("valid");
        debug_assert!(dot3(axis(phi, eta), axis(po, eo)).abs() < 1e-12);
        let q0s = Quaternion::make(r0, th0, phi, eta).expect("valid");
        let scale = want.abs().max(1.0);
        orth = orth.max((trace_exp_sum(&q.mat, &q0.mat).re - want).abs() / scale);
        same = same.max((trace_exp_sum(&q.mat, &q0s.mat).re - want).abs() / scale);
    }
    s.measure("trace_formula_orthogonal_axes", "trace of the exponential, orthogonal axes", 1e-10, Ok(orth));
    s.mismatch("trace_formula_same_axis", "trace of the exponential as printed, shared axis", 1e-10, Ok(same));

    let v = (0..samples)
        .map(|_| {
            let (r, th, phi, eta) =
                (rng.gen_range(0.0..2.0), rng.gen_range(0.0..TAU), rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU));
            let lhs = conjugate_label(C64::from_polar(r, -th), &su2_factor(eta, phi, rng.gen_range(0.0..TAU)));
            mat_diff(&lhs, &Quaternion::make(r, -th, phi, eta - FRAC_PI_2).expect("valid").mat)
        })
        .fold(0.0, f64::max);
    s.measure("su2_identification", "quaternion as SU(2)-rotated diagonal matrix", 1e-13, Ok(v));
}

fn vcs_checks(s: &mut Suite, model: &Model, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) {
    let n_max = cfg.n_max;
    let v = max_of((0..cfg.samples).map(|_| {
        let l = VCSLabel {
            z: [random_c64(rng, 1.5), random_c64(rng, 1.5)],
            z_prime: [random_c64(rng, 1.5), random_c64(rng, 1.5)],
        };
        let (b, c) = vcs_normalization(&l, n_max)?;
        Ok((b - c).abs() / c)
    }));
    s.measure("vcs_normalization", "vector coherent state normalization", 1e-10, v);

    let v = Quaternion::make(1.2, 0.4, 1.0, 2.0)
        .and_then(|q| Ok((q, Quaternion::make(0.9, -1.1, 0.3, 0.7)?)))
        .and_then(|(q, qp)| qvcs_normalization(&q, &qp, n_max.min(48)))
        .map(|(total, _)| (total - 1.0).abs());
    s.measure("qvcs_normalization", "quaternionic VCS normalization", 1e-10, v);

    s.measure("moment_problems", "radial moment problems", 1e-10, moment_problem_check(cfg.radial_order, 10));

    let f0 = (0..cfg.samples)
        .map(|_| (uncertainty_factor(0.0, rng.gen_range(0.0..TAU), rng.gen_range(0.0..PI)) - 1.0).abs())
        .fold(0.0, f64::max);
    s.measure("uncertainty_factor_origin", "F at r = 0", 0.0, Ok(f0));
    let grid: Vec<f64> = (0..50).map(|i| i as f64 / 49.0).collect();
    let mut fmin = f64::INFINITY;
    for &a in &grid {
        for &b in &grid {
            for &c in &grid {
                fmin = fmin.min(uncertainty_factor(3.0 * a, TAU * b, PI * c));
            }
        }
    }
    s.measure("uncertainty_factor_lower_bound", "F >= 1", 0.0, Ok((1.0 - fmin).max(0.0)));
    let v = (0..cfg.samples)
        .map(|_| {
            let rep = uncertainty_report(rng.gen_range(0.0..2.0), rng.gen_range(0.0..TAU), rng.gen_range(0.0..PI), model);
            rep.identity_defect / rep.product
        })
        .fold(0.0, f64::max);
    s.measure("uncertainty_product_identity", "momentum dispersion product", 1e-12, Ok(v));
    let v = critical_sweep(model);
    s.measure("uncertainty_critical_collapse", "dispersions vanish at the critical point", 0.0, v);
    let rep = uncertainty_report(1.0, 0.5, 0.8, model);
    let big = model.derived.big_theta;
    let printed = big * big / 64.0 * rep.factor;
    s.mismatch(
        "uncertainty_printed_dimensions",
        "uncertainty product as printed with Theta^2 in the numerator",
        1e-12,
        Ok((printed - rep.product).abs() / rep.product),
    );

    let v = Quaternion::make(0.8, 0.6, 1.1, 0.4)
        .and_then(|q| {
            let qp = Quaternion::make(0.5, 1.3, q.phi, q.eta)?;
            quadrature_expectations(&q, &qp, 0, model, 24)
        })
        .map(|r| r.max_difference);
    s.measure("quadrature_moments", "momentum quadrature expectations", 1e-10, v);

    let v = (0..cfg.samples)
        .map(|_| {
            let q = Quaternion::make(rng.gen_range(0.0..2.0), rng.gen_range(0.0..TAU), rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU))
                .expect("valid");
            let t = rng.gen_range(0.0..10.0);
            mat_diff(&evolved_quaternion_matrix(&q, t, model), &evolve_quaternion(&q, t, model).mat)
        })
        .fold(0.0, f64::max);
    s.measure("qvcs_evolution_matrix", "evolved quaternion matrix", 1e-14, Ok(v));

    let routes = qvcs_evolution_routes(model);
    s.measure("qvcs_temporal_stability", "QVCS phase evolution as a label shift", 1e-14, routes.as_ref().map(|r| r.0).map_err(Clone::clone));
    s.mismatch("qvcs_evolution_printed_angle_shift", "QVCS evolution as an angle shift", 1e-14, routes.map(|r| r.1));

    let v = max_of((0..cfg.samples).map(|k| {
        let p = DensityParams {
            r: rng.gen_range(0.0..1.5),
            r0: rng.gen_range(0.0..1.5),
            theta0: rng.gen_range(0.0..TAU),
            rho: rng.gen_range(0.2..1.5),
            m: k % 8,
        };
        let (th, t) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..1000.0));
        let a = temporal_density(&p, th, t, model);
        let b = temporal_density_trace(&p, th, t, rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU), model)?;
        Ok((a - b).abs() / a.abs().max(1e-300))
    }));
    s.measure("qvcs_density_trace_route", "QVCS temporal density", 1e-10, v);
}

/// `dPx dPy` at `r = 1` along `theta -> 1/(eB)`: returns the number of
/// non-decreasing steps plus the final-to-initial ratio.
fn critical_sweep(model: &Model) -> Result<f64> {
    let eb = model.eb();
    let mut prev = f64::INFINITY;
    let mut violations = 0.0;
    let mut first = None;
    let mut last = 0.0;
    for k in 0..20 {
        let theta = (1.0 - 10f64.powf(-(k as f64) / 2.0 - 0.3)) / eb;
        let m = model.with_theta(theta)?;
        let rep = uncertainty_report(1.0, 0.5, 0.8, &m);
        let v = (rep.dpx2 * rep.dpy2).sqrt();
        if v >= prev {
            violations += 1.0;
        }
        first.get_or_insert(v);
        prev = v;
        last = v;
    }
    let ratio = last / first.unwrap_or(1.0);
    Ok(violations + if ratio < 1e-6 { 0.0 } else { ratio })
}

/// Deviations of the phase-evolved QVCS from the `eta`-shifted label and
/// from the angle-shifted label.
fn qvcs_evolution_routes(model: &Model) -> Result<(f64, f64)> {
    let q = Quaternion::make(0.9, 0.7, 1.2, 0.3)?;
    let qp = Quaternion::make(0.6, -0.4, 0.5, 2.0)?;
    let label = QVCSLabel { q, q_prime: qp, j: 1, n_tilde: 1, m_tilde: 2, eta: 0.2 };
    let t = 3.7;
    let n_max = 30;
    let evolved = apply_qvcs_evolution(&build_qvcs(&label, n_max)?, t, model);
    let shifted = build_qvcs(&QVCSLabel { eta: label.eta + model.omega_star() * t, ..label }, n_max)?;
    let rotated = build_qvcs(&evolve_qvcs(&label, t, model), n_max)?;
    let diff = |a: &crate::vcs::QVCSState, b: &crate::vcs::QVCSState| {
        a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    };
    Ok((diff(&evolved, &shifted), diff(&evolved, &rotated)))
}

fn wigner_checks(s: &mut Suite, rng: &mut ChaCha8Rng) {
    let v = HermiteBasis::new(12, 100).and_then(|b| WignerGrid::new(&b, 50)).map(|grid| {
        let d = 13;
        let rand_op = |rng: &mut ChaCha8Rng| {
            DMatrix::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        };
        (0..20)
            .map(|_| {
                let (x, y) = (rand_op(rng), rand_op(rng));
                let hs: C64 = x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum();
                (grid.l2_inner(&x, &y) - hs).norm() / hs.norm().max(1.0)
            })
            .fold(0.0, f64::max)
    });
    s.measure("wigner_unitarity", "Wigner transform is unitary", 1e-4, v);

    let orders = AngularOrders::default();
    let scale = 64.0 * PI.powi(4);
    let v = max_of([(0i64, 0i64), (1, 0), (0, 3), (2, -1)].iter().map(|&(d1, d2)| {
        let a = angular_orthogonality(d1, d2, orders)?;
        let target = if (d1, d2) == (0, 0) { scale } else { 0.0 };
        let dev = (a[(0, 0)] - target).norm().max((a[(1, 1)] - target).norm()).max(a[(0, 1)].norm()).max(a[(1, 0)].norm());
        Ok(dev / scale)
    }));
    s.measure("wigner_angular_integral", "appendix angular integral", 1e-8, v);

    let v = mapped_resolution_check(4, 64, orders);
    s.measure("wigner_mapped_resolution", "mapped QVCS resolution of the identity", 1e-6, v);

    let v = (0..10)
        .map(|_| {
            let x = DMatrix::from_fn(4, 4, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let y = DMatrix::from_fn(4, 4, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let ip = |a: &DMatrix<C64>, b: &DMatrix<C64>| a.iter().zip(b.iter()).map(|(u, v)| u.conj() * v).sum::<C64>();
            (ip(&map_j(&x), &map_j(&y)) - ip(&x, &y).conj()).norm()
        })
        .fold(0.0, f64::max);
    s.measure("wigner_j_antiunitary", "antiunitary conjugation map", 1e-13, Ok(v));
}
