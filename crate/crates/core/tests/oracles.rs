//! Frozen reference values computed independently (closed forms by hand,
//! or high-precision quadrature and series outside this crate).

use exotic_landau::classical::{integrate, Field, PhasePoint};
use exotic_landau::coherent::{action_expectation, density, meijer_g_1001, overlap, overlap_closed_form, CSLabel};
use exotic_landau::figures::pnd_integral_closed;
use exotic_landau::fock::FockConfig;
use exotic_landau::numerics::{gauss_hermite, gauss_laguerre, gauss_legendre};
use exotic_landau::propagator::{full_propagator, short_time_kernel, short_time_quadrature};
use exotic_landau::quaternion::{trace_formula, trace_formula_axes};
use exotic_landau::vcs::{qvcs_norm, uncertainty_factor};
use exotic_landau::wigner::HermiteBasis;
use exotic_landau::{Error, Model, ModelParams, C64};
use std::f64::consts::{E, FRAC_PI_3, FRAC_PI_4, PI, SQRT_2};

fn model() -> Model {
    Model::new(ModelParams::default()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn two_point_laguerre_rule() {
    let r = gauss_laguerre(2).unwrap();
    assert!(close(r.nodes[0], 2.0 - SQRT_2, 1e-15));
    assert!(close(r.nodes[1], 2.0 + SQRT_2, 1e-15));
    assert!(close(r.weights[0], (2.0 + SQRT_2) / 4.0, 1e-15));
    assert!(close(r.weights[1], (2.0 - SQRT_2) / 4.0, 1e-15));
}

#[test]
fn three_point_hermite_rule() {
    let r = gauss_hermite(3).unwrap();
    assert!(close(r.nodes[0], -1.224744871391589, 1e-15));
    assert!(r.nodes[1].abs() < 1e-15);
    assert!(close(r.weights[0], 0.29540897515091934, 1e-14));
    assert!(close(r.weights[1], 1.1816359006036774, 1e-14));
}

#[test]
fn two_point_legendre_on_unit_interval() {
    let r = gauss_legendre(2, 0.0, 1.0).unwrap();
    assert!(close(r.nodes[0], 0.5 - 0.5 / 3f64.sqrt(), 1e-15));
    assert!(close(r.weights[0], 0.5, 1e-15));
}

#[test]
fn derived_constants_at_defaults() {
    let d = model().derived;
    assert!(close(d.effective_mass, 0.7, 1e-15));
    assert!(close(d.cyclotron, 1.0, 1e-15));
    assert!(close(d.effective_frequency, 1.4285714285714286, 1e-15));
    assert!(close(d.big_theta, 1.4285714285714286, 1e-15));
    assert!(close(d.kappa, 0.3, 1e-15));
    assert!(close(model().momentum_scale_sq(), 0.35, 1e-15));
}

#[test]
fn critical_point_rejected() {
    let p = ModelParams { theta: 1.0, ..ModelParams::default() };
    assert!(matches!(Model::new(p), Err(Error::CriticalPoint { .. })));
}

#[test]
fn cyclotron_orbit_closes_after_one_period() {
    let m = model();
    let init = PhasePoint { x: [0.3, -0.2], p: [0.8, 0.1], t: 0.0 };
    let period = 2.0 * PI / m.omega_star();
    let traj = integrate(init, &m, Field::default(), period / 2000.0, 2000);
    let end = traj.last().unwrap();
    for i in 0..2 {
        assert!((end.x[i] - init.x[i]).abs() < 1e-10);
        assert!((end.p[i] - init.p[i]).abs() < 1e-10);
    }
}

#[test]
fn coherent_overlap_reference() {
    // Series summed to 80 terms at 30 digits.
    let (z, z0, zp) = (C64::new(0.3, -0.7), C64::new(-0.5, 0.2), C64::new(0.8, 0.4));
    let want = C64::new(0.017794905166823242, -0.0053102272375705);
    assert!((overlap_closed_form(z, z0, zp, 3) - want).norm() < 1e-16);
    let cfg = FockConfig::new(40).unwrap();
    let brute = overlap(&CSLabel::new(z, zp, 3), &CSLabel::new(z0, zp, 3), cfg).unwrap();
    assert!((brute - want).norm() < 1e-16);
}

#[test]
fn action_reference() {
    let cfg = FockConfig::new(64).unwrap();
    let rep = action_expectation(C64::new(1.5, 0.0), C64::new(0.6, -0.5), &model(), cfg).unwrap();
    assert!(close(rep.value, 3.2142857142857144, 1e-13));
}

#[test]
fn vacuum_density_self_point() {
    let z = C64::new(0.4, 0.1);
    assert!(close(density(z, z, C64::new(0.0, 0.0), 0, 0.0, &model()), 1.0, 1e-15));
}

#[test]
fn meijer_g_is_exponential() {
    for w in [C64::new(2.5, 0.0), C64::new(-1.0, 3.0), C64::new(0.0, 0.0)] {
        assert!((meijer_g_1001(w) - (-w).exp()).norm() < 1e-13 * (-w).exp().norm().max(1.0));
    }
}

#[test]
fn short_time_kernel_reference() {
    // Two-dimensional adaptive quadrature at 20 digits.
    let (z1, z0) = (C64::new(0.3, -0.2), C64::new(-0.1, 0.5));
    let want = C64::new(0.18057744210259413, -0.04518162816139965);
    let m = model();
    assert!((short_time_kernel(0.5, &m).unwrap().eval(z1, z0) - want).norm() < 1e-14);
    assert!((short_time_quadrature(0.5, z1, z0, &m, 96).unwrap() - want).norm() < 1e-14);
}

#[test]
fn propagator_at_zero_time() {
    let (zf, z0) = (C64::new(0.4, -0.3), C64::new(-0.2, 0.5));
    let rep = full_propagator(zf, z0, 0.0, 4, &model()).unwrap();
    let want = 0.35 / 0.3 * (-(zf - z0).norm_sqr()).exp();
    assert!((rep.value - want).norm() < 1e-14);
}

#[test]
fn trace_values() {
    assert!(close(trace_formula(1.0, 0.0, 1.0, 0.0), 4.0 * E * E, 1e-15));
    let v = trace_formula(1.0, FRAC_PI_4, 0.5, FRAC_PI_3);
    let want = 4.0 * (0.5 * SQRT_2 / 2.0).exp() * (3f64.sqrt() / 2.0 * SQRT_2 / 2.0).cos();
    assert!(close(v, want, 1e-15));
    let shared = trace_formula_axes(1.0, FRAC_PI_4, 0.5, FRAC_PI_3, 1.0);
    assert!(close(shared, 4.0 * (FRAC_PI_4 - FRAC_PI_3).cos().exp(), 1e-15));
}

#[test]
fn uncertainty_factor_reference() {
    assert!(close(uncertainty_factor(SQRT_2, FRAC_PI_4, FRAC_PI_3), 13.5, 1e-14));
}

#[test]
fn qvcs_norm_reference() {
    assert!(close(qvcs_norm(1.0, 1.0), 2.0 * E.powi(4), 1e-15));
}

#[test]
fn pnd_integral_reference() {
    assert!(close(pnd_integral_closed(0, 0), PI / 4.0, 1e-15));
    assert!(close(pnd_integral_closed(1, 1), PI / 16.0, 1e-15));
}

#[test]
fn weyl_ground_state_gaussian() {
    let b = HermiteBasis::new(3, 60).unwrap();
    let v = b.weyl_matrix_element(0, 0, 1.2, -0.7).unwrap();
    assert!((v - (-(1.44f64 + 0.49) / 4.0).exp()).norm() < 1e-14);
    assert!(b.weyl_matrix_element(4, 0, 0.0, 0.0).is_err());
}
