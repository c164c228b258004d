//! Acceptance criteria. Prints one PASS/FAIL line per criterion with the
//! measured values underneath, and exits non-zero if any criterion fails.

use exotic_landau::classical::{crossing_frequency, integrate, verify_charge_algebra, Field, Observable, PhasePoint};
use exotic_landau::coherent::{
    action_expectation, apply_evolution, build_cs, continuity_distance, density, evolve, evolved_center,
    normalization, number_statistics, resolution_check, CSLabel,
};
use exotic_landau::figures::{self, DensitySurface, FixedAngle, QvcsSurface};
use exotic_landau::fock::FockConfig;
use exotic_landau::numerics::PlaneRule;
use exotic_landau::propagator::{full_propagator, short_time_kernel, short_time_quadrature};
use exotic_landau::quaternion::{
    exp_i_sigma, expm_series, orthogonal_angles, sigma, trace_exp_sum, trace_formula, Mat2, Quaternion,
};
use exotic_landau::vcs::{
    evolve_quaternion, evolved_quaternion_matrix, moment_problem_check, qvcs_normalization, temporal_density,
    temporal_density_trace, uncertainty_factor, uncertainty_report, DensityParams,
};
use exotic_landau::wigner::{angular_orthogonality, mapped_resolution_check, AngularOrders, HermiteBasis, WignerGrid};
use exotic_landau::{Model, ModelParams, C64};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_6, PI, SQRT_2, TAU};
use std::process::ExitCode;
use std::time::Instant;

struct Part {
    label: String,
    value: f64,
    limit: f64,
    ok: bool,
}

/// `value <= limit`.
fn below(label: &str, value: f64, limit: f64) -> Part {
    Part { label: label.into(), value, limit, ok: value.is_finite() && value <= limit }
}

/// `value >= limit`.
fn above(label: &str, value: f64, limit: f64) -> Part {
    Part { label: format!("{label} (at least)"), value, limit, ok: value >= limit }
}

struct Outcome {
    parts: Vec<Part>,
    /// Reported but not counted towards pass/fail.
    notes: Vec<String>,
}

impl Outcome {
    fn new(parts: Vec<Part>) -> Self {
        Self { parts, notes: Vec::new() }
    }
}

fn model() -> Model {
    Model::new(ModelParams::default()).expect("default parameters")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn disc(r: &mut ChaCha8Rng, max_abs: f64) -> C64 {
    C64::from_polar(max_abs * r.gen::<f64>().sqrt(), r.gen_range(0.0..TAU))
}

fn mat_diff(a: &Mat2, b: &Mat2) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn classical_conservation() -> Outcome {
    let start = Instant::now();
    let m = model();
    let field = Field::default();
    let period = TAU / m.omega_star();
    let init = PhasePoint { x: [0.2, -0.1], p: [1.0, 0.3], t: 0.0 };
    let traj = integrate(init, &m, field, period / 1000.0, 10_000);
    let mut drift: f64 = 0.0;
    for q in (0..2)
        .map(|i| Observable::momentum_charge(i, &m, field))
        .chain((0..2).map(|i| Observable::boost_charge(i, &m, field)))
    {
        let q0 = q.value(&traj[0]);
        drift = drift.max(traj.iter().map(|s| (q.value(s) - q0).abs()).fold(0.0, f64::max) / q0.abs());
    }
    let freq = crossing_frequency(&traj, &m, field).map_or(f64::INFINITY, |w| (w - m.omega_star()).abs());
    Outcome::new(vec![
        below("max relative drift of P1, P2, K1, K2", drift, 1e-6),
        below("|measured frequency - omega*|", freq, 1e-4),
        below("runtime [s]", start.elapsed().as_secs_f64(), 1.0),
    ])
}

fn bracket_algebra() -> Outcome {
    let m = model();
    let mut r = rng(2);
    let worst = (0..100)
        .map(|_| {
            let s = PhasePoint {
                x: [r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0)],
                p: [r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0)],
                t: r.gen_range(0.0..10.0),
            };
            verify_charge_algebra(&s, &m).max_defect()
        })
        .fold(0.0, f64::max);
    Outcome::new(vec![below("max bracket defect over 100 points", worst, 1e-8)])
}

fn cs_normalization() -> Outcome {
    let cfg = FockConfig::new(64).unwrap();
    let mut r = rng(3);
    let mut labels: Vec<(C64, C64)> = (0..100).map(|_| (disc(&mut r, 2.0), disc(&mut r, 2.0))).collect();
    labels.push((C64::new(2.0, 0.0), C64::new(0.0, 2.0)));
    let worst = labels.iter().map(|&(z, zp)| (normalization(z, zp, cfg).unwrap().0 - 1.0).abs()).fold(0.0, f64::max);
    Outcome::new(vec![below("max |norm - 1|, |z|,|z'| <= 2, n_max 64", worst, 1e-10)])
}

fn continuity() -> Outcome {
    let cfg = FockConfig::new(64).unwrap();
    let mut r = rng(4);
    let worst = (0..100)
        .map(|_| {
            let rep = continuity_distance(disc(&mut r, 1.5), disc(&mut r, 1.5), disc(&mut r, 1.5), cfg).unwrap();
            (rep.numeric - rep.closed_form).abs()
        })
        .fold(0.0, f64::max);
    Outcome::new(vec![below("max |numeric - closed form| over 100 triples", worst, 1e-8)])
}

fn resolution() -> Outcome {
    let start = Instant::now();
    let rule = PlaneRule::new(64, 128).unwrap();
    let dev = resolution_check(&rule, 32).unwrap();
    Outcome::new(vec![
        below("max deviation on indices <= 32", dev, 1e-6),
        below("runtime [s]", start.elapsed().as_secs_f64(), 30.0),
    ])
}

fn temporal_stability() -> Outcome {
    let cfg = FockConfig::new(64).unwrap();
    let mut r = rng(6);
    let worst = (0..20)
        .map(|k| {
            let label = CSLabel::new(disc(&mut r, 1.5), disc(&mut r, 1.5), k % 5);
            let t = r.gen_range(-20.0..20.0);
            let a = apply_evolution(&build_cs(&label, cfg).unwrap(), t);
            let b = build_cs(&evolve(&label, t), cfg).unwrap();
            (a.coeffs - b.coeffs).iter().map(|c| c.norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    Outcome::new(vec![below("max entrywise difference", worst, 1e-14)])
}

fn action_identity() -> Outcome {
    let m = model();
    let cfg = FockConfig::new(64).unwrap();
    let zp = C64::new(0.6, -0.5);
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for r in [0.5, 1.0, 1.5, 2.0] {
        let rep = action_expectation(C64::from_polar(r, 0.7), zp, &m, cfg).unwrap();
        worst = worst.max((rep.value - rep.expected).abs());
        notes.push(format!(
            "|z| = {r}: brute {:.12} vs omega*|z| = {:.12} (differs by {:.3e})",
            rep.value,
            rep.linear_form,
            (rep.value - rep.linear_form).abs()
        ));
    }
    let at_one = action_expectation(C64::from_polar(1.0, 0.7), zp, &m, cfg).unwrap();
    let mut out = Outcome::new(vec![
        below("max |brute - omega*|z|^2|", worst, 1e-10),
        below("|brute - omega*|z|| at |z| = 1", (at_one.value - at_one.linear_form).abs(), 1e-10),
    ]);
    out.notes = notes;
    out
}

fn pnd_mandel() -> Outcome {
    let mut parts = Vec::new();
    for r in [0.5, 1.0, 1.5] {
        let st = number_statistics(C64::from_polar(r, 0.4), C64::new(0.9, 0.3), 60, 64);
        let lam = r * r;
        let dev = (st.mean - lam).abs().max((st.variance - lam).abs()).max(st.mandel_q.unwrap().abs());
        parts.push(below(&format!("|z| = {r}: max of mean, variance, Q deviations"), dev, 1e-10));
    }
    Outcome::new(parts)
}

fn propagator() -> Outcome {
    let m = model();
    let mut r = rng(9);
    let short = [0.01, 0.1, 1.0]
        .iter()
        .map(|&tau| {
            let (a, b) = (disc(&mut r, 1.0), disc(&mut r, 1.0));
            (short_time_quadrature(tau, a, b, &m, 96).unwrap() - short_time_kernel(tau, &m).unwrap().eval(a, b)).norm()
        })
        .fold(0.0, f64::max);
    let (zf, z0) = (C64::new(0.4, -0.3), C64::new(-0.2, 0.5));
    let comp = (1..=64)
        .map(|n| {
            let rep = full_propagator(zf, z0, 1.3, n, &m).unwrap();
            (rep.value - rep.closed_form).norm()
        })
        .fold(0.0, f64::max);
    let small = full_propagator(zf, z0, 1e-6, 8, &m).unwrap();
    let eb = m.eb();
    let th = m.params.theta;
    let want = (1.0 - eb * th) / (2.0 * eb * th) * (-(zf - z0).norm_sqr()).exp();
    Outcome::new(vec![
        below("(a) short-time quadrature vs closed form", short, 1e-8),
        below("(b) n-slice composition vs closed form, n <= 64", comp, 1e-10),
        below("(c) relative modulus error at T = 1e-6", (small.value.norm() - want).abs() / want, 1e-4),
    ])
}

fn quaternion_algebra() -> Outcome {
    let mut r = rng(10);
    let expo = (0..50)
        .map(|_| {
            let s = sigma(r.gen_range(0.0..PI), r.gen_range(0.0..TAU));
            let a = r.gen_range(-2.0 * PI..2.0 * PI);
            mat_diff(&exp_i_sigma(a, &s), &expm_series(&(s * C64::new(0.0, a))))
        })
        .fold(0.0, f64::max);
    let mut same: f64 = 0.0;
    let mut orth: f64 = 0.0;
    for _ in 0..50 {
        let (rr, th, r0, th0) = (r.gen_range(0.0..1.5), r.gen_range(0.0..TAU), r.gen_range(0.0..1.5), r.gen_range(0.0..TAU));
        let (phi, eta) = (r.gen_range(0.0..PI), r.gen_range(0.0..TAU));
        let want = trace_formula(rr, th, r0, th0);
        let q = Quaternion::make(rr, th, phi, eta).unwrap();
        let q0 = Quaternion::make(r0, th0, phi, eta).unwrap();
        let (po, eo) = orthogonal_angles(phi, eta);
        let q0o = Quaternion::make(r0, th0, po, eo).unwrap();
        let scale = want.abs().max(1.0);
        same = same.max((trace_exp_sum(&q.mat, &q0.mat).re - want).abs() / scale);
        orth = orth.max((trace_exp_sum(&q.mat, &q0o.mat).re - want).abs() / scale);
    }
    let mut out = Outcome::new(vec![
        below("closed-form exponential vs series oracle", expo, 1e-12),
        below("trace formula on 50 same-axis pairs (relative)", same, 1e-10),
    ]);
    out.notes.push(format!(
        "same-axis trace equals 4 e^(2 r r0 cos(t - t0)); the stated formula holds for orthogonal axes: deviation {orth:.3e}"
    ));
    out
}

fn qvcs_normalization_check() -> Outcome {
    let mut worst: f64 = 0.0;
    for &rr in &[0.5, 1.0, 1.5] {
        for &rho in &[0.5, 1.0, 1.5] {
            let q = Quaternion::make(rr, 0.7, 1.1, 0.4).unwrap();
            let qp = Quaternion::make(rho, -1.2, 0.3, 2.5).unwrap();
            let (total, _) = qvcs_normalization(&q, &qp, 64).unwrap();
            worst = worst.max((total - 1.0).abs());
        }
    }
    Outcome::new(vec![below("max relative deviation of the brute-force sum", worst, 1e-10)])
}

fn moment_problems() -> Outcome {
    let start = Instant::now();
    let dev = moment_problem_check(64, 10).unwrap();
    Outcome::new(vec![
        below("max |integral - 1| for n, m <= 10", dev, 1e-10),
        below("runtime [s]", start.elapsed().as_secs_f64(), 1.0),
    ])
}

fn uncertainty() -> Outcome {
    let m = model();
    let mut r = rng(13);
    let origin = (0..100)
        .map(|_| (uncertainty_factor(0.0, r.gen_range(0.0..TAU), r.gen_range(0.0..PI)) - 1.0).abs())
        .fold(0.0, f64::max);
    let mut fmin = f64::INFINITY;
    for i in 0..50 {
        for j in 0..50 {
            for k in 0..50 {
                fmin = fmin.min(uncertainty_factor(3.0 * i as f64 / 49.0, TAU * j as f64 / 49.0, PI * k as f64 / 49.0));
            }
        }
    }
    let ident = (0..100)
        .map(|_| {
            let rep = uncertainty_report(r.gen_range(0.0..2.0), r.gen_range(0.0..TAU), r.gen_range(0.0..PI), &m);
            rep.identity_defect / rep.product
        })
        .fold(0.0, f64::max);
    let sweep: Vec<f64> = (0..20)
        .map(|k| {
            let theta = (1.0 - 10f64.powf(-(k as f64) / 2.0 - 0.3)) / m.eb();
            let rep = uncertainty_report(1.0, 0.5, 0.8, &m.with_theta(theta).unwrap());
            (rep.dpx2 * rep.dpy2).sqrt()
        })
        .collect();
    let increases = sweep.windows(2).filter(|w| w[1] >= w[0]).count();
    Outcome::new(vec![
        below("max |F(0, t, phi) - 1|", origin, 0.0),
        above("min F on 50^3 grid", fmin, 1.0),
        below("relative defect of dPx^2 dPy^2 = hbar^4 F / (16 Theta^2)", ident, 1e-12),
        below("non-decreasing steps in the 20-point sweep", increases as f64, 0.0),
        below("last / first dPx dPy in the sweep", sweep[19] / sweep[0], 1e-6),
    ])
}

fn qvcs_evolution() -> Outcome {
    let m = model();
    let mut r = rng(14);
    let matrix = (0..50)
        .map(|_| {
            let q = Quaternion::make(r.gen_range(0.0..2.0), r.gen_range(0.0..TAU), r.gen_range(0.0..PI), r.gen_range(0.0..TAU))
                .unwrap();
            let t = r.gen_range(0.0..5.0);
            mat_diff(&evolved_quaternion_matrix(&q, t, &m), &evolve_quaternion(&q, t, &m).mat)
        })
        .fold(0.0, f64::max);
    let routes = (0..50)
        .map(|k| {
            let p = DensityParams {
                r: r.gen_range(0.0..1.5),
                r0: r.gen_range(0.0..1.5),
                theta0: r.gen_range(0.0..TAU),
                rho: r.gen_range(0.2..1.5),
                m: k % 8,
            };
            let (th, t) = (r.gen_range(0.0..TAU), r.gen_range(0.0..1000.0));
            let a = temporal_density(&p, th, t, &m);
            let b = temporal_density_trace(&p, th, t, r.gen_range(0.0..PI), r.gen_range(0.0..TAU), &m).unwrap();
            (a - b).abs() / a.abs().max(1e-300)
        })
        .fold(0.0, f64::max);
    let peaks = |rho: f64| -> Vec<f64> {
        [2, 5, 7]
            .iter()
            .map(|&mm| {
                [FixedAngle::Theta(FRAC_PI_6), FixedAngle::Theta0(FRAC_PI_6)]
                    .iter()
                    .map(|&fixed| {
                        let s = QvcsSurface { rho, ..QvcsSurface::new(mm, fixed) };
                        figures::qvcsdensity4(&m, &s).unwrap().column_max(3)
                    })
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect()
    };
    let reference = [0.2, 0.01, 1e-4];
    let at_one = peaks(1.0);
    let mut out = Outcome::new(vec![
        below("evolved matrix entrywise", matrix, 1e-14),
        below("closed-form density vs trace route (relative)", routes, 1e-10),
        below("peak ratio m=5 / m=2", at_one[1] / at_one[0], 0.1),
        below("peak ratio m=7 / m=5", at_one[2] / at_one[1], 0.1),
        below("worst factor vs reference peaks 0.2, 0.01, 1e-4", factor_spread(&at_one, &reference), 5.0),
    ]);
    out.notes.push(format!("peaks at r = r0 = rho = 1: {:.3e}, {:.3e}, {:.3e}", at_one[0], at_one[1], at_one[2]));
    let at_root2 = peaks(SQRT_2);
    out.notes.push(format!(
        "peaks at rho = sqrt 2: {:.3e}, {:.3e}, {:.3e}; worst factor vs reference {:.2}",
        at_root2[0],
        at_root2[1],
        at_root2[2],
        factor_spread(&at_root2, &reference)
    ));
    out
}

/// Largest `max(a/b, b/a)` over paired entries.
fn factor_spread(measured: &[f64], reference: &[f64]) -> f64 {
    measured.iter().zip(reference).map(|(a, b)| (a / b).max(b / a)).fold(0.0, f64::max)
}

fn wigner() -> Outcome {
    let start = Instant::now();
    let basis = HermiteBasis::new(12, 100).unwrap();
    let grid = WignerGrid::new(&basis, 50).unwrap();
    let mut r = rng(15);
    let op = |r: &mut ChaCha8Rng| DMatrix::from_fn(13, 13, |_, _| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    let unit = (0..20)
        .map(|_| {
            let (x, y) = (op(&mut r), op(&mut r));
            let hs: C64 = x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum();
            (grid.l2_inner(&x, &y) - hs).norm()
        })
        .fold(0.0, f64::max);
    let scale = 64.0 * PI.powi(4);
    let ang = [(0i64, 0i64), (1, 0), (0, 3), (2, -1), (-4, 5)]
        .iter()
        .map(|&(d1, d2)| {
            let a = angular_orthogonality(d1, d2, AngularOrders::default()).unwrap();
            let target = if (d1, d2) == (0, 0) { scale } else { 0.0 };
            (a - Mat2::identity() * C64::from(target)).iter().map(|v| v.norm()).fold(0.0, f64::max) / scale
        })
        .fold(0.0, f64::max);
    let mapped = mapped_resolution_check(4, 64, AngularOrders::default()).unwrap();
    Outcome::new(vec![
        below("unitarity |<WX, WY> - <X, Y>_HS| at k_max 12", unit, 1e-4),
        below("angular branches relative to 64 pi^4", ang, 1e-8),
        below("mapped resolution block deviation at k_max 4", mapped, 1e-6),
        below("runtime [s]", start.elapsed().as_secs_f64(), 60.0),
    ])
}

fn figure_density() -> Outcome {
    let m = model();
    let mut r = rng(16);
    let period = TAU / m.omega_star();
    let mut modulus: f64 = 0.0;
    let mut periodic: f64 = 0.0;
    for _ in 0..50 {
        let (z0, z) = (disc(&mut r, 1.5), disc(&mut r, 1.5));
        let t = r.gen_range(0.0..5.0);
        modulus = modulus.max((evolved_center(z0, t, &m).norm() - z0.norm()).abs());
        let zp = C64::new(1.0, 0.0);
        let (a, b) = (density(z0, z, zp, 2, t, &m), density(z0, z, zp, 2, t + period, &m));
        periodic = periodic.max((a - b).abs() / a);
    }
    let peaks = |abs_z_prime: f64| -> Vec<f64> {
        [2, 5, 7]
            .iter()
            .map(|&mm| {
                let s = DensitySurface { m: mm, abs_z_prime, ..Default::default() };
                figures::density1(&m, &s).unwrap().column_max(2)
            })
            .collect()
    };
    let reference = [0.04, 6e-4, 6e-6];
    let at_one = peaks(1.0);
    let prefactor: Vec<f64> = [2u32, 5, 7].iter().map(|&k| {
        let f: f64 = (1..=k).map(f64::from).product();
        ((-1.0f64).exp() / f).powi(2)
    }).collect();
    let scaling = at_one.iter().zip(&prefactor).map(|(a, b)| (a / b - 1.0).abs()).fold(0.0, f64::max);
    let mut out = Outcome::new(vec![
        below("| |z0(t)| - |z0| |", modulus, 1e-12),
        below("relative change over one period 2 pi / omega*", periodic, 1e-12),
        below("peaks vs (e^-|z'|^2 |z'|^2m / m!)^2 at |z'| = 1 (relative)", scaling, 1e-12),
        below("worst factor vs reference peaks 0.04, 6e-4, 6e-6", factor_spread(&at_one, &reference), 5.0),
    ]);
    out.notes.push(format!("peaks at |z| = |z0| = |z'| = 1: {:.3e}, {:.3e}, {:.3e}", at_one[0], at_one[1], at_one[2]));
    let at_root2 = peaks(SQRT_2);
    out.notes.push(format!(
        "peaks at |z'| = sqrt 2: {:.3e}, {:.3e}, {:.3e}; worst factor vs reference {:.2}",
        at_root2[0],
        at_root2[1],
        at_root2[2],
        factor_spread(&at_root2, &reference)
    ));
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 16] = [
        ("classical conservation", classical_conservation),
        ("bracket algebra", bracket_algebra),
        ("coherent-state normalization", cs_normalization),
        ("label continuity", continuity),
        ("resolution of the identity", resolution),
        ("temporal stability", temporal_stability),
        ("action identity", action_identity),
        ("number distribution and Mandel Q", pnd_mandel),
        ("propagator", propagator),
        ("quaternion algebra", quaternion_algebra),
        ("QVCS normalization", qvcs_normalization_check),
        ("moment problems", moment_problems),
        ("uncertainty function", uncertainty),
        ("QVCS evolution and density", qvcs_evolution),
        ("Wigner transform", wigner),
        ("density surfaces", figure_density),
    ];
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let out = run();
        let ok = out.parts.iter().all(|p| p.ok);
        println!("criterion {:>2} {} {title}", i + 1, if ok { "PASS" } else { "FAIL" });
        for p in &out.parts {
            println!("    [{}] {}: {:.3e} (limit {:.1e})", if p.ok { "ok" } else { "x " }, p.label, p.value, p.limit);
        }
        for n in &out.notes {
            println!("    note: {n}");
        }
        if !ok {
            failed.push(i + 1);
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
