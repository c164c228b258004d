//! Classical exotic Landau dynamics in a uniform electric field.
//!
//! The bracket carries the Dirac factor `M / M*` in front of the
//! canonical, `theta` and `eB` terms, so that `{x_i, H}` and `{p_i, H}`
//! reproduce `M* xdot = p - M e theta eps E` and `pdot = eB eps xdot + eE`.

use crate::Model;

/// Levi-Civita symbol with `eps^{12} = +1`.
pub fn eps(i: usize, j: usize) -> f64 {
    match (i, j) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Rotation `R(a) = [[cos a, -sin a], [sin a, cos a]]` applied to `v`.
pub fn rotate(a: f64, v: [f64; 2]) -> [f64; 2] {
    let (s, c) = a.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub x: [f64; 2],
    pub p: [f64; 2],
    pub t: f64,
}

/// Uniform electric field, `E = -grad V` with `V = -E . x`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Field {
    pub e: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Gradient {
    pub dx: [f64; 2],
    pub dp: [f64; 2],
}

type ValueFn = Box<dyn Fn(&PhasePoint) -> f64 + Send + Sync>;
type GradFn = Box<dyn Fn(&PhasePoint) -> Gradient + Send + Sync>;

/// A phase-space function with an analytic gradient.
pub struct Observable {
    value: ValueFn,
    grad: GradFn,
}

impl Observable {
    pub fn new(
        value: impl Fn(&PhasePoint) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&PhasePoint) -> Gradient + Send + Sync + 'static,
    ) -> Self {
        Self { value: Box::new(value), grad: Box::new(grad) }
    }

    pub fn value(&self, s: &PhasePoint) -> f64 {
        (self.value)(s)
    }

    pub fn gradient(&self, s: &PhasePoint) -> Gradient {
        (self.grad)(s)
    }

    pub fn x(i: usize) -> Self {
        Self::new(
            move |s| s.x[i],
            move |_| {
                let mut g = Gradient::default();
                g.dx[i] = 1.0;
                g
            },
        )
    }

    pub fn p(i: usize) -> Self {
        Self::new(
            move |s| s.p[i],
            move |_| {
                let mut g = Gradient::default();
                g.dp[i] = 1.0;
                g
            },
        )
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c, |_| Gradient::default())
    }

    /// Product rule.
    pub fn times(self, other: Observable) -> Self {
        let a = std::sync::Arc::new(self);
        let b = std::sync::Arc::new(other);
        let (a2, b2) = (a.clone(), b.clone());
        Self::new(
            move |s| a.value(s) * b.value(s),
            move |s| {
                let (va, vb) = (a2.value(s), b2.value(s));
                let (ga, gb) = (a2.gradient(s), b2.gradient(s));
                Gradient {
                    dx: [va * gb.dx[0] + vb * ga.dx[0], va * gb.dx[1] + vb * ga.dx[1]],
                    dp: [va * gb.dp[0] + vb * ga.dp[0], va * gb.dp[1] + vb * ga.dp[1]],
                }
            },
        )
    }

    /// `a * self + b * other`.
    pub fn combine(self, a: f64, other: Observable, b: f64) -> Self {
        let f = std::sync::Arc::new(self);
        let g = std::sync::Arc::new(other);
        let (f2, g2) = (f.clone(), g.clone());
        Self::new(
            move |s| a * f.value(s) + b * g.value(s),
            move |s| {
                let (gf, gg) = (f2.gradient(s), g2.gradient(s));
                Gradient {
                    dx: [a * gf.dx[0] + b * gg.dx[0], a * gf.dx[1] + b * gg.dx[1]],
                    dp: [a * gf.dp[0] + b * gg.dp[0], a * gf.dp[1] + b * gg.dp[1]],
                }
            },
        )
    }

    /// `H = |p|^2 / 2M - e E . x`.
    pub fn hamiltonian(model: &Model, field: Field) -> Self {
        let m = model.params.mass;
        let e = model.params.charge;
        Self::new(
            move |s| {
                (s.p[0] * s.p[0] + s.p[1] * s.p[1]) / (2.0 * m) - e * (field.e[0] * s.x[0] + field.e[1] * s.x[1])
            },
            move |s| Gradient { dx: [-e * field.e[0], -e * field.e[1]], dp: [s.p[0] / m, s.p[1] / m] },
        )
    }

    /// Magnetic translation `P_i = M* (xdot_i - omega* eps^{ij} x_j)`.
    pub fn momentum_charge(i: usize, model: &Model, field: Field) -> Self {
        let model = *model;
        let eb = model.eb();
        Self::new(
            move |s| {
                let v = velocity(s, &model, field);
                let ms = model.derived.effective_mass;
                let w = model.omega_star();
                ms * (v[i] - w * (0..2).map(|j| eps(i, j) * s.x[j]).sum::<f64>())
            },
            move |_| {
                let mut g = Gradient::default();
                g.dp[i] = 1.0;
                for j in 0..2 {
                    g.dx[j] = -eb * eps(i, j);
                }
                g
            },
        )
    }

    /// Rotating boost `K_i = (M*^2 / M) [R(omega* t) xdot]_i`.
    pub fn boost_charge(i: usize, model: &Model, field: Field) -> Self {
        let model = *model;
        let ms = model.derived.effective_mass;
        let scale = ms * ms / model.params.mass;
        Self::new(
            move |s| scale * rotate(model.omega_star() * s.t, velocity(s, &model, field))[i],
            move |s| {
                let a = model.omega_star() * s.t;
                let (sn, cs) = a.sin_cos();
                let row = if i == 0 { [cs, -sn] } else { [sn, cs] };
                Gradient { dx: [0.0; 2], dp: [scale * row[0] / ms, scale * row[1] / ms] }
            },
        )
    }

    /// Largest deviation between the analytic gradient and a central
    /// difference with step `h`.
    pub fn gradient_defect(&self, s: &PhasePoint, h: f64) -> f64 {
        let g = self.gradient(s);
        let mut worst: f64 = 0.0;
        for k in 0..4 {
            let mut a = *s;
            let mut b = *s;
            let analytic = if k < 2 {
                a.x[k] += h;
                b.x[k] -= h;
                g.dx[k]
            } else {
                a.p[k - 2] += h;
                b.p[k - 2] -= h;
                g.dp[k - 2]
            };
            let fd = (self.value(&a) - self.value(&b)) / (2.0 * h);
            worst = worst.max((fd - analytic).abs());
        }
        worst
    }
}

/// Noncommutative bracket at `s`.
pub fn poisson_bracket(f: &Observable, g: &Observable, s: &PhasePoint, model: &Model) -> f64 {
    let a = f.gradient(s);
    let b = g.gradient(s);
    let canonical = a.dx[0] * b.dp[0] + a.dx[1] * b.dp[1] - b.dx[0] * a.dp[0] - b.dx[1] * a.dp[1];
    let theta = model.params.theta * (a.dx[0] * b.dx[1] - b.dx[0] * a.dx[1]);
    let magnetic = model.eb() * (a.dp[0] * b.dp[1] - b.dp[0] * a.dp[1]);
    model.params.mass / model.derived.effective_mass * (canonical + theta + magnetic)
}

/// `xdot = (p - M e theta eps E) / M*`.
pub fn velocity(s: &PhasePoint, model: &Model, field: Field) -> [f64; 2] {
    let ms = model.derived.effective_mass;
    let k = model.params.mass * model.params.charge * model.params.theta;
    [(s.p[0] - k * field.e[1]) / ms, (s.p[1] + k * field.e[0]) / ms]
}

/// Time derivative of `(x, p)`.
pub fn equations_of_motion(s: &PhasePoint, model: &Model, field: Field) -> ([f64; 2], [f64; 2]) {
    let v = velocity(s, model, field);
    let eb = model.eb();
    let e = model.params.charge;
    (v, [eb * v[1] + e * field.e[0], -eb * v[0] + e * field.e[1]])
}

pub type Trajectory = Vec<PhasePoint>;

fn shifted(s: &PhasePoint, dt: f64, k: &([f64; 2], [f64; 2])) -> PhasePoint {
    PhasePoint {
        x: [s.x[0] + dt * k.0[0], s.x[1] + dt * k.0[1]],
        p: [s.p[0] + dt * k.1[0], s.p[1] + dt * k.1[1]],
        t: s.t + dt,
    }
}

/// Classical RK4; returns `steps + 1` points starting with `initial`.
pub fn integrate(initial: PhasePoint, model: &Model, field: Field, dt: f64, steps: usize) -> Trajectory {
    let mut out = Vec::with_capacity(steps + 1);
    let mut s = initial;
    out.push(s);
    for _ in 0..steps {
        let k1 = equations_of_motion(&s, model, field);
        let k2 = equations_of_motion(&shifted(&s, 0.5 * dt, &k1), model, field);
        let k3 = equations_of_motion(&shifted(&s, 0.5 * dt, &k2), model, field);
        let k4 = equations_of_motion(&shifted(&s, dt, &k3), model, field);
        let comb = |a: f64, b: f64, c: f64, d: f64| (a + 2.0 * b + 2.0 * c + d) / 6.0;
        let t0 = s.t;
        s = PhasePoint {
            x: [
                s.x[0] + dt * comb(k1.0[0], k2.0[0], k3.0[0], k4.0[0]),
                s.x[1] + dt * comb(k1.0[1], k2.0[1], k3.0[1], k4.0[1]),
            ],
            p: [
                s.p[0] + dt * comb(k1.1[0], k2.1[0], k3.1[0], k4.1[0]),
                s.p[1] + dt * comb(k1.1[1], k2.1[1], k3.1[1], k4.1[1]),
            ],
            t: t0 + dt,
        };
        out.push(s);
    }
    out
}

/// Brackets among the conserved charges at one phase-space point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraReport {
    pub pp: f64,
    pub kk: f64,
    /// `{P_i, K_j}`
    pub pk: [[f64; 2]; 2],
    /// `-M* omega*`
    pub expected_pp: f64,
    /// `(1 - eB theta) M* omega*`
    pub expected_kk: f64,
}

impl AlgebraReport {
    pub fn max_defect(&self) -> f64 {
        let mut d = (self.pp - self.expected_pp).abs().max((self.kk - self.expected_kk).abs());
        for row in &self.pk {
            for v in row {
                d = d.max(v.abs());
            }
        }
        d
    }
}

/// Evaluates `{P_1,P_2}`, `{K_1,K_2}` and `{P_i,K_j}` with `E = 0`.
pub fn verify_charge_algebra(s: &PhasePoint, model: &Model) -> AlgebraReport {
    let f = Field::default();
    let p = [Observable::momentum_charge(0, model, f), Observable::momentum_charge(1, model, f)];
    let k = [Observable::boost_charge(0, model, f), Observable::boost_charge(1, model, f)];
    let mut pk = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            pk[i][j] = poisson_bracket(&p[i], &k[j], s, model);
        }
    }
    let msw = model.derived.effective_mass * model.omega_star();
    AlgebraReport {
        pp: poisson_bracket(&p[0], &p[1], s, model),
        kk: poisson_bracket(&k[0], &k[1], s, model),
        pk,
        expected_pp: -msw,
        expected_kk: model.gap() * msw,
    }
}

/// Angular frequency of `xdot_1` from linearly interpolated zero crossings.
pub fn crossing_frequency(traj: &[PhasePoint], model: &Model, field: Field) -> Option<f64> {
    let v: Vec<f64> = traj.iter().map(|s| velocity(s, model, field)[0]).collect();
    let mut crossings = Vec::new();
    for k in 1..v.len() {
        if v[k - 1] == 0.0 {
            crossings.push(traj[k - 1].t);
        } else if v[k - 1] * v[k] < 0.0 {
            let frac = v[k - 1] / (v[k - 1] - v[k]);
            crossings.push(traj[k - 1].t + frac * (traj[k].t - traj[k - 1].t));
        }
    }
    if crossings.len() < 3 {
        return None;
    }
    let span = crossings[crossings.len() - 1] - crossings[0];
    Some(std::f64::consts::PI * (crossings.len() - 1) as f64 / span)
}
