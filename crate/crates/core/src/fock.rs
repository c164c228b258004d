//! Hilbert-Schmidt operators on the truncated ket-bra basis `|m, n)`.
//!
//! `A`, `A'` act on the right index `n`, `B`, `B'` on the left index `m`.
//! Pushing weight past `n_max` drops it silently; the caller can read the
//! lost mass from [`apply_with_loss`].

use crate::{Error, Model, Result, C64};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    pub n_max: usize,
}

impl FockConfig {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::Parameter(format!("n_max must be at least 2, got {n_max}")));
        }
        Ok(Self { n_max })
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Coefficients `c[(m, n)]` of `sum c_{m,n} |m, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HSOperator {
    pub coeffs: DMatrix<C64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// `A |m,n) = sqrt(n) |m,n-1)`
    A,
    /// `A' |m,n) = sqrt(n+1) |m,n+1)`
    ADag,
    /// `B |m,n) = sqrt(m) |m-1,n)`
    B,
    /// `B' |m,n) = sqrt(m+1) |m+1,n)`
    BDag,
}

impl HSOperator {
    pub fn zeros(cfg: FockConfig) -> Self {
        Self { coeffs: DMatrix::zeros(cfg.dim(), cfg.dim()) }
    }

    pub fn basis(cfg: FockConfig, m: usize, n: usize) -> Result<Self> {
        let max = cfg.n_max;
        if m > max || n > max {
            return Err(Error::Index { index: m.max(n), max });
        }
        let mut op = Self::zeros(cfg);
        op.coeffs[(m, n)] = C64::new(1.0, 0.0);
        Ok(op)
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.nrows() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { coeffs: &self.coeffs * s }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_shape(self, other)?;
        Ok(Self { coeffs: &self.coeffs + &other.coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_shape(self, other)?;
        Ok(Self { coeffs: &self.coeffs - &other.coeffs })
    }

    pub fn apply(&self, op: Ladder) -> Self {
        apply_with_loss(self, op).0
    }
}

fn check_shape(a: &HSOperator, b: &HSOperator) -> Result<()> {
    if a.coeffs.shape() != b.coeffs.shape() {
        return Err(Error::Shape { expected: a.coeffs.nrows(), got: b.coeffs.nrows() });
    }
    Ok(())
}

/// Applies a ladder operator and returns the squared norm pushed past `n_max`.
pub fn apply_with_loss(state: &HSOperator, op: Ladder) -> (HSOperator, f64) {
    let d = state.coeffs.nrows();
    let c = &state.coeffs;
    let mut out = DMatrix::zeros(d, d);
    let mut lost = 0.0;
    match op {
        Ladder::A => {
            for m in 0..d {
                for n in 1..d {
                    out[(m, n - 1)] = c[(m, n)] * (n as f64).sqrt();
                }
            }
        }
        Ladder::ADag => {
            for m in 0..d {
                for n in 0..d {
                    let v = c[(m, n)] * ((n + 1) as f64).sqrt();
                    if n + 1 < d {
                        out[(m, n + 1)] = v;
                    } else {
                        lost += v.norm_sqr();
                    }
                }
            }
        }
        Ladder::B => {
            for m in 1..d {
                for n in 0..d {
                    out[(m - 1, n)] = c[(m, n)] * (m as f64).sqrt();
                }
            }
        }
        Ladder::BDag => {
            for m in 0..d {
                for n in 0..d {
                    let v = c[(m, n)] * ((m + 1) as f64).sqrt();
                    if m + 1 < d {
                        out[(m + 1, n)] = v;
                    } else {
                        lost += v.norm_sqr();
                    }
                }
            }
        }
    }
    (HSOperator { coeffs: out }, lost)
}

/// `(a|b) = sum conj(a_{m,n}) b_{m,n}`.
pub fn hs_inner(a: &HSOperator, b: &HSOperator) -> Result<C64> {
    check_shape(a, b)?;
    Ok(a.coeffs.iter().zip(b.coeffs.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// `hbar omega* (n + 1/2)`.
pub fn hamiltonian_eigenvalue(n: usize, model: &Model) -> f64 {
    model.hbar() * model.omega_star() * (n as f64 + 0.5)
}

/// Coefficient of `A'A` in the Hamiltonian, written as
/// `2 hbar (1 - eB theta) M omega / (2 M (1 - eB theta)^2)`.
pub fn hamiltonian_number_coefficient(model: &Model) -> f64 {
    let g = model.gap();
    let m = model.params.mass;
    2.0 * model.hbar() * g * m * model.derived.cyclotron / (2.0 * m * g * g)
}

/// `H = c A'A + hbar omega* / 2`.
pub fn apply_hamiltonian(state: &HSOperator, model: &Model) -> HSOperator {
    let number = state.apply(Ladder::A).apply(Ladder::ADag);
    let c = hamiltonian_number_coefficient(model);
    let zero_point = 0.5 * model.hbar() * model.omega_star();
    HSOperator { coeffs: number.coeffs * C64::from(c) + &state.coeffs * C64::from(zero_point) }
}

/// `H - hbar omega* / 2`.
pub fn apply_action(state: &HSOperator, model: &Model) -> HSOperator {
    let number = state.apply(Ladder::A).apply(Ladder::ADag);
    number.scale(C64::from(hamiltonian_number_coefficient(model)))
}

/// Squared norm of coefficients with either index equal to `n_max`, a
/// proxy for mass that ladder moves would push out of the basis.
pub fn edge_mass(state: &HSOperator) -> f64 {
    let d = state.coeffs.nrows();
    let mut s = 0.0;
    for k in 0..d {
        s += state.coeffs[(d - 1, k)].norm_sqr();
        if k + 1 < d {
            s += state.coeffs[(k, d - 1)].norm_sqr();
        }
    }
    s
}
