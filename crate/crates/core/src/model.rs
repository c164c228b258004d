//! Physical parameters and the constants derived from them.

use crate::config::{get_f64, parse_key_values};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Below this gap `1 - eB*theta` the model is treated as critical.
pub const CRITICAL_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mass: f64,
    pub charge: f64,
    pub b_field: f64,
    pub theta: f64,
    pub hbar: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self { mass: 1.0, charge: 1.0, b_field: 1.0, theta: 0.3, hbar: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// `M* = M (1 - eB theta)`
    pub effective_mass: f64,
    /// `omega = eB / M`
    pub cyclotron: f64,
    /// `omega* = eB / M*`
    pub effective_frequency: f64,
    /// `Theta = 1 / (eB (1 - eB theta))`; infinite when `eB = 0`.
    pub big_theta: f64,
    /// `kappa = theta M^2`
    pub kappa: f64,
}

/// Validated parameters together with their derived constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub params: ModelParams,
    pub derived: DerivedParams,
}

impl ModelParams {
    pub fn eb(&self) -> f64 {
        self.charge * self.b_field
    }

    /// `1 - eB theta`
    pub fn gap(&self) -> f64 {
        1.0 - self.eb() * self.theta
    }

    pub fn derive(&self) -> Result<DerivedParams> {
        let all = [self.mass, self.charge, self.b_field, self.theta, self.hbar];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("parameters must be finite".into()));
        }
        if self.mass <= 0.0 {
            return Err(Error::Parameter(format!("mass must be positive, got {}", self.mass)));
        }
        if self.hbar <= 0.0 {
            return Err(Error::Parameter(format!("hbar must be positive, got {}", self.hbar)));
        }
        if self.charge == 0.0 {
            return Err(Error::Parameter("charge must be nonzero".into()));
        }
        let gap = self.gap();
        if gap.abs() < CRITICAL_GAP {
            return Err(Error::CriticalPoint { gap });
        }
        let eb = self.eb();
        let effective_mass = self.mass * gap;
        let big_theta = if eb == 0.0 { f64::INFINITY } else { 1.0 / (eb * gap) };
        Ok(DerivedParams {
            effective_mass,
            cyclotron: eb / self.mass,
            effective_frequency: eb / effective_mass,
            big_theta,
            kappa: self.theta * self.mass * self.mass,
        })
    }

    /// Reads `mass`, `charge`, `b_field`, `theta`, `hbar` from `key = value`
    /// text; missing keys keep the values of `self`.
    pub fn with_overrides(&self, text: &str) -> Result<Self> {
        let map = parse_key_values(text)?;
        let mut p = *self;
        for (key, slot) in [
            ("mass", &mut p.mass),
            ("charge", &mut p.charge),
            ("b_field", &mut p.b_field),
            ("theta", &mut p.theta),
            ("hbar", &mut p.hbar),
        ] {
            if let Some(v) = get_f64(&map, key)? {
                *slot = v;
            }
        }
        Ok(p)
    }
}

impl Model {
    pub fn new(params: ModelParams) -> Result<Self> {
        Ok(Self { derived: params.derive()?, params })
    }

    pub fn eb(&self) -> f64 {
        self.params.eb()
    }

    pub fn gap(&self) -> f64 {
        self.params.gap()
    }

    pub fn hbar(&self) -> f64 {
        self.params.hbar
    }

    pub fn omega_star(&self) -> f64 {
        self.derived.effective_frequency
    }

    /// `(1 - eB theta) / (2 eB)`, the squared scale between physical and
    /// dimensionless complex momenta.
    pub fn momentum_scale_sq(&self) -> f64 {
        self.gap() / (2.0 * self.eb())
    }

    /// Same physics with a different `theta`.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(ModelParams { theta, ..self.params })
    }
}
