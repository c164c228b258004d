//! Noncommutative exotic Landau model.
//!
//! Classical dynamics with a noncommutative symplectic structure, the
//! ket-bra Fock representation of the quantum model, two-parameter
//! coherent states, coherent-state path integrals, and the quaternionic
//! vector coherent states built on top of them.

pub mod classical;
pub mod coherent;
pub mod config;
pub mod error;
pub mod figures;
pub mod fock;
pub mod model;
pub mod numerics;
pub mod propagator;
pub mod quaternion;
pub mod vcs;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};
pub use model::{DerivedParams, Model, ModelParams};

/// Complex double used throughout the crate.
pub type C64 = num_complex::Complex64;
