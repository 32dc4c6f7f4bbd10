//! Dispersion interaction between two ground-state hydrogen atoms in static
//! external electric fields.
//!
//! The crate evaluates the field-assisted dispersion energy (exact closed
//! forms and near/far asymptotes), the unperturbed van der Waals baseline,
//! radial forces, crossover fields and equilibrium distances. Independent
//! numerical oracles (quadrature, k-space integration, exact diagonalization)
//! live in [`oracle`].
//!
//! All quantities are SI.

pub mod analysis;
pub mod cli;
pub mod constants;
pub mod error;
pub mod hydrogen;
pub mod interaction;
pub mod oracle;
pub mod quadrature;
pub mod specfun;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use hydrogen::{derived_constants, HydrogenData, QuantumNumbers, StateCoefficients};
pub use interaction::{DispersionModel, FieldConfig, Geometry, InteractionBreakdown, Regime, Warning};
