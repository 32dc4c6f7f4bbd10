//! Brute-force validators for the closed forms.
//!
//! None of these reuse the path they check: f and g come from their Laplace
//! integral representations rather than Si/Ci, the field-assisted energy
//! comes from a regularized one-dimensional k-space integral rather than f
//! and g, and the Stark mixing coefficients come from exact diagonalization
//! rather than the perturbative formulas.

mod aux;
mod kspace;
mod matrix;
mod stark;
mod suites;

pub use aux::{aux_fg_quadrature, cosine_integral_quadrature, sine_integral_quadrature};
pub use kspace::{kspace_shift, kspace_shift_with, KspaceResult};
pub use matrix::{matrix_element_check, MatrixElementReport, MatrixTerm};
pub use stark::{degenerate_pt_check, single_atom_ground_state, DegeneratePtReport, SingleAtomState};
pub use suites::{run_suite, Suite};

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerances and regulator ladder for the oracle integrals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Largest convergence-factor scale η (m) of the ladder.
    pub regulator_eta: f64,
    /// Regulator scales (m) for extrapolation to η → 0, strictly decreasing.
    pub eta_sequence: Vec<f64>,
}

/// Regulator ladder in units of r.
pub const ETA_FACTORS: [f64; 4] = [0.1, 0.05, 0.025, 0.0125];
/// Smallest admissible η / r; below it the damped integrand needs
/// more than ~10⁵ oscillations.
pub const ETA_FLOOR_FACTOR: f64 = 1e-4;

impl QuadratureSpec {
    /// Default ladder η = r·{0.1, 0.05, 0.025, 0.0125}.
    pub fn for_distance(r: f64) -> Self {
        let eta_sequence: Vec<f64> = ETA_FACTORS.iter().map(|f| f * r).collect();
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
            regulator_eta: eta_sequence[0],
            eta_sequence,
        }
    }

    pub fn validate(&self, r: f64) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        if self.eta_sequence.len() < 2 {
            return Err(Error::Domain("eta_sequence needs at least two entries".into()));
        }
        if self.eta_sequence.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Domain("eta_sequence must be strictly decreasing".into()));
        }
        let floor = ETA_FLOOR_FACTOR * r;
        if let Some(eta) = self.eta_sequence.iter().find(|e| **e < floor) {
            return Err(Error::Domain(format!("eta {eta:e} m is below the floor {floor:e} m")));
        }
        Ok(())
    }
}

/// One line of an oracle report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub suite: String,
    pub name: String,
    /// Observed error (or other figure of merit) compared against `threshold`.
    pub observed: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl OracleCheck {
    pub fn new(suite: &str, name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Self {
            suite: suite.to_string(),
            name: name.into(),
            observed,
            threshold,
            passed: observed.is_finite() && observed <= threshold,
        }
    }

    /// A check that aborted (the oracle itself failed to produce a number).
    pub fn aborted(suite: &str, name: impl Into<String>, threshold: f64) -> Self {
        Self {
            suite: suite.to_string(),
            name: name.into(),
            observed: f64::NAN,
            threshold,
            passed: false,
        }
    }
}

pub(crate) fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
