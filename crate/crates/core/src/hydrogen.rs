//! Hydrogen data restricted to the n ≤ 2 manifold: level energies, the
//! 1s–2p₀ transition dipole, Stark-mixing coefficients of the two-atom ground
//! state, polarizability, and the coupling constant β of the field-assisted
//! energies.
//!
//! Sign convention: the dipole operator is μ_z = q·z with q the positive
//! elementary charge, so `mu_eg > 0` and `gamma < 0` (because E1 < 0).

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::constants::{ev_to_joule, PhysicalConstants};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_to_infinity, QuadratureOptions};

/// Ground-level energy used throughout (eV).
pub const E1_EV: f64 = -13.6057;

/// Stark ratio above which results carry a soft warning.
pub const STARK_WARN_RATIO: f64 = 1e-6;
/// Stark ratio above which the perturbative model is refused.
pub const STARK_HARD_RATIO: f64 = 1e-2;

/// Derived atomic quantities, all SI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HydrogenData {
    pub constants: PhysicalConstants,
    /// Ground energy (J), negative.
    pub e1: f64,
    /// First excited level (J), `e1 / 4`.
    pub e2: f64,
    /// Transition wavenumber `2|E2 − E1| / ħc` (1/m).
    pub k0: f64,
    /// ⟨210|μ_z|100⟩ (C·m).
    pub mu_eg: f64,
    /// Stark mixing constant `2⁹ q a0 / (3⁶ E1)` (m/V), negative.
    pub gamma: f64,
    /// Static polarizability from the n = 2 states only (C²·m²/J).
    pub alpha: f64,
    /// Coupling constant of the field-assisted energies (C²·m³/J).
    pub beta: f64,
    /// Average excitation energy `E_A E_B / (E_A + E_B)` (J).
    pub e_bar: f64,
}

impl HydrogenData {
    pub fn new(constants: PhysicalConstants) -> Self {
        let q = constants.q_e;
        let a0 = constants.a0;
        let e1 = ev_to_joule(E1_EV);
        let e2 = e1 / 4.0;
        let gap = e2 - e1;
        let k0 = 2.0 * gap.abs() / (constants.hbar * constants.c);
        let mu_eg = 2f64.powf(7.5) * 3f64.powi(-5) * q * a0;
        let gamma = 2f64.powi(9) * q * a0 / (3f64.powi(6) * e1);
        let alpha = 2.0 * mu_eg * mu_eg / (3.0 * gap);
        let beta = 2.0 * gamma * gamma * k0 * k0 * mu_eg * mu_eg / (PI * PI * constants.eps0);
        let e_bar = gap * gap / (gap + gap);
        Self { constants, e1, e2, k0, mu_eg, gamma, alpha, beta, e_bar }
    }

    /// β evaluated from its three equivalent closed forms:
    /// `2γ²k0²μ²/(π²ε0)`, `2³⁴q⁴a0⁴ / (4πε0 · 3²⁰ π ħ²c²)` and `9k0²α²/(4π²ε0)`.
    pub fn beta_forms(&self) -> [f64; 3] {
        let c = &self.constants;
        let first = self.beta;
        let second = 2f64.powi(34) * c.q_e.powi(4) * c.a0.powi(4)
            / (4.0 * PI * c.eps0 * 3f64.powi(20) * PI * c.hbar * c.hbar * c.c * c.c);
        let third = 9.0 * self.k0 * self.k0 * self.alpha * self.alpha / (4.0 * PI * PI * c.eps0);
        [first, second, third]
    }

    /// E2 − E1 (J), positive.
    pub fn level_gap(&self) -> f64 {
        self.e2 - self.e1
    }

    /// Two-atom ground state corrected to second order in the static fields.
    pub fn stark_ground_state(&self, field: f64, field_prime: f64) -> Result<StateCoefficients> {
        for e in [field, field_prime] {
            if !e.is_finite() {
                return Err(domain(format!("field must be finite, got {e}")));
            }
        }
        let strongest = field.abs().max(field_prime.abs());
        let ratio = self.stark_validity(strongest);
        if ratio > STARK_HARD_RATIO {
            return Err(Error::Validity { field: strongest, ratio, limit: STARK_HARD_RATIO });
        }
        let g = self.gamma;
        let s_mix = -(1.5f64).powi(6) / SQRT_2;
        Ok(StateCoefficients {
            c_gg: 1.0 - g * g * (field * field + field_prime * field_prime),
            c_e_a: -SQRT_2 * g * field,
            c_e_b: -SQRT_2 * g * field_prime,
            c_ee: 2.0 * g * g * field * field_prime,
            c_s_a: s_mix * g * g * field * field,
            c_s_b: s_mix * g * g * field_prime * field_prime,
        })
    }

    /// ⟨ψ|μ_z|ψ⟩ of one atom through first order in the field.
    pub fn induced_dipole(&self, field: f64) -> f64 {
        -2.0 * SQRT_2 * self.gamma * self.mu_eg * field
    }

    /// |quadratic Stark shift| / (E2 − E1) in the n = 2 truncated model.
    pub fn stark_validity(&self, field: f64) -> f64 {
        1.5 * self.alpha * field * field / self.level_gap()
    }
}

impl Default for HydrogenData {
    fn default() -> Self {
        Self::new(PhysicalConstants::CODATA_2018)
    }
}

/// `HydrogenData` for the CODATA 2018 constant set.
pub fn derived_constants() -> HydrogenData {
    HydrogenData::default()
}

/// Amplitudes of the two-atom ground state on the product basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateCoefficients {
    /// |100,100⟩
    pub c_gg: f64,
    /// |210,100⟩
    pub c_e_a: f64,
    /// |100,210⟩
    pub c_e_b: f64,
    /// |210,210⟩
    pub c_ee: f64,
    /// |200,100⟩
    pub c_s_a: f64,
    /// |100,200⟩
    pub c_s_b: f64,
}

impl StateCoefficients {
    pub fn norm_squared(&self) -> f64 {
        [self.c_gg, self.c_e_a, self.c_e_b, self.c_ee, self.c_s_a, self.c_s_b]
            .iter()
            .map(|c| c * c)
            .sum()
    }
}

/// Hydrogen quantum numbers (n, l, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub const fn new(n: u32, l: u32, m: i32) -> Self {
        Self { n, l, m }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.l >= self.n || self.m.unsigned_abs() > self.l {
            return Err(domain(format!(
                "invalid quantum numbers (n={}, l={}, m={})",
                self.n, self.l, self.m
            )));
        }
        if self.n > 2 {
            return Err(Error::UnsupportedBasis { n: self.n });
        }
        Ok(())
    }
}

/// Radial function R_nl(r) with r in units of a0.
fn radial(n: u32, l: u32, r: f64) -> f64 {
    match (n, l) {
        (1, 0) => 2.0 * (-r).exp(),
        (2, 0) => (1.0 - 0.5 * r) * (-0.5 * r).exp() / SQRT_2,
        (2, 1) => r * (-0.5 * r).exp() / (2.0 * 6f64.sqrt()),
        _ => unreachable!("validated n <= 2"),
    }
}

/// ⟨l′ m|cos θ|l m⟩ for real spherical harmonics with Condon–Shortley phase.
fn cos_theta_element(l_out: u32, l_in: u32, m: i32) -> f64 {
    let m2 = f64::from(m * m);
    let coupling = |l: u32| {
        let l = f64::from(l);
        (((l + 1.0) * (l + 1.0) - m2) / ((2.0 * l + 1.0) * (2.0 * l + 3.0))).sqrt()
    };
    if l_out == l_in + 1 {
        coupling(l_in)
    } else if l_in == l_out + 1 {
        coupling(l_out)
    } else {
        0.0
    }
}

/// q·⟨state1|z|state2⟩ (C·m), with the radial integral done by quadrature.
pub fn transition_dipole(
    constants: &PhysicalConstants,
    state1: QuantumNumbers,
    state2: QuantumNumbers,
) -> Result<f64> {
    state1.validate()?;
    state2.validate()?;
    if state1.m != state2.m {
        return Ok(0.0);
    }
    let angular = cos_theta_element(state1.l, state2.l, state1.m);
    if angular == 0.0 {
        return Ok(0.0);
    }
    let integrand = |r: f64| radial(state1.n, state1.l, r) * radial(state2.n, state2.l, r) * r.powi(3);
    let opts = QuadratureOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_subdivisions: 500 };
    let radial_integral = integrate_to_infinity(integrand, 0.0, opts)?.value;
    Ok(constants.q_e * constants.a0 * radial_integral * angular)
}
