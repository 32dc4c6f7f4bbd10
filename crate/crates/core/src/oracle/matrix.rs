//! Explicit finite-dimensional evaluation of the dipole-matrix-element
//! product that multiplies the one-photon exchange amplitude.
//!
//! Per-atom basis {|100⟩, |200⟩, |210⟩}; intermediate atomic states
//! `½(|210⟩ ± |200⟩)(|210⟩ ± |200⟩)`; ground state to first order in the
//! fields. The quantity formed is
//!
//! ```text
//! Σ_{s,t=±} ⟨ψ|μ_A|I_st⟩⟨I_st|μ_B|ψ⟩ + (A ↔ B)
//! ```
//!
//! and compared against `8 γ² ℰ ℰ′ μ_A μ_B`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::error::Result;
use crate::hydrogen::{transition_dipole, HydrogenData, QuantumNumbers};

/// Prefactor the closed-form energies are built on, in units of γ²ℰℰ′μ_Aμ_B.
pub const EXPECTED_PREFACTOR: f64 = 8.0;
pub const PREFACTOR_REL_TOL: f64 = 1e-10;

const BASIS: [QuantumNumbers; 3] = [
    QuantumNumbers::new(1, 0, 0),
    QuantumNumbers::new(2, 0, 0),
    QuantumNumbers::new(2, 1, 0),
];
const S200: usize = 1;
const P210: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixTerm {
    /// "A->B" when μ_A sits on the bra side, "B->A" for the exchanged term.
    pub ordering: &'static str,
    pub s: i8,
    pub t: i8,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixElementReport {
    pub field: f64,
    pub field_prime: f64,
    pub terms: Vec<MatrixTerm>,
    /// Sum of all terms (C²·m²).
    pub total: f64,
    /// total / (γ² ℰ ℰ′ μ_A μ_B); `None` when a field vanishes.
    pub prefactor: Option<f64>,
    pub expected_prefactor: f64,
    pub rel_error: Option<f64>,
    pub passed: bool,
}

type Mat3 = [[f64; 3]; 3];
type TwoAtom = [[f64; 3]; 3];

fn atom_intermediate(sign: f64) -> [f64; 3] {
    let mut v = [0.0; 3];
    v[P210] = FRAC_1_SQRT_2;
    v[S200] = sign * FRAC_1_SQRT_2;
    v
}

/// ⟨bra| μ ⊗ 1 |ket⟩ when `on_a`, else ⟨bra| 1 ⊗ μ |ket⟩.
fn dipole_element(bra: &TwoAtom, ket: &TwoAtom, mu: &Mat3, on_a: bool) -> f64 {
    let mut sum = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                sum += if on_a {
                    bra[a][b] * mu[a][k] * ket[k][b]
                } else {
                    bra[a][b] * mu[b][k] * ket[a][k]
                };
            }
        }
    }
    sum
}

pub fn matrix_element_check(data: &HydrogenData, field: f64, field_prime: f64) -> Result<MatrixElementReport> {
    let mut mu = [[0.0; 3]; 3];
    for (i, si) in BASIS.iter().enumerate() {
        for (j, sj) in BASIS.iter().enumerate() {
            mu[i][j] = transition_dipole(&data.constants, *si, *sj)?;
        }
    }

    let coeffs = data.stark_ground_state(field, field_prime)?;
    let mut psi: TwoAtom = [[0.0; 3]; 3];
    psi[0][0] = 1.0;
    psi[P210][0] = coeffs.c_e_a;
    psi[0][P210] = coeffs.c_e_b;

    let mut terms = Vec::with_capacity(8);
    for (ordering, bra_on_a) in [("A->B", true), ("B->A", false)] {
        for s in [1i8, -1] {
            for t in [1i8, -1] {
                let va = atom_intermediate(f64::from(s));
                let vb = atom_intermediate(f64::from(t));
                let mut inter: TwoAtom = [[0.0; 3]; 3];
                for a in 0..3 {
                    for b in 0..3 {
                        inter[a][b] = va[a] * vb[b];
                    }
                }
                let emit = dipole_element(&psi, &inter, &mu, bra_on_a);
                let absorb = dipole_element(&inter, &psi, &mu, !bra_on_a);
                terms.push(MatrixTerm { ordering, s, t, value: emit * absorb });
            }
        }
    }
    let total: f64 = terms.iter().map(|t| t.value).sum();

    let mu_ab = mu[P210][0] * mu[P210][0];
    let scale = data.gamma * data.gamma * field * field_prime * mu_ab;
    let (prefactor, rel_error, passed) = if scale == 0.0 {
        (None, None, total == 0.0)
    } else {
        let p = total / scale;
        let e = (p - EXPECTED_PREFACTOR).abs() / EXPECTED_PREFACTOR;
        (Some(p), Some(e), e <= PREFACTOR_REL_TOL)
    };
    Ok(MatrixElementReport {
        field,
        field_prime,
        terms,
        total,
        prefactor,
        expected_prefactor: EXPECTED_PREFACTOR,
        rel_error,
        passed,
    })
}
