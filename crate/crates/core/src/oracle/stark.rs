//! Exact diagonalization of one atom in a static field on the
//! {1s, 2s, 2p0, 2p+1, 2p−1} basis, used to check the perturbative
//! mixing coefficients.
//!
//! Energies are in units of |E1|. The field term is −ℰ·d with d = q·z, the
//! same sign convention the perturbative amplitudes are written in.

use nalgebra::{Matrix5, SymmetricEigen};
use serde::Serialize;

use super::{rel_err, OracleCheck};
use crate::error::{domain, Error, Result};
use crate::hydrogen::{transition_dipole, HydrogenData, QuantumNumbers, STARK_HARD_RATIO};

pub const BASIS: [QuantumNumbers; 5] = [
    QuantumNumbers::new(1, 0, 0),
    QuantumNumbers::new(2, 0, 0),
    QuantumNumbers::new(2, 1, 0),
    QuantumNumbers::new(2, 1, 1),
    QuantumNumbers::new(2, 1, -1),
];
const S100: usize = 0;
const S200: usize = 1;
const P210: usize = 2;

pub const COEFF_REL_TOL: f64 = 1e-4;
pub const CUBIC_RATIO_TOL: f64 = 1e-2;

/// Eigenstate of the single-atom Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingleAtomState {
    /// Energy in units of |E1|.
    pub energy: f64,
    /// Amplitudes on [`BASIS`].
    pub amplitudes: [f64; 5],
}

impl SingleAtomState {
    pub fn amplitude(&self, state: QuantumNumbers) -> Option<f64> {
        BASIS.iter().position(|s| *s == state).map(|i| self.amplitudes[i])
    }
}

fn hamiltonian(data: &HydrogenData, field: f64) -> Result<Matrix5<f64>> {
    let scale = data.e1.abs();
    let mut h = Matrix5::zeros();
    h[(0, 0)] = data.e1 / scale;
    for i in 1..5 {
        h[(i, i)] = data.e2 / scale;
    }
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                h[(i, j)] = -field * transition_dipole(&data.constants, BASIS[i], BASIS[j])? / scale;
            }
        }
    }
    Ok(h)
}

/// All eigenstates, sorted by energy, each with its largest-magnitude
/// amplitude made positive.
fn eigenstates(data: &HydrogenData, field: f64) -> Result<Vec<SingleAtomState>> {
    if !field.is_finite() {
        return Err(domain(format!("field must be finite, got {field}")));
    }
    let ratio = data.stark_validity(field);
    if ratio > STARK_HARD_RATIO {
        return Err(Error::Validity { field, ratio, limit: STARK_HARD_RATIO });
    }
    let eig = SymmetricEigen::new(hamiltonian(data, field)?);
    let mut states: Vec<SingleAtomState> = (0..5)
        .map(|k| {
            let col = eig.eigenvectors.column(k);
            let mut amplitudes = [0.0; 5];
            for i in 0..5 {
                amplitudes[i] = col[i];
            }
            let lead = amplitudes.iter().copied().fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
            if lead < 0.0 {
                amplitudes.iter_mut().for_each(|a| *a = -*a);
            }
            SingleAtomState { energy: eig.eigenvalues[k], amplitudes }
        })
        .collect();
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(states)
}

/// Ground state of one atom in field ℰ (V/m), 1s amplitude positive.
pub fn single_atom_ground_state(data: &HydrogenData, field: f64) -> Result<SingleAtomState> {
    let mut ground = eigenstates(data, field)?.swap_remove(0);
    if ground.amplitudes[S100] < 0.0 {
        ground.amplitudes.iter_mut().for_each(|a| *a = -*a);
    }
    Ok(ground)
}

/// Richardson extrapolation to ℰ → 0 for a quantity even in ℰ, sampled at
/// ℰ, ℰ/2, ℰ/4 (step ratio 4 in ℰ²).
fn richardson(v: [f64; 3]) -> f64 {
    let a = (4.0 * v[1] - v[0]) / 3.0;
    let b = (4.0 * v[2] - v[1]) / 3.0;
    (16.0 * b - a) / 15.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneratePtReport {
    pub field: f64,
    /// d c_2p0 / dℰ from diagonalization and from −√2γ (m/V).
    pub first_order: f64,
    pub first_order_expected: f64,
    /// d² c_2s / dℰ² / 2 from diagonalization and from −(3/2)⁶γ²/√2 (m²/V²).
    pub second_order: f64,
    pub second_order_expected: f64,
    /// Largest |ground-state amplitude| on 2p±1 over the ladder.
    pub m1_leak: f64,
    /// Smallest |overlap| of the two n = 2, m = 0 eigenstates with (2p0 ± 2s)/√2.
    pub n2_overlap: f64,
    /// (E₊ − E₋) / (6 q a0 ℰ) − 1.
    pub splitting_error: f64,
    /// [c_2p0(ℰ) − c₁ℰ] / [c_2p0(ℰ/2) − c₁ℰ/2]; 8 for a cubic remainder.
    pub cubic_ratio: f64,
}

impl DegeneratePtReport {
    pub fn checks(&self) -> Vec<OracleCheck> {
        let s = "stark";
        vec![
            OracleCheck::new(
                s,
                "first-order 2p0 admixture",
                rel_err(self.first_order, self.first_order_expected),
                COEFF_REL_TOL,
            ),
            OracleCheck::new(
                s,
                "second-order 2s admixture",
                rel_err(self.second_order, self.second_order_expected),
                COEFF_REL_TOL,
            ),
            OracleCheck::new(s, "no 2p(m=+-1) admixture", self.m1_leak, 1e-14),
            OracleCheck::new(s, "n=2 eigenstates are (2p0 +- 2s)/sqrt2", 1.0 - self.n2_overlap, COEFF_REL_TOL),
            OracleCheck::new(s, "linear n=2 splitting 6 q a0 E", self.splitting_error.abs(), COEFF_REL_TOL),
            OracleCheck::new(s, "cubic remainder ratio 8", (self.cubic_ratio / 8.0 - 1.0).abs(), CUBIC_RATIO_TOL),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }
}

/// Compares exact diagonalization on the ladder ±ℰ, ±ℰ/2, ±ℰ/4 with the
/// perturbative coefficients of the ground-state admixtures.
pub fn degenerate_pt_check(data: &HydrogenData, field: f64) -> Result<DegeneratePtReport> {
    if !(field.is_finite() && field > 0.0) {
        return Err(domain(format!("field must be finite and positive, got {field}")));
    }
    let ladder = [field, field / 2.0, field / 4.0];
    let qa0 = data.constants.q_e * data.constants.a0;
    let scale = data.e1.abs();

    let mut first = [0.0; 3];
    let mut second = [0.0; 3];
    let mut p210 = [0.0; 3];
    let mut m1_leak = 0.0f64;
    let mut n2_overlap = 1.0f64;
    let mut splitting_error = 0.0f64;
    for (k, &e) in ladder.iter().enumerate() {
        let plus = eigenstates(data, e)?;
        let minus = eigenstates(data, -e)?;
        let gp = &plus[0];
        let gm = {
            let mut g = minus[0].clone();
            if g.amplitudes[S100] < 0.0 {
                g.amplitudes.iter_mut().for_each(|a| *a = -*a);
            }
            g
        };
        let gp_sign = gp.amplitudes[S100].signum();
        let a210 = |g: &SingleAtomState, sgn: f64| sgn * g.amplitudes[P210];
        let a200 = |g: &SingleAtomState, sgn: f64| sgn * g.amplitudes[S200];
        // symmetric/antisymmetric combinations cancel the other parity
        first[k] = (a210(gp, gp_sign) - a210(&gm, 1.0)) / (2.0 * e);
        second[k] = (a200(gp, gp_sign) + a200(&gm, 1.0)) / (2.0 * e * e);
        p210[k] = a210(gp, gp_sign);

        for st in [&plus[0], &minus[0]] {
            m1_leak = m1_leak.max(st.amplitudes[3].abs()).max(st.amplitudes[4].abs());
        }
        // n = 2, m = 0 pair: the excited states with weight on 2s/2p0
        let mut pair: Vec<&SingleAtomState> = plus[1..]
            .iter()
            .filter(|s| s.amplitudes[S200].abs() + s.amplitudes[P210].abs() > 0.5)
            .collect();
        pair.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        if pair.len() != 2 {
            return Err(Error::OracleFailure("could not identify the n = 2, m = 0 pair".into()));
        }
        for st in &pair {
            let proj = (st.amplitudes[P210] + st.amplitudes[S200]).abs().max((st.amplitudes[P210] - st.amplitudes[S200]).abs())
                / std::f64::consts::SQRT_2;
            n2_overlap = n2_overlap.min(proj);
        }
        let split = (pair[1].energy - pair[0].energy) * scale;
        let expected = 6.0 * qa0 * e;
        splitting_error = if (split / expected - 1.0).abs() > splitting_error.abs() {
            split / expected - 1.0
        } else {
            splitting_error
        };
    }

    let first_order_expected = -std::f64::consts::SQRT_2 * data.gamma;
    let second_order_expected = -(1.5f64).powi(6) / std::f64::consts::SQRT_2 * data.gamma * data.gamma;
    let cubic_ratio = (p210[0] - first_order_expected * ladder[0]) / (p210[1] - first_order_expected * ladder[1]);

    Ok(DegeneratePtReport {
        field,
        first_order: richardson(first),
        first_order_expected,
        second_order: richardson(second),
        second_order_expected,
        m1_leak,
        n2_overlap,
        splitting_error,
        cubic_ratio,
    })
}
