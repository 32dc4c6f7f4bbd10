//! Field-assisted dispersion energy, the unperturbed van der Waals baseline,
//! their sum, and the radial force.
//!
//! With both induced dipoles along ẑ and the interatomic axis at angle θ to
//! ẑ, the tensor `(−∇²δᵢⱼ + ∇ᵢ∇ⱼ) f(k0 r)/r` contracted with ẑẑ splits into a
//! transverse and a longitudinal piece:
//!
//! ```text
//! ΔE(r, θ) = sin²θ · ΔE⊥(r) + cos²θ · ΔE∥(r)
//! ```
//!
//! The energies are written through the dimensionless shapes
//! `ΔE⊥ = β ℰ ℰ′ k0 · perp_shape(k0 r)` and `ΔE∥ = β ℰ ℰ′ k0 · par_shape(k0 r)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hydrogen::{HydrogenData, STARK_HARD_RATIO, STARK_WARN_RATIO};
use crate::specfun::{aux_values, RegimeThresholds};

/// Minimum separation in Bohr radii; below it the point-dipole model is refused.
pub const R_MIN_BOHR: f64 = 10.0;

/// k0 r where the van der Waals baseline switches from the near to the far formula.
pub const VDW_SWITCH_K0R: f64 = 1.0;
/// Band of k0 r where the baseline is labelled `Intermediate`.
pub const VDW_INTERMEDIATE_BAND: (f64, f64) = (0.1, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    /// Interatomic distance (m).
    pub r: f64,
    /// Angle between the interatomic axis and the field axis (rad).
    pub theta: f64,
}

impl Geometry {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta }
    }

    pub fn perpendicular(r: f64) -> Self {
        Self { r, theta: PI / 2.0 }
    }

    pub fn parallel(r: f64) -> Self {
        Self { r, theta: 0.0 }
    }
}

/// Signed field strengths along ẑ on atom A and atom B (V/m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub field: f64,
    pub field_prime: f64,
}

impl FieldConfig {
    pub fn new(field: f64, field_prime: f64) -> Self {
        Self { field, field_prime }
    }

    pub fn equal(field: f64) -> Self {
        Self { field, field_prime: field }
    }

    pub fn swapped(self) -> Self {
        Self { field: self.field_prime, field_prime: self.field }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Near,
    Intermediate,
    Far,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Near => "near",
            Regime::Intermediate => "intermediate",
            Regime::Far => "far",
        }
    }

    /// Reporting label for a given k0 r.
    pub fn classify(k0r: f64) -> Regime {
        if k0r < VDW_INTERMEDIATE_BAND.0 {
            Regime::Near
        } else if k0r > VDW_INTERMEDIATE_BAND.1 {
            Regime::Far
        } else {
            Regime::Intermediate
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Perp,
    Par,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Zone {
    Near,
    Far,
}

/// Non-fatal validity flags attached to results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Warning {
    /// The van der Waals baseline is an asymptote being used between zones.
    VdwIntermediateZone,
    /// Stark shift above the soft threshold (still below the hard limit).
    StarkSoftLimit,
}

impl Warning {
    pub fn as_str(&self) -> &'static str {
        match self {
            Warning::VdwIntermediateZone => "vdw_intermediate_zone",
            Warning::StarkSoftLimit => "stark_soft_limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VdwBaseline {
    /// Energy (J), always negative.
    pub energy: f64,
    /// Which asymptote was used.
    pub branch: Zone,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteractionBreakdown {
    pub field_component: f64,
    pub vdw_component: f64,
    pub total: f64,
    pub regime: Regime,
    pub warnings: Vec<Warning>,
}

/// ΔE⊥ / (β ℰ ℰ′ k0) as a function of x = k0 r.
pub fn perp_shape(x: f64) -> f64 {
    let v = aux_values(x);
    (v.f / (x * x) + v.g / x - v.f_rem) / x
}

/// ΔE∥ / (β ℰ ℰ′ k0) as a function of x = k0 r.
pub fn par_shape(x: f64) -> f64 {
    let v = aux_values(x);
    -2.0 * (v.f / (x * x * x) + v.g / (x * x))
}

/// d perp_shape / dx, from f′ = −g and g′ = f − 1/x.
pub fn perp_shape_derivative(x: f64) -> f64 {
    let v = aux_values(x);
    let x2 = x * x;
    let x3 = x2 * x;
    -3.0 * v.g / x3 - 3.0 * v.f / (x3 * x) + 2.0 * v.f_rem / x2 + v.g_rem / x
}

/// d par_shape / dx.
pub fn par_shape_derivative(x: f64) -> f64 {
    let v = aux_values(x);
    let x2 = x * x;
    let x3 = x2 * x;
    -2.0 * (-3.0 * v.g / x3 - 3.0 * v.f / (x3 * x) + v.f_rem / x2)
}

/// Angular weights (sin²θ, cos²θ), arranged so that θ ∈ {0, π/2, π}
/// reproduce the pure orientations bit for bit.
fn angular_weights(theta: f64) -> (f64, f64) {
    let c = theta.cos();
    let c2 = c * c;
    (1.0 - c2, c2)
}

/// Evaluator for the two-atom interaction on top of a `HydrogenData` set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionModel {
    pub data: HydrogenData,
    pub thresholds: RegimeThresholds,
}

impl Default for DispersionModel {
    fn default() -> Self {
        Self::new(HydrogenData::default())
    }
}

impl DispersionModel {
    pub fn new(data: HydrogenData) -> Self {
        Self { data, thresholds: RegimeThresholds::DEFAULT }
    }

    pub fn r_min(&self) -> f64 {
        R_MIN_BOHR * self.data.constants.a0
    }

    pub fn k0r(&self, r: f64) -> f64 {
        self.data.k0 * r
    }

    fn check_r(&self, r: f64) -> Result<()> {
        if !r.is_finite() {
            return Err(domain(format!("r must be finite, got {r}")));
        }
        if r < self.r_min() {
            return Err(domain(format!(
                "r = {r:e} m is below r_min = {:e} m (10 Bohr radii); the dipole approximation does not hold there",
                self.r_min()
            )));
        }
        Ok(())
    }

    fn check_theta(theta: f64) -> Result<()> {
        if !(0.0..=PI).contains(&theta) {
            return Err(domain(format!("theta must lie in [0, pi], got {theta}")));
        }
        Ok(())
    }

    fn check_fields(&self, fields: &FieldConfig) -> Result<Vec<Warning>> {
        let mut warnings = Vec::new();
        for e in [fields.field, fields.field_prime] {
            if !e.is_finite() {
                return Err(domain(format!("field strengths must be finite, got {e}")));
            }
        }
        let strongest = fields.field.abs().max(fields.field_prime.abs());
        let ratio = self.data.stark_validity(strongest);
        if ratio > STARK_HARD_RATIO {
            return Err(Error::Validity { field: strongest, ratio, limit: STARK_HARD_RATIO });
        }
        if ratio > STARK_WARN_RATIO {
            warnings.push(Warning::StarkSoftLimit);
        }
        Ok(warnings)
    }

    fn scale(&self, field: f64, field_prime: f64) -> f64 {
        self.data.beta * (field * field_prime) * self.data.k0
    }

    /// Exact field-assisted energy, atoms aligned perpendicular to the field (J).
    pub fn delta_e_perp(&self, r: f64, field: f64, field_prime: f64) -> Result<f64> {
        self.check_r(r)?;
        Ok(self.scale(field, field_prime) * perp_shape(self.k0r(r)))
    }

    /// Exact field-assisted energy, atoms aligned along the field (J).
    pub fn delta_e_par(&self, r: f64, field: f64, field_prime: f64) -> Result<f64> {
        self.check_r(r)?;
        Ok(self.scale(field, field_prime) * par_shape(self.k0r(r)))
    }

    /// Exact field-assisted energy at arbitrary θ (J).
    pub fn delta_e_general(&self, r: f64, theta: f64, field: f64, field_prime: f64) -> Result<f64> {
        Self::check_theta(theta)?;
        let perp = self.delta_e_perp(r, field, field_prime)?;
        let par = self.delta_e_par(r, field, field_prime)?;
        let (ws, wc) = angular_weights(theta);
        Ok(ws * perp + wc * par)
    }

    /// Leading near- or far-zone term of the field-assisted energy (J).
    pub fn delta_e_asymptotic(
        &self,
        r: f64,
        orientation: Orientation,
        zone: Zone,
        field: f64,
        field_prime: f64,
    ) -> Result<f64> {
        self.check_r(r)?;
        let k0 = self.data.k0;
        let pre = self.data.beta * (field * field_prime) / (k0 * k0);
        let near = PI / (2.0 * r.powi(3));
        let far = 4.0 / (k0 * r.powi(4));
        Ok(match (orientation, zone) {
            (Orientation::Perp, Zone::Near) => pre * near,
            (Orientation::Perp, Zone::Far) => pre * far,
            (Orientation::Par, Zone::Near) => -pre * 2.0 * near,
            (Orientation::Par, Zone::Far) => -pre * far,
        })
    }

    /// Unperturbed dispersion energy with the n = 2 polarizability: the
    /// near-zone form for k0 r ≤ 1, the far-zone form above.
    pub fn vdw_baseline(&self, r: f64) -> Result<VdwBaseline> {
        self.check_r(r)?;
        Ok(self.vdw_at_k0r(self.k0r(r)))
    }

    /// Baseline evaluated at x = k0 r without the r_min guard. Meant for
    /// scaling studies of the model itself.
    pub fn vdw_at_k0r(&self, x: f64) -> VdwBaseline {
        let r = x / self.data.k0;
        let c = &self.data.constants;
        let alpha2 = self.data.alpha * self.data.alpha;
        let eps2 = c.eps0 * c.eps0;
        if x <= VDW_SWITCH_K0R {
            let energy = -3.0 / (64.0 * PI * PI * eps2) * self.data.e_bar * alpha2 / r.powi(6);
            VdwBaseline { energy, branch: Zone::Near }
        } else {
            let energy = -23.0 * c.hbar * c.c / (64.0 * PI.powi(3) * eps2) * alpha2 / r.powi(7);
            VdwBaseline { energy, branch: Zone::Far }
        }
    }

    /// Field-assisted plus baseline energy with regime and validity flags.
    pub fn total_energy(&self, geometry: Geometry, fields: FieldConfig) -> Result<InteractionBreakdown> {
        let mut warnings = self.check_fields(&fields)?;
        let field_component = self.delta_e_general(geometry.r, geometry.theta, fields.field, fields.field_prime)?;
        let vdw_component = self.vdw_baseline(geometry.r)?.energy;
        let regime = Regime::classify(self.k0r(geometry.r));
        if regime == Regime::Intermediate {
            warnings.push(Warning::VdwIntermediateZone);
        }
        Ok(InteractionBreakdown {
            field_component,
            vdw_component,
            total: field_component + vdw_component,
            regime,
            warnings,
        })
    }

    /// d(field-assisted energy)/dr (J/m), analytic.
    pub fn field_energy_derivative(&self, geometry: Geometry, fields: FieldConfig) -> Result<f64> {
        self.check_r(geometry.r)?;
        Self::check_theta(geometry.theta)?;
        let x = self.k0r(geometry.r);
        let (ws, wc) = angular_weights(geometry.theta);
        let shape_prime = ws * perp_shape_derivative(x) + wc * par_shape_derivative(x);
        Ok(self.scale(fields.field, fields.field_prime) * self.data.k0 * shape_prime)
    }

    /// d(baseline)/dr (J/m). At the switch point the near-side branch is used.
    pub fn vdw_derivative(&self, r: f64) -> Result<f64> {
        let b = self.vdw_baseline(r)?;
        let power = match b.branch {
            Zone::Near => 6.0,
            Zone::Far => 7.0,
        };
        Ok(-power * b.energy / r)
    }

    /// Radial force −∂(total)/∂r (N); positive means repulsive.
    pub fn radial_force(&self, geometry: Geometry, fields: FieldConfig) -> Result<f64> {
        self.check_fields(&fields)?;
        let d_field = self.field_energy_derivative(geometry, fields)?;
        let d_vdw = self.vdw_derivative(geometry.r)?;
        Ok(-(d_field + d_vdw))
    }
}
