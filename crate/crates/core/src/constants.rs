//! Physical constants (CODATA 2018, SI) and energy unit conversions.
//!
//! Every other module works in SI. Electron-volts only show up at the CLI
//! boundary.

use serde::Serialize;

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permittivity (C²/(J·m)).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Elementary charge (C), positive.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Bohr radius (m).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
/// Electron mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The stored constant set. Values are taken verbatim, never recomputed from
/// one another.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub eps0: f64,
    pub q_e: f64,
    pub a0: f64,
    pub m_e: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: SPEED_OF_LIGHT,
        eps0: VACUUM_PERMITTIVITY,
        q_e: ELEMENTARY_CHARGE,
        a0: BOHR_RADIUS,
        m_e: ELECTRON_MASS,
    };

    /// Bohr radius implied by the other stored constants,
    /// `4π ε0 ħ² / (m_e q²)`. Only used to check the set is self-consistent.
    pub fn bohr_radius_from_relation(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.eps0 * self.hbar * self.hbar
            / (self.m_e * self.q_e * self.q_e)
    }

    pub fn all_positive(&self) -> bool {
        [self.hbar, self.c, self.eps0, self.q_e, self.a0, self.m_e]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite())
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

pub fn ev_to_joule(ev: f64) -> f64 {
    ev * ELEMENTARY_CHARGE
}

pub fn joule_to_ev(joule: f64) -> f64 {
    joule / ELEMENTARY_CHARGE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bohr_radius_consistent_with_stored_set() {
        let c = PhysicalConstants::CODATA_2018;
        let rel = (c.bohr_radius_from_relation() - c.a0).abs() / c.a0;
        assert!(rel < 1e-6, "a0 relation off by {rel:e}");
    }

    #[test]
    fn constants_positive() {
        assert!(PhysicalConstants::default().all_positive());
    }

    #[test]
    fn ev_conversions() {
        assert_eq!(ev_to_joule(0.0), 0.0);
        assert_eq!(ev_to_joule(1.0), 1.602_176_634e-19);
        let back = joule_to_ev(ev_to_joule(13.6));
        assert!((back - 13.6).abs() / 13.6 < 1e-12);
    }

    #[test]
    fn hbar_c_in_ev_nm() {
        // ħc ≈ 197.327 eV·nm
        let hc = joule_to_ev(HBAR * SPEED_OF_LIGHT) * 1e9;
        assert!((hc - 197.326_980_4).abs() < 1e-6);
    }
}
