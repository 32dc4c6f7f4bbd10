//! Field-assisted energy straight from the k-space sum.
//!
//! After the polarization sum `δᵢⱼ − k̂ᵢk̂ⱼ` and the angular integration
//! (spherical Bessel kernels), with u = k r and x = k0 r:
//!
//! ```text
//! ΔE = −(2γ² ℰ ℰ′ μ² / (π² ε0 r³)) ∫₀^∞ u³/(u + x) K_θ(u) du
//! K_θ(u) = sin²θ (j0(u) − j1(u)/u) + cos²θ · 2 j1(u)/u
//! ```
//!
//! The integrand grows like u sin u, so the integral only exists in the Abel
//! sense. It is damped with e^{−ηk}, evaluated on a ladder of η, and
//! extrapolated to η → 0 with Neville's scheme.

use std::f64::consts::PI;

use serde::Serialize;

use super::{rel_err, QuadratureSpec};
use crate::error::{domain, Error, Result};
use crate::hydrogen::HydrogenData;
use crate::quadrature::{gauss_legendre_panels, integrate, QuadratureOptions};

/// Relative accuracy the extrapolated value is expected to reach.
pub const TARGET_REL_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KspaceResult {
    /// Extrapolated energy (J).
    pub value: f64,
    /// (η in m, damped dimensionless integral) for every rung of the ladder.
    pub estimates: Vec<(f64, f64)>,
    /// Extrapolated dimensionless integral.
    pub integral: f64,
    /// Relative change produced by the last extrapolation step.
    pub last_change: f64,
}

/// j0(u) − j1(u)/u and j1(u)/u, with series near the origin.
fn bessel_pieces(u: f64) -> (f64, f64) {
    if u < 0.05 {
        let u2 = u * u;
        let j0 = 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0));
        let j1_over_u = (1.0 - u2 / 10.0 * (1.0 - u2 / 28.0 * (1.0 - u2 / 54.0))) / 3.0;
        (j0 - j1_over_u, j1_over_u)
    } else {
        let (s, c) = u.sin_cos();
        let j0 = s / u;
        let j1_over_u = (s - u * c) / (u * u * u);
        (j0 - j1_over_u, j1_over_u)
    }
}

fn kernel(u: f64, sin2: f64, cos2: f64) -> f64 {
    let (transverse, j1u) = bessel_pieces(u);
    sin2 * transverse + cos2 * 2.0 * j1u
}

/// ∫₀^∞ u³/(u + x) K_θ(u) e^{−εu} du for one damping rate ε = η/r.
fn damped_integral(x: f64, sin2: f64, cos2: f64, eps: f64, spec: &QuadratureSpec) -> Result<f64> {
    let integrand = |u: f64| u * u * u / (u + x) * kernel(u, sin2, cos2) * (-eps * u).exp();
    // e^{-45} leaves nothing measurable even against the u-growth.
    let upper = 45.0 / eps;
    let head_end = (2.0 * PI).min(upper);
    let opts = QuadratureOptions {
        abs_tol: spec.abs_tol,
        rel_tol: spec.rel_tol,
        max_subdivisions: spec.max_subdivisions,
    };
    let head = integrate(integrand, 0.0, head_end, opts)?.value;
    if upper <= head_end {
        return Ok(head);
    }
    let panels = ((upper - head_end) / (0.5 * PI)).ceil() as usize;
    Ok(head + gauss_legendre_panels(integrand, head_end, upper, panels))
}

/// Neville extrapolation of (h, value) pairs to h = 0. Returns the final
/// estimate and the diagonal of the tableau.
fn neville_to_zero(points: &[(f64, f64)]) -> (f64, Vec<f64>) {
    let n = points.len();
    let mut p: Vec<f64> = points.iter().map(|(_, v)| *v).collect();
    let mut diagonal = vec![p[0]];
    for level in 1..n {
        for i in (level..n).rev() {
            let hi = points[i].0;
            let hj = points[i - level].0;
            p[i] = (hj * p[i] - hi * p[i - 1]) / (hj - hi);
        }
        diagonal.push(p[level]);
    }
    (p[n - 1], diagonal)
}

/// Field-assisted energy (J) at separation r, angle θ, from the k-space
/// integral with the default regulator ladder.
pub fn kspace_shift(data: &HydrogenData, r: f64, theta: f64, field: f64, field_prime: f64) -> Result<KspaceResult> {
    kspace_shift_with(data, r, theta, field, field_prime, &QuadratureSpec::for_distance(r))
}

pub fn kspace_shift_with(
    data: &HydrogenData,
    r: f64,
    theta: f64,
    field: f64,
    field_prime: f64,
    spec: &QuadratureSpec,
) -> Result<KspaceResult> {
    if !(r.is_finite() && r > 0.0) {
        return Err(domain(format!("r must be finite and positive, got {r}")));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(domain(format!("theta must lie in [0, pi], got {theta}")));
    }
    spec.validate(r)?;
    let x = data.k0 * r;
    let c = theta.cos();
    let cos2 = c * c;
    let sin2 = 1.0 - cos2;

    let mut estimates = Vec::with_capacity(spec.eta_sequence.len());
    for &eta in &spec.eta_sequence {
        let value = damped_integral(x, sin2, cos2, eta / r, spec)?;
        estimates.push((eta, value));
    }
    let (integral, diagonal) = neville_to_zero(&estimates);
    let n = diagonal.len();
    let last_change = rel_err(diagonal[n - 1], diagonal[n - 2]);
    if last_change > 10.0 * TARGET_REL_TOL {
        return Err(Error::OracleFailure(format!(
            "eta extrapolation not converging at k0r = {x}: last step changed the integral by {last_change:e}"
        )));
    }

    let eps0 = data.constants.eps0;
    let prefactor = -2.0 * data.gamma * data.gamma * field * field_prime * data.mu_eg * data.mu_eg
        / (PI * PI * eps0 * r * r * r);
    Ok(KspaceResult { value: prefactor * integral, estimates, integral, last_change })
}
