use crate::constants::EULER_GAMMA;
use crate::error::{domain, Result};
use crate::quadrature::{integrate, integrate_to_infinity, QuadratureOptions};

const OPTS: QuadratureOptions = QuadratureOptions { abs_tol: 1e-15, rel_tol: 1e-13, max_subdivisions: 4000 };

/// f and g from their Laplace representations
///
/// ```text
/// f(x) = ∫₀^∞ e^{−xt} / (1 + t²) dt,   g(x) = ∫₀^∞ t e^{−xt} / (1 + t²) dt
/// ```
///
/// evaluated after the change of variable u = x t, split at u = x where the
/// rational factor turns over.
pub fn aux_fg_quadrature(x: f64) -> Result<(f64, f64)> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("aux_fg_quadrature: x must be finite and > 0, got {x}")));
    }
    let x2 = x * x;
    let f_integrand = |u: f64| x * (-u).exp() / (x2 + u * u);
    let g_integrand = |u: f64| u * (-u).exp() / (x2 + u * u);
    let split = x.min(40.0);
    let f = integrate(f_integrand, 0.0, split, OPTS)?.value + integrate_to_infinity(f_integrand, split, OPTS)?.value;
    let g = integrate(g_integrand, 0.0, split, OPTS)?.value + integrate_to_infinity(g_integrand, split, OPTS)?.value;
    Ok((f, g))
}

/// Si(x) by direct quadrature of sin t / t.
pub fn sine_integral_quadrature(x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(domain(format!("x must be finite and >= 0, got {x}")));
    }
    let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
    Ok(integrate(sinc, 0.0, x, OPTS)?.value)
}

/// Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt.
pub fn cosine_integral_quadrature(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("x must be finite and > 0, got {x}")));
    }
    let kernel = |t: f64| {
        if t < 1e-4 {
            -0.5 * t + t * t * t / 24.0
        } else {
            (t.cos() - 1.0) / t
        }
    };
    Ok(EULER_GAMMA + x.ln() + integrate(kernel, 0.0, x, OPTS)?.value)
}
