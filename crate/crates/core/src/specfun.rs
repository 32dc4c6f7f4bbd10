//! Sine/cosine integrals and the auxiliary functions
//!
//! ```text
//! f(x) = Ci(x) sin x + (π/2 − Si(x)) cos x
//! g(x) = −Ci(x) cos x + (π/2 − Si(x)) sin x
//! ```
//!
//! Three evaluation branches:
//!
//! * `x <= SERIES_MAX`: power series for Si and Ci, then f and g from the
//!   definitions.
//! * `SERIES_MAX < x < ASYMPTOTIC_MIN`: continued fraction for
//!   `e^{ix} E1(ix) = g(x) − i f(x)`, which yields f and g without the
//!   cancellation the definitions suffer from.
//! * `x >= ASYMPTOTIC_MIN`: the asymptotic series of f and g, truncated at the
//!   smallest term.
//!
//! For x ≳ 20 the definitions subtract nearly equal quantities, so large-x
//! Si/Ci are rebuilt from f and g instead of the other way round.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::EULER_GAMMA;
use crate::error::{domain, Result};

/// Upper end of the power-series branch.
pub const SERIES_MAX: f64 = 2.0;
/// Lower end of the asymptotic-series branch.
pub const ASYMPTOTIC_MIN: f64 = 40.0;

/// Where the near- and far-zone expansions of f (and of the field-assisted
/// energies built from it) are trusted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeThresholds {
    pub near_cut: f64,
    pub far_cut: f64,
    /// Bound on `|f − f_asym| / f` at and beyond the cuts.
    pub certified_rel_err: f64,
}

impl RegimeThresholds {
    pub const DEFAULT: RegimeThresholds = RegimeThresholds {
        near_cut: 0.01,
        far_cut: 50.0,
        certified_rel_err: 0.04,
    };

    pub fn new(near_cut: f64, far_cut: f64, certified_rel_err: f64) -> Result<Self> {
        if !(near_cut > 0.0 && near_cut < far_cut && far_cut.is_finite()) {
            return Err(domain(format!(
                "regime cuts must satisfy 0 < near_cut < far_cut, got {near_cut}, {far_cut}"
            )));
        }
        if certified_rel_err.is_nan() || certified_rel_err <= 0.0 {
            return Err(domain("certified_rel_err must be positive"));
        }
        Ok(Self { near_cut, far_cut, certified_rel_err })
    }
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() {
        return Err(domain(format!("{what}: argument must be finite, got {x}")));
    }
    if x <= 0.0 {
        return Err(domain(format!("{what}: argument must be > 0, got {x}")));
    }
    Ok(())
}

/// Si(x) = ∫₀ˣ sin t / t dt.
pub fn sine_integral(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain(format!("Si: argument must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= SERIES_MAX {
        return Ok(si_series(x));
    }
    let (f, g) = fg_large(x);
    let (s, c) = x.sin_cos();
    Ok(FRAC_PI_2 - (f * c + g * s))
}

/// Ci(x) = −∫ₓ^∞ cos t / t dt, for x > 0.
pub fn cosine_integral(x: f64) -> Result<f64> {
    check_positive(x, "Ci")?;
    if x <= SERIES_MAX {
        return Ok(ci_series(x));
    }
    let (f, g) = fg_large(x);
    let (s, c) = x.sin_cos();
    Ok(f * s - g * c)
}

pub fn aux_f(x: f64) -> Result<f64> {
    check_positive(x, "f")?;
    Ok(aux_fg_unchecked(x).0)
}

pub fn aux_g(x: f64) -> Result<f64> {
    check_positive(x, "g")?;
    Ok(aux_fg_unchecked(x).1)
}

/// Both auxiliary functions in one evaluation.
pub fn aux_fg(x: f64) -> Result<(f64, f64)> {
    check_positive(x, "f/g")?;
    Ok(aux_fg_unchecked(x))
}

/// f′(x) = −g(x).
pub fn aux_f_prime(x: f64) -> Result<f64> {
    aux_g(x).map(|g| -g)
}

/// g′(x) = f(x) − 1/x.
pub fn aux_g_prime(x: f64) -> Result<f64> {
    check_positive(x, "g'")?;
    Ok(aux_remainders(x).0)
}

/// f, g together with the remainders `f − 1/x` and `g − 1/x²`.
///
/// The remainders are what the field-assisted energies and forces actually
/// need at large x, where forming them by subtraction would lose every digit.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AuxValues {
    pub f: f64,
    pub g: f64,
    pub f_rem: f64,
    pub g_rem: f64,
}

pub(crate) fn aux_values(x: f64) -> AuxValues {
    if x >= ASYMPTOTIC_MIN {
        let a = asymptotic(x);
        AuxValues { f: a.f, g: a.g, f_rem: a.f_rem, g_rem: a.g_rem }
    } else {
        let (f, g) = aux_fg_unchecked(x);
        AuxValues { f, g, f_rem: f - 1.0 / x, g_rem: g - 1.0 / (x * x) }
    }
}

fn aux_remainders(x: f64) -> (f64, f64) {
    let v = aux_values(x);
    (v.f_rem, v.g_rem)
}

fn aux_fg_unchecked(x: f64) -> (f64, f64) {
    if x <= SERIES_MAX {
        let si = si_series(x);
        let ci = ci_series(x);
        let (s, c) = x.sin_cos();
        let tail = FRAC_PI_2 - si;
        (ci * s + tail * c, -ci * c + tail * s)
    } else {
        fg_large(x)
    }
}

fn fg_large(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC_MIN {
        let a = asymptotic(x);
        (a.f, a.g)
    } else {
        fg_continued_fraction(x)
    }
}

fn si_series(x: f64) -> f64 {
    // Σ (−1)^n x^{2n+1} / ((2n+1)(2n+1)!)
    let x2 = x * x;
    let mut term = x; // x^{2n+1}/(2n+1)!
    let mut sum = x;
    let mut n = 0u32;
    loop {
        n += 1;
        let k = f64::from(2 * n);
        term *= -x2 / (k * (k + 1.0));
        let contrib = term / (k + 1.0);
        sum += contrib;
        if contrib.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn ci_series(x: f64) -> f64 {
    // γ + ln x + Σ_{n≥1} (−1)^n x^{2n} / (2n (2n)!)
    let x2 = x * x;
    let mut term = 1.0; // x^{2n}/(2n)!
    let mut sum = 0.0;
    let mut n = 0u32;
    loop {
        n += 1;
        let k = f64::from(2 * n);
        term *= -x2 / ((k - 1.0) * k);
        let contrib = term / k;
        sum += contrib;
        if contrib.abs() < 1e-18 * (1.0 + sum.abs()) {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// Modified Lentz evaluation of `e^{ix} E1(ix) = g(x) − i f(x)`.
fn fg_continued_fraction(x: f64) -> (f64, f64) {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000u32 {
        let a = -f64::from((i - 1) * (i - 1));
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    (-h.im, h.re)
}

struct Asymptotic {
    f: f64,
    g: f64,
    f_rem: f64,
    g_rem: f64,
}

/// f ~ (1/x) Σ (−1)^n (2n)!/x^{2n},  g ~ (1/x²) Σ (−1)^n (2n+1)!/x^{2n}.
fn asymptotic(x: f64) -> Asymptotic {
    let inv2 = 1.0 / (x * x);
    let tail = |first_factor: fn(u32) -> f64| -> f64 {
        // Sum of the n ≥ 1 terms, stopped at the smallest one.
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut prev = f64::INFINITY;
        for n in 1..200u32 {
            term *= -first_factor(n) * inv2;
            if term.abs() >= prev {
                break;
            }
            sum += term;
            prev = term.abs();
            if prev < 1e-18 {
                break;
            }
        }
        sum
    };
    // (2n)!/(2n−2)! = (2n−1)(2n);  (2n+1)!/(2n−1)! = 2n(2n+1)
    let f_tail = tail(|n| f64::from(2 * n - 1) * f64::from(2 * n));
    let g_tail = tail(|n| f64::from(2 * n) * f64::from(2 * n + 1));
    let f_rem = f_tail / x;
    let g_rem = g_tail * inv2;
    Asymptotic { f: 1.0 / x + f_rem, g: inv2 + g_rem, f_rem, g_rem }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    // Reference values from a 30-digit evaluation of the definitions.
    const REF: &[(f64, f64, f64, f64, f64)] = &[
        // x, Si, Ci, f, g
        (1e-6, 9.999_999_999_999_444e-7, -13.238_294_893_062_991, 1.570_782_088_499_218_2, 13.238_296_463_851_699),
        (1e-2, 9.999_944_444_611_111e-3, -4.027_979_520_982_392, 1.520_439_219_298_237_3, 4.043_385_827_376_735),
        (0.5, 0.493_107_418_043_066_7, -0.177_784_078_806_612_9, 0.860_526_765_726_158_6, 0.672_691_792_868_549_1),
        (1.0, 0.946_083_070_367_183, 0.337_403_922_900_968_13, 0.621_449_624_235_813_4, 0.343_377_961_556_427_03),
        (2.0, 1.605_412_976_802_694_8, 0.422_980_828_774_865, 0.399_020_988_594_183_85, 0.144_545_303_037_332_42),
        (4.0, 1.758_203_138_949_053, -0.140_981_697_886_930_4, 0.229_192_568_024_526_98, 0.049_678_155_593_656_75),
        (10.0, 1.658_347_594_218_874, -0.045_456_433_004_455_37, 0.098_191_035_010_170_17, 0.009_488_539_016_354_807),
        (40.0, 1.586_985_119_354_784_5, 0.019_020_007_896_208_767, 0.024_968_980_126_268_47, 6.226_848_102_655_585e-4),
        (100.0, 1.562_225_466_889_056_3, -5.148_825_142_610_492e-3, 9.998_002_392_839_962e-3, 9.994_011_949_958_949e-5),
        (1000.0, 1.570_233_121_968_771_2, 8.263_155_110_906_823e-4, 9.999_980_000_239_993e-4, 9.999_940_001_199_95e-7),
        (1e6, 1.570_795_390_043_119_1, -3.499_944_389_227_205e-7, 9.999_999_999_980_000e-7, 9.999_999_999_940_000e-13),
    ];

    #[test]
    fn reference_values() {
        for &(x, si, ci, f, g) in REF {
            if x <= 1e3 {
                assert!((sine_integral(x).unwrap() - si).abs() <= 1e-12, "Si({x})");
                assert!((cosine_integral(x).unwrap() - ci).abs() <= 1e-12, "Ci({x})");
            }
            assert!(rel(aux_f(x).unwrap(), f) <= 1e-10, "f({x}) = {}", aux_f(x).unwrap());
            assert!(rel(aux_g(x).unwrap(), g) <= 1e-10, "g({x}) = {}", aux_g(x).unwrap());
        }
    }

    #[test]
    fn trivial_limits() {
        assert_eq!(sine_integral(0.0).unwrap(), 0.0);
        assert!((sine_integral(1e6).unwrap() - FRAC_PI_2).abs() < 1e-5);
        let x = 1e-6;
        assert!((cosine_integral(x).unwrap() - (EULER_GAMMA + x.ln())).abs() < 1e-9);
        assert!((aux_f(1e-8).unwrap() - FRAC_PI_2).abs() < 1e-6);
        assert!((1e4 * aux_f(1e4).unwrap() - 1.0).abs() < 2e-8);
    }

    #[test]
    fn ci_at_100_small_and_follows_leading_term() {
        let ci = cosine_integral(100.0).unwrap();
        assert!(ci.abs() < 1e-2);
        assert_eq!(ci.signum(), (100f64.sin() / 100.0).signum());
    }

    #[test]
    fn domain_errors() {
        assert!(sine_integral(-1.0).is_err());
        assert!(sine_integral(f64::NAN).is_err());
        assert!(sine_integral(f64::INFINITY).is_err());
        assert!(cosine_integral(0.0).is_err());
        assert!(cosine_integral(-2.0).is_err());
        assert!(aux_f(0.0).is_err());
        assert!(aux_g(-1e-3).is_err());
        assert!(aux_g_prime(0.0).is_err());
        assert!(aux_f_prime(f64::NAN).is_err());
    }

    #[test]
    fn branches_agree_at_switch_points() {
        // series vs continued fraction at SERIES_MAX
        for x in [SERIES_MAX * (1.0 - 1e-9), SERIES_MAX, 2.5] {
            let si = si_series(x);
            let ci = ci_series(x);
            let (s, c) = x.sin_cos();
            let f_series = ci * s + (FRAC_PI_2 - si) * c;
            let g_series = -ci * c + (FRAC_PI_2 - si) * s;
            let (f_cf, g_cf) = fg_continued_fraction(x);
            assert!(rel(f_series, f_cf) < 1e-12, "f at {x}");
            assert!(rel(g_series, g_cf) < 1e-12, "g at {x}");
        }
        // continued fraction vs asymptotic series at ASYMPTOTIC_MIN
        for x in [30.0, ASYMPTOTIC_MIN, 60.0] {
            let (f_cf, g_cf) = fg_continued_fraction(x);
            let a = asymptotic(x);
            assert!(rel(a.f, f_cf) < 1e-10, "f at {x}: {} vs {}", a.f, f_cf);
            assert!(rel(a.g, g_cf) < 1e-10, "g at {x}: {} vs {}", a.g, g_cf);
        }
    }

    #[test]
    fn derivative_identities() {
        assert_eq!(aux_f_prime(1.0).unwrap(), -aux_g(1.0).unwrap());
        assert!(aux_g_prime(1e-6).unwrap() < -0.99e6);
        let h = 1e-4;
        let fd = (aux_g(100.0 + h).unwrap() - aux_g(100.0 - h).unwrap()) / (2.0 * h);
        assert!(rel(aux_g_prime(100.0).unwrap(), fd) < 1e-6);
    }

    #[test]
    fn remainders_have_asymptotic_leading_terms() {
        for x in [1e3, 1e5, 1e6] {
            let v = aux_values(x);
            assert!(rel(v.f_rem, -2.0 / x.powi(3)) < 20.0 / (x * x));
            assert!(rel(v.g_rem, -6.0 / x.powi(4)) < 40.0 / (x * x));
        }
    }

    #[test]
    fn regime_thresholds_validation() {
        assert!(RegimeThresholds::new(0.01, 50.0, 0.04).is_ok());
        assert!(RegimeThresholds::new(50.0, 0.01, 0.04).is_err());
        assert!(RegimeThresholds::new(0.0, 1.0, 0.04).is_err());
        assert!(RegimeThresholds::new(0.1, 1.0, 0.0).is_err());
    }

    #[test]
    fn asymptotic_certification_at_cuts() {
        let t = RegimeThresholds::DEFAULT;
        for x in [t.far_cut, 2.0 * t.far_cut, 1e4] {
            let f = aux_f(x).unwrap();
            let approx = 1.0 / x - 2.0 / x.powi(3);
            assert!((f - approx).abs() <= t.certified_rel_err * f);
        }
        for x in [t.near_cut, t.near_cut / 10.0, 1e-6] {
            let f = aux_f(x).unwrap();
            assert!((f - FRAC_PI_2).abs() <= t.certified_rel_err * f);
        }
    }
}
