use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::str::FromStr;

use serde::Serialize;

use super::aux::{aux_fg_quadrature, cosine_integral_quadrature, sine_integral_quadrature};
use super::kspace::{kspace_shift, TARGET_REL_TOL};
use super::matrix::matrix_element_check;
use super::stark::degenerate_pt_check;
use super::{rel_err, OracleCheck};
use crate::error::Error;
use crate::interaction::DispersionModel;
use crate::specfun::{aux_f, aux_f_prime, aux_fg, aux_g, aux_g_prime, cosine_integral, sine_integral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Kspace,
    Matrix,
    Stark,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "specfun" => Ok(Suite::Specfun),
            "kspace" => Ok(Suite::Kspace),
            "matrix" => Ok(Suite::Matrix),
            "stark" => Ok(Suite::Stark),
            "all" => Ok(Suite::All),
            other => Err(Error::Config(format!("unknown oracle suite '{other}'"))),
        }
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..n).map(move |i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
}

fn specfun_checks() -> Vec<OracleCheck> {
    let s = "specfun";
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    let mut failed = false;
    for x in log_grid(1e-2, 1e2, 41) {
        match (aux_fg_quadrature(x), aux_fg(x)) {
            (Ok((fq, gq)), Ok((f, g))) => worst = worst.max(rel_err(fq, f)).max(rel_err(gq, g)),
            _ => failed = true,
        }
    }
    out.push(if failed {
        OracleCheck::aborted(s, "f, g vs Laplace quadrature on [1e-2, 1e2]", 1e-8)
    } else {
        OracleCheck::new(s, "f, g vs Laplace quadrature on [1e-2, 1e2]", worst, 1e-8)
    });

    let at_one = aux_fg_quadrature(1.0)
        .ok()
        .zip(aux_fg(1.0).ok())
        .map(|((fq, gq), (f, g))| (fq - f).abs().max((gq - g).abs()));
    out.push(match at_one {
        Some(e) => OracleCheck::new(s, "f(1), g(1) absolute", e, 1e-10),
        None => OracleCheck::aborted(s, "f(1), g(1) absolute", 1e-10),
    });

    let mut worst = 0.0f64;
    let mut failed = false;
    for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0] {
        match (sine_integral_quadrature(x), cosine_integral_quadrature(x), sine_integral(x), cosine_integral(x)) {
            (Ok(sq), Ok(cq), Ok(si), Ok(ci)) => worst = worst.max((sq - si).abs()).max((cq - ci).abs()),
            _ => failed = true,
        }
    }
    out.push(if failed {
        OracleCheck::aborted(s, "Si, Ci vs direct quadrature", 1e-12)
    } else {
        OracleCheck::new(s, "Si, Ci vs direct quadrature", worst, 1e-12)
    });

    // central differences, step chosen for the O(h²) / roundoff balance
    let mut worst = 0.0f64;
    let mut failed = false;
    for x in log_grid(1e-3, 1e3, 40) {
        let h = 1e-5 * x;
        let fd = |fun: fn(f64) -> crate::Result<f64>| -> Option<f64> {
            Some((fun(x + h).ok()? - fun(x - h).ok()?) / (2.0 * h))
        };
        match (fd(aux_f), fd(aux_g), aux_f_prime(x), aux_g_prime(x)) {
            (Some(dfn), Some(dgn), Ok(df), Ok(dg)) => worst = worst.max(rel_err(dfn, df)).max(rel_err(dgn, dg)),
            _ => failed = true,
        }
    }
    out.push(if failed {
        OracleCheck::aborted(s, "f' = -g, g' = f - 1/x by finite differences", 1e-6)
    } else {
        OracleCheck::new(s, "f' = -g, g' = f - 1/x by finite differences", worst, 1e-6)
    });
    out
}

fn kspace_checks(model: &DispersionModel) -> Vec<OracleCheck> {
    let s = "kspace";
    let field = 1e5;
    let mut out = Vec::new();
    for (label, theta) in [("0", 0.0), ("pi/4", FRAC_PI_4), ("pi/2", FRAC_PI_2)] {
        for x in [0.1, 1.0, 10.0] {
            let r = x / model.data.k0;
            let name = format!("theta={label} k0r={x}");
            let closed = model.delta_e_general(r, theta, field, field);
            let brute = kspace_shift(&model.data, r, theta, field, field);
            out.push(match (closed, brute) {
                (Ok(c), Ok(b)) => OracleCheck::new(s, name, rel_err(b.value, c), TARGET_REL_TOL),
                _ => OracleCheck::aborted(s, name, TARGET_REL_TOL),
            });
        }
    }
    let r = 1.0 / model.data.k0;
    let flip = kspace_shift(&model.data, r, FRAC_PI_2, field, field)
        .ok()
        .zip(kspace_shift(&model.data, r, FRAC_PI_2, field, -field).ok())
        .map(|(a, b)| rel_err(a.value, -b.value));
    out.push(match flip {
        Some(e) => OracleCheck::new(s, "sign flips with one field reversed", e, 1e-12),
        None => OracleCheck::aborted(s, "sign flips with one field reversed", 1e-12),
    });
    out
}

fn matrix_checks(model: &DispersionModel) -> Vec<OracleCheck> {
    let s = "matrix";
    let mut out = Vec::new();
    match matrix_element_check(&model.data, 1e5, 1e5) {
        Ok(r) => out.push(OracleCheck::new(
            s,
            format!("prefactor {:.6} vs {}", r.prefactor.unwrap_or(f64::NAN), r.expected_prefactor),
            r.rel_error.unwrap_or(f64::NAN),
            super::matrix::PREFACTOR_REL_TOL,
        )),
        Err(_) => out.push(OracleCheck::aborted(s, "prefactor", super::matrix::PREFACTOR_REL_TOL)),
    }
    for (e, ep) in [(0.0, 1e5), (1e5, 0.0)] {
        let name = format!("vanishes at E={e:e}, E'={ep:e}");
        out.push(match matrix_element_check(&model.data, e, ep) {
            Ok(r) => OracleCheck::new(s, name, r.total.abs(), 0.0),
            Err(_) => OracleCheck::aborted(s, name, 0.0),
        });
    }
    let sym = matrix_element_check(&model.data, 2e5, 7e4)
        .ok()
        .zip(matrix_element_check(&model.data, 7e4, 2e5).ok())
        .map(|(a, b)| rel_err(a.total, b.total));
    out.push(match sym {
        Some(e) => OracleCheck::new(s, "exchange symmetry", e, 1e-12),
        None => OracleCheck::aborted(s, "exchange symmetry", 1e-12),
    });
    out
}

fn stark_checks(model: &DispersionModel) -> Vec<OracleCheck> {
    match degenerate_pt_check(&model.data, 1e8) {
        Ok(r) => r.checks(),
        Err(_) => vec![OracleCheck::aborted("stark", "diagonalization", 0.0)],
    }
}

/// Runs one oracle suite (or all of them) against `model`.
pub fn run_suite(model: &DispersionModel, suite: Suite) -> Vec<OracleCheck> {
    match suite {
        Suite::Specfun => specfun_checks(),
        Suite::Kspace => kspace_checks(model),
        Suite::Matrix => matrix_checks(model),
        Suite::Stark => stark_checks(model),
        Suite::All => [Suite::Specfun, Suite::Kspace, Suite::Matrix, Suite::Stark]
            .into_iter()
            .flat_map(|s| run_suite(model, s))
            .collect(),
    }
}
