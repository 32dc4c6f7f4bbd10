//! Crossover fields, equilibrium distances and parameter sweeps.

use std::collections::BTreeSet;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::joule_to_ev;
use crate::error::{Error, Result};
use crate::interaction::{DispersionModel, FieldConfig, Geometry, Regime, VDW_SWITCH_K0R};

/// Relative tolerance on r for the equilibrium solver.
pub const ROOT_REL_TOL: f64 = 1e-9;
/// |force| at the root relative to the magnitude of either force component.
pub const FORCE_REL_TOL: f64 = 1e-6;
const SCAN_POINTS: usize = 256;
const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootResult {
    /// Root location: m for equilibria, V/m for crossovers.
    pub value: f64,
    /// Force (N) at an equilibrium, |field| − |vdW| (J) at a crossover.
    pub residual: f64,
    /// Absolute tolerance the residual is held to, same unit as `residual`.
    pub tolerance: f64,
    pub bracket: (f64, f64),
    pub stability: Stability,
    pub iterations: usize,
    pub regime: Regime,
    pub flags: Vec<String>,
}

/// Field strength ℰ = ℰ′ > 0 at which the field-assisted term equals the
/// baseline in magnitude.
pub fn crossover_field(model: &DispersionModel, r: f64, theta: f64) -> Result<RootResult> {
    let per_field2 = model.delta_e_general(r, theta, 1.0, 1.0)?;
    let vdw = model.vdw_baseline(r)?.energy;
    let natural = model.delta_e_perp(r, 1.0, 1.0)?.abs() + model.delta_e_par(r, 1.0, 1.0)?.abs();
    if per_field2.is_nan() || per_field2.abs() <= 1e-12 * natural {
        return Err(Error::NoCrossover(format!(
            "field-assisted term vanishes at r = {r:e} m, theta = {theta}"
        )));
    }
    let field = (vdw.abs() / per_field2.abs()).sqrt();
    let residual = per_field2.abs() * field * field - vdw.abs();
    let mut flags = Vec::new();
    let ratio = model.data.stark_validity(field);
    if ratio > crate::hydrogen::STARK_HARD_RATIO {
        flags.push("beyond-stark-limit".to_string());
    } else if ratio > crate::hydrogen::STARK_WARN_RATIO {
        flags.push("stark-soft-limit".to_string());
    }
    let regime = Regime::classify(model.k0r(r));
    if regime == Regime::Intermediate {
        flags.push("vdw-intermediate-zone".to_string());
    }
    Ok(RootResult {
        value: field,
        residual,
        tolerance: 1e-12 * vdw.abs(),
        bracket: (field, field),
        stability: Stability::NotApplicable,
        iterations: 0,
        regime,
        flags,
    })
}

fn force_at(model: &DispersionModel, r: f64, theta: f64, fields: FieldConfig) -> Result<f64> {
    model.radial_force(Geometry::new(r, theta), fields)
}

/// Bisection with a secant proposal whenever it lands strictly inside the bracket.
fn refine<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<(f64, usize)> {
    let mut fhi = f(hi)?;
    for it in 1..=MAX_ITERATIONS {
        let width = hi - lo;
        if width <= ROOT_REL_TOL * 0.5 * (hi + lo) {
            let mid = 0.5 * (lo + hi);
            return Ok((mid, it));
        }
        let secant = hi - fhi * (hi - lo) / (fhi - flo);
        let mid = 0.5 * (lo + hi);
        // fall back to bisection if the secant step hugs an endpoint
        let x = if secant.is_finite() && secant > lo + 0.05 * width && secant < hi - 0.05 * width {
            secant
        } else {
            mid
        };
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok((x, it));
        }
        if (fx < 0.0) == (flo < 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    Err(Error::NoRoot(format!("bracket [{lo:e}, {hi:e}] did not converge in {MAX_ITERATIONS} iterations")))
}

/// Every zero of the radial force inside `bracket`, smallest r first.
pub fn equilibrium_distances(
    model: &DispersionModel,
    theta: f64,
    fields: FieldConfig,
    bracket: (f64, f64),
) -> Result<Vec<RootResult>> {
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Error::Domain(format!("bracket must satisfy 0 < lo < hi, got ({lo:e}, {hi:e})")));
    }
    let lo = lo.max(model.r_min());
    if lo >= hi {
        return Err(Error::Domain(format!("bracket lies entirely below r_min = {:e} m", model.r_min())));
    }
    let r_switch = VDW_SWITCH_K0R / model.data.k0;
    let mut pieces = Vec::new();
    if lo < r_switch && r_switch < hi {
        pieces.push((lo, r_switch));
        pieces.push((r_switch * (1.0 + 1e-12), hi));
    } else {
        pieces.push((lo, hi));
    }

    let f = |r: f64| force_at(model, r, theta, fields);
    let mut roots = Vec::new();
    let mut edge_signs = Vec::new();
    for &(a, b) in &pieces {
        let ratio = (b / a).powf(1.0 / (SCAN_POINTS - 1) as f64);
        let mut r_prev = a;
        let mut f_prev = f(a)?;
        edge_signs.push(f_prev);
        for i in 1..SCAN_POINTS {
            let r = if i == SCAN_POINTS - 1 { b } else { a * ratio.powi(i as i32) };
            let fr = f(r)?;
            if f_prev == 0.0 || (fr < 0.0) != (f_prev < 0.0) {
                let (root, iterations) = if f_prev == 0.0 { (r_prev, 0) } else { refine(f, r_prev, r, f_prev)? };
                roots.push(finish_root(model, theta, fields, root, (r_prev, r), f_prev, fr, iterations)?);
            }
            r_prev = r;
            f_prev = fr;
        }
        edge_signs.push(f_prev);
    }

    // sign change hidden in the jump of the baseline at the switch point
    if pieces.len() == 2 && (edge_signs[1] < 0.0) != (edge_signs[2] < 0.0) {
        let mut root = finish_root(
            model,
            theta,
            fields,
            r_switch,
            (r_switch, pieces[1].0),
            edge_signs[1],
            edge_signs[2],
            0,
        )?;
        root.flags.push("vdw-switch-discontinuity".to_string());
        roots.push(root);
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    }
    Ok(roots)
}

#[allow(clippy::too_many_arguments)]
fn finish_root(
    model: &DispersionModel,
    theta: f64,
    fields: FieldConfig,
    r: f64,
    bracket: (f64, f64),
    f_below: f64,
    f_above: f64,
    iterations: usize,
) -> Result<RootResult> {
    let geometry = Geometry::new(r, theta);
    let residual = model.radial_force(geometry, fields)?;
    let scale = model
        .field_energy_derivative(geometry, fields)?
        .abs()
        .max(model.vdw_derivative(r)?.abs());
    // attractive below and repulsive above pushes the atoms away from r*
    let stability = if f_below < 0.0 && f_above > 0.0 {
        Stability::Unstable
    } else if f_below > 0.0 && f_above < 0.0 {
        Stability::Stable
    } else {
        Stability::NotApplicable
    };
    let regime = Regime::classify(model.k0r(r));
    let mut flags = Vec::new();
    if regime == Regime::Intermediate {
        flags.push("vdw-intermediate-zone".to_string());
    }
    Ok(RootResult {
        value: r,
        residual,
        tolerance: FORCE_REL_TOL * scale,
        bracket,
        stability,
        iterations,
        regime,
        flags,
    })
}

/// Smallest zero of the radial force inside `bracket`.
pub fn equilibrium_distance(
    model: &DispersionModel,
    theta: f64,
    field: f64,
    field_prime: f64,
    bracket: (f64, f64),
) -> Result<RootResult> {
    equilibrium_distances(model, theta, FieldConfig::new(field, field_prime), bracket)?
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::NoRoot(format!(
                "radial force does not change sign in ({:e}, {:e}) m",
                bracket.0, bracket.1
            ))
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Range {
    pub fn single(v: f64) -> Self {
        Self { min: v, max: v, count: 1, spacing: Spacing::Linear }
    }

    fn validate(&self, what: &str) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Spec(format!("{what}: count must be at least 1")));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(Error::Spec(format!("{what}: need finite min <= max, got ({}, {})", self.min, self.max)));
        }
        if self.count == 1 && self.min != self.max {
            return Err(Error::Spec(format!("{what}: count = 1 requires min = max")));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(Error::Spec(format!("{what}: log spacing needs min > 0")));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == self.count - 1 {
                    return self.max;
                }
                let t = i as f64 / n;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Equal,
    Opposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    FieldComponent,
    Vdw,
    Total,
    Force,
    Regime,
}

impl Output {
    pub const ALL: [Output; 5] = [Output::FieldComponent, Output::Vdw, Output::Total, Output::Force, Output::Regime];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub r_range: Range,
    pub theta: f64,
    pub field_range: Range,
    pub field_mode: FieldMode,
    pub outputs: BTreeSet<Output>,
}

impl SweepSpec {
    pub fn validate(&self, model: &DispersionModel) -> Result<()> {
        self.r_range.validate("r_range")?;
        self.field_range.validate("field_range")?;
        if self.r_range.min < model.r_min() {
            return Err(Error::Spec(format!(
                "r_range starts at {:e} m, below r_min = {:e} m",
                self.r_range.min,
                model.r_min()
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.theta) {
            return Err(Error::Spec(format!("theta must lie in [0, pi], got {}", self.theta)));
        }
        if self.outputs.is_empty() {
            return Err(Error::Spec("outputs must not be empty".into()));
        }
        Ok(())
    }
}

/// One sweep row. Energies in J; quantities not requested are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub r: f64,
    pub theta: f64,
    pub field: f64,
    pub field_prime: f64,
    pub field_component: Option<f64>,
    pub vdw: Option<f64>,
    pub total: Option<f64>,
    pub force: Option<f64>,
    pub regime: Option<Regime>,
    pub warnings: Vec<String>,
}

/// Evaluates the grid in parallel; rows come back r-major, then field.
pub fn sweep(model: &DispersionModel, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate(model)?;
    let rs = spec.r_range.points();
    let fields = spec.field_range.points();
    let grid: Vec<(f64, f64)> = rs.iter().flat_map(|r| fields.iter().map(move |e| (*r, *e))).collect();
    grid.par_iter()
        .map(|&(r, e)| {
            let ep = match spec.field_mode {
                FieldMode::Equal => e,
                FieldMode::Opposite => -e,
            };
            let geometry = Geometry::new(r, spec.theta);
            let cfg = FieldConfig::new(e, ep);
            let b = model.total_energy(geometry, cfg)?;
            let want = |o: Output| spec.outputs.contains(&o);
            let force = if want(Output::Force) { Some(model.radial_force(geometry, cfg)?) } else { None };
            Ok(SweepRow {
                r,
                theta: spec.theta,
                field: e,
                field_prime: ep,
                field_component: want(Output::FieldComponent).then_some(b.field_component),
                vdw: want(Output::Vdw).then_some(b.vdw_component),
                total: want(Output::Total).then_some(b.total),
                force,
                regime: want(Output::Regime).then_some(b.regime),
                warnings: b.warnings.iter().map(|w| w.as_str().to_string()).collect(),
            })
        })
        .collect()
}

/// Column names; energies carry `_eV` unless `si` is set, then `_J`.
pub fn sweep_columns(si: bool) -> [&'static str; 10] {
    let (f, v, t) = if si { ("field_J", "vdw_J", "total_J") } else { ("field_eV", "vdw_eV", "total_eV") };
    ["r_m", "theta_rad", "E_Vpm", "Eprime_Vpm", f, v, t, "force_N", "regime", "warnings"]
}

fn energy_unit(v: f64, si: bool) -> f64 {
    if si {
        v
    } else {
        joule_to_ev(v)
    }
}

fn fmt_out(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.9e}")).unwrap_or_default()
}

/// CSV with a header row. Inputs are printed at round-trip precision,
/// outputs with ten significant digits.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], si: bool, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Config(format!("writing CSV: {e}"));
    w.write_record(sweep_columns(si)).map_err(io)?;
    for row in rows {
        w.write_record([
            format!("{:e}", row.r),
            format!("{:e}", row.theta),
            format!("{:e}", row.field),
            format!("{:e}", row.field_prime),
            fmt_out(row.field_component.map(|v| energy_unit(v, si))),
            fmt_out(row.vdw.map(|v| energy_unit(v, si))),
            fmt_out(row.total.map(|v| energy_unit(v, si))),
            fmt_out(row.force),
            row.regime.map(|r| r.as_str().to_string()).unwrap_or_default(),
            row.warnings.join(";"),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Config(format!("writing CSV: {e}")))?;
    Ok(())
}

/// JSON array of row objects keyed like the CSV header.
pub fn sweep_json(rows: &[SweepRow], si: bool) -> serde_json::Value {
    let cols = sweep_columns(si);
    let num = |v: Option<f64>| v.map(serde_json::Value::from).unwrap_or(serde_json::Value::Null);
    serde_json::Value::Array(
        rows.iter()
            .map(|row| {
                let mut m = serde_json::Map::new();
                m.insert(cols[0].into(), row.r.into());
                m.insert(cols[1].into(), row.theta.into());
                m.insert(cols[2].into(), row.field.into());
                m.insert(cols[3].into(), row.field_prime.into());
                m.insert(cols[4].into(), num(row.field_component.map(|v| energy_unit(v, si))));
                m.insert(cols[5].into(), num(row.vdw.map(|v| energy_unit(v, si))));
                m.insert(cols[6].into(), num(row.total.map(|v| energy_unit(v, si))));
                m.insert(cols[7].into(), num(row.force));
                m.insert(
                    cols[8].into(),
                    row.regime.map(|r| serde_json::Value::from(r.as_str())).unwrap_or(serde_json::Value::Null),
                );
                m.insert(cols[9].into(), serde_json::Value::from(row.warnings.clone()));
                serde_json::Value::Object(m)
            })
            .collect(),
    )
}
