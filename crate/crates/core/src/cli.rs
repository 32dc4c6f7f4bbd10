//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 no root / no
//! crossover, 4 oracle failure.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{
    crossover_field, equilibrium_distance, sweep, sweep_json, write_sweep_csv, FieldMode, Output, Range, RootResult,
    Spacing, SweepSpec,
};
use crate::constants::joule_to_ev;
use crate::error::Error;
use crate::interaction::{DispersionModel, FieldConfig, Geometry};
use crate::oracle::{run_suite, OracleCheck, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

/// Keys accepted in a `--config` file.
pub const CONFIG_KEYS: &[&str] = &[
    "format",
    "si",
    "r",
    "theta",
    "field",
    "field_prime",
    "r_lo",
    "r_hi",
    "r_min",
    "r_max",
    "r_count",
    "r_spacing",
    "field_min",
    "field_max",
    "field_count",
    "field_spacing",
    "field_mode",
    "outputs",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "stark-dispersion", version, about = "Field-modified dispersion interaction of two hydrogen atoms")]
pub struct Cli {
    /// Output format (default: text)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Plain-text `key = value` file supplying defaults
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report energies in J instead of eV
    #[arg(long, global = true)]
    pub si: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print physical constants and derived atomic data
    Constants,
    /// Interaction energy and force at one configuration
    Energy {
        /// Separation (m)
        #[arg(long)]
        r: Option<f64>,
        /// Angle between axis and field: radians, `perp` or `par`
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Field at atom A (V/m)
        #[arg(long, allow_hyphen_values = true)]
        field: Option<f64>,
        /// Field at atom B (V/m)
        #[arg(long, allow_hyphen_values = true)]
        field_prime: Option<f64>,
    },
    /// Tabulate energies over an (r, field) grid
    Sweep {
        /// JSON sweep definition; inline flags are ignored when given
        #[arg(long)]
        spec_file: Option<PathBuf>,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        r_count: Option<usize>,
        /// linear or log
        #[arg(long)]
        r_spacing: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long)]
        field_min: Option<f64>,
        #[arg(long)]
        field_max: Option<f64>,
        #[arg(long)]
        field_count: Option<usize>,
        #[arg(long)]
        field_spacing: Option<String>,
        /// equal (ℰ′ = ℰ) or opposite (ℰ′ = −ℰ)
        #[arg(long)]
        field_mode: Option<String>,
        /// Comma-separated subset of field_component,vdw,total,force,regime
        #[arg(long)]
        outputs: Option<String>,
    },
    /// Field ℰ = ℰ′ at which the field term matches the baseline
    Crossover {
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
    },
    /// Separation where the radial force vanishes
    Equilibrium {
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        field: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        field_prime: Option<f64>,
        /// Lower end of the search bracket (m)
        #[arg(long)]
        r_lo: Option<f64>,
        /// Upper end of the search bracket (m)
        #[arg(long)]
        r_hi: Option<f64>,
    },
    /// Run numerical validation suites
    OracleCheck {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Specfun,
    Kspace,
    Matrix,
    Stark,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Specfun => Suite::Specfun,
            SuiteArg::Kspace => Suite::Kspace,
            SuiteArg::Matrix => Suite::Matrix,
            SuiteArg::Stark => Suite::Stark,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !CONFIG_KEYS.contains(&k) {
            return Err(Error::Config(format!("line {}: unknown key '{k}'", n + 1)));
        }
        map.insert(k.to_string(), v.to_string());
    }
    Ok(map)
}

/// Radians, or the literals `perp` (π/2) and `par` (0).
pub fn parse_angle(s: &str) -> Result<f64, Error> {
    match s.trim() {
        "perp" => Ok(FRAC_PI_2),
        "par" => Ok(0.0),
        other => other
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("theta: expected radians, `perp` or `par`, got '{other}'"))),
    }
}

struct Settings {
    config: BTreeMap<String, String>,
}

impl Settings {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Error> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::Config(format!("config key '{key}': cannot parse '{v}'"))),
        }
    }

    fn require<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, Error> {
        self.get(flag, key)?
            .ok_or_else(|| Error::Config(format!("missing --{} (or `{key}` in the config file)", key.replace('_', "-"))))
    }

    fn angle(&self, flag: Option<String>) -> Result<f64, Error> {
        parse_angle(&self.require(flag, "theta")?)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoRoot(_) | Error::NoCrossover(_) => EXIT_NO_SOLUTION,
        Error::OracleFailure(_) => EXIT_ORACLE,
        _ => EXIT_USAGE,
    }
}

fn parse_spacing(s: &str) -> Result<Spacing, Error> {
    match s {
        "linear" => Ok(Spacing::Linear),
        "log" => Ok(Spacing::Log),
        o => Err(Error::Spec(format!("spacing must be linear or log, got '{o}'"))),
    }
}

fn parse_outputs(s: &str) -> Result<BTreeSet<Output>, Error> {
    s.split(',')
        .map(|t| match t.trim() {
            "field_component" => Ok(Output::FieldComponent),
            "vdw" => Ok(Output::Vdw),
            "total" => Ok(Output::Total),
            "force" => Ok(Output::Force),
            "regime" => Ok(Output::Regime),
            o => Err(Error::Spec(format!("unknown output '{o}'"))),
        })
        .collect()
}

struct Ctx {
    format: Format,
    si: bool,
    model: DispersionModel,
}

impl Ctx {
    fn energy(&self, joules: f64) -> f64 {
        if self.si {
            joules
        } else {
            joule_to_ev(joules)
        }
    }

    fn unit(&self) -> &'static str {
        if self.si {
            "J"
        } else {
            "eV"
        }
    }
}

fn root_json(r: &RootResult, unit: &str) -> serde_json::Value {
    json!({
        "value": r.value,
        "unit": unit,
        "residual": r.residual,
        "tolerance": r.tolerance,
        "bracket": [r.bracket.0, r.bracket.1],
        "stability": r.stability.as_str(),
        "iterations": r.iterations,
        "regime": r.regime.as_str(),
        "flags": r.flags,
    })
}

fn write_root(ctx: &Ctx, r: &RootResult, unit: &str, out: &mut dyn Write) -> std::io::Result<()> {
    match ctx.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&root_json(r, unit))?),
        Format::Csv => {
            writeln!(out, "value,unit,residual,tolerance,bracket_lo,bracket_hi,stability,iterations,regime,flags")?;
            writeln!(
                out,
                "{:.9e},{unit},{:.9e},{:.9e},{:e},{:e},{},{},{},{}",
                r.value,
                r.residual,
                r.tolerance,
                r.bracket.0,
                r.bracket.1,
                r.stability.as_str(),
                r.iterations,
                r.regime.as_str(),
                r.flags.join(";")
            )
        }
        Format::Text => {
            writeln!(out, "value      = {:.9e} {unit}", r.value)?;
            writeln!(out, "residual   = {:.3e} (tolerance {:.3e})", r.residual, r.tolerance)?;
            writeln!(out, "bracket    = [{:e}, {:e}]", r.bracket.0, r.bracket.1)?;
            writeln!(out, "stability  = {}", r.stability.as_str())?;
            writeln!(out, "iterations = {}", r.iterations)?;
            writeln!(out, "regime     = {}", r.regime.as_str())?;
            writeln!(out, "flags      = {}", if r.flags.is_empty() { "-".to_string() } else { r.flags.join(", ") })
        }
    }
}

fn cmd_constants(ctx: &Ctx, out: &mut dyn Write) -> Result<i32, Error> {
    let d = &ctx.model.data;
    let c = &d.constants;
    let [b1, b2, b3] = d.beta_forms();
    let pairs: Vec<(&str, f64)> = vec![
        ("hbar_Js", c.hbar),
        ("c_mps", c.c),
        ("eps0_Fpm", c.eps0),
        ("q_e_C", c.q_e),
        ("a0_m", c.a0),
        ("m_e_kg", c.m_e),
        ("e1_eV", joule_to_ev(d.e1)),
        ("e2_eV", joule_to_ev(d.e2)),
        ("k0_per_m", d.k0),
        ("mu_eg_Cm", d.mu_eg),
        ("gamma_mpV", d.gamma),
        ("alpha_Cm2pV", d.alpha),
        ("beta_C2m3pJ", d.beta),
        ("beta_form2_C2m3pJ", b2),
        ("beta_form3_C2m3pJ", b3),
        ("e_bar_eV", joule_to_ev(d.e_bar)),
        ("r_min_m", ctx.model.r_min()),
    ];
    debug_assert_eq!(b1, d.beta);
    match ctx.format {
        Format::Json => {
            let m: serde_json::Map<String, serde_json::Value> =
                pairs.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&m).map_err(io_err)?).map_err(io_err)?;
        }
        Format::Csv => {
            writeln!(out, "key,value").map_err(io_err)?;
            for (k, v) in &pairs {
                writeln!(out, "{k},{v:e}").map_err(io_err)?;
            }
        }
        Format::Text => {
            for (k, v) in &pairs {
                writeln!(out, "{k:<20} = {v:e}").map_err(io_err)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn io_err<E: std::fmt::Display>(e: E) -> Error {
    Error::Config(format!("output: {e}"))
}

fn cmd_energy(ctx: &Ctx, s: &Settings, args: EnergyArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let r = s.require(args.r, "r")?;
    let theta = s.angle(args.theta)?;
    let e = s.require(args.field, "field")?;
    let ep = s.require(args.field_prime, "field_prime")?;
    let geometry = Geometry::new(r, theta);
    let fields = FieldConfig::new(e, ep);
    let b = ctx.model.total_energy(geometry, fields)?;
    let force = ctx.model.radial_force(geometry, fields)?;
    let warnings: Vec<&str> = b.warnings.iter().map(|w| w.as_str()).collect();
    let u = ctx.unit();
    match ctx.format {
        Format::Json => {
            let v = json!({
                "r_m": r,
                "theta_rad": theta,
                "E_Vpm": e,
                "Eprime_Vpm": ep,
                format!("field_{u}"): ctx.energy(b.field_component),
                format!("vdw_{u}"): ctx.energy(b.vdw_component),
                format!("total_{u}"): ctx.energy(b.total),
                "force_N": force,
                "regime": b.regime.as_str(),
                "warnings": warnings,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(io_err)?).map_err(io_err)?;
        }
        Format::Csv => {
            writeln!(out, "r_m,theta_rad,E_Vpm,Eprime_Vpm,field_{u},vdw_{u},total_{u},force_N,regime,warnings")
                .map_err(io_err)?;
            writeln!(
                out,
                "{r:e},{theta:e},{e:e},{ep:e},{:.9e},{:.9e},{:.9e},{force:.9e},{},{}",
                ctx.energy(b.field_component),
                ctx.energy(b.vdw_component),
                ctx.energy(b.total),
                b.regime.as_str(),
                warnings.join(";")
            )
            .map_err(io_err)?;
        }
        Format::Text => {
            let w = if warnings.is_empty() { "-".to_string() } else { warnings.join(", ") };
            writeln!(
                out,
                "r        = {r:e} m\ntheta    = {theta} rad\nE, E'    = {e:e}, {ep:e} V/m\n\
                 field    = {:.9e} {u}\nvdw      = {:.9e} {u}\ntotal    = {:.9e} {u}\nforce    = {force:.9e} N\n\
                 regime   = {}\nwarnings = {w}",
                ctx.energy(b.field_component),
                ctx.energy(b.vdw_component),
                ctx.energy(b.total),
                b.regime.as_str(),
            )
            .map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

struct EnergyArgs {
    r: Option<f64>,
    theta: Option<String>,
    field: Option<f64>,
    field_prime: Option<f64>,
}

fn run_command(ctx: &Ctx, s: &Settings, command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Constants => cmd_constants(ctx, out),
        Command::Energy { r, theta, field, field_prime } => {
            cmd_energy(ctx, s, EnergyArgs { r, theta, field, field_prime }, out)
        }
        Command::Sweep {
            spec_file,
            r_min,
            r_max,
            r_count,
            r_spacing,
            theta,
            field_min,
            field_max,
            field_count,
            field_spacing,
            field_mode,
            outputs,
        } => {
            let spec = match spec_file {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                    serde_json::from_str::<SweepSpec>(&text)
                        .map_err(|e| Error::Spec(format!("{}: {e}", path.display())))?
                }
                None => {
                    let field_min = s.require(field_min, "field_min")?;
                    let field_max = s.get(field_max, "field_max")?.unwrap_or(field_min);
                    SweepSpec {
                        r_range: Range {
                            min: s.require(r_min, "r_min")?,
                            max: s.require(r_max, "r_max")?,
                            count: s.require(r_count, "r_count")?,
                            spacing: parse_spacing(&s.get(r_spacing, "r_spacing")?.unwrap_or("log".into()))?,
                        },
                        theta: s.angle(theta)?,
                        field_range: Range {
                            min: field_min,
                            max: field_max,
                            count: s.get(field_count, "field_count")?.unwrap_or(1),
                            spacing: parse_spacing(
                                &s.get(field_spacing, "field_spacing")?.unwrap_or("linear".into()),
                            )?,
                        },
                        field_mode: match s.get(field_mode, "field_mode")?.as_deref().unwrap_or("equal") {
                            "equal" => FieldMode::Equal,
                            "opposite" => FieldMode::Opposite,
                            o => return Err(Error::Spec(format!("field_mode must be equal or opposite, got '{o}'"))),
                        },
                        outputs: match s.get(outputs, "outputs")? {
                            Some(o) => parse_outputs(&o)?,
                            None => Output::ALL.into_iter().collect(),
                        },
                    }
                }
            };
            let rows = sweep(&ctx.model, &spec)?;
            match ctx.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&sweep_json(&rows, ctx.si)).map_err(io_err)?
                )
                .map_err(io_err)?,
                // the table is CSV in text mode too
                Format::Csv | Format::Text => write_sweep_csv(&rows, ctx.si, &mut *out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Crossover { r, theta } => {
            let r = s.require(r, "r")?;
            let theta = s.angle(theta)?;
            let res = crossover_field(&ctx.model, r, theta)?;
            write_root(ctx, &res, "V/m", out).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Equilibrium { theta, field, field_prime, r_lo, r_hi } => {
            let theta = s.angle(theta)?;
            let e = s.require(field, "field")?;
            let ep = s.get(field_prime, "field_prime")?.unwrap_or(e);
            let lo = s.get(r_lo, "r_lo")?.unwrap_or(1e-8);
            let hi = s.get(r_hi, "r_hi")?.unwrap_or(1e-4);
            let res = equilibrium_distance(&ctx.model, theta, e, ep, (lo, hi))?;
            write_root(ctx, &res, "m", out).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::OracleCheck { suite } => {
            let checks = run_suite(&ctx.model, suite.into());
            write_checks(ctx, &checks, out).map_err(io_err)?;
            Ok(if checks.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_ORACLE })
        }
    }
}

fn write_checks(ctx: &Ctx, checks: &[OracleCheck], out: &mut dyn Write) -> std::io::Result<()> {
    match ctx.format {
        Format::Json => {
            let v = json!({
                "passed": checks.iter().all(|c| c.passed),
                "checks": checks,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)
        }
        Format::Csv => {
            writeln!(out, "suite,name,observed,threshold,passed")?;
            for c in checks {
                writeln!(out, "{},\"{}\",{:.3e},{:.3e},{}", c.suite, c.name, c.observed, c.threshold, c.passed)?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{:<8} {:<48} {:>11} {:>11}  result", "suite", "check", "observed", "threshold")?;
            for c in checks {
                writeln!(
                    out,
                    "{:<8} {:<48} {:>11.3e} {:>11.3e}  {}",
                    c.suite,
                    c.name,
                    c.observed,
                    c.threshold,
                    if c.passed { "PASS" } else { "FAIL" }
                )?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {} failed", checks.len(), failed)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, Error> {
    let config = match &cli.config {
        Some(path) => parse_config(
            &fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
        )?,
        None => BTreeMap::new(),
    };
    let settings = Settings { config };
    let format = match cli.format {
        Some(f) => f,
        None => match settings.config.get("format") {
            Some(v) => Format::from_str(v, true).map_err(|_| Error::Config(format!("config key 'format': '{v}'")))?,
            None => Format::Text,
        },
    };
    let si = cli.si || settings.get::<bool>(None, "si")?.unwrap_or(false);
    let ctx = Ctx { format, si, model: DispersionModel::default() };

    match &cli.output {
        Some(path) => {
            let mut buf = Vec::new();
            let code = run_command(&ctx, &settings, cli.command, &mut buf)?;
            fs::write(path, buf).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            Ok(code)
        }
        None => run_command(&ctx, &settings, cli.command, stdout),
    }
}
