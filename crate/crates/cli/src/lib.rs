//! Command implementations behind the `pcclone` binary.
//!
//! Each command takes a validated [`RunConfig`] and returns the rendered
//! report together with a pass/fail verdict, so the binary only handles
//! argument parsing, output and exit codes.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use pcclone::angular::{gamma_sweep, ratio_to_f64, BigRational};
use pcclone::cloner::{
    covariance_defect, default_probe_phases, pqcm_scheme_a, pqcm_scheme_b, CloneReport, Scheme,
    DEFAULT_PROBES,
};
use pcclone::opa::{
    evolve, first_order_output, injected_photon, photon_reduced_density, ModeBasis, DEFAULT_CUTOFF,
};
use pcclone::statekit::{equatorial_state, PlaneId};
use pcclone::verify::{run_suite, Check, Suite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verification or equality check fails.
pub const EXIT_VERIFY: i32 = 1;
/// Exit code for invalid configuration or a library error.
pub const EXIT_CONFIG: i32 = 2;

/// Default agreement tolerance for `simulate`.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] pcclone::Error),
    #[error("cannot render output: {0}")]
    Render(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_CONFIG
    }
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    FidelitySweep,
    Simulate,
    Verify,
    Opa,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(config_error(format!("format: unknown output format {s:?}"))),
        }
    }
}

/// Complete description of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    pub plane: PlaneId,
    pub phase: f64,
    pub scheme: Scheme,
    pub output_format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_m: Option<usize>,
    #[serde(default)]
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gain: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            m: None,
            p: None,
            plane: PlaneId::XZ,
            phase: 0.0,
            scheme: Scheme::A,
            output_format: OutputFormat::Text,
            tolerance: None,
            seed: None,
            max_m: None,
            exact: false,
            gain: None,
            order: None,
            suite: None,
        }
    }

    /// Checks the fields relevant to `command` and fills in `M`/`P` so that
    /// `M = 2P − 1`.
    pub fn validate(mut self) -> Result<Self, CliError> {
        if !self.phase.is_finite() {
            return Err(config_error("phase must be finite"));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(config_error(format!("tolerance must be a nonnegative number, got {t}")));
            }
        }
        match self.command {
            Command::Simulate => {
                let (m, p) = match (self.m, self.p) {
                    (Some(m), None) => {
                        if m % 2 == 0 {
                            return Err(config_error(format!("M must be odd, got {m}")));
                        }
                        if m < 3 {
                            return Err(config_error(format!("M must be at least 3, got {m}")));
                        }
                        (m, m.div_ceil(2))
                    }
                    (None, Some(p)) => {
                        if p < 2 {
                            return Err(config_error(format!("P must be at least 2, got {p}")));
                        }
                        (2 * p - 1, p)
                    }
                    (Some(m), Some(p)) => {
                        if m % 2 == 0 {
                            return Err(config_error(format!("M must be odd, got {m}")));
                        }
                        if m != 2 * p - 1 || p < 2 {
                            return Err(config_error(format!("M = {m} and P = {p} violate M = 2P - 1")));
                        }
                        (m, p)
                    }
                    (None, None) => return Err(config_error("M or P is required")),
                };
                self.m = Some(m);
                self.p = Some(p);
            }
            Command::FidelitySweep => {
                let max_m = self.max_m.ok_or_else(|| config_error("max-m is required"))?;
                if max_m < 3 {
                    return Err(config_error(format!("max-m must be at least 3, got {max_m}")));
                }
            }
            Command::Verify => {
                let suite = self.suite.get_or_insert_with(|| "all".into());
                Suite::from_str(suite).map_err(|e| config_error(format!("suite: {e}")))?;
            }
            Command::Opa => {
                let gain = *self.gain.get_or_insert(0.1);
                if !gain.is_finite() {
                    return Err(config_error(format!("gain must be finite, got {gain}")));
                }
                let order = *self.order.get_or_insert(1);
                if order == 0 {
                    return Err(config_error("order must be at least 1"));
                }
            }
        }
        Ok(self)
    }
}

/// Rendered output of a command.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub body: String,
    pub passed: bool,
}

impl CommandOutput {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY
        }
    }
}

/// Runs a validated configuration.
pub fn run(config: &RunConfig) -> Result<CommandOutput, CliError> {
    match config.command {
        Command::FidelitySweep => cmd_fidelity_sweep(config),
        Command::Simulate => cmd_simulate(config),
        Command::Verify => cmd_verify(config),
        Command::Opa => cmd_opa(config),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Render(e.to_string()))
}

fn to_csv(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Render(e.to_string()))?;
    for row in rows {
        w.write_record(row).map_err(|e| CliError::Render(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Render(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Render(e.to_string()))
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row of the γ sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "M")]
    pub m: usize,
    pub gamma: String,
    pub closed_form: String,
    pub equal: bool,
}

fn show_rational(r: &BigRational, exact: bool) -> String {
    if exact {
        r.to_string()
    } else {
        format!("{:.17}", ratio_to_f64(r))
    }
}

pub fn cmd_fidelity_sweep(config: &RunConfig) -> Result<CommandOutput, CliError> {
    let max_m = config.max_m.ok_or_else(|| config_error("max-m is required"))?;
    let start = Instant::now();
    let rows: Vec<SweepRow> = gamma_sweep(max_m)?
        .into_iter()
        .filter(|row| row.m >= 3)
        .map(|row| SweepRow {
            m: row.m,
            equal: row.is_equal(),
            gamma: show_rational(&row.gamma, config.exact),
            closed_form: show_rational(&row.closed_form, config.exact),
        })
        .collect();
    let elapsed = start.elapsed();
    log::info!("swept {} rows in {:.3} s", rows.len(), elapsed.as_secs_f64());
    let passed = rows.iter().all(|r| r.equal);
    let body = match config.output_format {
        OutputFormat::Json => to_json(&rows)?,
        OutputFormat::Csv => {
            let header = ["M", "gamma", "closed_form", "equal"].map(String::from);
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.m.to_string(), r.gamma.clone(), r.closed_form.clone(), r.equal.to_string()])
                .collect();
            to_csv(&header, &table)?
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:>6}  {:>24}  {:>24}  equal", "M", "gamma(P)", "closed form");
            for r in &rows {
                let _ = writeln!(s, "{:>6}  {:>24}  {:>24}  {}", r.m, r.gamma, r.closed_form, r.equal);
            }
            let unequal = rows.iter().filter(|r| !r.equal).count();
            let _ = writeln!(s, "{} rows, {unequal} unequal, {:.3} s", rows.len(), elapsed.as_secs_f64());
            s
        }
    };
    Ok(CommandOutput { body, passed })
}

/// JSON document emitted by `simulate`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationOutput {
    pub config: RunConfig,
    pub report: CloneReport,
    pub covariance_defect: f64,
}

/// Probe phases: the fixed grid, or a seeded uniform sample of the same size.
pub fn probe_phases(seed: Option<u64>) -> Vec<f64> {
    match seed {
        None => default_probe_phases(DEFAULT_PROBES),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..DEFAULT_PROBES).map(|_| rng.random_range(0.0..2.0 * PI)).collect()
        }
    }
}

pub fn simulate(config: &RunConfig) -> Result<SimulationOutput, CliError> {
    let p = config.p.ok_or_else(|| config_error("P is not set; validate the configuration first"))?;
    let (report, _) = match config.scheme {
        Scheme::A => pqcm_scheme_a(config.phase, config.plane, p)?,
        Scheme::B => pqcm_scheme_b(config.phase, config.plane, p)?,
    };
    let probes = probe_phases(config.seed);
    let covariance = covariance_defect(config.plane, p, config.scheme, &probes, &default_probe_phases(DEFAULT_PROBES))?;
    Ok(SimulationOutput {
        config: config.clone(),
        report,
        covariance_defect: covariance,
    })
}

pub fn cmd_simulate(config: &RunConfig) -> Result<CommandOutput, CliError> {
    let out = simulate(config)?;
    let tol = config.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let r = &out.report;
    let passed = r.per_clone_fidelity.iter().all(|f| (f - r.optimal_fidelity).abs() <= tol)
        && out.covariance_defect <= tol;
    let body = match config.output_format {
        OutputFormat::Json => to_json(&out)?,
        OutputFormat::Csv => {
            let mut header: Vec<String> = [
                "M",
                "P",
                "scheme",
                "plane",
                "input_phase",
                "success_prob",
                "uqcm_success_prob",
                "optimal_fidelity",
                "covariance_defect",
            ]
            .map(String::from)
            .to_vec();
            header.extend((1..=r.m).map(|i| format!("fid_{i}")));
            let mut row = vec![
                r.m.to_string(),
                r.p.to_string(),
                r.scheme.to_string(),
                r.plane.to_string(),
                sci(r.input_phase),
                sci(r.success_prob),
                r.uqcm_success_prob.map(sci).unwrap_or_default(),
                sci(r.optimal_fidelity),
                sci(out.covariance_defect),
            ];
            row.extend(r.per_clone_fidelity.iter().map(|&f| sci(f)));
            to_csv(&header, &[row])?
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "1->{} scheme {} on the {} plane, input phase {}", r.m, r.scheme, r.plane, r.input_phase);
            for (i, f) in r.per_clone_fidelity.iter().enumerate() {
                let _ = writeln!(s, "  clone {:>2}: fidelity {f:.15}", i + 1);
            }
            let _ = writeln!(s, "  optimal fidelity     {:.15}", r.optimal_fidelity);
            let _ = writeln!(s, "  success probability  {:.15}", r.success_prob);
            if let Some(u) = r.uqcm_success_prob {
                let _ = writeln!(s, "  universal stage      {u:.15}");
            }
            let _ = writeln!(s, "  covariance defect    {:.3e}", out.covariance_defect);
            s
        }
    };
    Ok(CommandOutput { body, passed })
}

/// One invariant row of `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub suite: String,
    pub name: String,
    pub defect: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Replaces every float threshold with `tolerance`; exact rows keep 0.
pub fn override_thresholds(checks: &mut [Check], tolerance: f64) {
    for c in checks.iter_mut().filter(|c| c.threshold > 0.0) {
        c.threshold = tolerance;
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<CommandOutput, CliError> {
    let suite_name = config.suite.as_deref().unwrap_or("all");
    let suite = Suite::from_str(suite_name).map_err(|e| config_error(format!("suite: {e}")))?;
    let mut checks = run_suite(suite)?;
    if let Some(t) = config.tolerance {
        override_thresholds(&mut checks, t);
    }
    let rows: Vec<VerifyRow> = checks
        .iter()
        .map(|c| VerifyRow {
            suite: c.suite.to_string(),
            name: c.name.clone(),
            defect: c.defect,
            threshold: c.threshold,
            passed: c.passed(),
        })
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    let body = match config.output_format {
        OutputFormat::Json => to_json(&rows)?,
        OutputFormat::Csv => {
            let header = ["suite", "name", "defect", "threshold", "passed"].map(String::from);
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.suite.clone(), r.name.clone(), sci(r.defect), sci(r.threshold), r.passed.to_string()])
                .collect();
            to_csv(&header, &table)?
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &rows {
                let verdict = if r.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{verdict} [{}] {}: defect {:.3e} <= {:.1e}",
                    r.suite, r.name, r.defect, r.threshold
                );
            }
            let failed = rows.iter().filter(|r| !r.passed).count();
            let _ = writeln!(s, "{} checks, {failed} failed", rows.len());
            s
        }
    };
    Ok(CommandOutput { body, passed })
}

/// Report of the `opa` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpaReport {
    pub phase: f64,
    pub gain: f64,
    pub order: usize,
    pub cutoff: usize,
    /// `(re, im)` of the `|3,0⟩` first-order amplitude in the `{φ, φ⊥}` basis.
    pub amp_30: (f64, f64),
    /// `(re, im)` of the `|1,2⟩` first-order amplitude.
    pub amp_12: (f64, f64),
    pub ratio_abs: f64,
    pub reduced_fidelity: f64,
    pub norm_deficit: f64,
    pub next_term_norm: f64,
    pub overflow: bool,
    /// Largest amplitude change relative to the injected photon.
    pub input_change: f64,
}

pub fn opa_report(config: &RunConfig) -> Result<OpaReport, CliError> {
    let gain = config.gain.unwrap_or(0.1);
    let order = config.order.unwrap_or(1);
    let cutoff = DEFAULT_CUTOFF;
    let first = first_order_output(config.phase, cutoff)?;
    let (a30, a12) = (first.amplitude(3, 0), first.amplitude(1, 2));
    let rho = photon_reduced_density(&first.normalized()?)?;
    let fidelity = rho.fidelity(&equatorial_state(PlaneId::XY, config.phase))?;
    let input = injected_photon(config.phase, cutoff)?;
    let ev = evolve(&input, gain, order)?;
    let change = ev.state.to_basis(ModeBasis::Phi(config.phase)).max_abs_diff(&input)?;
    Ok(OpaReport {
        phase: config.phase,
        gain,
        order,
        cutoff,
        amp_30: (a30.re, a30.im),
        amp_12: (a12.re, a12.im),
        ratio_abs: a30.norm() / a12.norm(),
        reduced_fidelity: fidelity,
        norm_deficit: ev.norm_deficit,
        next_term_norm: ev.next_term_norm,
        overflow: ev.overflow,
        input_change: change,
    })
}

pub fn cmd_opa(config: &RunConfig) -> Result<CommandOutput, CliError> {
    let r = opa_report(config)?;
    let body = match config.output_format {
        OutputFormat::Json => to_json(&r)?,
        OutputFormat::Csv => {
            let header = [
                "phase",
                "gain",
                "order",
                "cutoff",
                "amp_30_re",
                "amp_30_im",
                "amp_12_re",
                "amp_12_im",
                "ratio_abs",
                "reduced_fidelity",
                "norm_deficit",
                "next_term_norm",
                "overflow",
                "input_change",
            ]
            .map(String::from);
            let row = vec![
                sci(r.phase),
                sci(r.gain),
                r.order.to_string(),
                r.cutoff.to_string(),
                sci(r.amp_30.0),
                sci(r.amp_30.1),
                sci(r.amp_12.0),
                sci(r.amp_12.1),
                sci(r.ratio_abs),
                sci(r.reduced_fidelity),
                sci(r.norm_deficit),
                sci(r.next_term_norm),
                r.overflow.to_string(),
                sci(r.input_change),
            ];
            to_csv(&header, &[row])?
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "first-order amplitudes at phase {} (phi, phi-perp basis):", r.phase);
            let _ = writeln!(s, "  |3,0>: {:+.15} {:+.15}i", r.amp_30.0, r.amp_30.1);
            let _ = writeln!(s, "  |1,2>: {:+.15} {:+.15}i", r.amp_12.0, r.amp_12.1);
            let _ = writeln!(s, "  |ratio|           {:.15}", r.ratio_abs);
            let _ = writeln!(s, "  reduced fidelity  {:.15}", r.reduced_fidelity);
            let _ = writeln!(s, "series: gain {}, order {}, cutoff {}", r.gain, r.order, r.cutoff);
            let _ = writeln!(s, "  norm deficit      {:.3e}", r.norm_deficit);
            let _ = writeln!(s, "  next term norm    {:.3e}", r.next_term_norm);
            let _ = writeln!(s, "  input change      {:.3e}", r.input_change);
            let _ = writeln!(s, "  cutoff overflow   {}", r.overflow);
            s
        }
    };
    Ok(CommandOutput { body, passed: true })
}
