//! The four commands behind the `nc-spectra` binary, returning typed reports
//! that render to JSON or CSV.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 domain error.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, RunConfig, SweepAxis};
use crate::error::SpectrumError;
use crate::family::Topology;
use crate::model::{
    effective_params, validate_constraints, ConsistencyReport, EffectiveParams, NcMoments,
    SystemSpec,
};
use crate::output::{fmt_float, to_json, Csv};
use crate::spectrum::{
    energy_level, enumerate_levels, Level, Mode, QuantumNumbers, SpectrumResult,
};
use crate::verify::{
    run_limits, verify_with, LimitsInput, LimitsReport, VerifyOptions, VerifyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Verify,
    Sweep,
    Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Domain(#[from] SpectrumError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Domain(SpectrumError::InvalidSystem(_)) => EXIT_CONFIG,
            RunError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

/// Rendered report plus the process exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit_code: i32,
}

pub trait Render: Serialize + Sized {
    fn csv(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => self.csv(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub command: &'static str,
    pub topology: Topology,
    pub particles: usize,
    pub effective: Vec<EffectiveParams>,
    pub modes: Vec<Mode>,
    pub frequencies: Vec<f64>,
    pub field_shift: f64,
    pub offset: f64,
    pub ground_energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<Level>>,
}

impl Render for SpectrumReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&["mode_index", "frequency", "field_shift", "ground_energy"]);
        for (i, w) in self.frequencies.iter().enumerate() {
            csv.row([
                i.to_string(),
                fmt_float(*w),
                fmt_float(self.field_shift),
                fmt_float(self.ground_energy),
            ]);
        }
        csv.finish()
    }
}

fn species_indices(topology: Topology) -> Vec<usize> {
    (0..topology.species()).collect()
}

fn effective_per_species(
    topology: Topology,
    spec: &SystemSpec,
    moments: &NcMoments,
) -> Vec<EffectiveParams> {
    species_indices(topology)
        .into_iter()
        .map(|i| {
            let p = spec.particles()[i];
            effective_params(p.mass, p.omega, moments.particle(i))
        })
        .collect()
}

pub fn cmd_spectrum(config: &RunConfig) -> Result<SpectrumReport, RunError> {
    let spec = config.system()?;
    let moments = spec.moments();
    let spectrum = config.topology.closed_form(&spec, &moments)?;
    let energy = config
        .command
        .quantum_numbers
        .as_ref()
        .map(|q| energy_level(&spectrum, &QuantumNumbers(q.clone())))
        .transpose()?;
    let levels = config
        .command
        .max_total_quanta
        .map(|max| enumerate_levels(&spectrum, max));
    Ok(SpectrumReport {
        command: "spectrum",
        topology: config.topology,
        particles: spec.len(),
        effective: effective_per_species(config.topology, &spec, &moments),
        frequencies: spectrum.frequencies(),
        modes: spectrum.modes,
        field_shift: spectrum.field_shift,
        offset: spectrum.offset,
        ground_energy: spectrum.ground_energy,
        energy,
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutput {
    pub command: &'static str,
    pub topology: Topology,
    pub particles: usize,
    pub options: VerifyOptions,
    pub consistency: ConsistencyReport,
    #[serde(flatten)]
    pub report: VerifyReport,
}

impl Render for VerifyOutput {
    fn csv(&self) -> String {
        let tol = fmt_float(self.options.tolerance);
        let mut csv = Csv::new(&["check", "deviation", "tolerance", "passed"]);
        let mut line = |name: String, deviation: f64, passed: bool| {
            csv.row([name, fmt_float(deviation), tol.clone(), passed.to_string()]);
        };
        for m in &self.report.modes {
            line(
                format!("mode_{}", m.index),
                m.relative_deviation,
                m.relative_deviation <= self.options.tolerance,
            );
        }
        for r in &self.report.scaling.rows {
            let d = r.max_relative_deviation;
            line(
                format!("lambda_{}", fmt_float(r.lambda)),
                d,
                d <= self.options.tolerance,
            );
        }
        if let Some(c) = self.report.field_shift {
            line(
                "field_shift".into(),
                c.relative_deviation,
                c.relative_deviation <= self.options.tolerance,
            );
        }
        if let Some(c) = self.report.center_of_mass {
            line(
                "center_of_mass".into(),
                c.relative_deviation,
                c.relative_deviation <= self.options.tolerance,
            );
        }
        line(
            "overall".into(),
            self.report.max_deviation,
            self.report.passed,
        );
        csv.finish()
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<VerifyOutput, RunError> {
    let topology = config.topology;
    cmd_verify_with(config, move |s, m| topology.closed_form(s, m))
}

/// [`cmd_verify`] with a caller-supplied closed form, used to check that the
/// harness notices a wrong formula.
pub fn cmd_verify_with<F>(config: &RunConfig, closed_form: F) -> Result<VerifyOutput, RunError>
where
    F: Fn(&SystemSpec, &NcMoments) -> crate::error::Result<SpectrumResult>,
{
    let spec = config.system()?;
    let options = config.verify_options();
    let report = verify_with(&spec, &options, closed_form)?;
    let consistency =
        validate_constraints(&spec, config.command.constraint_tolerance.unwrap_or(1e-12));
    Ok(VerifyOutput {
        command: "verify",
        topology: config.topology,
        particles: spec.len(),
        options,
        consistency,
        report,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis: SweepAxis,
    pub value: f64,
    pub mode_index: usize,
    pub frequency: f64,
    pub field_shift: f64,
    pub ground_energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub command: &'static str,
    pub topology: Topology,
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl Render for SweepReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&[
            "axis",
            "value",
            "mode_index",
            "frequency",
            "field_shift",
            "ground_energy",
        ]);
        for r in &self.rows {
            csv.row([
                r.axis.to_string(),
                fmt_float(r.value),
                r.mode_index.to_string(),
                fmt_float(r.frequency),
                fmt_float(r.field_shift),
                fmt_float(r.ground_energy),
            ]);
        }
        csv.finish()
    }
}

/// Evaluates the closed-form spectrum at every sweep point. Points run in
/// parallel; any failure discards the whole sweep.
pub fn cmd_sweep(config: &RunConfig) -> Result<SweepReport, RunError> {
    let sweep = config
        .command
        .sweep
        .as_ref()
        .ok_or_else(|| ConfigError::Invalid("sweep command requires command.sweep".into()))?;
    let values = sweep.values()?;
    let axis = sweep.axis;

    let points = values
        .par_iter()
        .map(|&value| {
            let point = config.with_axis(axis, value)?;
            let spec = point.system()?;
            let spectrum = point.topology.closed_form(&spec, &spec.moments())?;
            Ok(spectrum
                .frequencies()
                .into_iter()
                .enumerate()
                .map(|(mode_index, frequency)| SweepRow {
                    axis,
                    value,
                    mode_index,
                    frequency,
                    field_shift: spectrum.field_shift,
                    ground_energy: spectrum.ground_energy,
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, RunError>>()?;

    Ok(SweepReport {
        command: "sweep",
        topology: config.topology,
        axis,
        rows: points.concat(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitsOutput {
    pub command: &'static str,
    pub topology: Topology,
    #[serde(flatten)]
    pub report: LimitsReport,
}

impl Render for LimitsOutput {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&["check", "deviation", "tolerance", "passed"]);
        for c in &self.report.checks {
            csv.row([
                c.name.to_string(),
                c.deviation.map(fmt_float).unwrap_or_default(),
                fmt_float(c.tolerance),
                c.passed.to_string(),
            ]);
        }
        csv.finish()
    }
}

/// Reduction identities evaluated at the config's first species, `N`, `k`,
/// `kappa` and unit system.
pub fn cmd_limits(config: &RunConfig) -> Result<LimitsOutput, RunError> {
    let spec = config.system()?;
    let input = LimitsInput {
        particle: spec.particles()[0],
        n: spec.len(),
        k: spec.k(),
        kappa: spec.kappa(),
        constants: *spec.constants(),
    };
    let report = run_limits(&input, config.command.tolerance.unwrap_or(1e-12));
    Ok(LimitsOutput {
        command: "limits",
        topology: config.topology,
        report,
    })
}

pub fn run(command: Command, config: &RunConfig, format: Format) -> Result<Outcome, RunError> {
    Ok(match command {
        Command::Spectrum => Outcome {
            body: cmd_spectrum(config)?.render(format),
            exit_code: EXIT_OK,
        },
        Command::Sweep => Outcome {
            body: cmd_sweep(config)?.render(format),
            exit_code: EXIT_OK,
        },
        Command::Verify => {
            let out = cmd_verify(config)?;
            let exit_code = if out.report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Outcome {
                body: out.render(format),
                exit_code,
            }
        }
        Command::Limits => {
            let out = cmd_limits(config)?;
            let exit_code = if out.report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            Outcome {
                body: out.render(format),
                exit_code,
            }
        }
    })
}

pub fn run_file(
    command: Command,
    path: &std::path::Path,
    format: Format,
) -> Result<Outcome, RunError> {
    run(command, &RunConfig::load(path)?, format)
}
