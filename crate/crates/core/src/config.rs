//! JSON run configuration.
//!
//! ```json
//! { "constants": {"hbar": 1, "l_P": 1, "omega_osc": 0},
//!   "topology": "identical-N",
//!   "particles": [{"mass": 1, "omega": 1, "c_theta": 0.1, "c_eta": 0.1}],
//!   "N": 3, "k": 1.0, "kappa": 0.0,
//!   "command": {"max_total_quanta": 2} }
//! ```
//!
//! `particles` lists one entry per species: one for `identical-N`, `free`
//! and `ho-interaction`; two for `pair`, `triple-1+2` (first particle, then
//! the identical pair) and `coordinate-nc-triple`. A species gives either
//! `c_theta`/`c_eta` or the second moments `theta2`/`eta2` directly.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::Topology;
use crate::model::{Constants, NcParams, Particle, SystemSpec};
use crate::verify::{VerifyOptions, DEFAULT_LAMBDAS};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesConfig {
    pub mass: f64,
    #[serde(default)]
    pub omega: f64,
    #[serde(default)]
    pub c_theta: Option<f64>,
    #[serde(default)]
    pub c_eta: Option<f64>,
    #[serde(default)]
    pub theta2: Option<f64>,
    #[serde(default)]
    pub eta2: Option<f64>,
}

impl SpeciesConfig {
    fn nc(&self, constants: &Constants) -> Result<NcParams, ConfigError> {
        if self.c_theta.is_some() && self.theta2.is_some() {
            return Err(invalid("give either c_theta or theta2, not both"));
        }
        if self.c_eta.is_some() && self.eta2.is_some() {
            return Err(invalid("give either c_eta or eta2, not both"));
        }
        let direct = NcParams::from_moments(
            self.theta2.unwrap_or(0.0),
            self.eta2.unwrap_or(0.0),
            constants,
        )
        .map_err(|e| invalid(e.to_string()))?;
        Ok(NcParams {
            c_theta: self.c_theta.unwrap_or(direct.c_theta),
            c_eta: self.c_eta.unwrap_or(direct.c_eta),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    #[serde(rename = "c_theta")]
    CTheta,
    #[serde(rename = "c_eta")]
    CEta,
    #[serde(rename = "k")]
    K,
    #[serde(rename = "kappa")]
    Kappa,
    #[serde(rename = "N")]
    N,
    #[serde(rename = "mass")]
    Mass,
    #[serde(rename = "omega")]
    Omega,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::CTheta => "c_theta",
            SweepAxis::CEta => "c_eta",
            SweepAxis::K => "k",
            SweepAxis::Kappa => "kappa",
            SweepAxis::N => "N",
            SweepAxis::Mass => "mass",
            SweepAxis::Omega => "omega",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepConfig {
    /// `steps` evenly spaced values from `start` to `stop` inclusive.
    pub fn values(&self) -> Result<Vec<f64>, ConfigError> {
        if self.steps < 2 {
            return Err(invalid(format!(
                "sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(invalid("sweep range must be finite"));
        }
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last
                }
            })
            .collect())
    }
}

/// Parameters for the individual commands; each command reads only its own.
#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandConfig {
    #[serde(default)]
    pub quantum_numbers: Option<Vec<[u32; 3]>>,
    #[serde(default)]
    pub max_total_quanta: Option<u32>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub slope_threshold: Option<f64>,
    #[serde(default)]
    pub constraint_tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub constants: Constants,
    pub topology: Topology,
    pub particles: Vec<SpeciesConfig>,
    #[serde(rename = "N", default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub k: f64,
    #[serde(default)]
    pub kappa: f64,
    #[serde(default)]
    pub command: CommandConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Total number of particles implied by the topology and `N`.
    pub fn particle_count(&self) -> Result<usize, ConfigError> {
        match (self.topology.fixed_size(), self.n) {
            (Some(fixed), Some(n)) if n != fixed => Err(invalid(format!(
                "topology {} has exactly {fixed} particles, N = {n} given",
                self.topology
            ))),
            (Some(fixed), _) => Ok(fixed),
            (None, Some(0)) => Err(invalid("N must be at least 1")),
            (None, Some(n)) => Ok(n),
            (None, None) => Err(invalid(format!("topology {} requires N", self.topology))),
        }
    }

    /// Expands the species list into the full particle list and checks the
    /// restrictions each topology places on the parameters.
    pub fn system(&self) -> Result<SystemSpec, ConfigError> {
        self.constants
            .validate()
            .map_err(|e| invalid(e.to_string()))?;
        let topology = self.topology;
        if self.particles.len() != topology.species() {
            return Err(invalid(format!(
                "topology {topology} takes {} particle entries, got {}",
                topology.species(),
                self.particles.len()
            )));
        }
        let n = self.particle_count()?;

        let zero_omega = matches!(
            topology,
            Topology::Free | Topology::HoInteraction | Topology::CoordinateNcTriple
        );
        if zero_omega && self.particles.iter().any(|p| p.omega != 0.0) {
            return Err(invalid(format!("topology {topology} requires omega = 0")));
        }
        if topology == Topology::Free && self.k != 0.0 {
            return Err(invalid("topology free requires k = 0"));
        }
        if topology == Topology::HoInteraction && (n < 2 || self.k.is_nan() || self.k <= 0.0) {
            return Err(invalid("topology ho-interaction requires N >= 2 and k > 0"));
        }
        if !topology.supports_field() && self.kappa != 0.0 {
            return Err(invalid(format!(
                "topology {topology} has no field term; kappa must be 0"
            )));
        }

        let species = self
            .particles
            .iter()
            .map(|s| Ok(Particle::new(s.mass, s.omega, s.nc(&self.constants)?)))
            .collect::<Result<Vec<_>, ConfigError>>()?;
        let particles = match topology.species() {
            1 => vec![species[0]; n],
            _ => {
                let mut v = vec![species[0]];
                v.extend(std::iter::repeat_n(species[1], n - 1));
                v
            }
        };
        SystemSpec::new(particles, self.k, self.kappa, self.constants)
            .map_err(|e| invalid(e.to_string()))
    }

    /// Copy of the config with one sweep axis set to `value`. Species-level
    /// axes apply to every species.
    pub fn with_axis(&self, axis: SweepAxis, value: f64) -> Result<Self, ConfigError> {
        let mut c = self.clone();
        match axis {
            SweepAxis::CTheta => c.particles.iter_mut().for_each(|p| {
                p.c_theta = Some(value);
                p.theta2 = None;
            }),
            SweepAxis::CEta => c.particles.iter_mut().for_each(|p| {
                p.c_eta = Some(value);
                p.eta2 = None;
            }),
            SweepAxis::Mass => c.particles.iter_mut().for_each(|p| p.mass = value),
            SweepAxis::Omega => c.particles.iter_mut().for_each(|p| p.omega = value),
            SweepAxis::K => c.k = value,
            SweepAxis::Kappa => c.kappa = value,
            SweepAxis::N => {
                if c.topology.fixed_size().is_some() {
                    return Err(invalid(format!(
                        "N cannot be swept for topology {}",
                        c.topology
                    )));
                }
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                    return Err(invalid(format!(
                        "N must be a positive integer, got {value}"
                    )));
                }
                c.n = Some(value as usize);
            }
        }
        Ok(c)
    }

    pub fn verify_options(&self) -> VerifyOptions {
        let defaults = VerifyOptions::default();
        VerifyOptions {
            tolerance: self.command.tolerance.unwrap_or(defaults.tolerance),
            slope_threshold: self
                .command
                .slope_threshold
                .unwrap_or(defaults.slope_threshold),
            lambdas: self
                .command
                .lambdas
                .clone()
                .unwrap_or_else(|| DEFAULT_LAMBDAS.to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "constants": {"hbar": 1, "l_P": 1, "omega_osc": 0},
        "topology": "identical-N",
        "particles": [{"mass": 1, "omega": 1, "c_theta": 0.1, "c_eta": 0.1}],
        "N": 3, "k": 1.0, "kappa": 0.0,
        "command": {}
    }"#;

    #[test]
    fn parses_documented_schema() {
        let c = RunConfig::from_json(BASE).unwrap();
        assert_eq!(c.topology, Topology::IdenticalN);
        let spec = c.system().unwrap();
        assert_eq!(spec.len(), 3);
        assert_eq!(spec.particles()[2].nc, NcParams::new(0.1, 0.1));
    }

    #[test]
    fn direct_moments_match_constants() {
        let text = BASE.replace(
            r#""c_theta": 0.1, "c_eta": 0.1"#,
            r#""theta2": 0.015, "eta2": 0.015"#,
        );
        let direct = RunConfig::from_json(&text)
            .unwrap()
            .system()
            .unwrap()
            .moments();
        let from_c = RunConfig::from_json(BASE)
            .unwrap()
            .system()
            .unwrap()
            .moments();
        assert!((direct.theta2(0) - from_c.theta2(0)).abs() < 1e-16);
        assert!((direct.eta2(1) - from_c.eta2(1)).abs() < 1e-16);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_shapes() {
        assert!(matches!(
            RunConfig::from_json(&BASE.replace("\"N\"", "\"n\"")),
            Err(ConfigError::Parse(_))
        ));
        assert!(matches!(
            RunConfig::from_json("{"),
            Err(ConfigError::Parse(_))
        ));

        let pair = BASE.replace("identical-N", "pair");
        assert!(matches!(
            RunConfig::from_json(&pair).unwrap().system(),
            Err(ConfigError::Invalid(_))
        ));

        let free = BASE.replace("identical-N", "free");
        assert!(RunConfig::from_json(&free).unwrap().system().is_err());

        let negative_k = BASE.replace("\"k\": 1.0", "\"k\": -1.0");
        assert!(RunConfig::from_json(&negative_k).unwrap().system().is_err());
    }

    #[test]
    fn triple_expands_species() {
        let text = r#"{"topology": "triple-1+2", "k": 0.5,
            "particles": [{"mass": 2, "omega": 0.5}, {"mass": 1, "omega": 1, "c_theta": 0.2}]}"#;
        let spec = RunConfig::from_json(text).unwrap().system().unwrap();
        let masses: Vec<f64> = spec.particles().iter().map(|p| p.mass).collect();
        assert_eq!(masses, vec![2.0, 1.0, 1.0]);
    }

    #[test]
    fn sweep_values_are_inclusive() {
        let s = SweepConfig {
            axis: SweepAxis::K,
            start: 0.0,
            stop: 1.0,
            steps: 3,
        };
        assert_eq!(s.values().unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(SweepConfig { steps: 1, ..s }.values().is_err());
    }

    #[test]
    fn sweeping_n_requires_integers() {
        let c = RunConfig::from_json(BASE).unwrap();
        assert_eq!(c.with_axis(SweepAxis::N, 4.0).unwrap().n, Some(4));
        assert!(c.with_axis(SweepAxis::N, 2.5).is_err());
    }
}
