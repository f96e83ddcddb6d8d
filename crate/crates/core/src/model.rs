//! Units, noncommutativity parameters and their ground-state moments.
//!
//! The noncommutativity tensors of every particle are built from the same
//! auxiliary oscillator, so after averaging over its ground state only a
//! handful of scalars survive: `<theta^2>` and `<eta^2>` per particle and the
//! cross moments `<theta(n) theta(m)>`. Everything downstream consumes these
//! through [`NcMoments`].

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectrumError};

/// Unit system. Defaults to `hbar = l_P = 1` with the auxiliary oscillator
/// energy excluded (`omega_osc = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(rename = "l_P", default = "one")]
    pub l_p: f64,
    #[serde(default)]
    pub omega_osc: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            l_p: 1.0,
            omega_osc: 0.0,
        }
    }
}

impl Constants {
    pub fn new(hbar: f64, l_p: f64, omega_osc: f64) -> Result<Self> {
        let c = Self {
            hbar,
            l_p,
            omega_osc,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(invalid(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.l_p.is_finite() && self.l_p > 0.0) {
            return Err(invalid(format!("l_P must be positive, got {}", self.l_p)));
        }
        if !(self.omega_osc.is_finite() && self.omega_osc >= 0.0) {
            return Err(invalid(format!(
                "omega_osc must be non-negative, got {}",
                self.omega_osc
            )));
        }
        Ok(())
    }

    /// Ground-state energy `3 hbar omega_osc` of the two auxiliary oscillators.
    pub fn offset(&self) -> f64 {
        3.0 * self.hbar * self.omega_osc
    }

    /// `l_P^4 / hbar^2`, the scale of `<theta^2>` per unit `c_theta^2`.
    fn theta_scale(&self) -> f64 {
        self.l_p.powi(4) / (self.hbar * self.hbar)
    }

    fn eta_scale(&self) -> f64 {
        self.hbar * self.hbar / self.l_p.powi(4)
    }
}

/// Dimensionless noncommutativity constants of one particle species.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NcParams {
    pub c_theta: f64,
    pub c_eta: f64,
}

impl NcParams {
    pub const COMMUTATIVE: NcParams = NcParams {
        c_theta: 0.0,
        c_eta: 0.0,
    };

    pub fn new(c_theta: f64, c_eta: f64) -> Self {
        Self { c_theta, c_eta }
    }

    pub fn is_commutative(&self) -> bool {
        self.c_theta == 0.0 && self.c_eta == 0.0
    }

    /// Inverts the moment formulas, choosing non-negative constants, so that
    /// directly supplied `<theta^2>`, `<eta^2>` flow through
    /// [`compute_moments`] like any other input.
    pub fn from_moments(theta2: f64, eta2: f64, constants: &Constants) -> Result<Self> {
        if !(theta2.is_finite() && theta2 >= 0.0 && eta2.is_finite() && eta2 >= 0.0) {
            return Err(invalid(format!(
                "second moments must be finite and non-negative, got theta2={theta2}, eta2={eta2}"
            )));
        }
        Ok(Self {
            c_theta: (2.0 * theta2 / (3.0 * constants.theta_scale())).sqrt(),
            c_eta: (2.0 * eta2 / (3.0 * constants.eta_scale())).sqrt(),
        })
    }
}

/// The scalar moments seen by a single particle.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ParticleMoments {
    pub theta2: f64,
    pub eta2: f64,
}

impl ParticleMoments {
    pub const ZERO: ParticleMoments = ParticleMoments {
        theta2: 0.0,
        eta2: 0.0,
    };

    pub fn new(theta2: f64, eta2: f64) -> Self {
        Self { theta2, eta2 }
    }

    pub fn is_zero(&self) -> bool {
        self.theta2 == 0.0 && self.eta2 == 0.0
    }
}

/// Ground-state moments of the noncommutativity tensors for a list of
/// particles. `theta_cross` is stored row-major and its diagonal coincides
/// with `theta2`.
#[derive(Debug, Clone, PartialEq)]
pub struct NcMoments {
    theta2: Vec<f64>,
    eta2: Vec<f64>,
    theta_cross: Vec<f64>,
}

impl NcMoments {
    /// All particles share the same moments (identical species).
    pub fn uniform(n: usize, moments: ParticleMoments) -> Self {
        Self {
            theta2: vec![moments.theta2; n],
            eta2: vec![moments.eta2; n],
            theta_cross: vec![moments.theta2; n * n],
        }
    }

    pub fn commutative(n: usize) -> Self {
        Self::uniform(n, ParticleMoments::ZERO)
    }

    /// Assembles moments from explicit parts. The cross matrix must be
    /// symmetric with `theta_cross[n][n] == theta2[n]`; it is not required to
    /// be rank one.
    pub fn from_parts(
        theta2: Vec<f64>,
        eta2: Vec<f64>,
        theta_cross: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = theta2.len();
        if eta2.len() != n {
            return Err(SpectrumError::DimensionMismatch {
                expected: n,
                got: eta2.len(),
            });
        }
        if theta_cross.len() != n || theta_cross.iter().any(|row| row.len() != n) {
            return Err(invalid("theta_cross must be an n x n matrix".into()));
        }
        if theta2
            .iter()
            .chain(&eta2)
            .any(|v| !(v.is_finite() && *v >= 0.0))
        {
            return Err(invalid(
                "second moments must be finite and non-negative".into(),
            ));
        }
        for (i, row) in theta_cross.iter().enumerate() {
            if row[i] != theta2[i] {
                return Err(invalid(format!(
                    "theta_cross[{i}][{i}] must equal theta2[{i}]"
                )));
            }
            if row
                .iter()
                .enumerate()
                .any(|(j, v)| !v.is_finite() || *v != theta_cross[j][i])
            {
                return Err(invalid("theta_cross must be finite and symmetric".into()));
            }
        }
        Ok(Self {
            theta2,
            eta2,
            theta_cross: theta_cross.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.theta2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta2.is_empty()
    }

    pub fn theta2(&self, n: usize) -> f64 {
        self.theta2[n]
    }

    pub fn eta2(&self, n: usize) -> f64 {
        self.eta2[n]
    }

    pub fn theta_cross(&self, n: usize, m: usize) -> f64 {
        self.theta_cross[n * self.len() + m]
    }

    pub fn particle(&self, n: usize) -> ParticleMoments {
        ParticleMoments {
            theta2: self.theta2[n],
            eta2: self.eta2[n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.theta2
            .iter()
            .chain(&self.eta2)
            .chain(&self.theta_cross)
            .all(|v| *v == 0.0)
    }

    /// Every moment multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let scale = |v: &Vec<f64>| v.iter().map(|x| x * lambda).collect();
        Self {
            theta2: scale(&self.theta2),
            eta2: scale(&self.eta2),
            theta_cross: scale(&self.theta_cross),
        }
    }

    /// Same moments with every `<eta^2>` set to zero.
    pub fn without_eta(&self) -> Self {
        Self {
            eta2: vec![0.0; self.len()],
            ..self.clone()
        }
    }
}

/// Ground-state moments of the noncommutativity tensors:
/// `<theta^2> = 3 c_theta^2 l_P^4 / (2 hbar^2)`,
/// `<eta^2> = 3 hbar^2 c_eta^2 / (2 l_P^4)` and
/// `<theta(n) theta(m)> = 3 c_theta(n) c_theta(m) l_P^4 / (2 hbar^2)`.
pub fn compute_moments(nc: &[NcParams], constants: &Constants) -> NcMoments {
    let ts = 1.5 * constants.theta_scale();
    let es = 1.5 * constants.eta_scale();
    let n = nc.len();
    let mut theta_cross = Vec::with_capacity(n * n);
    for a in nc {
        for b in nc {
            theta_cross.push(ts * a.c_theta * b.c_theta);
        }
    }
    NcMoments {
        theta2: nc.iter().map(|p| ts * p.c_theta * p.c_theta).collect(),
        eta2: nc.iter().map(|p| es * p.c_eta * p.c_eta).collect(),
        theta_cross,
    }
}

/// Mass and frequency of one (undeformed) oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Oscillator {
    pub mass: f64,
    pub omega: f64,
}

impl Oscillator {
    pub fn new(mass: f64, omega: f64) -> Self {
        Self { mass, omega }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Particle {
    pub mass: f64,
    pub omega: f64,
    pub nc: NcParams,
}

impl Particle {
    pub fn new(mass: f64, omega: f64, nc: NcParams) -> Self {
        Self { mass, omega, nc }
    }

    pub fn oscillator(&self) -> Oscillator {
        Oscillator {
            mass: self.mass,
            omega: self.omega,
        }
    }
}

/// `N` oscillators with all-pairs harmonic coupling `k` in a uniform field
/// `kappa` along the first axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    particles: Vec<Particle>,
    k: f64,
    kappa: f64,
    constants: Constants,
}

impl SystemSpec {
    pub fn new(particles: Vec<Particle>, k: f64, kappa: f64, constants: Constants) -> Result<Self> {
        constants.validate()?;
        if particles.is_empty() {
            return Err(invalid("at least one particle is required".into()));
        }
        for (i, p) in particles.iter().enumerate() {
            if !(p.mass.is_finite() && p.mass > 0.0) {
                return Err(invalid(format!(
                    "particle {i}: mass must be positive, got {}",
                    p.mass
                )));
            }
            if !(p.omega.is_finite() && p.omega >= 0.0) {
                return Err(invalid(format!(
                    "particle {i}: omega must be non-negative, got {}",
                    p.omega
                )));
            }
            if !(p.nc.c_theta.is_finite() && p.nc.c_eta.is_finite()) {
                return Err(invalid(format!(
                    "particle {i}: noncommutativity constants must be finite"
                )));
            }
        }
        if !(k.is_finite() && k >= 0.0) {
            return Err(invalid(format!("coupling k must be non-negative, got {k}")));
        }
        if !kappa.is_finite() {
            return Err(invalid(format!("field kappa must be finite, got {kappa}")));
        }
        Ok(Self {
            particles,
            k,
            kappa,
            constants,
        })
    }

    /// `n` copies of the same particle.
    pub fn identical(
        n: usize,
        particle: Particle,
        k: f64,
        kappa: f64,
        constants: Constants,
    ) -> Result<Self> {
        Self::new(vec![particle; n], k, kappa, constants)
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn moments(&self) -> NcMoments {
        let nc: Vec<NcParams> = self.particles.iter().map(|p| p.nc).collect();
        compute_moments(&nc, &self.constants)
    }

    pub fn with_kappa(&self, kappa: f64) -> Self {
        Self {
            kappa,
            ..self.clone()
        }
    }
}

/// Mass and frequency after absorbing the leading noncommutative corrections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveParams {
    pub mass: f64,
    pub omega: f64,
}

/// `m_eff = m / (1 + m^2 w^2 <theta^2>/6)` and
/// `w_eff = sqrt(w^2 + <eta^2>/(6 m^2)) * sqrt(1 + m^2 w^2 <theta^2>/6)`.
pub fn effective_params(mass: f64, omega: f64, moments: ParticleMoments) -> EffectiveParams {
    let factor = 1.0 + mass * mass * omega * omega * moments.theta2 / 6.0;
    EffectiveParams {
        mass: mass / factor,
        omega: (omega * omega + moments.eta2 / (6.0 * mass * mass)).sqrt() * factor.sqrt(),
    }
}

/// Outcome of checking `c_theta(n) m_n = gamma` and `c_eta(n) / m_n = alpha`
/// across particles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub gamma: f64,
    pub alpha: f64,
    pub max_gamma_deviation: f64,
    pub max_alpha_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Infers `gamma` and `alpha` from the first particle and reports the largest
/// relative deviation of the others. Advisory only: nothing is enforced.
pub fn validate_constraints(spec: &SystemSpec, tolerance: f64) -> ConsistencyReport {
    let first = spec.particles[0];
    let gamma = first.nc.c_theta * first.mass;
    let alpha = first.nc.c_eta / first.mass;

    let deviation = |reference: f64, value: f64| {
        if reference == 0.0 {
            if value == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            ((value - reference) / reference).abs()
        }
    };

    let mut max_gamma_deviation: f64 = 0.0;
    let mut max_alpha_deviation: f64 = 0.0;
    for p in &spec.particles[1..] {
        max_gamma_deviation = max_gamma_deviation.max(deviation(gamma, p.nc.c_theta * p.mass));
        max_alpha_deviation = max_alpha_deviation.max(deviation(alpha, p.nc.c_eta / p.mass));
    }

    ConsistencyReport {
        gamma,
        alpha,
        max_gamma_deviation,
        max_alpha_deviation,
        tolerance,
        passed: max_gamma_deviation <= tolerance && max_alpha_deviation <= tolerance,
    }
}

fn invalid(msg: String) -> SpectrumError {
    SpectrumError::InvalidSystem(msg)
}
