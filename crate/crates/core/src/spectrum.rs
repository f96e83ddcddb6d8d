//! Closed-form normal-mode frequencies and energy levels of the averaged
//! Hamiltonian `H0`.
//!
//! Every spectrum has the form
//! `E = sum_a hbar w_a (n1 + n2 + n3 + 3/2) + field_shift + 3 hbar w_osc`,
//! one isotropic three-dimensional family per particle. The functions here
//! evaluate the frequencies `w_a` from their closed-form expressions; the
//! [`crate::oracle`] module computes the same quantities numerically.

use serde::Serialize;

use crate::error::{Result, SpectrumError};
use crate::model::{effective_params, Constants, NcMoments, Oscillator, ParticleMoments};

/// Relative tolerance below which two frequencies are reported as one
/// degenerate family.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Squared frequencies within this fraction of the largest squared frequency
/// of the problem are treated as zero.
pub const NOISE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeKind {
    CenterOfMass,
    Relative,
}

/// One isotropic mode family: `multiplicity` three-dimensional oscillators
/// sharing `frequency`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode {
    pub kind: ModeKind,
    pub frequency: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Center-of-mass family first, then relative families by ascending
    /// frequency.
    pub modes: Vec<Mode>,
    pub field_shift: f64,
    pub offset: f64,
    pub ground_energy: f64,
    #[serde(skip)]
    pub hbar: f64,
}

impl SpectrumResult {
    fn assemble(
        com: Option<f64>,
        mut relative: Vec<f64>,
        field_shift: f64,
        constants: &Constants,
    ) -> Self {
        let mut modes = Vec::new();
        if let Some(frequency) = com {
            modes.push(Mode {
                kind: ModeKind::CenterOfMass,
                frequency,
                multiplicity: 1,
            });
        }
        relative.sort_by(f64::total_cmp);
        for frequency in relative {
            match modes.last_mut() {
                Some(last)
                    if last.kind == ModeKind::Relative
                        && relative_difference(last.frequency, frequency)
                            <= DEGENERACY_TOLERANCE =>
                {
                    last.multiplicity += 1
                }
                _ => modes.push(Mode {
                    kind: ModeKind::Relative,
                    frequency,
                    multiplicity: 1,
                }),
            }
        }
        let zero_point: f64 = modes
            .iter()
            .map(|m| 1.5 * constants.hbar * m.frequency * m.multiplicity as f64)
            .sum();
        let offset = constants.offset();
        Self {
            modes,
            field_shift,
            offset,
            ground_energy: zero_point + field_shift + offset,
            hbar: constants.hbar,
        }
    }

    /// Number of particles, i.e. the sum of multiplicities.
    pub fn particle_count(&self) -> usize {
        self.modes.iter().map(|m| m.multiplicity).sum()
    }

    /// Frequencies expanded by multiplicity, in mode order.
    pub fn frequencies(&self) -> Vec<f64> {
        self.modes
            .iter()
            .flat_map(|m| std::iter::repeat_n(m.frequency, m.multiplicity))
            .collect()
    }

    /// Frequencies expanded by multiplicity, ascending.
    pub fn sorted_frequencies(&self) -> Vec<f64> {
        let mut f = self.frequencies();
        f.sort_by(f64::total_cmp);
        f
    }

    pub fn center_of_mass(&self) -> Option<f64> {
        self.modes
            .iter()
            .find(|m| m.kind == ModeKind::CenterOfMass)
            .map(|m| m.frequency)
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_difference(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Square root of a squared frequency obtained by cancellation, with the
/// noise floor measured against `scale` (the largest squared frequency in
/// play).
pub(crate) fn frequency_from_squared(squared: f64, scale: f64) -> Result<f64> {
    let floor = NOISE_FLOOR * scale.abs();
    if squared < -floor || squared.is_nan() {
        Err(SpectrumError::UnstableConfiguration(squared))
    } else if squared <= floor {
        Ok(0.0)
    } else {
        Ok(squared.sqrt())
    }
}

fn check_oscillator(osc: Oscillator, what: &str) -> Result<()> {
    if !(osc.mass.is_finite() && osc.mass > 0.0) {
        return Err(SpectrumError::InvalidSystem(format!(
            "{what}: mass must be positive, got {}",
            osc.mass
        )));
    }
    if !(osc.omega.is_finite() && osc.omega >= 0.0) {
        return Err(SpectrumError::InvalidSystem(format!(
            "{what}: omega must be non-negative, got {}",
            osc.omega
        )));
    }
    Ok(())
}

fn check_coupling(k: f64) -> Result<()> {
    if k.is_finite() && k >= 0.0 {
        Ok(())
    } else {
        Err(SpectrumError::InvalidSystem(format!(
            "coupling k must be non-negative, got {k}"
        )))
    }
}

fn check_moments(moments: ParticleMoments) -> Result<()> {
    if [moments.theta2, moments.eta2]
        .iter()
        .all(|v| v.is_finite() && *v >= 0.0)
    {
        Ok(())
    } else {
        Err(SpectrumError::InvalidSystem(
            "second moments must be finite and non-negative".into(),
        ))
    }
}

/// `N` identical oscillators with all-pairs coupling `k` in a uniform field
/// `kappa`.
///
/// The center of mass oscillates at `w_eff`; the remaining `N - 1` families
/// share
/// `sqrt(w_eff^2 + 2kN/m_eff + kN<theta^2> m_eff w_eff^2/3 + 2k^2<theta^2>N^2/3)`.
/// The field lowers every level by `N kappa^2 / (2 m_eff w_eff^2)`.
pub fn spectrum_identical(
    n: usize,
    osc: Oscillator,
    k: f64,
    kappa: f64,
    moments: ParticleMoments,
    constants: &Constants,
) -> Result<SpectrumResult> {
    if n == 0 {
        return Err(SpectrumError::InvalidSystem(
            "at least one particle is required".into(),
        ));
    }
    check_oscillator(osc, "oscillator")?;
    check_coupling(k)?;
    check_moments(moments)?;
    constants.validate()?;

    let eff = effective_params(osc.mass, osc.omega, moments);
    let nf = n as f64;
    let w2 = eff.omega * eff.omega;
    let relative = (w2
        + 2.0 * k * nf / eff.mass
        + k * nf * moments.theta2 * eff.mass * w2 / 3.0
        + 2.0 * k * k * moments.theta2 * nf * nf / 3.0)
        .sqrt();

    let field_shift = if kappa == 0.0 {
        0.0
    } else if eff.omega == 0.0 {
        return Err(SpectrumError::FieldShiftUndefined);
    } else {
        -nf * kappa * kappa / (2.0 * eff.mass * w2)
    };

    Ok(SpectrumResult::assemble(
        Some(eff.omega),
        vec![relative; n - 1],
        field_shift,
        constants,
    ))
}

/// `N` free particles in a uniform field. Momentum noncommutativity alone
/// binds them: every family oscillates at `sqrt(<eta^2>/(6 m^2))` and the
/// field shift is `-3 N kappa^2 m / <eta^2>`.
pub fn spectrum_free_particles(
    n: usize,
    mass: f64,
    kappa: f64,
    moments: ParticleMoments,
    constants: &Constants,
) -> Result<SpectrumResult> {
    spectrum_identical(
        n,
        Oscillator::new(mass, 0.0),
        0.0,
        kappa,
        moments,
        constants,
    )
}

/// `N` particles bound only by the pairwise harmonic interaction (`w = 0`).
pub fn spectrum_ho_interaction(
    n: usize,
    mass: f64,
    k: f64,
    kappa: f64,
    moments: ParticleMoments,
    constants: &Constants,
) -> Result<SpectrumResult> {
    if n < 2 {
        return Err(SpectrumError::InvalidSystem(format!(
            "harmonic interaction needs at least two particles, got {n}"
        )));
    }
    if k.is_nan() || k <= 0.0 {
        return Err(SpectrumError::InvalidSystem(format!(
            "harmonic interaction needs a positive coupling, got {k}"
        )));
    }
    spectrum_identical(n, Oscillator::new(mass, 0.0), k, kappa, moments, constants)
}

/// Two coupled oscillators with different masses and frequencies.
///
/// `w_pm^2 = (S +- sqrt(D)) / 2` where `S` sums the per-particle diagonal
/// terms and `D` is the discriminant of the 2x2 kinetic-potential product.
/// `w_-` is reported as the center-of-mass family.
pub fn spectrum_two(
    first: Oscillator,
    second: Oscillator,
    k: f64,
    moments: &NcMoments,
    constants: &Constants,
) -> Result<SpectrumResult> {
    if moments.len() != 2 {
        return Err(SpectrumError::DimensionMismatch {
            expected: 2,
            got: moments.len(),
        });
    }
    check_oscillator(first, "first oscillator")?;
    check_oscillator(second, "second oscillator")?;
    check_coupling(k)?;
    check_moments(moments.particle(0))?;
    check_moments(moments.particle(1))?;
    constants.validate()?;

    let e1 = effective_params(first.mass, first.omega, moments.particle(0));
    let e2 = effective_params(second.mass, second.omega, moments.particle(1));
    let (t1, t2, t12) = (
        moments.theta2(0),
        moments.theta2(1),
        moments.theta_cross(0, 1),
    );
    let (w1, w2) = (e1.omega * e1.omega, e2.omega * e2.omega);
    let kk = 2.0 * k * k / 3.0;

    let diag1 = w1 + 2.0 * k / e1.mass + k * e1.mass * w1 * t1 / 3.0 + kk * (t1 + t12);
    let diag2 = w2 + 2.0 * k / e2.mass + k * e2.mass * w2 * t2 / 3.0 + kk * (t2 + t12);
    let off21 = 2.0 * k / e2.mass + k * e1.mass * w1 * t12 / 3.0 + kk * (t2 + t12);
    let off12 = 2.0 * k / e1.mass + k * e2.mass * w2 * t12 / 3.0 + kk * (t1 + t12);

    let sum = diag1 + diag2;
    let discriminant = sum * sum - 4.0 * diag1 * diag2 + 4.0 * off21 * off12;
    let root = frequency_from_squared(discriminant, sum * sum)?;

    let plus = frequency_from_squared(0.5 * (sum + root), sum)?;
    let minus = frequency_from_squared(0.5 * (sum - root), sum)?;
    Ok(SpectrumResult::assemble(
        Some(minus),
        vec![plus],
        0.0,
        constants,
    ))
}

fn check_shared_pair(moments: &NcMoments) -> Result<()> {
    if moments.len() != 3 {
        return Err(SpectrumError::DimensionMismatch {
            expected: 3,
            got: moments.len(),
        });
    }
    let shared = moments.particle(1) == moments.particle(2)
        && moments.theta_cross(0, 1) == moments.theta_cross(0, 2)
        && moments.theta_cross(1, 2) == moments.theta2(1);
    if shared {
        Ok(())
    } else {
        Err(SpectrumError::InvalidSystem(
            "particles 2 and 3 must share their noncommutativity moments".into(),
        ))
    }
}

/// Three oscillators: particle 1 with its own mass and frequency, particles 2
/// and 3 identical.
///
/// The antisymmetric motion of the identical pair decouples with frequency
/// `w3 = sqrt(w_eff^2 + 6k/m_eff) sqrt(1 + k m_eff <theta^2>)`; the two
/// symmetric modes follow from a 2x2 problem, `w1,2^2 = (S -+ sqrt(D))/2`,
/// in which every `k/m` ratio carries the effective masses.
/// `w1` is reported as the center-of-mass family.
pub fn spectrum_three(
    first: Oscillator,
    pair: Oscillator,
    k: f64,
    moments: &NcMoments,
    constants: &Constants,
) -> Result<SpectrumResult> {
    check_shared_pair(moments)?;
    check_oscillator(first, "first oscillator")?;
    check_oscillator(pair, "paired oscillators")?;
    check_coupling(k)?;
    check_moments(moments.particle(0))?;
    check_moments(moments.particle(1))?;
    constants.validate()?;

    let e1 = effective_params(first.mass, first.omega, moments.particle(0));
    let e = effective_params(pair.mass, pair.omega, moments.particle(1));
    let (m1, m) = (e1.mass, e.mass);
    let (w1, w) = (e1.omega * e1.omega, e.omega * e.omega);
    let (t1, t, tt1) = (
        moments.theta2(0),
        moments.theta2(1),
        moments.theta_cross(0, 1),
    );
    let k2 = k * k;

    let a1 = (k * m * w / 3.0 + 2.0 * k2 / 3.0) * t
        + (2.0 * k * m1 * w1 / 3.0 + 8.0 * k2 / 3.0) * t1
        + 8.0 * k2 / 3.0 * tt1;
    let a2 = (2.0 * k * m * w / 3.0 + 10.0 * k2 / 3.0) * t
        - (2.0 * k * m1 * w1 / 3.0 + 8.0 * k2 / 3.0) * t1
        - 2.0 * k2 / 3.0 * tt1;
    let a3 = (8.0 * k2 / 3.0 + k * m * w / 3.0) * t - 2.0 * k2 / 3.0 * tt1;
    let a4 = (k * m1 * w1 / 3.0 + 4.0 * k2 / 3.0) * tt1 + 2.0 * k2 / 3.0 * t;
    let a5 = (k * m * w / 3.0 + 2.0 * k2 / 3.0) * tt1 + 4.0 * k2 / 3.0 * t1;
    let a6 = -(k * m * w + 4.0 * k2) * t
        + (4.0 * k * m1 * w1 / 3.0 + 16.0 * k2 / 3.0) * t1
        + 2.0 * k2 / 3.0 * tt1;

    let sum = w + w1 + 2.0 * k / m + 4.0 * k / m1 + a1;
    let split = w - w1 + 4.0 * k / m - 4.0 * k / m1 + a2;
    // The cross term is written multiplied through by (2k/m + A3), which
    // removes the pole at k = 0.
    let discriminant = split * split
        + (2.0 * k / m + a3) * (2.0 * w1 - 2.0 * w - 6.0 * k / m + 8.0 * k / m1 + a6)
        + 8.0 * (2.0 * k / m + a4) * (2.0 * k / m1 + a5);
    let root = frequency_from_squared(discriminant, sum * sum)?;

    let lower = frequency_from_squared(0.5 * (sum - root), sum)?;
    let upper = frequency_from_squared(0.5 * (sum + root), sum)?;
    let antisymmetric = ((w + 6.0 * k / m) * (1.0 + k * m * t)).sqrt();
    Ok(SpectrumResult::assemble(
        Some(lower),
        vec![upper, antisymmetric],
        0.0,
        constants,
    ))
}

/// Three particles with `w_n = 0` in a space where only coordinates fail to
/// commute. The center of mass stays free (`w1 = 0`); the relative
/// frequencies carry the coordinate noncommutativity.
pub fn spectrum_three_coordinate_nc(
    first_mass: f64,
    pair_mass: f64,
    k: f64,
    moments: &NcMoments,
    constants: &Constants,
) -> Result<SpectrumResult> {
    check_shared_pair(moments)?;
    if (0..3).any(|n| moments.eta2(n) != 0.0) {
        return Err(SpectrumError::RejectedInput(
            "coordinate-only noncommutativity requires <eta^2> = 0 for every particle".into(),
        ));
    }
    check_oscillator(Oscillator::new(first_mass, 0.0), "first particle")?;
    check_oscillator(Oscillator::new(pair_mass, 0.0), "paired particles")?;
    check_coupling(k)?;
    check_moments(moments.particle(0))?;
    check_moments(moments.particle(1))?;
    constants.validate()?;

    let (m1, m) = (first_mass, pair_mass);
    let (t1, t, tt1) = (
        moments.theta2(0),
        moments.theta2(1),
        moments.theta_cross(0, 1),
    );
    let k2 = k * k;

    let sum = 2.0 * k / m
        + 4.0 * k / m1
        + 2.0 * k2 / 3.0 * t
        + 8.0 * k2 / 3.0 * t1
        + 8.0 * k2 / 3.0 * tt1;
    let split = 4.0 * k / m - 4.0 * k / m1 + 10.0 * k2 / 3.0 * t
        - 8.0 * k2 / 3.0 * t1
        - 2.0 * k2 / 3.0 * tt1;
    let pole = 2.0 * k / m + 8.0 * k2 / 3.0 * t - 2.0 * k2 / 3.0 * tt1;
    let discriminant = split * split
        + pole
            * (-6.0 * k / m + 8.0 * k / m1 - 4.0 * k2 * t
                + 16.0 * k2 / 3.0 * t1
                + 2.0 * k2 / 3.0 * tt1)
        + 8.0
            * (2.0 * k / m + 4.0 * k2 / 3.0 * tt1 + 2.0 * k2 / 3.0 * t)
            * (2.0 * k / m1 + 2.0 * k2 / 3.0 * tt1 + 4.0 * k2 / 3.0 * t1);
    let root = frequency_from_squared(discriminant, sum * sum)?;

    let upper = frequency_from_squared(0.5 * (sum + root), sum)?;
    let antisymmetric = (6.0 * k / m + 6.0 * k2 * t).sqrt();
    Ok(SpectrumResult::assemble(
        Some(0.0),
        vec![upper, antisymmetric],
        0.0,
        constants,
    ))
}

/// Occupation numbers `n[a][i]` for particle family `a` and direction `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuantumNumbers(pub Vec<[u32; 3]>);

impl QuantumNumbers {
    pub fn ground(n: usize) -> Self {
        Self(vec![[0; 3]; n])
    }
}

/// Energy of one eigenstate. Mode families are expanded by multiplicity in
/// mode order, so `q.0[0]` addresses the center-of-mass oscillator.
pub fn energy_level(spectrum: &SpectrumResult, q: &QuantumNumbers) -> Result<f64> {
    let frequencies = spectrum.frequencies();
    if frequencies.len() != q.0.len() {
        return Err(SpectrumError::DimensionMismatch {
            expected: frequencies.len(),
            got: q.0.len(),
        });
    }
    let oscillators: f64 = frequencies
        .iter()
        .zip(&q.0)
        .map(|(w, n)| spectrum.hbar * w * (f64::from(n[0] + n[1] + n[2]) + 1.5))
        .sum();
    Ok(oscillators + spectrum.field_shift + spectrum.offset)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub energy: f64,
    pub degeneracy: u64,
}

/// All distinct energies reachable with at most `max_total_quanta` quanta,
/// ascending. A family holding `n` quanta contributes `(n+1)(n+2)/2` states.
/// Zero-frequency families make the degeneracy depend on the cutoff.
pub fn enumerate_levels(spectrum: &SpectrumResult, max_total_quanta: u32) -> Vec<Level> {
    fn walk(
        freqs: &[f64],
        remaining: u32,
        excitation: f64,
        degeneracy: u64,
        out: &mut Vec<(f64, u64)>,
    ) {
        match freqs.split_first() {
            None => out.push((excitation, degeneracy)),
            Some((w, rest)) => {
                for n in 0..=remaining {
                    let states = u64::from((n + 1) * (n + 2) / 2);
                    walk(
                        rest,
                        remaining - n,
                        excitation + f64::from(n) * w,
                        degeneracy * states,
                        out,
                    );
                }
            }
        }
    }

    let freqs = spectrum.frequencies();
    let mut raw = Vec::new();
    walk(&freqs, max_total_quanta, 0.0, 1, &mut raw);

    let mut states: Vec<(f64, u64)> = raw
        .into_iter()
        .map(|(x, d)| (spectrum.ground_energy + spectrum.hbar * x, d))
        .collect();
    states.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut levels: Vec<Level> = Vec::new();
    for (energy, degeneracy) in states {
        match levels.last_mut() {
            Some(last) if relative_difference(last.energy, energy) <= DEGENERACY_TOLERANCE => {
                last.degeneracy += degeneracy
            }
            _ => levels.push(Level { energy, degeneracy }),
        }
    }
    levels
}
