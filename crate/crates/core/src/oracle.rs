//! Numeric normal-mode analysis of the averaged Hamiltonian.
//!
//! After averaging over the auxiliary oscillators `H0` has no terms mixing
//! Cartesian directions, so per direction it reads
//! `H = 1/2 p^T A p + 1/2 x^T B x + f^T x` with canonical brackets. Its
//! frequencies are the square roots of the eigenvalues of `A B`, computed
//! here through the symmetric similarity `A^1/2 B A^1/2`. None of the
//! closed-form expressions in [`crate::spectrum`] are used.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Result, SpectrumError};
use crate::model::{Constants, NcMoments, SystemSpec};
use crate::spectrum::{frequency_from_squared, relative_difference, SpectrumResult, NOISE_FLOOR};

/// Per-direction quadratic form of `H0`. The field acts along the first axis
/// only and never changes the frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    pub kinetic: DMatrix<f64>,
    pub potential: DMatrix<f64>,
    pub field: DVector<f64>,
    pub offset: f64,
}

impl QuadraticHamiltonian {
    pub fn len(&self) -> usize {
        self.kinetic.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.kinetic.nrows() == 0
    }
}

/// Assembles `A`, `B` and `f` term by term from
///
/// ```text
/// sum_n p_n^2 (1/(2 m_n) + <theta_n^2> m_n w_n^2 / 12)
///   + k/12 sum_{m != n} (<theta_n^2> p_n^2 + <theta_m^2> p_m^2 - 2 <theta_n theta_m> p_n p_m)
///   + sum_n x_n^2 (m_n w_n^2 / 2 + <eta_n^2> / (12 m_n)) + k/2 sum_{m != n} (x_n - x_m)^2
///   + kappa sum_n x_n
/// ```
pub fn build_hamiltonian(spec: &SystemSpec, moments: &NcMoments) -> Result<QuadraticHamiltonian> {
    let n = spec.len();
    if moments.len() != n {
        return Err(SpectrumError::DimensionMismatch {
            expected: n,
            got: moments.len(),
        });
    }
    let k = spec.k();
    let others = (n - 1) as f64;
    let mut kinetic = DMatrix::zeros(n, n);
    let mut potential = DMatrix::zeros(n, n);

    for (i, p) in spec.particles().iter().enumerate() {
        let w2 = p.omega * p.omega;
        kinetic[(i, i)] = 1.0 / p.mass
            + moments.theta2(i) * p.mass * w2 / 6.0
            + others * k * moments.theta2(i) / 3.0;
        potential[(i, i)] = p.mass * w2 + moments.eta2(i) / (6.0 * p.mass) + 2.0 * k * others;
        for j in 0..n {
            if j != i {
                kinetic[(i, j)] = -k * moments.theta_cross(i, j) / 3.0;
                potential[(i, j)] = -2.0 * k;
            }
        }
    }

    let smallest = SymmetricEigen::new(kinetic.clone()).eigenvalues.min();
    if smallest.is_nan() || smallest <= 0.0 {
        return Err(SpectrumError::NonPositiveKinetic(smallest));
    }

    Ok(QuadraticHamiltonian {
        kinetic,
        potential,
        field: DVector::from_element(n, spec.kappa()),
        offset: spec.constants().offset(),
    })
}

/// Normal-mode frequencies, ascending.
pub fn normal_modes(h: &QuadraticHamiltonian) -> Result<Vec<f64>> {
    let kinetic = SymmetricEigen::new(h.kinetic.clone());
    let smallest = kinetic.eigenvalues.min();
    if smallest.is_nan() || smallest <= 0.0 {
        return Err(SpectrumError::NonPositiveKinetic(smallest));
    }
    let root = &kinetic.eigenvectors
        * DMatrix::from_diagonal(&kinetic.eigenvalues.map(f64::sqrt))
        * kinetic.eigenvectors.transpose();
    let similar = &root * &h.potential * &root;
    let symmetric = (&similar + similar.transpose()) * 0.5;

    let squared = SymmetricEigen::new(symmetric).eigenvalues;
    let scale = squared.amax();
    let mut frequencies = squared
        .iter()
        .map(|&w2| frequency_from_squared(w2, scale))
        .collect::<Result<Vec<_>>>()?;
    frequencies.sort_by(f64::total_cmp);
    Ok(frequencies)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroundState {
    pub ground: f64,
    pub shift: f64,
}

/// Ground energy `sum 3/2 hbar w_a + shift + offset`, with the field shift
/// obtained by completing the square: `-1/2 f^T B^-1 f`.
pub fn ground_energy_and_shift(
    h: &QuadraticHamiltonian,
    constants: &Constants,
) -> Result<GroundState> {
    let frequencies = normal_modes(h)?;
    let shift = if h.field.iter().all(|f| *f == 0.0) {
        0.0
    } else {
        let eig = SymmetricEigen::new(h.potential.clone()).eigenvalues;
        if eig.min() <= NOISE_FLOOR * eig.amax() {
            return Err(SpectrumError::FieldShiftUndefined);
        }
        let chol = Cholesky::new(h.potential.clone()).ok_or(SpectrumError::FieldShiftUndefined)?;
        -0.5 * h.field.dot(&chol.solve(&h.field))
    };
    let zero_point: f64 = frequencies.iter().map(|w| 1.5 * constants.hbar * w).sum();
    Ok(GroundState {
        ground: zero_point + shift + h.offset,
        shift,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "split")]
pub enum ComSplit {
    Exact {
        com_frequency: f64,
        relative_frequencies: Vec<f64>,
    },
    NoExactSplit,
}

const IDENTICAL_TOLERANCE: f64 = 1e-12;

fn uniform_entries(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    let (diag, off) = (m[(0, 0)], if n > 1 { m[(0, 1)] } else { 0.0 });
    (0..n).all(|i| {
        (0..n).all(|j| {
            let reference = if i == j { diag } else { off };
            relative_difference(m[(i, j)], reference) <= IDENTICAL_TOLERANCE
        })
    })
}

/// For identical particles the uniform displacement is an exact eigenvector
/// of `A B`; its eigenvalue gives the center-of-mass frequency and the other
/// normal modes are the relative motion.
pub fn com_relative_split(h: &QuadraticHamiltonian) -> Result<ComSplit> {
    if h.is_empty() || !uniform_entries(&h.kinetic) || !uniform_entries(&h.potential) {
        return Ok(ComSplit::NoExactSplit);
    }
    let kinetic_sum: f64 = h.kinetic.row(0).sum();
    let potential_sum: f64 = h.potential.row(0).sum();
    let scale = h.kinetic.amax() * h.potential.amax();
    let com_frequency = frequency_from_squared(kinetic_sum * potential_sum, scale)?;

    let mut relative_frequencies = normal_modes(h)?;
    let closest = relative_frequencies
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - com_frequency)
                .abs()
                .total_cmp(&(b.1 - com_frequency).abs())
        })
        .map(|(i, _)| i)
        .expect("at least one mode");
    relative_frequencies.remove(closest);
    Ok(ComSplit::Exact {
        com_frequency,
        relative_frequencies,
    })
}

/// Largest `|a_i - b_i| / max(|a_i|, |b_i|)` over two lists sorted ascending.
/// Lists of different length compare as infinitely far apart.
pub fn max_relative_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter()
        .zip(&b)
        .map(|(x, y)| relative_difference(*x, *y))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingRow {
    pub lambda: f64,
    pub max_relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// `d log(deviation) / d log(lambda)` between consecutive rows.
    pub consecutive_slopes: Vec<Option<f64>>,
    /// Least-squares slope over all rows with positive `lambda` and deviation.
    pub slope: Option<f64>,
}

impl ScalingReport {
    pub fn max_deviation(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.max_relative_deviation)
            .fold(0.0, f64::max)
    }
}

fn log_slope(a: &ScalingRow, b: &ScalingRow) -> Option<f64> {
    let usable = |r: &ScalingRow| r.lambda > 0.0 && r.max_relative_deviation > 0.0;
    if usable(a) && usable(b) && a.lambda != b.lambda {
        Some(
            (a.max_relative_deviation.ln() - b.max_relative_deviation.ln())
                / (a.lambda.ln() - b.lambda.ln()),
        )
    } else {
        None
    }
}

/// Scales every moment of `spec` by each `lambda` and measures how far the
/// closed form strays from the oracle. A formula exact for `H0` stays at
/// round-off; a truncation of order `p` shows slope `p` in `lambda`.
pub fn scaling_test<F>(spec: &SystemSpec, lambdas: &[f64], closed_form: F) -> Result<ScalingReport>
where
    F: Fn(&SystemSpec, &NcMoments) -> Result<SpectrumResult>,
{
    let base = spec.moments();
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(SpectrumError::InvalidSystem(format!(
                "scaling factor must be non-negative, got {lambda}"
            )));
        }
        let moments = base.scaled(lambda);
        let expected = closed_form(spec, &moments)?.sorted_frequencies();
        let actual = normal_modes(&build_hamiltonian(spec, &moments)?)?;
        rows.push(ScalingRow {
            lambda,
            max_relative_deviation: max_relative_deviation(&expected, &actual),
        });
    }

    let consecutive_slopes = rows.windows(2).map(|w| log_slope(&w[0], &w[1])).collect();

    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.lambda > 0.0 && r.max_relative_deviation > 0.0)
        .map(|r| (r.lambda.ln(), r.max_relative_deviation.ln()))
        .collect();
    let slope = if points.len() >= 2 {
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    } else {
        None
    };

    Ok(ScalingReport {
        rows,
        consecutive_slopes,
        slope,
    })
}
