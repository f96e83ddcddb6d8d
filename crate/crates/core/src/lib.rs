//! Energy spectra of coupled harmonic oscillators in rotationally invariant
//! noncommutative phase space.
//!
//! Averaging the noncommutative Hamiltonian over the ground state of the
//! auxiliary oscillators leaves a quadratic Hamiltonian `H0` whose only
//! trace of noncommutativity is a set of scalar moments. This crate
//!
//! - evaluates those moments and the effective masses and frequencies
//!   ([`model`]),
//! - evaluates the closed-form spectra for identical particles, free
//!   particles, particles with harmonic interaction, two oscillators and
//!   three oscillators ([`spectrum`], dispatched by [`Topology`]),
//! - diagonalizes `H0` numerically as an independent oracle ([`oracle`]),
//! - compares the two and checks the reduction identities between the
//!   families ([`verify`]),
//! - drives all of the above from a JSON config ([`config`], [`runner`]).
//!
//! ```
//! use nc_spectra::{spectrum_identical, Constants, Oscillator, ParticleMoments};
//!
//! let s = spectrum_identical(2, Oscillator::new(1.0, 1.0), 1.0, 0.0, ParticleMoments::ZERO, &Constants::default())
//!     .unwrap();
//! assert_eq!(s.frequencies()[0], 1.0);
//! assert!((s.frequencies()[1] - 5f64.sqrt()).abs() < 1e-15);
//! ```

pub mod config;
pub mod error;
pub mod family;
pub mod model;
pub mod oracle;
pub mod output;
pub mod runner;
pub mod spectrum;
pub mod verify;

pub use error::{Result, SpectrumError};
pub use family::Topology;
pub use model::{
    compute_moments, effective_params, validate_constraints, ConsistencyReport, Constants,
    EffectiveParams, NcMoments, NcParams, Oscillator, Particle, ParticleMoments, SystemSpec,
};
pub use oracle::{
    build_hamiltonian, com_relative_split, ground_energy_and_shift, normal_modes, scaling_test,
    ComSplit, QuadraticHamiltonian,
};
pub use spectrum::{
    energy_level, enumerate_levels, spectrum_free_particles, spectrum_ho_interaction,
    spectrum_identical, spectrum_three, spectrum_three_coordinate_nc, spectrum_two, Level, Mode,
    ModeKind, QuantumNumbers, SpectrumResult,
};
