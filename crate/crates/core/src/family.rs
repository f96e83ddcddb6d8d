//! Explicit selection of the closed-form family for a system.
//!
//! The families overlap (two equal oscillators are also an identical-N
//! system), so the family is always named rather than inferred.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectrumError};
use crate::model::{NcMoments, SystemSpec};
use crate::spectrum::{
    spectrum_free_particles, spectrum_ho_interaction, spectrum_identical, spectrum_three,
    spectrum_three_coordinate_nc, spectrum_two, SpectrumResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    #[serde(rename = "identical-N")]
    IdenticalN,
    #[serde(rename = "pair")]
    Pair,
    #[serde(rename = "triple-1+2")]
    Triple,
    #[serde(rename = "free")]
    Free,
    #[serde(rename = "ho-interaction")]
    HoInteraction,
    #[serde(rename = "coordinate-nc-triple")]
    CoordinateNcTriple,
}

impl Topology {
    pub const ALL: [Topology; 6] = [
        Topology::IdenticalN,
        Topology::Pair,
        Topology::Triple,
        Topology::Free,
        Topology::HoInteraction,
        Topology::CoordinateNcTriple,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Topology::IdenticalN => "identical-N",
            Topology::Pair => "pair",
            Topology::Triple => "triple-1+2",
            Topology::Free => "free",
            Topology::HoInteraction => "ho-interaction",
            Topology::CoordinateNcTriple => "coordinate-nc-triple",
        }
    }

    /// Number of particles fixed by the family, if any.
    pub fn fixed_size(self) -> Option<usize> {
        match self {
            Topology::Pair => Some(2),
            Topology::Triple | Topology::CoordinateNcTriple => Some(3),
            _ => None,
        }
    }

    /// Number of distinct species the family is parameterized by.
    pub fn species(self) -> usize {
        match self {
            Topology::IdenticalN | Topology::Free | Topology::HoInteraction => 1,
            Topology::Pair | Topology::Triple | Topology::CoordinateNcTriple => 2,
        }
    }

    /// Whether the family carries a uniform field term.
    pub fn supports_field(self) -> bool {
        matches!(
            self,
            Topology::IdenticalN | Topology::Free | Topology::HoInteraction
        )
    }

    /// Evaluates the family's closed-form spectrum for `spec` with the given
    /// moments (usually `spec.moments()`, possibly rescaled).
    pub fn closed_form(self, spec: &SystemSpec, moments: &NcMoments) -> Result<SpectrumResult> {
        let n = spec.len();
        if moments.len() != n {
            return Err(SpectrumError::DimensionMismatch {
                expected: n,
                got: moments.len(),
            });
        }
        if let Some(expected) = self.fixed_size() {
            if n != expected {
                return Err(SpectrumError::DimensionMismatch { expected, got: n });
            }
        }
        if !self.supports_field() && spec.kappa() != 0.0 {
            return Err(SpectrumError::RejectedInput(format!(
                "the {self} family has no field term; kappa must be 0"
            )));
        }

        let p = spec.particles();
        let constants = spec.constants();
        match self {
            Topology::IdenticalN => spectrum_identical(
                n,
                p[0].oscillator(),
                spec.k(),
                spec.kappa(),
                moments.particle(0),
                constants,
            ),
            Topology::Free => {
                spectrum_free_particles(n, p[0].mass, spec.kappa(), moments.particle(0), constants)
            }
            Topology::HoInteraction => spectrum_ho_interaction(
                n,
                p[0].mass,
                spec.k(),
                spec.kappa(),
                moments.particle(0),
                constants,
            ),
            Topology::Pair => spectrum_two(
                p[0].oscillator(),
                p[1].oscillator(),
                spec.k(),
                moments,
                constants,
            ),
            Topology::Triple => {
                if p[1].oscillator() != p[2].oscillator() {
                    return Err(SpectrumError::InvalidSystem(
                        "particles 2 and 3 must share mass and frequency".into(),
                    ));
                }
                spectrum_three(
                    p[0].oscillator(),
                    p[1].oscillator(),
                    spec.k(),
                    moments,
                    constants,
                )
            }
            Topology::CoordinateNcTriple => {
                if p.iter().any(|q| q.omega != 0.0) {
                    return Err(SpectrumError::RejectedInput(
                        "coordinate-only noncommutativity is defined for omega = 0".into(),
                    ));
                }
                if p[1].mass != p[2].mass {
                    return Err(SpectrumError::InvalidSystem(
                        "particles 2 and 3 must share their mass".into(),
                    ));
                }
                spectrum_three_coordinate_nc(p[0].mass, p[1].mass, spec.k(), moments, constants)
            }
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
