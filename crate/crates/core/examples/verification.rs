//! Compares each closed-form family against the oracle, then scales all
//! moments by lambda to read off the order of any disagreement.

use nc_spectra::verify::{verify_with, VerifyOptions};
use nc_spectra::{Constants, NcParams, Particle, SystemSpec, Topology};

fn main() -> nc_spectra::Result<()> {
    let options = VerifyOptions::default();
    let a = Particle::new(1.0, 1.0, NcParams::new(0.3, 0.3));
    let b = Particle::new(2.0, 0.5, NcParams::new(0.1, 0.5));

    let cases = [
        (
            Topology::IdenticalN,
            SystemSpec::identical(4, a, 1.0, 0.5, Constants::default())?,
        ),
        (
            Topology::Pair,
            SystemSpec::new(vec![a, b], 0.7, 0.0, Constants::default())?,
        ),
        (
            Topology::Triple,
            SystemSpec::new(vec![b, a, a], 0.7, 0.0, Constants::default())?,
        ),
    ];
    for (topology, spec) in cases {
        let report = verify_with(&spec, &options, |s, m| topology.closed_form(s, m))?;
        println!(
            "{topology}: {:?}, max deviation {:.2e}",
            report.branch, report.max_deviation
        );
        for row in &report.scaling.rows {
            println!(
                "  lambda {:<8} deviation {:.2e}",
                row.lambda, row.max_relative_deviation
            );
        }
    }

    // A closed form that drops the coupling in the relative modes is caught.
    let spec = SystemSpec::identical(3, a, 1.0, 0.0, Constants::default())?;
    let wrong = |s: &SystemSpec, m: &nc_spectra::NcMoments| {
        let weaker = SystemSpec::identical(
            s.len(),
            s.particles()[0],
            0.9 * s.k(),
            s.kappa(),
            *s.constants(),
        )?;
        Topology::IdenticalN.closed_form(&weaker, m)
    };
    let report = verify_with(&spec, &options, wrong)?;
    println!("corrupted formula: {:?}", report.branch);
    Ok(())
}
