//! Checks whether the noncommutativity parameters satisfy c_theta m = const
//! and c_eta / m = const across particles of different mass.

use nc_spectra::{validate_constraints, Constants, NcParams, Particle, SystemSpec};

fn main() -> nc_spectra::Result<()> {
    let (gamma, alpha) = (0.2, 0.1);
    let scaled = |m: f64| Particle::new(m, 1.0, NcParams::new(gamma / m, alpha * m));

    let good = SystemSpec::new(
        vec![scaled(1.0), scaled(2.0), scaled(5.0)],
        1.0,
        0.0,
        Constants::default(),
    )?;
    println!("{:#?}", validate_constraints(&good, 1e-12));

    let mut particles = good.particles().to_vec();
    particles[2].nc = NcParams::new(gamma, alpha);
    let bad = SystemSpec::new(particles, 1.0, 0.0, Constants::default())?;
    let report = validate_constraints(&bad, 1e-12);
    println!(
        "violated: passed = {}, gamma deviation {:.3}",
        report.passed, report.max_gamma_deviation
    );
    Ok(())
}
