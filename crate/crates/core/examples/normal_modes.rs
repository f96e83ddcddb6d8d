//! Builds the quadratic Hamiltonian as kinetic and potential matrices and
//! diagonalizes it, independently of the closed forms.

use nc_spectra::{
    build_hamiltonian, com_relative_split, ground_energy_and_shift, normal_modes, Constants,
    NcParams, Particle, SystemSpec,
};

fn main() -> nc_spectra::Result<()> {
    let particles = vec![
        Particle::new(1.0, 1.0, NcParams::new(0.2, 0.1)),
        Particle::new(1.5, 0.8, NcParams::new(0.1, 0.3)),
        Particle::new(0.7, 1.2, NcParams::new(0.3, 0.2)),
    ];
    let spec = SystemSpec::new(particles, 0.8, 0.4, Constants::default())?;
    let h = build_hamiltonian(&spec, &spec.moments())?;

    println!("A =\n{:.6}", h.kinetic);
    println!("B =\n{:.6}", h.potential);
    println!("frequencies: {:?}", normal_modes(&h)?);

    let ground = ground_energy_and_shift(&h, spec.constants())?;
    println!(
        "ground energy {:.12}, field shift {:.12}",
        ground.ground, ground.shift
    );
    println!("split: {:?}", com_relative_split(&h)?);
    Ok(())
}
