//! Special cases without an external potential: free particles, whose
//! frequencies come from momentum noncommutativity alone, and particles
//! bound only by the pairwise harmonic interaction.

use nc_spectra::{spectrum_free_particles, spectrum_ho_interaction, Constants, ParticleMoments};

fn main() -> nc_spectra::Result<()> {
    let constants = Constants::default();

    let free = spectrum_free_particles(2, 2.0, 0.5, ParticleMoments::new(0.0, 6.0), &constants)?;
    println!(
        "free: frequency {:.12} x{}, shift {:.12}",
        free.modes[0].frequency,
        free.particle_count(),
        free.field_shift
    );

    for n in [2, 3, 5] {
        let s = spectrum_ho_interaction(
            n,
            1.0,
            1.0,
            0.0,
            ParticleMoments::new(0.01, 0.06),
            &constants,
        )?;
        println!("interacting N = {n}: {:?}", s.frequencies());
    }
    Ok(())
}
