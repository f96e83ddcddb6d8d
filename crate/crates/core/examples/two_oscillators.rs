//! Two coupled oscillators with different masses and frequencies.

use nc_spectra::{compute_moments, spectrum_two, Constants, NcParams, Oscillator};

fn main() -> nc_spectra::Result<()> {
    let constants = Constants::default();
    let moments = compute_moments(
        &[NcParams::new(0.1, 0.2), NcParams::new(0.05, 0.4)],
        &constants,
    );
    let s = spectrum_two(
        Oscillator::new(1.0, 1.0),
        Oscillator::new(2.0, 0.5),
        0.7,
        &moments,
        &constants,
    )?;
    println!("omega_- = {:.12}", s.frequencies()[0]);
    println!("omega_+ = {:.12}", s.frequencies()[1]);
    println!("E_0     = {:.12}", s.ground_energy);
    Ok(())
}
