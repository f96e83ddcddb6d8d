//! Energy of a chosen state and the lowest levels with their degeneracies.

use nc_spectra::{
    compute_moments, energy_level, enumerate_levels, spectrum_identical, Constants, NcParams,
    Oscillator, QuantumNumbers,
};

fn main() -> nc_spectra::Result<()> {
    let constants = Constants::new(1.0, 1.0, 0.5)?;
    let moments = compute_moments(&[NcParams::new(0.2, 0.2)], &constants).particle(0);
    let s = spectrum_identical(3, Oscillator::new(1.0, 1.0), 1.0, 0.0, moments, &constants)?;

    let state = QuantumNumbers(vec![[1, 0, 0], [0, 0, 0], [0, 1, 1]]);
    println!("E{:?} = {:.12}", state.0, energy_level(&s, &state)?);

    for level in enumerate_levels(&s, 2) {
        println!("{:.12}  (degeneracy {})", level.energy, level.degeneracy);
    }
    Ok(())
}
