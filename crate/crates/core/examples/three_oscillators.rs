//! Three oscillators, one of mass m1 and an identical pair of mass m: the
//! general case, the quark-model case with no external potential, and the
//! coordinate-only case whose center of mass stays free.

use nc_spectra::{
    compute_moments, spectrum_three, spectrum_three_coordinate_nc, Constants, NcParams, Oscillator,
};

fn main() -> nc_spectra::Result<()> {
    let constants = Constants::default();
    let (a, b) = (NcParams::new(0.1, 0.1), NcParams::new(0.2, 0.05));
    let moments = compute_moments(&[a, b, b], &constants);

    let general = spectrum_three(
        Oscillator::new(2.0, 1.0),
        Oscillator::new(1.0, 1.5),
        0.5,
        &moments,
        &constants,
    )?;
    println!("general: {:?}", general.frequencies());

    let quark = spectrum_three(
        Oscillator::new(2.0, 0.0),
        Oscillator::new(1.0, 0.0),
        0.5,
        &moments,
        &constants,
    )?;
    println!("quark:   {:?}", quark.frequencies());

    let (c, d) = (NcParams::new(0.1, 0.0), NcParams::new(0.2, 0.0));
    let coordinate = compute_moments(&[c, d, d], &constants);
    let s = spectrum_three_coordinate_nc(2.0, 1.0, 1.0, &coordinate, &constants)?;
    println!("coordinate-only: {:?}", s.frequencies());
    Ok(())
}
