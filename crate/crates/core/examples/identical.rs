//! N identical oscillators in a uniform field: one center-of-mass mode at
//! omega_eff and N-1 degenerate relative modes.

use nc_spectra::{compute_moments, spectrum_identical, Constants, NcParams, Oscillator};

fn main() -> nc_spectra::Result<()> {
    let constants = Constants::default();
    let moments = compute_moments(&[NcParams::new(0.2, 0.2)], &constants).particle(0);

    for n in [2, 4, 8] {
        let s = spectrum_identical(n, Oscillator::new(1.0, 1.0), 1.0, 0.5, moments, &constants)?;
        println!("N = {n}");
        for mode in &s.modes {
            println!(
                "  {:?}: {:.12} x{}",
                mode.kind, mode.frequency, mode.multiplicity
            );
        }
        println!(
            "  field shift {:.12}, ground energy {:.12}",
            s.field_shift, s.ground_energy
        );
    }
    Ok(())
}
