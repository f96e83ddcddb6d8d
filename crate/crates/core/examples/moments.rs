//! Ground-state moments of the auxiliary oscillators and the effective mass
//! and frequency they induce.

use nc_spectra::{compute_moments, effective_params, Constants, NcParams};

fn main() {
    let constants = Constants::default();
    let nc = [NcParams::new(0.2, 0.2), NcParams::new(0.1, 0.4)];
    let moments = compute_moments(&nc, &constants);

    for n in 0..moments.len() {
        println!(
            "particle {n}: <theta^2> = {:.6}, <eta^2> = {:.6}",
            moments.theta2(n),
            moments.eta2(n)
        );
    }
    println!("cross <theta1 theta2> = {:.6}", moments.theta_cross(0, 1));

    let e = effective_params(1.0, 1.0, moments.particle(0));
    println!("m_eff = {:.12}, omega_eff = {:.12}", e.mass, e.omega);
}
