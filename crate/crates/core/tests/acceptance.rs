//! Acceptance criteria, one printed PASS/FAIL line each. Runs without the
//! libtest harness so the table is always shown.

mod common;

use std::time::Instant;

use nc_spectra::spectrum::relative_difference;
use nc_spectra::verify::{verify_with, Branch, VerifyOptions};
use nc_spectra::{
    build_hamiltonian, com_relative_split, compute_moments, effective_params,
    ground_energy_and_shift, normal_modes, spectrum_identical, spectrum_three, spectrum_two,
    ComSplit, Constants, NcParams, Oscillator, Particle, SystemSpec, Topology,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| relative_difference(*x, *y))
        .fold(0.0, f64::max)
}

fn oracle(spec: &SystemSpec) -> Vec<f64> {
    normal_modes(&build_hamiltonian(spec, &spec.moments()).unwrap()).unwrap()
}

fn within(label: &str, worst: f64, tol: f64) -> Outcome {
    if worst <= tol {
        Ok(format!("{label}: worst {worst:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("{label}: worst {worst:.2e} > {tol:.0e}"))
    }
}

fn identical_exactness() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let c = Constants::default();
    let mut worst = 0.0f64;
    for n in 2..=8 {
        for _ in 0..100 {
            let (m, w, k) = (
                r.gen_range(0.1..5.0),
                r.gen_range(0.1..5.0),
                r.gen_range(0.0..5.0),
            );
            // <theta^2> = 3 c^2 / 2, so m^2 w^2 <theta^2> / 6 <= 0.25 means c <= 1 / (m w).
            let c_theta = r.gen_range(0.0..1.0f64.min(1.0 / (m * w)));
            let nc = NcParams::new(c_theta, r.gen_range(0.0..1.0));
            let spec = SystemSpec::identical(n, Particle::new(m, w, nc), k, 0.0, c).unwrap();
            let s = spectrum_identical(
                n,
                Oscillator::new(m, w),
                k,
                0.0,
                spec.moments().particle(0),
                &c,
            )
            .unwrap();
            worst = worst.max(max_dev(&s.sorted_frequencies(), &oracle(&spec)));
        }
    }
    let elapsed = start.elapsed();
    let summary = within("700 draws", worst, 1e-10)?;
    if elapsed.as_secs_f64() < 1.0 {
        Ok(format!("{summary}, {:.0} ms", elapsed.as_secs_f64() * 1e3))
    } else {
        Err(format!("{summary}, but took {elapsed:?}"))
    }
}

fn branch_summary(reports: &[(String, Branch, bool)]) -> Outcome {
    let exact = reports.iter().filter(|r| r.1 == Branch::Exact).count();
    let second = reports
        .iter()
        .filter(|r| r.1 == Branch::SecondOrder)
        .count();
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.2)
        .map(|r| r.0.as_str())
        .collect();
    let summary = format!(
        "{} draws, {exact} exact, {second} second-order",
        reports.len()
    );
    if failed.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}, failed: {}", failed.join("; ")))
    }
}

fn verify(label: String, topology: Topology, spec: &SystemSpec) -> (String, Branch, bool) {
    match verify_with(spec, &VerifyOptions::default(), |s, m| {
        topology.closed_form(s, m)
    }) {
        Ok(report) => (
            format!("{label} max {:.2e}", report.max_deviation),
            report.branch,
            report.passed,
        ),
        Err(e) => (format!("{label}: {e}"), Branch::Failed, false),
    }
}

fn draw_particle(r: &mut ChaCha8Rng, omega: bool, c_max: f64) -> Particle {
    let w = if omega { r.gen_range(0.2..3.0) } else { 0.0 };
    Particle::new(
        r.gen_range(0.2..3.0),
        w,
        NcParams::new(r.gen_range(0.0..c_max), r.gen_range(0.0..c_max)),
    )
}

fn pair_check() -> Outcome {
    let mut r = rng(2);
    let reports: Vec<_> = (0..100)
        .map(|i| {
            let (a, b) = (
                draw_particle(&mut r, true, 0.5),
                draw_particle(&mut r, true, 0.5),
            );
            let spec =
                SystemSpec::new(vec![a, b], r.gen_range(0.0..3.0), 0.0, Constants::default())
                    .unwrap();
            verify(format!("pair #{i}"), Topology::Pair, &spec)
        })
        .collect();
    branch_summary(&reports)
}

fn triple_check() -> Outcome {
    let mut r = rng(3);
    let c = Constants::default();
    let mut reports = Vec::new();
    for i in 0..50 {
        let (a, b) = (
            draw_particle(&mut r, true, 0.5),
            draw_particle(&mut r, true, 0.5),
        );
        let spec = SystemSpec::new(vec![a, b, b], r.gen_range(0.0..3.0), 0.0, c).unwrap();
        reports.push(verify(
            format!("heterogeneous #{i}"),
            Topology::Triple,
            &spec,
        ));
    }
    for i in 0..50 {
        let draw = |r: &mut ChaCha8Rng| {
            Particle::new(
                r.gen_range(0.2..3.0),
                0.0,
                NcParams::new(r.gen_range(0.2..0.6), r.gen_range(0.2..0.6)),
            )
        };
        let (a, b) = (draw(&mut r), draw(&mut r));
        let spec = SystemSpec::new(vec![a, b, b], r.gen_range(0.1..3.0), 0.0, c).unwrap();
        reports.push(verify(format!("quark #{i}"), Topology::Triple, &spec));
    }
    let mut worst_zero = 0.0f64;
    for i in 0..50 {
        let draw = |r: &mut ChaCha8Rng| {
            Particle::new(
                r.gen_range(0.2..3.0),
                0.0,
                NcParams::new(r.gen_range(0.0..0.5), 0.0),
            )
        };
        let (a, b) = (draw(&mut r), draw(&mut r));
        let spec = SystemSpec::new(vec![a, b, b], r.gen_range(0.0..3.0), 0.0, c).unwrap();
        reports.push(verify(
            format!("coordinate-only #{i}"),
            Topology::CoordinateNcTriple,
            &spec,
        ));
        let closed = Topology::CoordinateNcTriple
            .closed_form(&spec, &spec.moments())
            .unwrap();
        worst_zero = worst_zero
            .max(closed.frequencies()[0].abs())
            .max(oracle(&spec)[0].abs());
    }
    let summary = branch_summary(&reports)?;
    if worst_zero <= 1e-13 {
        Ok(format!(
            "{summary}; coordinate-only w1 max {worst_zero:.1e}"
        ))
    } else {
        Err(format!(
            "{summary}; coordinate-only w1 reached {worst_zero:.2e}"
        ))
    }
}

fn commutative_collapse() -> Outcome {
    let mut r = rng(4);
    let c = Constants::default();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (m, w, k, kappa) = (
            r.gen_range(0.5..2.0),
            r.gen_range(0.5..2.0),
            r.gen_range(0.0..2.0),
            r.gen_range(-2.0..2.0),
        );
        let p = Particle::new(m, w, NcParams::COMMUTATIVE);
        let e = effective_params(m, w, Default::default());
        if e.mass != m || e.omega != w {
            return Err(format!("effective parameters moved at m = {m}, w = {w}"));
        }
        let expected = |n: usize| {
            let rel = (w * w + 2.0 * n as f64 * k / m).sqrt();
            std::iter::once(w)
                .chain(std::iter::repeat_n(rel, n - 1))
                .collect::<Vec<_>>()
        };
        for n in [2, 3, 5] {
            let spec = SystemSpec::identical(n, p, k, kappa, c).unwrap();
            let s = Topology::IdenticalN
                .closed_form(&spec, &spec.moments())
                .unwrap();
            worst = worst.max(max_dev(&s.frequencies(), &expected(n)));
            let shift = -(n as f64) * kappa * kappa / (2.0 * m * w * w);
            worst = worst.max(relative_difference(s.field_shift, shift));
        }
        let pair = SystemSpec::identical(2, p, k, 0.0, c).unwrap();
        let s = Topology::Pair.closed_form(&pair, &pair.moments()).unwrap();
        worst = worst.max(max_dev(&s.sorted_frequencies(), &expected(2)));
        let triple = SystemSpec::identical(3, p, k, 0.0, c).unwrap();
        let s = Topology::Triple
            .closed_form(&triple, &triple.moments())
            .unwrap();
        worst = worst.max(max_dev(&s.sorted_frequencies(), &expected(3)));

        let still = Particle::new(m, 0.0, NcParams::COMMUTATIVE);
        let bound = SystemSpec::identical(4, still, k.max(0.1), 0.0, c).unwrap();
        let s = Topology::HoInteraction
            .closed_form(&bound, &bound.moments())
            .unwrap();
        let rel = (8.0 * k.max(0.1) / m).sqrt();
        worst = worst.max(max_dev(&s.frequencies(), &[0.0, rel, rel, rel]));
        let free = SystemSpec::identical(4, still, 0.0, 0.0, c).unwrap();
        let s = Topology::Free.closed_form(&free, &free.moments()).unwrap();
        worst = worst.max(max_dev(&s.frequencies(), &[0.0; 4]));
        let coordinate = SystemSpec::identical(3, still, k, 0.0, c).unwrap();
        let s = Topology::CoordinateNcTriple
            .closed_form(&coordinate, &coordinate.moments())
            .unwrap();
        let rel = (6.0 * k / m).sqrt();
        worst = worst.max(max_dev(&s.sorted_frequencies(), &[0.0, rel, rel]));
    }
    within("50 draws x 8 family checks", worst, 1e-14)
}

fn reductions() -> Outcome {
    let mut r = rng(5);
    let c = Constants::default();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let osc = Oscillator::new(r.gen_range(0.5..2.0), r.gen_range(0.5..2.0));
        let k = r.gen_range(0.0..2.0);
        let nc = NcParams::new(r.gen_range(0.0..0.5), r.gen_range(0.0..0.5));
        let pm = compute_moments(&[nc], &c).particle(0);
        let two = spectrum_two(osc, osc, k, &compute_moments(&[nc, nc], &c), &c).unwrap();
        let ident = spectrum_identical(2, osc, k, 0.0, pm, &c).unwrap();
        worst = worst.max(max_dev(
            &two.sorted_frequencies(),
            &ident.sorted_frequencies(),
        ));
        let three = spectrum_three(osc, osc, k, &compute_moments(&[nc, nc, nc], &c), &c).unwrap();
        let ident = spectrum_identical(3, osc, k, 0.0, pm, &c).unwrap();
        worst = worst.max(max_dev(
            &three.sorted_frequencies(),
            &ident.sorted_frequencies(),
        ));
    }
    within("50 draws", worst, 1e-12)
}

fn center_of_mass_invariant() -> Outcome {
    let c = Constants::default();
    let p = Particle::new(1.3, 0.8, NcParams::new(0.3, 0.2));
    let w_eff = effective_params(p.mass, p.omega, compute_moments(&[p.nc], &c).particle(0)).omega;
    let mut worst = 0.0f64;
    for i in 0..20 {
        let k = 10.0 * i as f64 / 19.0;
        let spec = SystemSpec::identical(4, p, k, 0.0, c).unwrap();
        match com_relative_split(&build_hamiltonian(&spec, &spec.moments()).unwrap()).unwrap() {
            ComSplit::Exact { com_frequency, .. } => {
                worst = worst.max(relative_difference(com_frequency, w_eff))
            }
            ComSplit::NoExactSplit => return Err(format!("no exact split at k = {k}")),
        }
    }
    within("20 couplings in [0, 10]", worst, 1e-12)
}

fn field_decoupling() -> Outcome {
    let mut r = rng(7);
    let c = Constants::default();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p = Particle::new(
            r.gen_range(0.5..2.0),
            r.gen_range(0.5..2.0),
            NcParams::new(r.gen_range(0.0..0.5), r.gen_range(0.0..0.5)),
        );
        let n = r.gen_range(1..=6);
        let k = r.gen_range(0.0..2.0);
        let base = SystemSpec::identical(n, p, k, 0.0, c).unwrap();
        let reference = Topology::IdenticalN
            .closed_form(&base, &base.moments())
            .unwrap()
            .sorted_frequencies();
        let reference_oracle = oracle(&base);
        for kappa in [0.5, 2.0] {
            let spec = base.with_kappa(kappa);
            let s = Topology::IdenticalN
                .closed_form(&spec, &spec.moments())
                .unwrap();
            if s.sorted_frequencies() != reference || oracle(&spec) != reference_oracle {
                return Err(format!("frequencies moved with kappa = {kappa}"));
            }
            let h = build_hamiltonian(&spec, &spec.moments()).unwrap();
            let shift = ground_energy_and_shift(&h, &c).unwrap().shift;
            worst = worst.max(relative_difference(shift, s.field_shift));
        }
    }
    within("bitwise-equal frequencies; shift", worst, 1e-12)
}

fn free_particles() -> Outcome {
    let mut r = rng(8);
    let c = Constants::default();
    let mut worst = 0.0f64;
    for i in 0..50 {
        let c_eta = if i % 10 == 0 {
            0.0
        } else {
            r.gen_range(0.0..1.0)
        };
        let p = Particle::new(
            r.gen_range(0.2..3.0),
            0.0,
            NcParams::new(r.gen_range(0.0..0.5), c_eta),
        );
        let n = r.gen_range(1..=6);
        let spec = SystemSpec::identical(n, p, 0.0, 0.0, c).unwrap();
        let expected = vec![(spec.moments().eta2(0) / (6.0 * p.mass * p.mass)).sqrt(); n];
        let s = Topology::Free.closed_form(&spec, &spec.moments()).unwrap();
        worst = worst
            .max(max_dev(&s.frequencies(), &expected))
            .max(max_dev(&oracle(&spec), &expected));
        if c_eta == 0.0
            && s.frequencies()
                .iter()
                .chain(&oracle(&spec))
                .any(|&w| w != 0.0)
        {
            return Err("nonzero frequency without momentum noncommutativity".into());
        }
    }
    within("50 draws, closed form and oracle", worst, 1e-12)
}

fn cli_contract() -> Outcome {
    let mut failures: Vec<String> = common::GOLDEN_CASES
        .iter()
        .filter_map(|c| c.check().err())
        .collect();
    failures.extend(common::EXIT_CASES.iter().filter_map(|c| c.check().err()));
    if failures.is_empty() {
        Ok(format!(
            "{} golden files, {} exit-code cases",
            common::GOLDEN_CASES.len(),
            common::EXIT_CASES.len()
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> std::process::ExitCode {
    let criteria: [Criterion; 9] = [
        ("identical-N exactness", identical_exactness),
        ("two-oscillator check", pair_check),
        ("three-oscillator check", triple_check),
        ("commutative collapse", commutative_collapse),
        ("reduction identities", reductions),
        ("center-of-mass invariant", center_of_mass_invariant),
        ("field decoupling and shift", field_decoupling),
        ("free-particle spectrum", free_particles),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
