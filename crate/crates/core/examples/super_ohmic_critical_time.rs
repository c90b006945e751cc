//! Time after which TE no longer witnesses entanglement in a super-Ohmic
//! reservoir (s = 3, η = 0.01). Pass `long` to include ω_c = 6ω₀, which
//! needs ω₀t up to 220 and takes about a minute.
//!
//!     cargo run --release --example super_ohmic_critical_time -- long

use std::time::Instant;

use entropic_witness::reservoir::{critical_time, evolve, solve_volterra_p, SpectralModel};
use entropic_witness::{Estimator, EwlFamily, EwlSpec};

fn main() {
    let long = std::env::args().any(|a| a == "long");
    let mut runs = vec![(1.0, 20.0, 0.005), (2.0, 60.0, 0.005)];
    if long {
        runs.push((6.0, 220.0, 0.05));
    }
    for (omega_c, t_max, step) in runs {
        let start = Instant::now();
        let model = SpectralModel::ohmic(3.0, 0.01, omega_c).unwrap();
        let p = solve_volterra_p(&model, t_max, step).unwrap();
        for family in [EwlFamily::Psi, EwlFamily::Phi] {
            let traj = evolve(&EwlSpec::maximally_entangled(family), &p).unwrap();
            let tc = critical_time(&traj, Estimator::Te).unwrap();
            println!("omega_c {omega_c}: {family} TE critical time {tc:?}");
        }
        println!("  ({:.1} s)", start.elapsed().as_secs_f64());
    }
}
