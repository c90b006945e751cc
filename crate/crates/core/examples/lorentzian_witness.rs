//! Lorentzian reservoir: on resonance the TE-witnessed concurrence region
//! does not depend on the width λ; with detuning the witnessed time
//! intervals split while the region stays the same.
//!
//!     cargo run --release --example lorentzian_witness

use entropic_witness::reservoir::{critical_time, evolve, witness_intervals, PTrajectory, SpectralModel};
use entropic_witness::{Estimator, EwlFamily, EwlSpec};

fn main() {
    for (lambda, delta) in [(0.05, 0.0), (0.1, 0.0), (0.5, 0.0), (0.1, 0.8)] {
        let model = SpectralModel::lorentzian(1.0, lambda, delta).unwrap();
        let p = PTrajectory::lorentzian(&model, 20.0, 0.002).unwrap();
        for family in [EwlFamily::Psi, EwlFamily::Phi] {
            let traj = evolve(&EwlSpec::maximally_entangled(family), &p).unwrap();
            let iv = witness_intervals(&traj, Estimator::Te).unwrap();
            let times: Vec<String> = iv.iter().map(|w| format!("[{:.3}, {:.3}]", w.t_start, w.t_end)).collect();
            let c_lo = iv.iter().map(|w| w.c_min).fold(f64::INFINITY, f64::min);
            println!(
                "lambda {lambda:<4} delta {delta:<3} {family}: TE region [{c_lo:.4}, 1]  times {}  t_c {:?}",
                times.join(" "),
                critical_time(&traj, Estimator::Te).unwrap()
            );
        }
    }
}
