//! Witness intervals in a sub-Ohmic reservoir (s = 1/2, η = 0.01, ω_c = 2ω₀).
//! For |Ψ⟩ the ME and FE witness three separate concurrence windows because
//! p(t) is complex in the lab frame.
//!
//!     cargo run --release --example sub_ohmic_witness

use entropic_witness::reservoir::{evolve, solve_volterra_p, witness_intervals, SpectralModel};
use entropic_witness::{Estimator, EwlFamily, EwlSpec};

fn main() {
    let model = SpectralModel::ohmic(0.5, 0.01, 2.0).unwrap();
    let p = solve_volterra_p(&model, 20.0, 0.005).unwrap();
    for family in [EwlFamily::Psi, EwlFamily::Phi] {
        let traj = evolve(&EwlSpec::maximally_entangled(family), &p).unwrap();
        println!("initial {family}");
        for est in Estimator::ALL {
            for w in witness_intervals(&traj, est).unwrap() {
                println!(
                    "  {est}: w0 t in [{:7.3}, {:7.3}]{}  C in [{:.4}, {:.4}]",
                    w.t_start,
                    w.t_end,
                    if w.open_end { "+" } else { " " },
                    w.c_min,
                    w.c_max
                );
            }
        }
    }
}
