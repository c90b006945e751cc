//! Critical |p| below which each estimator stops witnessing entanglement,
//! for real p, with the concurrence range that is still witnessed.
//!
//!     cargo run --example critical_p

use entropic_witness::reservoir::{critical_p, PCrossing};
use entropic_witness::{Estimator, EwlFamily, EwlSpec};

fn main() {
    println!("{:<6} {:<4} {:>8}   concurrence region", "state", "est", "p_c");
    for family in [EwlFamily::Psi, EwlFamily::Phi] {
        let spec = EwlSpec::maximally_entangled(family);
        for est in Estimator::ALL {
            match critical_p(&spec, est).unwrap() {
                PCrossing::Crossing { p_c, concurrence_region: [lo, hi] } => {
                    println!("{family:<6} {est:<4} {p_c:>8.4}   [{lo:.4}, {hi:.4}]")
                }
                other => println!("{family:<6} {est:<4} {other:?}"),
            }
        }
    }

    // a mixed EWL state with little purity is never witnessed
    let weak = EwlSpec::new(EwlFamily::Psi, 0.3, std::f64::consts::FRAC_1_SQRT_2, 0.0).unwrap();
    println!("psi r=0.3 TE: {:?}", critical_p(&weak, Estimator::Te).unwrap());
}
