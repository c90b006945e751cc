//! Entropic uncertainty for an arbitrary pair of qubit observables, and the
//! lower bound set by the memory.
//!
//!     cargo run --example custom_observables

use entropic_witness::linalg::{c, pauli, Mat2};
use entropic_witness::uncertainty::{berta_bound, complementarity, tomographic_estimate, Observable};
use entropic_witness::{CanonicalBloch, TwoQubitState};

fn main() {
    let werner = TwoQubitState::from_canonical(&CanonicalBloch::bell_diagonal([-0.8, -0.8, -0.8]).unwrap()).unwrap();
    let z = Observable::sigma_z();
    for deg in [90.0f64, 60.0, 30.0, 10.0] {
        // spin along an axis tilted by `deg` from z in the x-z plane
        let th = deg.to_radians();
        let m: Mat2 = pauli(3) * c(th.cos(), 0.0) + pauli(1) * c(th.sin(), 0.0);
        let r = Observable::new(m).unwrap();
        println!(
            "angle {deg:>4}: c = {:.4}  H(R|B)+H(S|B) = {:.4}  bound = {:.4}",
            complementarity(&r, &z),
            tomographic_estimate(&werner, &r, &z).unwrap(),
            berta_bound(&werner, &r, &z).unwrap()
        );
    }
}
