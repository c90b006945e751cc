//! The memory-kernel solver on a user-supplied kernel. An exponential
//! kernel has a closed-form answer, so the error can be read off directly.
//!
//!     cargo run --release --example custom_kernel

use entropic_witness::linalg::re;
use entropic_witness::reservoir::{lorentzian_p, solve_trapezoid, solve_volterra_kernel, SpectralModel, VolterraOptions};

fn main() {
    let lambda = 0.3;
    let kernel = |x: f64| re(0.5 * lambda * (-lambda * x).exp());
    let exact = SpectralModel::lorentzian(1.0, lambda, 0.0).unwrap();
    let err = |step: f64, p: &[_]| -> f64 {
        p.iter()
            .enumerate()
            .map(|(i, q): (usize, &entropic_witness::linalg::C64)| (q - lorentzian_p(&exact, i as f64 * step).unwrap()).norm())
            .fold(0.0, f64::max)
    };

    for step in [0.08, 0.04, 0.02, 0.01] {
        let raw = solve_trapezoid(kernel, 0.0, 20.0, step).unwrap();
        println!("single grid, step {step:<5} max error {:.3e}", err(step, &raw));
    }
    let (_, p) = solve_volterra_kernel(kernel, 0.0, 20.0, 0.08, VolterraOptions::default()).unwrap();
    println!("refined from step 0.08: max error {:.3e}", err(0.08, &p));
}
