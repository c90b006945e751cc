//! Uncertainty estimates, entanglement and teleportation figures for a few
//! named states.
//!
//!     cargo run --example state_report

use entropic_witness::{witness_report, BellState, CanonicalBloch, EwlFamily, EwlSpec, TwoQubitState};

fn show(name: &str, rho: &TwoQubitState) {
    let r = witness_report(rho).unwrap();
    println!(
        "{name:<28} TE {:>7.4}  ME {:>7.4}  FE {:>7.4}  BB {:>7.4}  H(A|B) {:>7.4}  C {:.4}  F_av {:.4}  M {:.4}",
        r.te, r.me, r.fe, r.bb, r.cond_entropy, r.concurrence, r.avg_fidelity, r.chsh
    );
}

fn main() {
    show("singlet", &TwoQubitState::bell(BellState::PsiMinus));
    show("maximally mixed", &TwoQubitState::maximally_mixed());

    for x in [0.9, 0.6, 1.0 / 3.0] {
        let werner = CanonicalBloch::bell_diagonal([-x, -x, -x]).unwrap();
        show(&format!("Werner x = {x:.3}"), &TwoQubitState::from_canonical(&werner).unwrap());
    }

    let local = [0.0, 0.0, 0.25];
    let odd = CanonicalBloch::new(local, local, [0.95, -0.25, 0.30]).unwrap();
    show("H(A|B) < 0, no CHSH", &TwoQubitState::from_canonical(&odd).unwrap());

    for family in [EwlFamily::Psi, EwlFamily::Phi] {
        let spec = EwlSpec::new(family, 0.8, 0.6, 0.3).unwrap();
        show(&format!("EWL {family} r=0.8 a=0.6"), &spec.state().unwrap());
    }

    // unphysical input is reported, not silently accepted
    let bad = TwoQubitState::from_canonical(&CanonicalBloch::bell_diagonal([1.0, 1.0, 1.0]).unwrap()).unwrap();
    println!("v = (1,1,1): {}", witness_report(&bad).unwrap_err());
}
