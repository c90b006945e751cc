//! Seeded random density matrices for property checks.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, Mat4};
use crate::state::TwoQubitState;

/// ρ = GG†/tr(GG†) with G a 4×`rank` complex Ginibre matrix. Rank 1 gives
/// Haar-random pure states, rank 4 the Hilbert–Schmidt measure.
pub fn ginibre_state<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> TwoQubitState {
    let rank = rank.clamp(1, 4);
    let mut g = Mat4::zeros();
    for i in 0..4 {
        for j in 0..rank {
            g[(i, j)] = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    let m = g * g.adjoint();
    let tr = m.trace().re;
    let mut m = m / c(tr, 0.0);
    // exact Hermiticity
    m = (m + m.adjoint()) * c(0.5, 0.0);
    TwoQubitState::from_raw(m)
}

/// Ginibre state with the rank drawn uniformly from 1 to 4.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let rank = rng.gen_range(1..=4);
    ginibre_state(rng, rank)
}
