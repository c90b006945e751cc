//! Zero-temperature amplitude damping of two independent qubits in
//! structured bosonic reservoirs.
//!
//! Every reservoir enters only through the decoherence function `p(t)`,
//! which multiplies the single-qubit coherence (and `|p|²` the excited
//! population). Ohmic-class reservoirs are solved numerically from the
//! memory-kernel equation in the lab frame with `ω₀ = 1`; the Lorentzian
//! reservoir has a closed form in the interaction picture with `γ₀` as the
//! time unit.

mod channel;
mod spectral;
mod volterra;
mod witness;

pub use channel::{apply_channel, damp_qubit};
pub use spectral::{lorentzian_p, ohmic_kernel, Frame, PTrajectory, SpectralModel, TimeUnit};
pub use volterra::{
    solve_trapezoid, solve_volterra_kernel, solve_volterra_p, solve_volterra_p_with,
    VolterraOptions,
};
pub use witness::{
    critical_p, critical_time, evolve, witness_intervals, write_trajectory_csv, CriticalTime,
    PCrossing, WitnessInterval, WitnessSummary, WitnessTrajectory, TRAJECTORY_CSV_HEADER,
};
