//! Entropic uncertainty in the presence of quantum memory, teleportation
//! fidelity and entanglement witnesses for two-qubit states, with
//! amplitude-damping dynamics in structured reservoirs.
//!
//! The basis order throughout is {|11⟩, |10⟩, |01⟩, |00⟩}: index 0 of a
//! single qubit is the excited state.

pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod reservoir;
pub mod sampling;
pub mod state;
pub mod uncertainty;

pub use error::{Error, Result};
pub use geometry::{classify, region_mesh, sample_fractions, FractionReport, RegionLabel};
pub use reservoir::{
    apply_channel, critical_p, critical_time, evolve, witness_intervals, PCrossing, PTrajectory,
    SpectralModel,
};
pub use state::{
    BellState, CanonicalBloch, EwlFamily, EwlSpec, SingleQubitState, Subsystem, TwoQubitState,
};
pub use uncertainty::{witness_report, Estimator, Observable, UncertaintyReport};
