//! Configuration, command implementations and figure presets behind the
//! command-line tool.

mod commands;
mod config;
mod figures;

pub use commands::{
    cmd_evolve, cmd_montecarlo, cmd_pcrit, cmd_state, run_evolve, trajectory_for, write_pcrit,
    EvolveOutput, PcritRow, PCRIT_CSV_HEADER,
};
pub use config::{
    parse_flat, parse_vector, EvolveConfig, Layers, MonteCarloConfig, OutputFormat, PcritConfig,
    StateConfig, StateInput,
};
pub use figures::{cmd_figure, cmd_figures, FigureId, FigureManifest, FigureRecipe};
