//! One function per command-line subcommand. Each returns data; the binary
//! decides where it goes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{sample_fractions_with_progress, FractionReport};
use crate::reservoir::{
    critical_p, evolve, solve_volterra_p_with, write_trajectory_csv, PCrossing, PTrajectory,
    SpectralModel, VolterraOptions, WitnessSummary, WitnessTrajectory,
};
use crate::state::{EwlFamily, StateJson, TwoQubitState};
use crate::uncertainty::{witness_report, Estimator, UncertaintyReport};

use super::config::{EvolveConfig, MonteCarloConfig, OutputFormat, PcritConfig, StateConfig, StateInput};

pub fn cmd_state(cfg: &StateConfig) -> Result<UncertaintyReport> {
    let rho = match &cfg.input {
        StateInput::Json { text } => TwoQubitState::try_from(serde_json::from_str::<StateJson>(text)?)?,
        StateInput::Canonical(canon) => TwoQubitState::from_canonical(canon)?,
    };
    witness_report(&rho)
}

/// `progress(done)` is called after each shard with the samples completed.
pub fn cmd_montecarlo<F>(cfg: &MonteCarloConfig, progress: F) -> Result<FractionReport>
where
    F: Fn(u64) + Sync,
{
    sample_fractions_with_progress(cfg.r, cfg.s, cfg.n, cfg.seed, progress)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcritRow {
    pub family: EwlFamily,
    pub estimator: Estimator,
    #[serde(flatten)]
    pub crossing: PCrossing,
}

pub fn cmd_pcrit(cfg: &PcritConfig) -> Result<Vec<PcritRow>> {
    cfg.estimators
        .iter()
        .map(|&estimator| {
            Ok(PcritRow {
                family: cfg.initial.family,
                estimator,
                crossing: critical_p(&cfg.initial, estimator)?,
            })
        })
        .collect()
}

pub const PCRIT_CSV_HEADER: &str = "family,estimator,status,p_c,c_min,c_max";

pub fn write_pcrit<W: Write>(mut w: W, rows: &[PcritRow], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
        OutputFormat::Csv => {
            writeln!(w, "{PCRIT_CSV_HEADER}")?;
            for row in rows {
                let (status, p_c) = match row.crossing {
                    PCrossing::Crossing { p_c, .. } => ("crossing", p_c.to_string()),
                    PCrossing::AlwaysWitnessed { .. } => ("always_witnessed", String::new()),
                    PCrossing::NeverWitnessed => ("never_witnessed", String::new()),
                };
                let (lo, hi) = match row.crossing.region() {
                    Some([lo, hi]) => (lo.to_string(), hi.to_string()),
                    None => (String::new(), String::new()),
                };
                writeln!(w, "{},{},{status},{p_c},{lo},{hi}", row.family, row.estimator)?;
            }
        }
    }
    Ok(())
}

/// Decoherence function for a model on `[0, t_max]`.
pub fn trajectory_for(
    model: &SpectralModel,
    t_max: f64,
    step: f64,
    solver: VolterraOptions,
) -> Result<PTrajectory> {
    match model {
        SpectralModel::OhmicClass { .. } => solve_volterra_p_with(model, t_max, step, solver),
        SpectralModel::Lorentzian { .. } => PTrajectory::lorentzian(model, t_max, step),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvolveOutput {
    pub csv: PathBuf,
    pub summary_path: PathBuf,
    pub summary: WitnessSummary,
}

/// Run the dynamics without writing anything.
pub fn run_evolve(cfg: &EvolveConfig) -> Result<(WitnessTrajectory, WitnessSummary)> {
    let traj = trajectory_for(&cfg.model, cfg.t_max, cfg.step, cfg.solver)?;
    let wt = evolve(&cfg.initial, &traj)?;
    let summary = WitnessSummary::new(&wt)?;
    Ok((wt, summary))
}

/// Trajectory CSV at `cfg.out` plus the JSON summary beside it.
pub fn cmd_evolve(cfg: &EvolveConfig) -> Result<EvolveOutput> {
    let (wt, summary) = run_evolve(cfg)?;
    if let Some(dir) = cfg.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(&cfg.out)?);
    write_trajectory_csv(&mut w, &wt)?;
    w.flush()?;
    let summary_path = cfg.summary_path();
    let mut w = BufWriter::new(File::create(&summary_path)?);
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w)?;
    w.flush()?;
    Ok(EvolveOutput { csv: cfg.out.clone(), summary_path, summary })
}
