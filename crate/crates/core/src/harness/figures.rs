//! Parameter presets that regenerate the data behind each figure panel.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{region_mesh, write_mesh_csv};
use crate::linalg::{c, re};
use crate::reservoir::{
    apply_channel, evolve, write_trajectory_csv, SpectralModel, VolterraOptions, WitnessSummary,
};
use crate::state::{EwlFamily, EwlSpec};
use crate::uncertainty::witness_report;

use super::commands::trajectory_for;
use super::config::EvolveConfig;

pub const MESH_RESOLUTION: usize = 21;
pub const P_SWEEP_POINTS: usize = 1001;
pub const P_GRID_POINTS: usize = 101;

/// What a figure panel is computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FigureRecipe {
    /// Labelled grid of correlation vectors.
    RegionMesh { r: [f64; 3], s: [f64; 3], resolution: usize },
    /// Real p from 0 to 1.
    PSweep { initial: EwlSpec, points: usize },
    /// Complex p on a square grid, |p| ≤ 1 only.
    PGrid { initial: EwlSpec, points: usize },
    /// Full witness trajectory.
    Trajectory { initial: EwlSpec, model: SpectralModel, t_max: f64, step: f64 },
    /// TE and concurrence only, with the witnessed flag.
    TeVsConcurrence { initial: EwlSpec, model: SpectralModel, t_max: f64, step: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FigureId {
    #[serde(rename = "1b")]
    F1b,
    #[serde(rename = "1c")]
    F1c,
    #[serde(rename = "1d")]
    F1d,
    #[serde(rename = "2a")]
    F2a,
    #[serde(rename = "2b")]
    F2b,
    #[serde(rename = "3")]
    F3,
    #[serde(rename = "4a")]
    F4a,
    #[serde(rename = "4b")]
    F4b,
    #[serde(rename = "4c")]
    F4c,
    #[serde(rename = "4d")]
    F4d,
    #[serde(rename = "4e")]
    F4e,
    #[serde(rename = "4f")]
    F4f,
    #[serde(rename = "5a")]
    F5a,
    #[serde(rename = "5b")]
    F5b,
    #[serde(rename = "5c")]
    F5c,
    #[serde(rename = "5d")]
    F5d,
    #[serde(rename = "6a")]
    F6a,
    #[serde(rename = "6b")]
    F6b,
}

impl FigureId {
    pub const ALL: [FigureId; 18] = [
        Self::F1b,
        Self::F1c,
        Self::F1d,
        Self::F2a,
        Self::F2b,
        Self::F3,
        Self::F4a,
        Self::F4b,
        Self::F4c,
        Self::F4d,
        Self::F4e,
        Self::F4f,
        Self::F5a,
        Self::F5b,
        Self::F5c,
        Self::F5d,
        Self::F6a,
        Self::F6b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::F1b => "1b",
            Self::F1c => "1c",
            Self::F1d => "1d",
            Self::F2a => "2a",
            Self::F2b => "2b",
            Self::F3 => "3",
            Self::F4a => "4a",
            Self::F4b => "4b",
            Self::F4c => "4c",
            Self::F4d => "4d",
            Self::F4e => "4e",
            Self::F4f => "4f",
            Self::F5a => "5a",
            Self::F5b => "5b",
            Self::F5c => "5c",
            Self::F5d => "5d",
            Self::F6a => "6a",
            Self::F6b => "6b",
        }
    }

    pub fn recipe(self) -> FigureRecipe {
        use EwlFamily::{Phi, Psi};
        let bell = EwlSpec::maximally_entangled;
        let ohmic = |s: f64, family| {
            let model = SpectralModel::OhmicClass { s, eta: 0.01, omega_c: 2.0 };
            let t_max = if s > 2.0 { 60.0 } else { 20.0 };
            FigureRecipe::Trajectory {
                initial: bell(family),
                model,
                t_max,
                step: EvolveConfig::default_step(&model, t_max),
            }
        };
        let lorentz = |delta: f64| SpectralModel::Lorentzian { gamma0: 1.0, lambda: 0.1, delta };
        let lorentz_traj = |delta, family| FigureRecipe::Trajectory {
            initial: bell(family),
            model: lorentz(delta),
            t_max: 20.0,
            step: EvolveConfig::LORENTZIAN_STEP,
        };
        let mesh = |r, s| FigureRecipe::RegionMesh { r, s, resolution: MESH_RESOLUTION };
        match self {
            Self::F1b => mesh([0.0; 3], [0.0; 3]),
            Self::F1c => mesh([0.0, 0.0, 0.25], [0.0, 0.0, 0.25]),
            Self::F1d => mesh([0.1, 0.1, 0.25], [0.1, 0.1, 0.25]),
            Self::F2a => FigureRecipe::PSweep { initial: bell(Psi), points: P_SWEEP_POINTS },
            Self::F2b => FigureRecipe::PSweep { initial: bell(Phi), points: P_SWEEP_POINTS },
            Self::F3 => FigureRecipe::PGrid { initial: bell(Psi), points: P_GRID_POINTS },
            Self::F4a => ohmic(0.5, Psi),
            Self::F4b => ohmic(0.5, Phi),
            Self::F4c => ohmic(1.0, Psi),
            Self::F4d => ohmic(1.0, Phi),
            Self::F4e => ohmic(3.0, Psi),
            Self::F4f => ohmic(3.0, Phi),
            Self::F5a => lorentz_traj(0.0, Psi),
            Self::F5b => lorentz_traj(0.0, Phi),
            Self::F5c => lorentz_traj(0.8, Psi),
            Self::F5d => lorentz_traj(0.8, Phi),
            Self::F6a | Self::F6b => {
                let family = if self == Self::F6a { Psi } else { Phi };
                FigureRecipe::TeVsConcurrence {
                    initial: bell(family),
                    model: lorentz(0.8),
                    t_max: 20.0,
                    step: EvolveConfig::LORENTZIAN_STEP,
                }
            }
        }
    }

    pub fn file_name(self) -> String {
        format!("fig{}.csv", self.as_str())
    }

    pub fn manifest_name(self) -> String {
        format!("fig{}.manifest.json", self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches("fig").to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == key)
            .ok_or_else(|| Error::domain(format!("unknown figure id {s:?}")))
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters and outputs of one generated panel.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FigureManifest {
    pub id: FigureId,
    pub csv: String,
    pub columns: String,
    pub recipe: FigureRecipe,
    /// Witness intervals for trajectory panels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<WitnessSummary>,
}

fn grid_value(i: usize, points: usize, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * i as f64 / (points - 1) as f64
}

fn write_recipe<W: Write>(w: &mut W, recipe: &FigureRecipe) -> Result<(String, Option<WitnessSummary>)> {
    match recipe {
        FigureRecipe::RegionMesh { r, s, resolution } => {
            write_mesh_csv(&mut *w, &region_mesh(*r, *s, *resolution)?)?;
            Ok(("v1,v2,v3,label".into(), None))
        }
        FigureRecipe::PSweep { initial, points } => {
            let header = "p,te,me,fe,bb,concurrence";
            writeln!(w, "{header}")?;
            let rho0 = initial.state()?;
            for i in 0..*points {
                let p = grid_value(i, *points, 0.0, 1.0);
                let r = witness_report(&apply_channel(&rho0, re(p))?)?;
                writeln!(w, "{p},{},{},{},{},{}", r.te, r.me, r.fe, r.bb, r.concurrence)?;
            }
            Ok((header.into(), None))
        }
        FigureRecipe::PGrid { initial, points } => {
            let header = "re_p,im_p,abs_p,me,fe";
            writeln!(w, "{header}")?;
            let rho0 = initial.state()?;
            for i in 0..*points {
                for j in 0..*points {
                    let p = c(grid_value(i, *points, -1.0, 1.0), grid_value(j, *points, -1.0, 1.0));
                    if p.norm() > 1.0 {
                        continue;
                    }
                    let r = witness_report(&apply_channel(&rho0, p)?)?;
                    writeln!(w, "{},{},{},{},{}", p.re, p.im, p.norm(), r.me, r.fe)?;
                }
            }
            Ok((header.into(), None))
        }
        FigureRecipe::Trajectory { initial, model, t_max, step } => {
            let wt = evolve(initial, &trajectory_for(model, *t_max, *step, VolterraOptions::default())?)?;
            write_trajectory_csv(&mut *w, &wt)?;
            Ok((crate::reservoir::TRAJECTORY_CSV_HEADER.into(), Some(WitnessSummary::new(&wt)?)))
        }
        FigureRecipe::TeVsConcurrence { initial, model, t_max, step } => {
            let header = "t,te,concurrence,te_witnessed";
            let wt = evolve(initial, &trajectory_for(model, *t_max, *step, VolterraOptions::default())?)?;
            writeln!(w, "{header}")?;
            for (t, r) in wt.times().iter().zip(&wt.reports) {
                writeln!(w, "{t},{},{},{}", r.te, r.concurrence, u8::from(r.witnessed.te))?;
            }
            Ok((header.into(), Some(WitnessSummary::new(&wt)?)))
        }
    }
}

/// Write `fig<id>.csv` and `fig<id>.manifest.json` into `outdir`.
pub fn cmd_figure(id: FigureId, outdir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(outdir)?;
    let recipe = id.recipe();
    let csv_path = outdir.join(id.file_name());
    let mut w = BufWriter::new(File::create(&csv_path)?);
    let (columns, summary) = write_recipe(&mut w, &recipe)?;
    w.flush()?;
    let manifest = FigureManifest { id, csv: id.file_name(), columns, recipe, summary };
    let manifest_path = outdir.join(id.manifest_name());
    let mut w = BufWriter::new(File::create(&manifest_path)?);
    serde_json::to_writer_pretty(&mut w, &manifest)?;
    writeln!(w)?;
    w.flush()?;
    Ok(vec![csv_path, manifest_path])
}

/// Accepts a single id or `all`.
pub fn cmd_figures(ids: &str, outdir: &Path) -> Result<Vec<PathBuf>> {
    let ids: Vec<FigureId> = if ids.eq_ignore_ascii_case("all") {
        FigureId::ALL.to_vec()
    } else {
        ids.split(',').map(str::parse).collect::<Result<_>>()?
    };
    let mut out = Vec::new();
    for id in ids {
        out.extend(cmd_figure(id, outdir)?);
    }
    Ok(out)
}
