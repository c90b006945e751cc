use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{re, C64};
use crate::state::{EwlSpec, TwoQubitState};
use crate::uncertainty::{witness_report, Estimator, UncertaintyReport, WITNESS_MARGIN};

use super::channel::apply_channel;
use super::spectral::{Frame, PTrajectory, SpectralModel, TimeUnit};

/// Witness threshold log₂(1/c) for (σ₁, σ₃).
const THRESHOLD: f64 = 1.0;
const TIME_TOL: f64 = 1e-9;
const P_TOL: f64 = 1e-12;
const P_SCAN: usize = 2000;

/// Per-time uncertainty reports along a decoherence trajectory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessTrajectory {
    pub initial: EwlSpec,
    pub trajectory: PTrajectory,
    pub reports: Vec<UncertaintyReport>,
}

impl WitnessTrajectory {
    pub fn times(&self) -> &[f64] {
        &self.trajectory.times
    }

    fn initial_state(&self) -> Result<TwoQubitState> {
        self.initial.state()
    }
}

/// Apply the channel at every sample of `traj` and report the witnesses.
pub fn evolve(initial: &EwlSpec, traj: &PTrajectory) -> Result<WitnessTrajectory> {
    let rho0 = initial.state()?;
    let reports = traj
        .p
        .par_iter()
        .map(|&p| witness_report(&apply_channel(&rho0, p)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessTrajectory { initial: *initial, trajectory: traj.clone(), reports })
}

/// Signed distance below the witness threshold; negative means witnessed.
fn witness_gap(rho0: &TwoQubitState, p: C64, est: Estimator) -> Result<f64> {
    Ok(est.evaluate(&apply_channel(rho0, p)?)? - (THRESHOLD - WITNESS_MARGIN))
}

/// Root of `g` in [lo, hi] where g(lo) and g(hi) differ in sign. One
/// secant step from the endpoint values, then bisection.
fn refine_root<G>(mut lo: f64, mut hi: f64, mut g_lo: f64, g_hi: f64, tol: f64, g: G) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let lo_sign = g_lo < 0.0;
    let secant = lo + (hi - lo) * g_lo / (g_lo - g_hi);
    if secant > lo && secant < hi {
        let gs = g(secant)?;
        if (gs < 0.0) == lo_sign {
            lo = secant;
            g_lo = gs;
        } else {
            hi = secant;
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if (gm < 0.0) == lo_sign {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
        }
    }
    let _ = g_lo;
    Ok(0.5 * (lo + hi))
}

/// A maximal time interval on which an estimator stays below the threshold,
/// with the concurrence range attained on it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessInterval {
    pub t_start: f64,
    pub t_end: f64,
    pub c_min: f64,
    pub c_max: f64,
    /// The trajectory ends while still witnessed.
    pub open_end: bool,
}

/// Contiguous witnessed time intervals, with crossings refined between grid
/// points by re-evaluating the estimator on the interpolated p.
pub fn witness_intervals(traj: &WitnessTrajectory, est: Estimator) -> Result<Vec<WitnessInterval>> {
    let rho0 = traj.initial_state()?;
    let times = traj.times();
    let gaps: Vec<f64> =
        traj.reports.iter().map(|r| est.of(r) - (THRESHOLD - WITNESS_MARGIN)).collect();
    let conc_at = |t: f64| -> Result<f64> {
        Ok(apply_channel(&rho0, traj.trajectory.p_at(t))?.concurrence())
    };
    let crossing = |i: usize| -> Result<f64> {
        // between grid points i and i + 1
        refine_root(times[i], times[i + 1], gaps[i], gaps[i + 1], TIME_TOL, |t| {
            witness_gap(&rho0, traj.trajectory.p_at(t), est)
        })
    };

    let mut out = Vec::new();
    let n = times.len();
    let mut i = 0;
    while i < n {
        if gaps[i] >= 0.0 {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < n && gaps[j + 1] < 0.0 {
            j += 1;
        }
        let mut c_min = f64::INFINITY;
        let mut c_max = f64::NEG_INFINITY;
        for r in &traj.reports[i..=j] {
            c_min = c_min.min(r.concurrence);
            c_max = c_max.max(r.concurrence);
        }
        let t_start = if i == 0 { times[0] } else { crossing(i - 1)? };
        let open_end = j + 1 == n;
        let t_end = if open_end { times[j] } else { crossing(j)? };
        for t in [t_start, t_end] {
            let cc = conc_at(t)?;
            c_min = c_min.min(cc);
            c_max = c_max.max(cc);
        }
        out.push(WitnessInterval { t_start, t_end, c_min, c_max, open_end });
        i = j + 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CriticalTime {
    /// Last time the estimator rises back above the threshold.
    At { time: f64 },
    NeverWitnessed,
    /// Still witnessed at the end of the trajectory.
    WitnessedThroughEnd,
}

impl CriticalTime {
    pub fn time(&self) -> Option<f64> {
        match self {
            CriticalTime::At { time } => Some(*time),
            _ => None,
        }
    }
}

/// Time after which the estimator no longer witnesses entanglement.
pub fn critical_time(traj: &WitnessTrajectory, est: Estimator) -> Result<CriticalTime> {
    let intervals = witness_intervals(traj, est)?;
    Ok(match intervals.last() {
        None => CriticalTime::NeverWitnessed,
        Some(last) if last.open_end => CriticalTime::WitnessedThroughEnd,
        Some(last) => CriticalTime::At { time: last.t_end },
    })
}

/// Result of the real-p sweep for one estimator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PCrossing {
    /// Witnessed for p ∈ (p_c, 1]; the concurrence runs over the region.
    Crossing { p_c: f64, concurrence_region: [f64; 2] },
    AlwaysWitnessed { concurrence_region: [f64; 2] },
    NeverWitnessed,
}

impl PCrossing {
    pub fn p_c(&self) -> Option<f64> {
        match self {
            PCrossing::Crossing { p_c, .. } => Some(*p_c),
            _ => None,
        }
    }

    pub fn region(&self) -> Option<[f64; 2]> {
        match self {
            PCrossing::Crossing { concurrence_region, .. }
            | PCrossing::AlwaysWitnessed { concurrence_region } => Some(*concurrence_region),
            PCrossing::NeverWitnessed => None,
        }
    }
}

/// Critical |p| for real p: the lower end of the witnessed interval that
/// contains p = 1, found by a downward scan and bisection.
pub fn critical_p(initial: &EwlSpec, est: Estimator) -> Result<PCrossing> {
    let rho0 = initial.state()?;
    let gap = |p: f64| witness_gap(&rho0, re(p), est);
    let conc = |p: f64| -> Result<f64> { Ok(apply_channel(&rho0, re(p))?.concurrence()) };
    let g_top = gap(1.0)?;
    if g_top >= 0.0 {
        return Ok(PCrossing::NeverWitnessed);
    }
    let c_top = conc(1.0)?;
    let mut prev = (1.0, g_top);
    for k in 1..=P_SCAN {
        let p = 1.0 - k as f64 / P_SCAN as f64;
        let g = gap(p)?;
        if g >= 0.0 {
            let p_c = refine_root(p, prev.0, g, prev.1, P_TOL, gap)?;
            return Ok(PCrossing::Crossing { p_c, concurrence_region: [conc(p_c)?, c_top] });
        }
        prev = (p, g);
    }
    Ok(PCrossing::AlwaysWitnessed { concurrence_region: [conc(0.0)?, c_top] })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EstimatorSummary {
    pub intervals: Vec<WitnessInterval>,
    pub critical_time: CriticalTime,
}

/// Sidecar written next to a trajectory CSV.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub initial: EwlSpec,
    pub model: Option<SpectralModel>,
    pub frame: Frame,
    pub time_unit: TimeUnit,
    pub t_max: f64,
    pub step: f64,
    pub estimators: BTreeMap<Estimator, EstimatorSummary>,
}

impl WitnessSummary {
    pub fn new(traj: &WitnessTrajectory) -> Result<Self> {
        let mut estimators = BTreeMap::new();
        for est in Estimator::ALL {
            let intervals = witness_intervals(traj, est)?;
            let critical_time = match intervals.last() {
                None => CriticalTime::NeverWitnessed,
                Some(last) if last.open_end => CriticalTime::WitnessedThroughEnd,
                Some(last) => CriticalTime::At { time: last.t_end },
            };
            estimators.insert(est, EstimatorSummary { intervals, critical_time });
        }
        let t = &traj.trajectory;
        Ok(Self {
            initial: traj.initial,
            model: t.model,
            frame: t.frame,
            time_unit: t.time_unit(),
            t_max: t.t_max(),
            step: t.step,
            estimators,
        })
    }
}

pub const TRAJECTORY_CSV_HEADER: &str = "t,re_p,im_p,abs_p,te,me,fe,bb,concurrence,chsh";

pub fn write_trajectory_csv<W: Write>(mut w: W, traj: &WitnessTrajectory) -> Result<()> {
    if traj.reports.len() != traj.times().len() {
        return Err(Error::domain("trajectory and reports differ in length"));
    }
    writeln!(w, "{TRAJECTORY_CSV_HEADER}")?;
    for ((t, p), r) in traj.times().iter().zip(&traj.trajectory.p).zip(&traj.reports) {
        writeln!(
            w,
            "{t},{},{},{},{},{},{},{},{},{}",
            p.re,
            p.im,
            p.norm(),
            r.te,
            r.me,
            r.fe,
            r.bb,
            r.concurrence,
            r.chsh
        )?;
    }
    Ok(())
}
