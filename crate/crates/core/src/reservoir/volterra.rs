//! Product-integration solver for the memory-kernel equation
//!
//! ```text
//! ṗ(t) + iω₀ p(t) + ∫₀ᵗ p(u) f(t − u) du = 0,   p(0) = 1.
//! ```
//!
//! Writing p = e^{−iω₀t} q moves the free rotation into the kernel,
//! q̇ = −∫₀ᵗ q(u) f(t − u) e^{iω₀(t−u)} du, which is what the trapezoidal
//! recurrence integrates. The result is multiplied back by the exact phase,
//! so the returned p is the lab-frame solution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, re, C64};

use super::spectral::{ohmic_kernel_unchecked, uniform_grid, Frame, PTrajectory, SpectralModel};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolterraOptions {
    /// Max-norm change between successive refinements that counts as converged.
    pub tolerance: f64,
    /// Number of step halvings allowed before giving up.
    pub max_refinements: u32,
}

impl Default for VolterraOptions {
    fn default() -> Self {
        Self { tolerance: 1e-6, max_refinements: 7 }
    }
}

/// Trapezoidal product integration of `q̇ + iω₀q + ∫₀ᵗ K(t−u) q(u) du = 0`
/// with q(0) = 1 on the grid `0, step, …, t_max`. Second order in `step`.
///
/// This is the raw single-grid scheme; [`solve_volterra_kernel`] adds
/// refinement and extrapolation.
pub fn solve_trapezoid<K>(kernel: K, omega0: f64, t_max: f64, step: f64) -> Result<Vec<C64>>
where
    K: Fn(f64) -> C64,
{
    let n = uniform_grid(t_max, step)?.len() - 1;
    let h = step;
    let (mut kr, mut ki) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
    for j in 0..=n {
        let k = kernel(j as f64 * h);
        kr.push(k.re);
        ki.push(k.im);
    }
    let (mut qr, mut qi) = (vec![0.0; n + 1], vec![0.0; n + 1]);
    qr[0] = 1.0;

    let a = c(0.0, omega0) + c(kr[0], ki[0]) * (0.5 * h);
    let denom = re(1.0) + a * (0.5 * h);
    let mut f_prev = c(0.0, -omega0);
    for m in 1..=n {
        // Σ_{j=1}^{m−1} K_{m−j} q_j
        let (mut sr, mut si) = (0.0, 0.0);
        for (j, (k_r, k_i)) in kr[1..m].iter().rev().zip(ki[1..m].iter().rev()).enumerate() {
            let (q_r, q_i) = (qr[j + 1], qi[j + 1]);
            sr += k_r * q_r - k_i * q_i;
            si += k_r * q_i + k_i * q_r;
        }
        let hist = (c(sr, si) + c(kr[m], ki[m]) * 0.5) * h;
        let prev = c(qr[m - 1], qi[m - 1]);
        let q = (prev + (f_prev - hist) * (0.5 * h)) / denom;
        qr[m] = q.re;
        qi[m] = q.im;
        f_prev = -a * q - hist;
    }
    Ok(qr.into_iter().zip(qi).map(|(r, i)| c(r, i)).collect())
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Converged solution of `ṗ + iω₀p + ∫₀ᵗ p(u) f(t−u) du = 0` sampled on
/// the grid `0, step, …, t_max`.
///
/// The step is halved repeatedly and the levels are combined in a Romberg
/// table: the trapezoidal error expands in even powers of the step, so
/// column `j` removes the `h^{2j}` term with weight `1/(4^j − 1)`. The solve
/// stops once two successive diagonal entries agree to `opts.tolerance` in
/// max norm.
pub fn solve_volterra_kernel<K>(
    kernel: K,
    omega0: f64,
    t_max: f64,
    step: f64,
    opts: VolterraOptions,
) -> Result<(Vec<f64>, Vec<C64>)>
where
    K: Fn(f64) -> C64,
{
    let times = uniform_grid(t_max, step)?;
    let n = times.len() - 1;
    let span = n as f64 * step;
    let rotated = |x: f64| kernel(x) * C64::from_polar(1.0, omega0 * x);

    let mut prev_row = vec![solve_trapezoid(rotated, 0.0, span, step)?];
    let mut change = f64::INFINITY;
    for level in 1..=opts.max_refinements {
        let factor = 1usize << level;
        let fine = solve_trapezoid(rotated, 0.0, span, step / factor as f64)?;
        let mut row: Vec<Vec<C64>> = vec![fine.iter().step_by(factor).copied().collect()];
        debug_assert_eq!(row[0].len(), n + 1);
        let mut weight = 1.0;
        for coarse in &prev_row {
            weight *= 4.0;
            let last = row.last().expect("row starts non-empty");
            let next = last.iter().zip(coarse).map(|(f, co)| f + (f - co) / (weight - 1.0)).collect();
            row.push(next);
        }
        let best = row.last().expect("row starts non-empty");
        change = max_diff(best, prev_row.last().expect("row starts non-empty"));
        if change < opts.tolerance {
            let p = times
                .iter()
                .zip(best)
                .map(|(&t, &q)| if omega0 == 0.0 { q } else { q * C64::from_polar(1.0, -omega0 * t) })
                .collect();
            return Ok((times, p));
        }
        prev_row = row;
    }
    Err(Error::NoConvergence {
        change,
        tolerance: opts.tolerance,
        refinements: opts.max_refinements,
        finest_step: step / (1u64 << opts.max_refinements) as f64,
    })
}

/// Lab-frame decoherence function of an Ohmic-class reservoir (ω₀ = 1).
pub fn solve_volterra_p(model: &SpectralModel, t_max: f64, step: f64) -> Result<PTrajectory> {
    solve_volterra_p_with(model, t_max, step, VolterraOptions::default())
}

pub fn solve_volterra_p_with(
    model: &SpectralModel,
    t_max: f64,
    step: f64,
    opts: VolterraOptions,
) -> Result<PTrajectory> {
    let SpectralModel::OhmicClass { s, eta, omega_c } = *model else {
        return Err(Error::domain("the Volterra solver handles Ohmic-class models"));
    };
    model.validate()?;
    let (times, mut p) = solve_volterra_kernel(
        |x| ohmic_kernel_unchecked(s, eta, omega_c, x),
        1.0,
        t_max,
        step,
        opts,
    )?;
    p[0] = re(1.0);
    PTrajectory::from_samples(times, p, Frame::Lab, Some(*model))
}
