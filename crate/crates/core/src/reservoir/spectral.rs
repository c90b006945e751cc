use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, re, C64};

/// Reservoir spectral density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum SpectralModel {
    /// J(ω) = η ω^s ω_c^{1−s} e^{−ω/ω_c}; frequencies in units of ω₀.
    OhmicClass { s: f64, eta: f64, omega_c: f64 },
    /// J(ω) = γ₀λ² / (2π[(ω − ω₀ + δ)² + λ²]).
    Lorentzian { gamma0: f64, lambda: f64, delta: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// Free evolution e^{−iω₀t} retained in p.
    Lab,
    /// Interaction picture.
    Rotating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeUnit {
    /// Times are ω₀t.
    Omega0,
    /// Times are γ₀t.
    Gamma0,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

impl SpectralModel {
    pub fn ohmic(s: f64, eta: f64, omega_c: f64) -> Result<Self> {
        let m = SpectralModel::OhmicClass { s, eta, omega_c };
        m.validate()?;
        Ok(m)
    }

    pub fn lorentzian(gamma0: f64, lambda: f64, delta: f64) -> Result<Self> {
        let m = SpectralModel::Lorentzian { gamma0, lambda, delta };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SpectralModel::OhmicClass { s, eta, omega_c } => {
                if !(eta > 0.0 && eta.is_finite()) {
                    return Err(Error::domain(format!("eta must be positive, got {eta}")));
                }
                if !(omega_c > 0.0 && omega_c.is_finite()) {
                    return Err(Error::domain(format!("omega_c must be positive, got {omega_c}")));
                }
                let integer = s >= 1.0 && s.fract() == 0.0 && s <= 30.0;
                if !(integer || s == 0.5) {
                    return Err(Error::domain(format!(
                        "closed-form kernel needs s = 1/2 or a positive integer, got {s}"
                    )));
                }
                Ok(())
            }
            SpectralModel::Lorentzian { gamma0, lambda, delta } => {
                if !(gamma0 > 0.0 && gamma0.is_finite()) {
                    return Err(Error::domain(format!("gamma0 must be positive, got {gamma0}")));
                }
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(Error::domain(format!("lambda must be positive, got {lambda}")));
                }
                if !delta.is_finite() {
                    return Err(Error::domain("delta must be finite"));
                }
                Ok(())
            }
        }
    }

    pub fn time_unit(&self) -> TimeUnit {
        match self {
            SpectralModel::OhmicClass { .. } => TimeUnit::Omega0,
            SpectralModel::Lorentzian { .. } => TimeUnit::Gamma0,
        }
    }

    pub fn frame(&self) -> Frame {
        match self {
            SpectralModel::OhmicClass { .. } => Frame::Lab,
            SpectralModel::Lorentzian { .. } => Frame::Rotating,
        }
    }
}

/// Memory kernel f(x) = ∫ J(ω) e^{−iωx} dω of an Ohmic-class reservoir.
pub fn ohmic_kernel(model: &SpectralModel, x: f64) -> Result<C64> {
    let SpectralModel::OhmicClass { s, eta, omega_c } = *model else {
        return Err(Error::domain("ohmic_kernel needs an Ohmic-class model"));
    };
    model.validate()?;
    if x < 0.0 {
        return Err(Error::domain(format!("kernel lag must be non-negative, got {x}")));
    }
    Ok(ohmic_kernel_unchecked(s, eta, omega_c, x))
}

pub(super) fn ohmic_kernel_unchecked(s: f64, eta: f64, omega_c: f64, x: f64) -> C64 {
    let wx = omega_c * x;
    if s == 0.5 {
        let phase = 1.5 * wx.atan();
        let mag = eta * omega_c * omega_c * std::f64::consts::PI.sqrt()
            / (2.0 * (1.0 + wx * wx).powf(0.75));
        C64::from_polar(mag, -phase)
    } else {
        let n = s as u32;
        re(eta * factorial(n) * omega_c * omega_c) / c(1.0, wx).powi(n as i32 + 1)
    }
}

/// Closed-form decoherence function of the Lorentzian reservoir.
pub fn lorentzian_p(model: &SpectralModel, t: f64) -> Result<C64> {
    let SpectralModel::Lorentzian { gamma0, lambda, delta } = *model else {
        return Err(Error::domain("lorentzian_p needs a Lorentzian model"));
    };
    model.validate()?;
    if t < 0.0 {
        return Err(Error::domain(format!("time must be non-negative, got {t}")));
    }
    Ok(lorentzian_p_unchecked(gamma0, lambda, delta, t))
}

pub(super) fn lorentzian_p_unchecked(gamma0: f64, lambda: f64, delta: f64, t: f64) -> C64 {
    let a = c(lambda, -delta);
    let d = (a * a - re(2.0 * gamma0 * lambda)).sqrt();
    let z = d * (0.5 * t);
    if z.norm() <= 1.0 {
        // cosh z + (a t/2) sinh(z)/z is even in d, so the branch does not matter
        let sinhc = if z.norm() < 1e-3 {
            let z2 = z * z;
            re(1.0) + z2 / 6.0 + z2 * z2 / 120.0
        } else {
            z.sinh() / z
        };
        (-a * (0.5 * t)).exp() * (z.cosh() + a * (0.5 * t) * sinhc)
    } else {
        // expanded exponentials avoid overflow of cosh/sinh at large t
        let ratio = a / d;
        ((re(1.0) + ratio) * ((d - a) * (0.5 * t)).exp()
            + (re(1.0) - ratio) * ((-d - a) * (0.5 * t)).exp())
            * 0.5
    }
}

/// Time grid with decoherence-function samples, p(0) = 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PTrajectory {
    pub times: Vec<f64>,
    pub p: Vec<C64>,
    pub frame: Frame,
    pub step: f64,
    /// `None` for trajectories from user-supplied kernels.
    pub model: Option<SpectralModel>,
}

const MODULUS_TOL: f64 = 1e-6;

impl PTrajectory {
    pub fn from_samples(
        times: Vec<f64>,
        p: Vec<C64>,
        frame: Frame,
        model: Option<SpectralModel>,
    ) -> Result<Self> {
        if times.len() != p.len() || times.len() < 2 {
            return Err(Error::domain("trajectory needs matching times and samples (≥ 2)"));
        }
        if times[0] != 0.0 || p[0] != re(1.0) {
            return Err(Error::domain("trajectory must start at t = 0 with p = 1"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("trajectory times must be strictly ascending"));
        }
        if let Some(bad) = p.iter().find(|z| z.norm() > 1.0 + MODULUS_TOL || !z.is_finite()) {
            return Err(Error::domain(format!("|p| = {} exceeds 1", bad.norm())));
        }
        let step = times[1] - times[0];
        Ok(Self { times, p, frame, step, model })
    }

    /// Analytic Lorentzian trajectory on a uniform grid.
    pub fn lorentzian(model: &SpectralModel, t_max: f64, step: f64) -> Result<Self> {
        let SpectralModel::Lorentzian { gamma0, lambda, delta } = *model else {
            return Err(Error::domain("expected a Lorentzian model"));
        };
        model.validate()?;
        let times = uniform_grid(t_max, step)?;
        let p = times.iter().map(|&t| lorentzian_p_unchecked(gamma0, lambda, delta, t)).collect();
        Self::from_samples(times, p, Frame::Rotating, Some(*model))
    }

    pub fn time_unit(&self) -> TimeUnit {
        self.model.map_or(TimeUnit::Omega0, |m| m.time_unit())
    }

    pub fn t_max(&self) -> f64 {
        *self.times.last().expect("non-empty")
    }

    /// p at an arbitrary time in range: exact for the Lorentzian model,
    /// otherwise cubic interpolation of the slowly varying envelope
    /// p·e^{iω₀t} (lab frame, ω₀ = 1) or of p itself (rotating frame).
    pub fn p_at(&self, t: f64) -> C64 {
        if let Some(SpectralModel::Lorentzian { gamma0, lambda, delta }) = self.model {
            return lorentzian_p_unchecked(gamma0, lambda, delta, t);
        }
        let n = self.times.len();
        let t = t.clamp(0.0, self.t_max());
        let pos = self.times.partition_point(|&x| x <= t).saturating_sub(1).min(n - 2);
        let lo = pos.saturating_sub(1).min(n.saturating_sub(4));
        let idx: Vec<usize> = (lo..(lo + 4).min(n)).collect();
        let envelope = |j: usize| match self.frame {
            Frame::Lab => self.p[j] * C64::from_polar(1.0, self.times[j]),
            Frame::Rotating => self.p[j],
        };
        let mut acc = re(0.0);
        for &j in &idx {
            let mut w = 1.0;
            for &k in &idx {
                if k != j {
                    w *= (t - self.times[k]) / (self.times[j] - self.times[k]);
                }
            }
            acc += envelope(j) * w;
        }
        match self.frame {
            Frame::Lab => acc * C64::from_polar(1.0, -t),
            Frame::Rotating => acc,
        }
    }
}

pub(crate) fn uniform_grid(t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::domain(format!("step must be positive, got {step}")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::domain(format!("t_max must be positive, got {t_max}")));
    }
    let n = (t_max / step).round() as usize;
    if n < 1 {
        return Err(Error::domain("t_max shorter than one step"));
    }
    Ok((0..=n).map(|i| i as f64 * step).collect())
}
