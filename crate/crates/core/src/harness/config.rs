//! Run configurations and their layered resolution.
//!
//! Settings come from up to three layers: built-in defaults, an optional
//! flat `key = value` file, and command-line flags. Later layers win. Keys
//! are the long flag names; `_` and `-` are interchangeable.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reservoir::{SpectralModel, VolterraOptions};
use crate::state::{CanonicalBloch, EwlFamily, EwlSpec};
use crate::uncertainty::Estimator;

/// Parse a flat `key = value` file. `#` starts a comment.
pub fn parse_flat(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::domain(format!("config line {}: expected key = value", n + 1)))?;
        let key = normalize_key(k);
        if key.is_empty() {
            return Err(Error::domain(format!("config line {}: empty key", n + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn normalize_key(k: &str) -> String {
    k.trim().to_ascii_lowercase().replace('_', "-")
}

/// Stack of key/value layers, lowest precedence first.
#[derive(Clone, Debug, Default)]
pub struct Layers {
    layers: Vec<BTreeMap<String, String>>,
}

impl Layers {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, layer: BTreeMap<String, String>) -> &mut Self {
        let normalized = layer.into_iter().map(|(k, v)| (normalize_key(&k), v)).collect();
        self.layers.push(normalized);
        self
    }

    pub fn push_file(&mut self, path: &Path) -> Result<&mut Self> {
        let text = std::fs::read_to_string(path)?;
        let layer = parse_flat(&text)?;
        Ok(self.push(layer))
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        let key = normalize_key(key);
        self.layers.iter().rev().find_map(|l| l.get(&key)).map(String::as_str)
    }

    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| Error::domain(format!("invalid value {v:?} for {key}: {e}"))),
        }
    }

    pub fn get_or<T>(&self, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn vector(&self, key: &str) -> Result<Option<[f64; 3]>> {
        self.raw(key).map(parse_vector).transpose()
    }

    /// Reject keys that no layer consumer recognises.
    fn check_known(&self, known: &[&str]) -> Result<()> {
        for layer in &self.layers {
            if let Some(k) = layer.keys().find(|k| !known.contains(&k.as_str())) {
                return Err(Error::domain(format!("unknown setting {k:?}")));
            }
        }
        Ok(())
    }
}

/// `"x,y,z"` with optional surrounding brackets.
pub fn parse_vector(s: &str) -> Result<[f64; 3]> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::domain(format!("expected three components, got {s:?}")));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| Error::domain(format!("invalid number {p:?} in {s:?}")))?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::domain(format!("unknown format {s:?} (csv or json)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

/// Source of the state for `state`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateInput {
    /// JSON text of the `{re, im}` density-matrix form.
    Json { text: String },
    Canonical(CanonicalBloch),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateConfig {
    pub input: StateInput,
}

impl StateConfig {
    pub const KEYS: &'static [&'static str] = &["json", "r", "s", "v"];

    pub fn resolve(layers: &Layers) -> Result<Self> {
        layers.check_known(Self::KEYS)?;
        if let Some(src) = layers.raw("json") {
            let text = if src == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else if src.trim_start().starts_with('{') {
                src.to_string()
            } else {
                std::fs::read_to_string(src)?
            };
            return Ok(Self { input: StateInput::Json { text } });
        }
        let v = layers
            .vector("v")?
            .ok_or_else(|| Error::domain("state needs --json or a correlation vector --v"))?;
        let r = layers.vector("r")?.unwrap_or([0.0; 3]);
        let s = layers.vector("s")?.unwrap_or([0.0; 3]);
        Ok(Self { input: StateInput::Canonical(CanonicalBloch { r, s, v }) })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub n: u64,
    pub seed: u64,
}

impl MonteCarloConfig {
    pub const KEYS: &'static [&'static str] = &["r", "s", "n", "seed"];
    pub const DEFAULT_N: u64 = 10_000_000;
    pub const DEFAULT_SEED: u64 = 42;

    pub fn resolve(layers: &Layers) -> Result<Self> {
        layers.check_known(Self::KEYS)?;
        Ok(Self {
            r: layers.vector("r")?.unwrap_or([0.0; 3]),
            s: layers.vector("s")?.unwrap_or([0.0; 3]),
            n: layers.get_or("n", Self::DEFAULT_N)?,
            seed: layers.get_or("seed", Self::DEFAULT_SEED)?,
        })
    }
}

fn resolve_initial(layers: &Layers, default_family: EwlFamily) -> Result<EwlSpec> {
    let base = EwlSpec::maximally_entangled(default_family);
    EwlSpec::new(
        layers.get_or("family", base.family)?,
        layers.get_or("purity", base.purity)?,
        layers.get_or("alpha", base.alpha)?,
        layers.get_or("theta", base.theta)?,
    )
}

/// Estimators selected by name, or `all`.
fn resolve_estimators(layers: &Layers, default: &[Estimator]) -> Result<Vec<Estimator>> {
    match layers.raw("estimator") {
        None => Ok(default.to_vec()),
        Some(v) if v.eq_ignore_ascii_case("all") => Ok(Estimator::ALL.to_vec()),
        Some(v) => v.split(',').map(|e| e.trim().parse()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcritConfig {
    pub initial: EwlSpec,
    pub estimators: Vec<Estimator>,
    pub format: OutputFormat,
}

impl PcritConfig {
    pub const KEYS: &'static [&'static str] =
        &["family", "purity", "alpha", "theta", "estimator", "format"];

    pub fn resolve(layers: &Layers) -> Result<Self> {
        layers.check_known(Self::KEYS)?;
        Ok(Self {
            initial: resolve_initial(layers, EwlFamily::Psi)?,
            estimators: resolve_estimators(layers, &[Estimator::Te])?,
            format: layers.get_or("format", OutputFormat::Csv)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub model: SpectralModel,
    pub initial: EwlSpec,
    pub t_max: f64,
    pub step: f64,
    /// Convergence control for Ohmic-class solves.
    pub solver: VolterraOptions,
    /// Trajectory CSV; the summary goes next to it with a `.json` extension.
    pub out: PathBuf,
}

impl EvolveConfig {
    pub const KEYS: &'static [&'static str] = &[
        "model", "s", "eta", "omega-c", "gamma0", "lambda", "delta", "family", "purity", "alpha",
        "theta", "t-max", "step", "tolerance", "max-refinements", "out",
    ];
    pub const OHMIC_STEP: f64 = 0.005;
    pub const OHMIC_LONG_STEP: f64 = 0.05;
    /// Runs longer than this use [`Self::OHMIC_LONG_STEP`].
    pub const OHMIC_LONG_RUN: f64 = 100.0;
    pub const LORENTZIAN_STEP: f64 = 0.002;
    pub const DEFAULT_T_MAX: f64 = 20.0;

    pub fn resolve(layers: &Layers) -> Result<Self> {
        layers.check_known(Self::KEYS)?;
        let kind = layers.raw("model").unwrap_or("ohmic").to_ascii_lowercase();
        let model = match kind.as_str() {
            "ohmic" => SpectralModel::ohmic(
                layers.get_or("s", 1.0)?,
                layers.get_or("eta", 0.01)?,
                layers.get_or("omega-c", 2.0)?,
            )?,
            "lorentzian" => SpectralModel::lorentzian(
                layers.get_or("gamma0", 1.0)?,
                layers.get_or("lambda", 0.1)?,
                layers.get_or("delta", 0.0)?,
            )?,
            other => return Err(Error::domain(format!("unknown model {other:?} (ohmic or lorentzian)"))),
        };
        let t_max = layers.get_or("t-max", Self::DEFAULT_T_MAX)?;
        let step = match layers.get("step")? {
            Some(h) => h,
            None => Self::default_step(&model, t_max),
        };
        Ok(Self {
            model,
            initial: resolve_initial(layers, EwlFamily::Psi)?,
            t_max,
            step,
            solver: VolterraOptions {
                tolerance: layers.get_or("tolerance", VolterraOptions::default().tolerance)?,
                max_refinements: layers
                    .get_or("max-refinements", VolterraOptions::default().max_refinements)?,
            },
            out: layers.get_or("out", PathBuf::from("trajectory.csv"))?,
        })
    }

    pub fn default_step(model: &SpectralModel, t_max: f64) -> f64 {
        match model {
            SpectralModel::Lorentzian { .. } => Self::LORENTZIAN_STEP,
            SpectralModel::OhmicClass { .. } if t_max > Self::OHMIC_LONG_RUN => Self::OHMIC_LONG_STEP,
            SpectralModel::OhmicClass { .. } => Self::OHMIC_STEP,
        }
    }

    pub fn summary_path(&self) -> PathBuf {
        self.out.with_extension("json")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn flat_file_parsing() {
        let m = parse_flat("# comment\nomega_c = 6\n\n  t-max=200 # trailing\n").unwrap();
        assert_eq!(m["omega-c"], "6");
        assert_eq!(m["t-max"], "200");
        assert!(parse_flat("no equals sign").is_err());
    }

    #[test]
    fn later_layers_win() {
        let mut l = Layers::new();
        l.push(layer(&[("seed", "1"), ("n", "20000")]));
        l.push(layer(&[("seed", "9")]));
        let cfg = MonteCarloConfig::resolve(&l).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.n, 20000);
        assert_eq!(cfg.r, [0.0; 3]);
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut l = Layers::new();
        l.push(layer(&[("sede", "1")]));
        assert!(MonteCarloConfig::resolve(&l).is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("[0.1, 0.1,0.25]").unwrap(), [0.1, 0.1, 0.25]);
        assert!(parse_vector("1,2").is_err());
    }

    #[test]
    fn evolve_default_steps() {
        let mut l = Layers::new();
        l.push(layer(&[("model", "ohmic"), ("s", "3"), ("omega_c", "6"), ("t_max", "220")]));
        assert_eq!(EvolveConfig::resolve(&l).unwrap().step, EvolveConfig::OHMIC_LONG_STEP);
        let mut l = Layers::new();
        l.push(layer(&[("model", "lorentzian"), ("delta", "0.8"), ("family", "phi")]));
        let cfg = EvolveConfig::resolve(&l).unwrap();
        assert_eq!(cfg.step, EvolveConfig::LORENTZIAN_STEP);
        assert_eq!(cfg.initial.family, EwlFamily::Phi);
    }

    #[test]
    fn estimator_lists() {
        let mut l = Layers::new();
        l.push(layer(&[("estimator", "all")]));
        assert_eq!(PcritConfig::resolve(&l).unwrap().estimators.len(), 4);
        let mut l = Layers::new();
        l.push(layer(&[("estimator", "te,fe")]));
        assert_eq!(
            PcritConfig::resolve(&l).unwrap().estimators,
            vec![Estimator::Te, Estimator::Fe]
        );
    }
}
