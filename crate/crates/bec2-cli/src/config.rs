//! Run configuration: the JSON schema and helpers shared by the flag
//! parser. Unknown JSON keys are rejected.

use crate::CliError;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Ground,
    Dynamics,
    Entanglement,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
    #[default]
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Physical,
    Paper,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactCfg {
    pub a1: f64,
    pub a2: f64,
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
    pub two_j: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalCfg {
    #[serde(default)]
    pub a0: f64,
    #[serde(default)]
    pub delta_omega: f64,
    #[serde(default)]
    pub lam: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default)]
    pub u_cross: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default)]
    pub lambda2: f64,
    pub two_j: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamsCfg {
    Exact(ExactCfg),
    Canonical(CanonicalCfg),
}

impl ParamsCfg {
    pub fn two_j(&self) -> u32 {
        match self {
            ParamsCfg::Exact(x) => x.two_j,
            ParamsCfg::Canonical(c) => c.two_j,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_max: f64,
    pub n_steps: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InitState {
    /// Sector basis state with projection `two_k`. Exact route: a delta
    /// coefficient row over the eigenbasis; numeric route: the
    /// corresponding basis vector.
    Dicke { two_k: i64 },
    /// Rotated-Dicke row of angle `theta0` seeded at `two_k`. Exact route:
    /// real coefficient row over the eigenbasis; numeric route: the same
    /// amplitudes over the number basis.
    Rotated { theta0: f64, two_k: i64 },
    /// Complex amplitudes from a CSV file (`re,im` per line, ascending k).
    File { path: String },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaGrid {
    pub start: f64,
    pub end: f64,
    pub n: usize,
}

impl ThetaGrid {
    pub fn values(&self) -> Vec<f64> {
        if self.n <= 1 {
            return vec![self.start];
        }
        (0..self.n)
            .map(|i| self.start + (self.end - self.start) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum K0Grid {
    /// "all" (every projection of the sector) or "edge" (k0 = +j).
    Keyword(String),
    List(Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrids {
    pub theta: Option<ThetaGrid>,
    pub two_k0: Option<K0Grid>,
    pub two_j: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub params: Option<ParamsCfg>,
    /// Ground experiment: plot the solvable eigenstate seeded at this
    /// projection instead of the energy minimizer.
    #[serde(default)]
    pub two_k0: Option<i64>,
    #[serde(default)]
    pub time: Option<TimeGrid>,
    #[serde(default)]
    pub init: Option<InitState>,
    #[serde(default)]
    pub sweep: Option<SweepGrids>,
    #[serde(default = "default_out")]
    pub out: String,
    #[serde(default)]
    pub emit_svg: bool,
    #[serde(default)]
    pub units: Units,
    /// Verification negative control: additive defect on the μ coupling.
    #[serde(default)]
    pub perturb_mu: Option<f64>,
}

fn default_out() -> String {
    "out".to_string()
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::InvalidConfig(format!("{}: {e}", path.display())))
}

/// Twice a possibly half-integer label given in ordinary units.
pub fn two_units(label: &str, value: f64) -> Result<i64, CliError> {
    let doubled = 2.0 * value;
    let rounded = doubled.round();
    if (doubled - rounded).abs() > 1e-9 || !rounded.is_finite() {
        return Err(CliError::InvalidConfig(format!(
            "{label} = {value} is neither integer nor half-integer"
        )));
    }
    Ok(rounded as i64)
}

pub fn parse_list_f64(label: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::InvalidConfig(format!("{label}: bad number {s:?}")))
        })
        .collect()
}

/// "START:END:N" grid specification.
pub fn parse_theta_grid(text: &str) -> Result<ThetaGrid, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::InvalidConfig(format!(
            "theta grid {text:?} is not START:END:N"
        )));
    }
    let start = parts[0]
        .parse::<f64>()
        .map_err(|_| CliError::InvalidConfig(format!("theta grid start {:?}", parts[0])))?;
    let end = parts[1]
        .parse::<f64>()
        .map_err(|_| CliError::InvalidConfig(format!("theta grid end {:?}", parts[1])))?;
    let n = parts[2]
        .parse::<usize>()
        .map_err(|_| CliError::InvalidConfig(format!("theta grid count {:?}", parts[2])))?;
    if n == 0 {
        return Err(CliError::InvalidConfig("theta grid has zero points".into()));
    }
    Ok(ThetaGrid { start, end, n })
}

/// "dicke:K", "rotated:THETA0,K" or "file:PATH".
pub fn parse_init(text: &str) -> Result<InitState, CliError> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| CliError::InvalidConfig(format!("init {text:?} has no kind prefix")))?;
    match kind {
        "dicke" => {
            let k = rest
                .parse::<f64>()
                .map_err(|_| CliError::InvalidConfig(format!("init projection {rest:?}")))?;
            Ok(InitState::Dicke { two_k: two_units("init k", k)? })
        }
        "rotated" => {
            let (theta0, k) = rest.split_once(',').ok_or_else(|| {
                CliError::InvalidConfig(format!("init {text:?} is not rotated:THETA0,K"))
            })?;
            let theta0 = theta0
                .parse::<f64>()
                .map_err(|_| CliError::InvalidConfig(format!("init angle {theta0:?}")))?;
            let k = k
                .parse::<f64>()
                .map_err(|_| CliError::InvalidConfig(format!("init projection {k:?}")))?;
            Ok(InitState::Rotated { theta0, two_k: two_units("init k", k)? })
        }
        "file" => Ok(InitState::File { path: rest.to_string() }),
        other => Err(CliError::InvalidConfig(format!("unknown init kind {other:?}"))),
    }
}
