//! The drive-and-kick game between a corner defender and the offense.
//!
//! The defender picks how far (1..=21 ft) to sag off the corner shooter
//! towards a driving ball handler; the offense either finishes the drive or
//! kicks the ball out to the corner. Payoffs are expected points for the
//! offense, so the defender is the minimizing row player.

mod calibrate;
mod compare;
mod fictitious;
mod solver;

pub use calibrate::{calibrate, CalibrationGrid, CalibrationResult};
pub use compare::{compare_empirical, is_bimodal, EmpiricalComparison};
pub use fictitious::{fictitious_play, FictitiousPlay};
pub use solver::{best_response_bounds, solve_zero_sum, DUALITY_TOLERANCE};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shotmodel::{ContestCurve, ShotModelError};

/// Defender distances from the corner shooter, in feet.
pub const DISTANCES: std::ops::RangeInclusive<u32> = 1..=21;
pub const N_DISTANCES: usize = 21;
/// Shooter-to-driver distance the helper distance is measured against.
pub const HELP_SPAN_FT: f64 = 22.0;
pub const OFFENSE_ACTIONS: [&str; 2] = ["Drive", "Pass"];
/// Mass below this is treated as outside the support.
pub const SUPPORT_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid game config: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("no observed distances")]
    EmptyInput,
    #[error(transparent)]
    Curve(#[from] ShotModelError),
}

/// How the helper's proximity to the driver attenuates the drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attenuation {
    /// drive value times `1 - alpha^-(22 - d)`.
    #[default]
    Multiplicative,
    /// drive value times `alpha^-(22 - d)`, i.e. the factor is the fraction removed.
    Subtractive,
}

/// On-disk form of the game parameters; the contest curve is referenced by file name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub alpha: f64,
    pub drive_base_points: f64,
    pub pass_completion: f64,
    pub c3_curve_ref: String,
    #[serde(default)]
    pub attenuation: Attenuation,
}

fn schema_version() -> u32 {
    crate::SCHEMA_VERSION
}

impl GameConfig {
    pub fn from_json(text: &str) -> Result<Self, GameError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| GameError::Config(e.to_string()))?;
        if cfg.schema_version != crate::SCHEMA_VERSION {
            return Err(GameError::Config(format!(
                "unsupported schema_version {}",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    pub alpha: f64,
    pub drive_base_points: f64,
    pub pass_completion: f64,
    pub c3_curve: ContestCurve,
    pub attenuation: Attenuation,
}

impl GameSpec {
    pub fn from_config(cfg: &GameConfig, c3_curve: ContestCurve) -> Result<Self, GameError> {
        let spec = Self {
            alpha: cfg.alpha,
            drive_base_points: cfg.drive_base_points,
            pass_completion: cfg.pass_completion,
            c3_curve,
            attenuation: cfg.attenuation,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The shipped calibrated configuration.
    pub fn bundled() -> Self {
        let cfg = GameConfig::from_json(crate::config::GAME_DEFAULT).expect("bundled game config");
        Self::from_config(&cfg, ContestCurve::bundled_c3()).expect("bundled game config is valid")
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self {
            alpha,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), GameError> {
        validate_alpha(self.alpha)?;
        if !(self.pass_completion > 0.0 && self.pass_completion <= 1.0) {
            return Err(GameError::Config(format!(
                "pass_completion must lie in (0, 1], got {}",
                self.pass_completion
            )));
        }
        if !(self.drive_base_points.is_finite() && (0.0..=3.0).contains(&self.drive_base_points)) {
            return Err(GameError::Config(format!(
                "drive_base_points must lie in [0, 3], got {}",
                self.drive_base_points
            )));
        }
        self.c3_curve.validate()?;
        Ok(())
    }

    /// Drive payoff with the help defender `d` feet from the corner shooter.
    pub fn drive_points(&self, d: f64) -> f64 {
        let remaining = self.alpha.powf(-(HELP_SPAN_FT - d));
        match self.attenuation {
            Attenuation::Multiplicative => self.drive_base_points * (1.0 - remaining),
            Attenuation::Subtractive => self.drive_base_points * remaining,
        }
    }
}

pub fn validate_alpha(alpha: f64) -> Result<(), GameError> {
    if alpha.is_finite() && alpha > 1.0 {
        Ok(())
    } else {
        Err(GameError::Config(format!(
            "alpha must be a finite number greater than 1, got {alpha}"
        )))
    }
}

/// Offense-perspective payoffs, one row per defender strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffMatrix {
    pub row_labels: Vec<f64>,
    pub col_labels: Vec<String>,
    /// Row-major entries.
    pub entries: Vec<Vec<f64>>,
}

impl PayoffMatrix {
    /// Unlabelled matrix; rows are numbered from 1.
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self, GameError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let m = Self {
            row_labels: (1..=rows).map(|i| i as f64).collect(),
            col_labels: (1..=cols).map(|j| format!("c{j}")).collect(),
            entries,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), GameError> {
        let cols = self.col_labels.len();
        if self.entries.is_empty() || cols == 0 {
            return Err(GameError::Config("payoff matrix is empty".into()));
        }
        if self.row_labels.len() != self.entries.len() {
            return Err(GameError::Config("row label count mismatch".into()));
        }
        if self.entries.iter().any(|r| r.len() != cols) {
            return Err(GameError::Config("ragged payoff matrix".into()));
        }
        if self.entries.iter().flatten().any(|v| !v.is_finite()) {
            return Err(GameError::Config("payoff entries must be finite".into()));
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# schema_version: {}\ndistance,{}\n", crate::SCHEMA_VERSION, self.col_labels.join(","));
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            out.push_str(&format_label(*label));
            for v in row {
                out.push_str(&format!(",{v:.6}"));
            }
            out.push('\n');
        }
        out
    }
}

fn format_label(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

pub fn build_payoff(spec: &GameSpec) -> Result<PayoffMatrix, GameError> {
    spec.validate()?;
    let mut entries = Vec::with_capacity(N_DISTANCES);
    for d in DISTANCES {
        let d = f64::from(d);
        let drive = spec.drive_points(d);
        let pass = spec.pass_completion * spec.c3_curve.contest_points(d)?;
        for v in [drive, pass] {
            if !(v.is_finite() && (0.0..=3.0).contains(&v)) {
                return Err(GameError::Config(format!(
                    "payoff {v} at d = {d} outside [0, 3] points"
                )));
            }
        }
        entries.push(vec![drive, pass]);
    }
    Ok(PayoffMatrix {
        row_labels: DISTANCES.map(f64::from).collect(),
        col_labels: OFFENSE_ACTIONS.iter().map(|s| s.to_string()).collect(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    /// Row labels of the solved matrix (defender distances for the game).
    pub distances: Vec<f64>,
    pub defender_mix: Vec<f64>,
    pub offense_mix: Vec<f64>,
    /// Expected points per possession under the equilibrium mixes.
    pub value: f64,
    pub expected_defender_distance: f64,
    /// Row labels carrying more than [`SUPPORT_EPS`] defender mass.
    pub support: Vec<f64>,
}

impl Equilibrium {
    pub(crate) fn from_mixes(m: &PayoffMatrix, defender_mix: Vec<f64>, offense_mix: Vec<f64>, value: f64) -> Self {
        let expected_defender_distance = m
            .row_labels
            .iter()
            .zip(&defender_mix)
            .map(|(d, p)| d * p)
            .sum();
        let support = m
            .row_labels
            .iter()
            .zip(&defender_mix)
            .filter(|(_, &p)| p > SUPPORT_EPS)
            .map(|(&d, _)| d)
            .collect();
        Self {
            distances: m.row_labels.clone(),
            defender_mix,
            offense_mix,
            value,
            expected_defender_distance,
            support,
        }
    }

    /// Defender mass on distances satisfying `pred`.
    pub fn mass_where(&self, pred: impl Fn(f64) -> bool) -> f64 {
        self.distances
            .iter()
            .zip(&self.defender_mix)
            .filter(|(&d, _)| pred(d))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# schema_version: {}\ndistance,probability\n", crate::SCHEMA_VERSION);
        for (d, p) in self.distances.iter().zip(&self.defender_mix) {
            out.push_str(&format!("{},{p:.12}\n", format_label(*d)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaEquilibrium {
    pub alpha: f64,
    pub equilibrium: Equilibrium,
}

/// Solves the game once per alpha; results keep the input order.
pub fn sweep_alpha(spec: &GameSpec, alphas: &[f64]) -> Result<Vec<AlphaEquilibrium>, GameError> {
    for &a in alphas {
        validate_alpha(a)?;
    }
    alphas
        .par_iter()
        .map(|&alpha| {
            let m = build_payoff(&spec.with_alpha(alpha))?;
            Ok(AlphaEquilibrium {
                alpha,
                equilibrium: solve_zero_sum(&m)?,
            })
        })
        .collect()
}
