//! Grid search for the default drive value and corner contest curve.
//!
//! The contest curve family is logistic in defender distance,
//! `cmax / (1 + exp(-(d - d0) / s))`, sampled at integer knots 0..=22 and
//! rounded to four decimals. For every `(d0, s, drive_base)` on the grid the
//! game is solved at each target alpha; candidates must put at least
//! `min_extreme_mass` of the defender mix on the extremes and are ranked by
//! the worst distance of the expected defender distance from the target.

use serde::{Deserialize, Serialize};

use super::{build_payoff, solve_zero_sum, Attenuation, GameConfig, GameError, GameSpec};
use crate::shotmodel::{ContestCurve, CurveClass};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationGrid {
    pub alphas: Vec<f64>,
    pub target_distance: f64,
    pub min_extreme_mass: f64,
    /// Distances counted as "helping" (at most) and "staying" (at least).
    pub near_max: f64,
    pub far_min: f64,
    pub cmax: f64,
    pub d0: Vec<f64>,
    pub scale: Vec<f64>,
    /// Drive base points as hundredths, inclusive range.
    pub drive_base_cents: (u32, u32),
    /// Alpha written into the resulting default config.
    pub default_alpha: f64,
}

impl Default for CalibrationGrid {
    fn default() -> Self {
        Self {
            alphas: vec![1.3, 1.9],
            target_distance: 13.0,
            min_extreme_mass: 0.99,
            near_max: 4.0,
            far_min: 18.0,
            cmax: 1.45,
            d0: vec![2.5, 3.0, 3.5, 4.0],
            scale: vec![0.5, 0.75, 1.0],
            drive_base_cents: (100, 200),
            default_alpha: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub d0: f64,
    pub scale: f64,
    pub drive_base_points: f64,
    /// Worst `|E[d] - target|` over the alphas.
    pub objective: f64,
    pub expected_distances: Vec<f64>,
    pub extreme_masses: Vec<f64>,
    pub game: GameConfig,
    pub curve: ContestCurve,
    pub candidates_evaluated: usize,
    pub candidates_feasible: usize,
}

fn curve_knots(cmax: f64, d0: f64, s: f64) -> Vec<[f64; 2]> {
    (0..=22)
        .map(|k| {
            let d = f64::from(k);
            let v = cmax / (1.0 + (-(d - d0) / s).exp());
            [d, (v * 1e4).round() / 1e4]
        })
        .collect()
}

/// Returns the best feasible grid point; earlier grid points win ties.
pub fn calibrate(grid: &CalibrationGrid) -> Result<CalibrationResult, GameError> {
    let mut best: Option<CalibrationResult> = None;
    let mut evaluated = 0;
    let mut feasible = 0;
    for &d0 in &grid.d0 {
        for &s in &grid.scale {
            let curve = ContestCurve::new(CurveClass::C3, curve_knots(grid.cmax, d0, s))?;
            for cents in grid.drive_base_cents.0..=grid.drive_base_cents.1 {
                evaluated += 1;
                let drive_base = f64::from(cents) / 100.0;
                let mut spec = GameSpec {
                    alpha: grid.default_alpha,
                    drive_base_points: drive_base,
                    pass_completion: 1.0,
                    c3_curve: curve.clone(),
                    attenuation: Attenuation::Multiplicative,
                };
                let mut expected = Vec::new();
                let mut extreme = Vec::new();
                for &alpha in &grid.alphas {
                    spec.alpha = alpha;
                    let eq = solve_zero_sum(&build_payoff(&spec)?)?;
                    expected.push(eq.expected_defender_distance);
                    extreme.push(eq.mass_where(|d| d <= grid.near_max || d >= grid.far_min));
                }
                if extreme.iter().any(|&m| m < grid.min_extreme_mass) {
                    continue;
                }
                feasible += 1;
                let objective = expected
                    .iter()
                    .map(|e| (e - grid.target_distance).abs())
                    .fold(0.0, f64::max);
                if best.as_ref().is_none_or(|b| objective < b.objective - 1e-12) {
                    best = Some(CalibrationResult {
                        d0,
                        scale: s,
                        drive_base_points: drive_base,
                        objective,
                        expected_distances: expected,
                        extreme_masses: extreme,
                        game: GameConfig {
                            schema_version: crate::SCHEMA_VERSION,
                            alpha: grid.default_alpha,
                            drive_base_points: drive_base,
                            pass_completion: 1.0,
                            c3_curve_ref: crate::config::files::CONTEST_C3.to_string(),
                            attenuation: Attenuation::Multiplicative,
                        },
                        curve: curve.clone(),
                        candidates_evaluated: 0,
                        candidates_feasible: 0,
                    });
                }
            }
        }
    }
    let mut best = best.ok_or_else(|| GameError::Config("no grid point satisfies the calibration constraints".into()))?;
    best.candidates_evaluated = evaluated;
    best.candidates_feasible = feasible;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_reproduces_shipped_config() {
        let r = calibrate(&CalibrationGrid::default()).unwrap();
        let shipped = GameConfig::from_json(crate::config::GAME_DEFAULT).unwrap();
        assert_eq!(r.game, shipped);
        assert_eq!(r.curve, ContestCurve::bundled_c3());
        assert!(r.expected_distances.iter().all(|e| (12.0..=14.0).contains(e)));
        assert!(r.extreme_masses.iter().all(|&m| m >= 0.99));
    }

    #[test]
    fn infeasible_grid_is_an_error() {
        let grid = CalibrationGrid {
            min_extreme_mass: 1.1,
            d0: vec![3.0],
            scale: vec![1.0],
            drive_base_cents: (100, 102),
            ..CalibrationGrid::default()
        };
        assert!(matches!(calibrate(&grid), Err(GameError::Config(_))));
    }
}
