//! Dataset-level corner-three findings: assist and contest gaps, the
//! distance share of the efficiency gap, and where corner passes come from.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::court::{CourtError, CourtSpec, ShotClass, Zone};
use crate::data::ShotEvent;
use crate::shotmodel::LogisticModel;

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("dataset has no {0} attempts")]
    MissingClass(ShotClass),
    #[error("no corner-three shots with a recorded pass origin")]
    NoPassData,
    #[error(transparent)]
    Court(#[from] CourtError),
}

/// Integer tallies for one shot class; merging two datasets adds them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassCounts {
    pub attempts: u64,
    pub makes: u64,
    pub assisted: u64,
    /// Attempts with a recorded closest-defender distance.
    pub contested_n: u64,
    pub def_dist_sum: f64,
    pub distance_sum: f64,
}

impl ClassCounts {
    fn add(&mut self, shot: &ShotEvent) {
        self.attempts += 1;
        self.makes += u64::from(shot.made);
        self.assisted += u64::from(shot.assisted);
        if let Some(d) = shot.closest_defender_distance {
            self.contested_n += 1;
            self.def_dist_sum += d;
        }
        self.distance_sum += shot.location.distance_to_basket();
    }

    pub fn merge(&self, other: &Self) -> Self {
        Self {
            attempts: self.attempts + other.attempts,
            makes: self.makes + other.makes,
            assisted: self.assisted + other.assisted,
            contested_n: self.contested_n + other.contested_n,
            def_dist_sum: self.def_dist_sum + other.def_dist_sum,
            distance_sum: self.distance_sum + other.distance_sum,
        }
    }

    pub fn fg_pct(&self) -> f64 {
        self.makes as f64 / self.attempts as f64
    }

    pub fn assist_rate(&self) -> f64 {
        self.assisted as f64 / self.attempts as f64
    }

    pub fn mean_distance(&self) -> f64 {
        self.distance_sum / self.attempts as f64
    }

    pub fn mean_def_dist(&self) -> Option<f64> {
        (self.contested_n > 0).then(|| self.def_dist_sum / self.contested_n as f64)
    }
}

/// Per-class tallies for corner and above-the-break threes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ThreePointCounts {
    pub c3: ClassCounts,
    pub atb3: ClassCounts,
}

impl ThreePointCounts {
    pub fn tally(shots: &[ShotEvent], court: &CourtSpec) -> Result<Self, AnalyticsError> {
        let mut counts = Self::default();
        for shot in shots {
            match court.classify_shot(&shot.location)? {
                ShotClass::C3 => counts.c3.add(shot),
                ShotClass::Atb3 => counts.atb3.add(shot),
                ShotClass::TwoPoint => {}
            }
        }
        Ok(counts)
    }

    pub fn merge(&self, other: &Self) -> Self {
        Self {
            c3: self.c3.merge(&other.c3),
            atb3: self.atb3.merge(&other.atb3),
        }
    }

    fn require_both(&self) -> Result<(), AnalyticsError> {
        if self.c3.attempts == 0 {
            return Err(AnalyticsError::MissingClass(ShotClass::C3));
        }
        if self.atb3.attempts == 0 {
            return Err(AnalyticsError::MissingClass(ShotClass::Atb3));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssistStats {
    pub c3_attempts: u64,
    pub atb3_attempts: u64,
    pub c3_assist_rate: f64,
    pub atb3_assist_rate: f64,
    /// Mean closest-defender distance in feet; absent when none was recorded.
    pub c3_mean_def_dist: Option<f64>,
    pub atb3_mean_def_dist: Option<f64>,
}

impl AssistStats {
    pub fn from_counts(counts: &ThreePointCounts) -> Result<Self, AnalyticsError> {
        counts.require_both()?;
        Ok(Self {
            c3_attempts: counts.c3.attempts,
            atb3_attempts: counts.atb3.attempts,
            c3_assist_rate: counts.c3.assist_rate(),
            atb3_assist_rate: counts.atb3.assist_rate(),
            c3_mean_def_dist: counts.c3.mean_def_dist(),
            atb3_mean_def_dist: counts.atb3.mean_def_dist(),
        })
    }
}

pub fn assist_stats(shots: &[ShotEvent], court: &CourtSpec) -> Result<AssistStats, AnalyticsError> {
    AssistStats::from_counts(&ThreePointCounts::tally(shots, court)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassOriginColumn {
    pub passes: u64,
    /// Pass counts per origin zone, in [`Zone::ALL`] order.
    pub counts: Vec<u64>,
    pub fractions: Vec<f64>,
    /// Share of passes from around the basket (basket area, deep paint, baselines).
    pub basket_vicinity: f64,
}

impl PassOriginColumn {
    fn from_counts(counts: Vec<u64>) -> Option<Self> {
        let passes: u64 = counts.iter().sum();
        if passes == 0 {
            return None;
        }
        let vicinity: u64 = Zone::ALL
            .iter()
            .filter(|z| z.is_basket_vicinity())
            .map(|z| counts[z.index()])
            .sum();
        Some(Self {
            passes,
            fractions: counts.iter().map(|&c| c as f64 / passes as f64).collect(),
            basket_vicinity: vicinity as f64 / passes as f64,
            counts,
        })
    }

    pub fn fraction(&self, zone: Zone) -> f64 {
        self.fractions[zone.index()]
    }
}

/// Where passes to each corner come from. A column is absent when that corner
/// has no passes on record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassOriginTable {
    pub zones: Vec<Zone>,
    pub left_corner: Option<PassOriginColumn>,
    pub right_corner: Option<PassOriginColumn>,
}

impl PassOriginTable {
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# schema_version: {}\nzone,left_corner,right_corner\n",
            crate::SCHEMA_VERSION
        );
        let cell = |c: &Option<PassOriginColumn>, i: usize| {
            c.as_ref().map_or(String::new(), |c| format!("{:.6}", c.fractions[i]))
        };
        for (i, z) in self.zones.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", z.name(), cell(&self.left_corner, i), cell(&self.right_corner, i)));
        }
        let roll = |c: &Option<PassOriginColumn>| {
            c.as_ref().map_or(String::new(), |c| format!("{:.6}", c.basket_vicinity))
        };
        out.push_str(&format!(
            "BasketVicinity,{},{}\n",
            roll(&self.left_corner),
            roll(&self.right_corner)
        ));
        out
    }
}

/// Tallies pass origins for corner threes. Passes from the receiving corner
/// itself are dropped.
pub fn pass_origin_table(shots: &[ShotEvent], court: &CourtSpec) -> Result<PassOriginTable, AnalyticsError> {
    let mut left = vec![0u64; Zone::ALL.len()];
    let mut right = vec![0u64; Zone::ALL.len()];
    for shot in shots {
        let Some(origin) = shot.pass_origin else {
            continue;
        };
        let target = court.classify_zone(&shot.location)?;
        let column = match target {
            Zone::LeftCorner => &mut left,
            Zone::RightCorner => &mut right,
            _ => continue,
        };
        let from = court.classify_zone(&origin)?;
        if from != target {
            column[from.index()] += 1;
        }
    }
    let table = PassOriginTable {
        zones: Zone::ALL.to_vec(),
        left_corner: PassOriginColumn::from_counts(left),
        right_corner: PassOriginColumn::from_counts(right),
    };
    if table.left_corner.is_none() && table.right_corner.is_none() {
        return Err(AnalyticsError::NoPassData);
    }
    Ok(table)
}

/// Field-goal gap between corner and above-the-break threes, split into the
/// part the distance model explains and the rest. All gaps in percentage points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapDecomposition {
    pub c3_fg_pct: f64,
    pub atb3_fg_pct: f64,
    /// Distances the model was evaluated at, in feet.
    pub c3_eval_distance: f64,
    pub atb3_eval_distance: f64,
    pub observed_fg_gap: f64,
    pub distance_predicted_gap: f64,
    pub residual_gap: f64,
}

/// Evaluates the model at each class's mean shot distance, or at
/// `eval_distances = (c3, atb3)` when given.
pub fn gap_decomposition(
    shots: &[ShotEvent],
    court: &CourtSpec,
    model: &LogisticModel,
    eval_distances: Option<(f64, f64)>,
) -> Result<GapDecomposition, AnalyticsError> {
    let counts = ThreePointCounts::tally(shots, court)?;
    counts.require_both()?;
    let (c3_d, atb3_d) =
        eval_distances.unwrap_or((counts.c3.mean_distance(), counts.atb3.mean_distance()));
    let observed = 100.0 * (counts.c3.fg_pct() - counts.atb3.fg_pct());
    let predicted = 100.0 * (model.predict_make_prob(c3_d) - model.predict_make_prob(atb3_d));
    Ok(GapDecomposition {
        c3_fg_pct: counts.c3.fg_pct(),
        atb3_fg_pct: counts.atb3.fg_pct(),
        c3_eval_distance: c3_d,
        atb3_eval_distance: atb3_d,
        observed_fg_gap: observed,
        distance_predicted_gap: predicted,
        residual_gap: observed - predicted,
    })
}
