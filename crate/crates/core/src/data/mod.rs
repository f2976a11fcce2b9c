//! Shot logs, tracking possessions, pre-shot windows and synthetic datasets.

mod shots;
mod synth;
mod tracking;

pub use shots::{parse_shot_log, write_shot_log, ShotEvent, ShotLogFormat, SHOT_LOG_COLUMNS};
pub use synth::{
    synthesize_dataset, synthesize_dataset_on, window_to_track, Archetype, ClassMix, DistanceDistribution,
    PassOriginWeights, SyntheticConfig, SyntheticDataset,
};
pub use tracking::{
    extract_window, parse_tracking, write_tracking, Frame, PlayerSample, PossessionTrack,
    TrajectoryWindow, MAX_GAP_FRACTION,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("row {row}: {message}")]
    Value { row: usize, message: String },
    #[error("insufficient history: need {needed_s:.3} s before the shot, have {available_s:.3} s")]
    InsufficientHistory { needed_s: f64, available_s: f64 },
    #[error("unknown player {0}")]
    UnknownPlayer(String),
    #[error("player {player}: {missing} of {samples} window samples missing (max {allowed})")]
    ExcessiveGaps {
        player: String,
        missing: usize,
        samples: usize,
        allowed: usize,
    },
    #[error("invalid tracking data: {0}")]
    Tracking(String),
    #[error("invalid synthetic config: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
