//! Corner-three analysis toolkit.
//!
//! The crate is organised bottom-up:
//!
//! - [`court`]: half-court geometry, league constants and zone classification.
//! - [`data`]: shot-log and tracking ingestion, pre-shot window extraction and a
//!   seeded synthetic generator with planted ground truth.
//! - [`shotmodel`]: logistic make-probability model, contest curves and
//!   per-zone efficiency summaries.
//! - [`trajectories`]: window featurization, k-means, gap statistic and
//!   radius-of-gyration ranking.
//! - [`game`]: the drive-and-kick zero-sum game, its exact LP solution and a
//!   fictitious-play cross-check.
//! - [`analytics`]: assist/contest gaps, efficiency-gap decomposition and the
//!   pass-origin table.
//! - [`plot`]: deterministic SVG emitters.

pub mod analytics;
pub mod config;
pub mod court;
pub mod data;
pub mod game;
pub mod plot;
pub mod rng;
pub mod shotmodel;
pub mod trajectories;

pub use analytics::{AssistStats, GapDecomposition, PassOriginTable};
pub use court::{CourtSpec, League, Point2D, ShotClass, Zone};
pub use data::{PossessionTrack, ShotEvent, SyntheticConfig, TrajectoryWindow};
pub use game::{Equilibrium, GameSpec, PayoffMatrix};
pub use shotmodel::{ContestCurve, EfficiencySummary, LogisticModel};
pub use trajectories::{ClusterModel, FeatureVector, GapReport};

/// Version stamped into every JSON/CSV artifact this crate writes.
pub const SCHEMA_VERSION: u32 = 1;
