use std::fmt;

use kickout::analytics::AnalyticsError;
use kickout::court::CourtError;
use kickout::data::DataError;
use kickout::game::GameError;
use kickout::shotmodel::ShotModelError;
use kickout::trajectories::TrajectoryError;

/// A failed command. `Usage` covers bad arguments, unreadable or malformed
/// inputs and configs (exit 1); `Data` covers inputs that parse but cannot
/// support the analysis (exit 2).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        CliError::Data(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        match e {
            DataError::InsufficientHistory { .. }
            | DataError::ExcessiveGaps { .. }
            | DataError::UnknownPlayer(_) => CliError::Data(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CourtError> for CliError {
    fn from(e: CourtError) -> Self {
        match e {
            CourtError::OffCourt { .. } => CliError::Data(e.to_string()),
            CourtError::Config(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ShotModelError> for CliError {
    fn from(e: ShotModelError) -> Self {
        match e {
            ShotModelError::Config(_) => CliError::Usage(e.to_string()),
            ShotModelError::Court(c) => c.into(),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Config(_) => CliError::Usage(e.to_string()),
            GameError::Curve(c) => c.into(),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<AnalyticsError> for CliError {
    fn from(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::Court(c) => c.into(),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<TrajectoryError> for CliError {
    fn from(e: TrajectoryError) -> Self {
        match e {
            TrajectoryError::Invalid(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}
