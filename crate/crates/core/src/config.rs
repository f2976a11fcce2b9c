//! Checked-in configuration documents, embedded at compile time.
//!
//! The same files live under `crates/core/config/` so they can be copied,
//! edited and pointed at with `KICKOUT_CONFIG_DIR`.

pub const COURT_NBA: &str = include_str!("../config/court_nba.json");
pub const COURT_FIBA: &str = include_str!("../config/court_fiba.json");
pub const GAME_DEFAULT: &str = include_str!("../config/game_default.json");
pub const CONTEST_C3: &str = include_str!("../config/contest_c3.json");
pub const SYNTH_DEFAULT: &str = include_str!("../config/synth_default.json");
pub const PAPER_LOGISTIC: &str = include_str!("../config/logistic_reference.json");

/// File names used when a configuration directory overrides the bundled set.
pub mod files {
    pub const COURT_NBA: &str = "court_nba.json";
    pub const COURT_FIBA: &str = "court_fiba.json";
    pub const GAME_DEFAULT: &str = "game_default.json";
    pub const CONTEST_C3: &str = "contest_c3.json";
    pub const SYNTH_DEFAULT: &str = "synth_default.json";
}
