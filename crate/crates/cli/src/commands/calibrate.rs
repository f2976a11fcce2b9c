use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use kickout::config::files;
use kickout::game::{calibrate, CalibrationGrid, CalibrationResult};

use crate::config::{read_text, ConfigRoot};
use crate::error::{CliError, CliResult};
use crate::output::Outputs;
use crate::GlobalArgs;

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Search grid JSON; the built-in grid is used when omitted.
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

#[derive(Serialize)]
struct CalibrationReport<'a> {
    schema_version: u32,
    grid: &'a CalibrationGrid,
    result: &'a CalibrationResult,
}

/// Writes a game config plus contest curve that `game --config` can load.
pub fn run(global: &GlobalArgs, _root: &ConfigRoot, args: &CalibrateArgs) -> CliResult<Vec<PathBuf>> {
    let grid = match &args.grid {
        Some(p) => serde_json::from_str(&read_text(p)?)
            .map_err(|e| CliError::usage(format!("grid {}: {e}", p.display())))?,
        None => CalibrationGrid::default(),
    };
    let result = calibrate(&grid)?;
    let mut out = Outputs::new(&global.out, global.force);
    out.add(files::GAME_DEFAULT, format!("{}\n", result.game.to_json()));
    out.add(files::CONTEST_C3, format!("{}\n", result.curve.to_json()));
    out.add_json(
        "calibration.json",
        &CalibrationReport {
            schema_version: kickout::SCHEMA_VERSION,
            grid: &grid,
            result: &result,
        },
    );
    out.commit()
}
