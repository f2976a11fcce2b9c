pub mod calibrate;
pub mod cluster;
pub mod game;
pub mod passes;
pub mod summarize;
pub mod synth;

use std::path::Path;

use kickout::data::{parse_shot_log, ShotLogFormat};
use kickout::ShotEvent;

use crate::config::read_file;
use crate::error::CliResult;
use crate::{Format, GlobalArgs};

pub(crate) fn shot_format(global: &GlobalArgs, path: &Path) -> ShotLogFormat {
    match global.format {
        Some(Format::Json) => ShotLogFormat::Json,
        Some(Format::Csv) => ShotLogFormat::Csv,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => ShotLogFormat::Json,
            _ => ShotLogFormat::Csv,
        },
    }
}

pub(crate) fn load_shots(global: &GlobalArgs, path: &Path) -> CliResult<Vec<ShotEvent>> {
    let bytes = read_file(path)?;
    Ok(parse_shot_log(&bytes, shot_format(global, path))?)
}

/// File name only, so outputs do not depend on where inputs live.
pub(crate) fn input_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}
