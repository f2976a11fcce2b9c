//! Config lookup: files under `$KICKOUT_CONFIG_DIR` take precedence over the
//! copies compiled into the binary.

use std::fs;
use std::path::{Path, PathBuf};

use kickout::config::{self, files};
use kickout::court::CourtSpec;
use kickout::game::{GameConfig, GameSpec};
use kickout::shotmodel::ContestCurve;

use crate::error::{CliError, CliResult};

pub const CONFIG_DIR_ENV: &str = "KICKOUT_CONFIG_DIR";

#[derive(Debug, Clone, Default)]
pub struct ConfigRoot {
    pub dir: Option<PathBuf>,
}

pub fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_text(path: &Path) -> CliResult<String> {
    String::from_utf8(read_file(path)?)
        .map_err(|_| CliError::usage(format!("{} is not valid UTF-8", path.display())))
}

impl ConfigRoot {
    pub fn from_env() -> Self {
        Self {
            dir: std::env::var_os(CONFIG_DIR_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from),
        }
    }

    /// The named config document and where it came from.
    fn document(&self, name: &str, bundled: &'static str) -> CliResult<(String, Option<PathBuf>)> {
        if let Some(dir) = &self.dir {
            let path = dir.join(name);
            if path.exists() {
                return Ok((read_text(&path)?, Some(path)));
            }
        }
        Ok((bundled.to_string(), None))
    }

    pub fn court(&self, which: &str) -> CliResult<CourtSpec> {
        let text = match which.to_ascii_lowercase().as_str() {
            "nba" => self.document(files::COURT_NBA, config::COURT_NBA)?.0,
            "fiba" => self.document(files::COURT_FIBA, config::COURT_FIBA)?.0,
            _ => read_text(Path::new(which))?,
        };
        CourtSpec::from_json(&text).map_err(|e| CliError::usage(format!("court config {which}: {e}")))
    }

    /// Game spec from an explicit file or the default. An explicit file reads
    /// its contest curve from its own directory; otherwise the curve goes
    /// through the same override-then-bundled lookup.
    pub fn game(&self, path: Option<&Path>) -> CliResult<(GameConfig, GameSpec)> {
        let text = match path {
            Some(p) => read_text(p)?,
            None => self.document(files::GAME_DEFAULT, config::GAME_DEFAULT)?.0,
        };
        let cfg = GameConfig::from_json(&text)?;
        let explicit_dir = path.map(|p| p.parent().unwrap_or(Path::new(".")));
        let curve_text = match (explicit_dir, &self.dir) {
            (Some(dir), _) => read_text(&dir.join(&cfg.c3_curve_ref))?,
            (None, _) if cfg.c3_curve_ref == files::CONTEST_C3 => {
                self.document(files::CONTEST_C3, config::CONTEST_C3)?.0
            }
            (None, Some(dir)) => read_text(&dir.join(&cfg.c3_curve_ref))?,
            (None, None) => {
                return Err(CliError::usage(format!(
                    "bundled game config cannot reference {}",
                    cfg.c3_curve_ref
                )))
            }
        };
        let curve = ContestCurve::from_json(&curve_text)?;
        let spec = GameSpec::from_config(&cfg, curve)?;
        Ok((cfg, spec))
    }

    pub fn synth(&self, path: Option<&Path>) -> CliResult<kickout::SyntheticConfig> {
        let text = match path {
            Some(p) => read_text(p)?,
            None => self.document(files::SYNTH_DEFAULT, config::SYNTH_DEFAULT)?.0,
        };
        Ok(kickout::SyntheticConfig::from_json(&text)?)
    }
}
