//! Staged output files, written only after every target has been checked.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub struct Outputs {
    dir: PathBuf,
    force: bool,
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn new(dir: &Path, force: bool) -> Self {
        Self {
            dir: dir.to_path_buf(),
            force,
            files: Vec::new(),
        }
    }

    pub fn add(&mut self, name: impl Into<String>, bytes: impl Into<Vec<u8>>) {
        self.files.push((name.into(), bytes.into()));
    }

    pub fn add_json<T: Serialize>(&mut self, name: impl Into<String>, value: &T) {
        let mut bytes = serde_json::to_vec_pretty(value).expect("output serializes");
        bytes.push(b'\n');
        self.add(name, bytes);
    }

    /// Refuses to clobber existing files unless forced, then writes everything.
    pub fn commit(self) -> CliResult<Vec<PathBuf>> {
        if !self.force {
            let existing: Vec<String> = self
                .files
                .iter()
                .map(|(name, _)| self.dir.join(name))
                .filter(|p| p.exists())
                .map(|p| p.display().to_string())
                .collect();
            if !existing.is_empty() {
                return Err(CliError::usage(format!(
                    "refusing to overwrite {} (pass --force)",
                    existing.join(", ")
                )));
            }
        }
        fs::create_dir_all(&self.dir)
            .map_err(|e| CliError::usage(format!("cannot create {}: {e}", self.dir.display())))?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, bytes) in &self.files {
            let path = self.dir.join(name);
            fs::write(&path, bytes)
                .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Prefixes CSV text with the schema comment line.
pub fn csv_with_schema(body: &str) -> String {
    format!("# schema_version: {}\n{body}", kickout::SCHEMA_VERSION)
}
