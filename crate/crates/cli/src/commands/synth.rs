use std::fmt::Write;
use std::path::PathBuf;

use clap::Args;

use kickout::data::{synthesize_dataset_on, window_to_track, write_shot_log, write_tracking, ShotLogFormat};

use crate::config::ConfigRoot;
use crate::error::{CliError, CliResult};
use crate::output::{csv_with_schema, Outputs};
use crate::{Format, GlobalArgs};

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Generator config JSON (defaults to the bundled one). `--seed` overrides its seed.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub fn run(global: &GlobalArgs, root: &ConfigRoot, args: &SynthArgs) -> CliResult<Vec<PathBuf>> {
    let mut cfg = root.synth(args.config.as_deref())?;
    if let Some(seed) = global.seed {
        cfg.seed = seed;
    }
    let court = root.court(&global.court)?;
    if court.league != cfg.league {
        return Err(CliError::usage(format!(
            "config league {} does not match --court {}",
            cfg.league, court.league
        )));
    }
    let data = synthesize_dataset_on(&cfg, &court)?;

    let mut out = Outputs::new(&global.out, global.force);
    let format = match global.format {
        Some(Format::Json) => ShotLogFormat::Json,
        _ => ShotLogFormat::Csv,
    };
    let shots_name = match format {
        ShotLogFormat::Json => "shots.json",
        ShotLogFormat::Csv => "shots.csv",
    };
    out.add(shots_name, write_shot_log(&data.shots, format));

    if !data.windows.is_empty() {
        let mut labels = String::from("possession_id,label,archetype\n");
        let tracks: Vec<_> = data
            .windows
            .iter()
            .zip(&data.window_labels)
            .enumerate()
            .map(|(i, (w, &label))| {
                let id = format!("w{i:05}");
                let _ = writeln!(labels, "{id},{label},{}", cfg.cluster_archetypes[label].name);
                window_to_track(w, &id, cfg.sample_rate, cfg.lead_in_seconds)
            })
            .collect();
        out.add("tracking.json", write_tracking(&tracks));
        out.add("window_labels.csv", csv_with_schema(&labels));
    }
    out.add_json("synth_config.json", &cfg);
    out.commit()
}
