use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use kickout::analytics::pass_origin_table;
use kickout::PassOriginTable;

use super::{input_name, load_shots};
use crate::config::ConfigRoot;
use crate::error::CliResult;
use crate::output::Outputs;
use crate::GlobalArgs;

#[derive(Debug, Args)]
pub struct PassesArgs {
    /// Shot log with pass_x/pass_y recorded for assisted corner threes.
    pub shot_log: PathBuf,
}

#[derive(Serialize)]
struct PassesReport<'a> {
    schema_version: u32,
    input: String,
    #[serde(flatten)]
    table: &'a PassOriginTable,
}

pub fn run(global: &GlobalArgs, root: &ConfigRoot, args: &PassesArgs) -> CliResult<Vec<PathBuf>> {
    let court = root.court(&global.court)?;
    let shots = load_shots(global, &args.shot_log)?;
    let table = pass_origin_table(&shots, &court)?;
    let mut out = Outputs::new(&global.out, global.force);
    out.add("passes.csv", table.to_csv());
    out.add_json(
        "passes.json",
        &PassesReport {
            schema_version: kickout::SCHEMA_VERSION,
            input: input_name(&args.shot_log),
            table: &table,
        },
    );
    out.commit()
}
