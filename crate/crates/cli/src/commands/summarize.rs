use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use kickout::analytics::{assist_stats, gap_decomposition, AnalyticsError, AssistStats, GapDecomposition};
use kickout::court::League;
use kickout::shotmodel::{efficiency_summary, fit_logistic, fit_logistic_threes, ShotModelError};
use kickout::{plot, EfficiencySummary, LogisticModel};

use super::{input_name, load_shots};
use crate::config::{read_text, ConfigRoot};
use crate::error::{CliError, CliResult};
use crate::output::{csv_with_schema, Outputs};
use crate::GlobalArgs;

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    /// Shot log (CSV or JSON).
    pub shot_log: PathBuf,
    /// Use this fitted distance model instead of fitting one.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Fit the distance model on three-point attempts only.
    #[arg(long)]
    pub threes_only: bool,
    /// Evaluate the distance model at these corner,above-the-break distances (ft)
    /// instead of the class means.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub eval_distances: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct Summary<'a> {
    schema_version: u32,
    input: String,
    league: League,
    n_shots: usize,
    efficiency: &'a EfficiencySummary,
    assist_stats: Option<AssistStats>,
    logistic: Option<LogisticModel>,
    gap_decomposition: Option<GapDecomposition>,
    notes: Vec<String>,
}

pub fn run(global: &GlobalArgs, root: &ConfigRoot, args: &SummarizeArgs) -> CliResult<Vec<PathBuf>> {
    let court = root.court(&global.court)?;
    let shots = load_shots(global, &args.shot_log)?;
    if shots.is_empty() {
        return Err(CliError::data(format!("{} contains no shots", args.shot_log.display())));
    }
    let efficiency = efficiency_summary(&shots, &court)?;
    let mut notes = Vec::new();

    let assists = match assist_stats(&shots, &court) {
        Ok(s) => Some(s),
        Err(e @ AnalyticsError::MissingClass(_)) => {
            notes.push(format!("assist stats skipped: {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };

    let model = match &args.model {
        Some(path) => Some(load_model(path)?),
        None => {
            let fit = if args.threes_only {
                fit_logistic_threes(&shots)
            } else {
                fit_logistic(&shots)
            };
            match fit {
                Ok(m) => Some(m),
                Err(e @ (ShotModelError::Degenerate(_) | ShotModelError::NotConverged { .. })) => {
                    notes.push(format!("distance model not fitted: {e}"));
                    None
                }
                Err(e) => return Err(e.into()),
            }
        }
    };

    let eval = args.eval_distances.as_ref().map(|v| (v[0], v[1]));
    let decomposition = match &model {
        Some(m) => match gap_decomposition(&shots, &court, m, eval) {
            Ok(g) => Some(g),
            Err(e @ AnalyticsError::MissingClass(_)) => {
                notes.push(format!("gap decomposition skipped: {e}"));
                None
            }
            Err(e) => return Err(e.into()),
        },
        None => None,
    };

    let summary = Summary {
        schema_version: kickout::SCHEMA_VERSION,
        input: input_name(&args.shot_log),
        league: court.league,
        n_shots: shots.len(),
        efficiency: &efficiency,
        assist_stats: assists,
        logistic: model,
        gap_decomposition: decomposition,
        notes,
    };

    let mut out = Outputs::new(&global.out, global.force);
    out.add_json("summary.json", &summary);
    out.add("summary.csv", summary_csv(&summary));
    out.add("heatmap.svg", plot::heatmap_svg(&court, &efficiency));
    out.commit()
}

fn load_model(path: &Path) -> CliResult<LogisticModel> {
    LogisticModel::from_json(&read_text(path)?)
        .map_err(|e| CliError::usage(format!("model {}: {e}", path.display())))
}

/// Long format: one `section,key,metric,value` row per number.
fn summary_csv(s: &Summary) -> String {
    let mut body = String::from("section,key,metric,value\n");
    let mut row = |section: &str, key: &str, metric: &str, value: String| {
        let _ = writeln!(body, "{section},{key},{metric},{value}");
    };
    for z in &s.efficiency.zones {
        let key = z.zone.name();
        row("zone", key, "attempts", z.attempts.to_string());
        row("zone", key, "makes", z.makes.to_string());
        row("zone", key, "fg_pct", z.fg_pct.to_string());
        row("zone", key, "pps", z.pps.to_string());
        row("zone", key, "assisted_rate", z.assisted_rate.to_string());
    }
    for c in &s.efficiency.classes {
        let key = c.class.to_string();
        row("class", &key, "attempts", c.attempts.to_string());
        row("class", &key, "makes", c.makes.to_string());
        row("class", &key, "fg_pct", c.fg_pct.to_string());
        row("class", &key, "pps", c.pps.to_string());
        row("class", &key, "assisted_rate", c.assisted_rate.to_string());
    }
    if let Some(g) = s.efficiency.c3_vs_atb3_gap {
        row("gap", "C3_vs_ATB3", "points_per_100", g.to_string());
    }
    if let Some(a) = &s.assist_stats {
        row("assist", "C3", "assist_rate", a.c3_assist_rate.to_string());
        row("assist", "ATB3", "assist_rate", a.atb3_assist_rate.to_string());
        if let Some(d) = a.c3_mean_def_dist {
            row("assist", "C3", "mean_def_dist", d.to_string());
        }
        if let Some(d) = a.atb3_mean_def_dist {
            row("assist", "ATB3", "mean_def_dist", d.to_string());
        }
    }
    if let Some(m) = &s.logistic {
        row("logistic", "model", "beta0", m.beta0.to_string());
        row("logistic", "model", "beta1", m.beta1.to_string());
        row("logistic", "model", "loglik", m.fit_loglik.to_string());
    }
    if let Some(g) = &s.gap_decomposition {
        row("decomposition", "fg_gap", "observed_pp", g.observed_fg_gap.to_string());
        row("decomposition", "fg_gap", "distance_predicted_pp", g.distance_predicted_gap.to_string());
        row("decomposition", "fg_gap", "residual_pp", g.residual_gap.to_string());
    }
    csv_with_schema(&body)
}
