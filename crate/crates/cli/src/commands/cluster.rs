use std::fmt::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use serde::Serialize;

use kickout::data::{extract_window, parse_tracking, DataError};
use kickout::trajectories::{
    featurize, gap_statistic, kmeans, rank_clusters, ClusterRank, GapOptions, KMeansOptions,
    DEFAULT_SAMPLES_PER_PATH,
};
use kickout::{plot, FeatureVector, GapReport};

use super::input_name;
use crate::config::{read_file, ConfigRoot};
use crate::error::{CliError, CliResult};
use crate::output::{csv_with_schema, Outputs};
use crate::GlobalArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KChoice {
    Fixed(usize),
    Auto,
}

impl FromStr for KChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(KChoice::Auto);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(KChoice::Fixed(k)),
            _ => Err(format!("expected a positive integer or `auto`, got {s:?}")),
        }
    }
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Tracking JSON (one possession, an array, or {"possessions": [...]}).
    pub tracking: PathBuf,
    /// Number of clusters, or `auto` to pick it with the gap statistic.
    #[arg(long)]
    pub k: KChoice,
    /// Largest k tried by `auto`.
    #[arg(long, default_value_t = 12)]
    pub k_max: usize,
    /// Reference sets for the gap statistic.
    #[arg(long, default_value_t = 20)]
    pub reference_sets: usize,
    /// k-means restarts.
    #[arg(long, default_value_t = 10)]
    pub n_init: usize,
    /// Window length before the release, in seconds.
    #[arg(long, default_value_t = 4.0)]
    pub window_seconds: f64,
    /// Resampled points per path.
    #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_PATH)]
    pub samples_per_path: usize,
    /// Mirror left-side windows onto the right before clustering.
    #[arg(long)]
    pub canonicalize: bool,
}

#[derive(Serialize)]
struct Skipped {
    possession_id: String,
    reason: String,
}

#[derive(Serialize)]
struct ClusterReport<'a> {
    schema_version: u32,
    input: String,
    k: usize,
    seed: u64,
    samples_per_path: usize,
    window_seconds: f64,
    canonicalize: bool,
    n_windows: usize,
    possession_ids: Vec<String>,
    centroids: &'a [FeatureVector],
    assignments: &'a [usize],
    within_ss: f64,
    per_cluster: Vec<ClusterRank>,
    gap: Option<GapReport>,
    skipped: Vec<Skipped>,
}

pub fn run(global: &GlobalArgs, root: &ConfigRoot, args: &ClusterArgs) -> CliResult<Vec<PathBuf>> {
    let seed = global
        .seed
        .ok_or_else(|| CliError::usage("cluster is stochastic: pass --seed"))?;
    let court = root.court(&global.court)?;
    let tracks = parse_tracking(&read_file(&args.tracking)?)?;

    let mut ids = Vec::new();
    let mut features = Vec::new();
    let mut skipped = Vec::new();
    for track in &tracks {
        let shooter = match &track.shooter_id {
            Some(id) => id.clone(),
            None => match track.ball_holder_at_shot() {
                Some(p) => p.id.clone(),
                None => {
                    skipped.push(Skipped {
                        possession_id: track.possession_id.clone(),
                        reason: "no players at the release frame".into(),
                    });
                    continue;
                }
            },
        };
        match extract_window(track, args.window_seconds, &shooter, track.defender_id.as_deref()) {
            Ok(w) => {
                ids.push(track.possession_id.clone());
                features.push(featurize(&w, &court, args.samples_per_path, args.canonicalize)?);
            }
            Err(
                e @ (DataError::InsufficientHistory { .. }
                | DataError::ExcessiveGaps { .. }
                | DataError::UnknownPlayer(_)),
            ) => skipped.push(Skipped {
                possession_id: track.possession_id.clone(),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
    }

    let needed = match args.k {
        KChoice::Fixed(k) => k,
        KChoice::Auto => 2,
    };
    if features.len() < needed {
        return Err(CliError::data(format!(
            "only {} usable windows ({} skipped); need at least {needed}",
            features.len(),
            skipped.len()
        )));
    }

    let gap = match args.k {
        KChoice::Fixed(_) => None,
        KChoice::Auto => {
            let k_max = args.k_max.min(features.len());
            let opts = GapOptions {
                n_init: args.n_init,
                ..GapOptions::new(1..=k_max, args.reference_sets, seed)
            };
            Some(gap_statistic(&features, &opts)?)
        }
    };
    let k = match (&gap, args.k) {
        (Some(g), _) => g.chosen_k,
        (None, KChoice::Fixed(k)) => k,
        (None, KChoice::Auto) => unreachable!("auto always computes the gap report"),
    };
    let model = kmeans(
        &features,
        &KMeansOptions {
            n_init: args.n_init,
            ..KMeansOptions::new(k, seed)
        },
    )?;
    let ranks = rank_clusters(&model, &features);

    let mut gyration = String::from("rank,cluster,size,gyration\n");
    for (i, r) in ranks.iter().enumerate() {
        let _ = writeln!(gyration, "{},{},{},{}", i + 1, r.cluster, r.size, r.gyration);
    }
    let report = ClusterReport {
        schema_version: kickout::SCHEMA_VERSION,
        input: input_name(&args.tracking),
        k,
        seed,
        samples_per_path: args.samples_per_path,
        window_seconds: args.window_seconds,
        canonicalize: args.canonicalize,
        n_windows: features.len(),
        possession_ids: ids,
        centroids: &model.centroids,
        assignments: &model.assignments,
        within_ss: model.within_ss,
        per_cluster: ranks,
        gap,
        skipped,
    };

    let mut out = Outputs::new(&global.out, global.force);
    out.add_json("clusters.json", &report);
    out.add("centroids.svg", plot::centroids_svg(&court, &model.centroids));
    out.add("gyration.csv", csv_with_schema(&gyration));
    out.commit()
}
