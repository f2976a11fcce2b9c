use std::collections::BTreeSet;

use kickout::analytics::{assist_stats, gap_decomposition, pass_origin_table};
use kickout::court::CourtSpec;
use kickout::data::{
    extract_window, parse_shot_log, parse_tracking, synthesize_dataset, window_to_track,
    write_shot_log, write_tracking, ShotLogFormat,
};
use kickout::shotmodel::fit_logistic;
use kickout::trajectories::{
    featurize, gap_statistic, kmeans, rank_clusters, GapOptions, KMeansOptions,
    DEFAULT_SAMPLES_PER_PATH,
};
use kickout::SyntheticConfig;

#[test]
fn shot_log_survives_both_formats() {
    let cfg = SyntheticConfig {
        n_shots: 3000,
        n_windows: 0,
        ..SyntheticConfig::bundled()
    };
    let shots = synthesize_dataset(&cfg).unwrap().shots;
    for format in [ShotLogFormat::Csv, ShotLogFormat::Json] {
        let back = parse_shot_log(&write_shot_log(&shots, format), format).unwrap();
        assert_eq!(back, shots);
    }
    let court = CourtSpec::nba();
    let stats = assist_stats(&shots, &court).unwrap();
    assert!(stats.c3_assist_rate > stats.atb3_assist_rate);
    let model = fit_logistic(&shots).unwrap();
    let g = gap_decomposition(&shots, &court, &model, None).unwrap();
    assert_eq!(g.residual_gap, g.observed_fg_gap - g.distance_predicted_gap);
    let table = pass_origin_table(&shots, &court).unwrap();
    assert!(table.left_corner.is_some() && table.right_corner.is_some());
}

#[test]
fn archetypes_recovered_from_tracking() {
    let cfg = SyntheticConfig::bundled();
    let data = synthesize_dataset(&cfg).unwrap();
    let court = CourtSpec::nba();

    // through the tracking format and window extraction, as the CLI does
    let tracks: Vec<_> = data
        .windows
        .iter()
        .enumerate()
        .map(|(i, w)| window_to_track(w, &format!("w{i}"), cfg.sample_rate, cfg.lead_in_seconds))
        .collect();
    let parsed = parse_tracking(&write_tracking(&tracks)).unwrap();
    let x: Vec<_> = parsed
        .iter()
        .map(|t| {
            let w = extract_window(t, cfg.window_seconds, t.shooter_id.as_deref().unwrap(), t.defender_id.as_deref())
                .unwrap();
            featurize(&w, &court, DEFAULT_SAMPLES_PER_PATH, false).unwrap()
        })
        .collect();

    let planted = cfg.cluster_archetypes.len();
    let opts = GapOptions {
        n_init: 10,
        ..GapOptions::new(1..=12, 20, 7)
    };
    let report = gap_statistic(&x, &opts).unwrap();
    assert_eq!(report.chosen_k, planted);

    let model = kmeans(&x, &KMeansOptions::new(planted, 7)).unwrap();
    // every fitted cluster holds a single archetype
    for c in 0..planted {
        let labels: BTreeSet<usize> = model
            .assignments
            .iter()
            .zip(&data.window_labels)
            .filter(|(a, _)| **a == c)
            .map(|(_, l)| *l)
            .collect();
        assert_eq!(labels.len(), 1, "cluster {c} mixes {labels:?}");
    }
    // the two stationed archetypes are the largest and the tightest clusters
    let ranks = rank_clusters(&model, &x);
    let tight = ranks.iter().map(|r| r.gyration).fold(f64::INFINITY, f64::min);
    for r in &ranks[..2] {
        let label = data.window_labels[model.assignments.iter().position(|a| *a == r.cluster).unwrap()];
        assert!(cfg.cluster_archetypes[label].name.starts_with("Stationed"));
        assert!(r.gyration < 2.0 * tight);
    }
    assert!(ranks[2..].iter().all(|r| r.gyration > 2.0 * ranks[0].gyration));
}
