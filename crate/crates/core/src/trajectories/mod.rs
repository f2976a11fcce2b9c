//! Pre-shot movement patterns of corner shooters and their defenders.
//!
//! Windows are resampled into fixed-length feature vectors, grouped with
//! k-means (cluster count picked by the gap statistic) and ranked by size and
//! radius of gyration.

mod gap;
mod kmeans;

pub use gap::{gap_statistic, GapOptions, GapReport, GapRow, MIN_REFERENCE_SETS};
pub use kmeans::{kmeans, ClusterModel, KMeansOptions};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::court::{CourtSpec, Point2D};
use crate::data::TrajectoryWindow;

/// Default resampled points per path.
pub const DEFAULT_SAMPLES_PER_PATH: usize = 20;

#[derive(Debug, Error, PartialEq)]
pub enum TrajectoryError {
    #[error("trajectory window has no samples")]
    EmptyWindow,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("cluster has no members")]
    EmptyCluster,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Shooter path followed by defender path, each as `x0, y0, x1, y1, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Points per path, for vectors produced by [`featurize`].
    pub fn samples_per_path(&self) -> usize {
        self.values.len() / 4
    }

    fn path(&self, which: usize) -> Vec<Point2D> {
        let l = self.samples_per_path();
        self.values[which * 2 * l..(which + 1) * 2 * l]
            .chunks_exact(2)
            .map(|c| Point2D::new(c[0], c[1]))
            .collect()
    }

    pub fn shooter_path(&self) -> Vec<Point2D> {
        self.path(0)
    }

    pub fn defender_path(&self) -> Vec<Point2D> {
        self.path(1)
    }

    /// Reflection across the court's long axis.
    pub fn mirrored(&self) -> Self {
        Self {
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| if i % 2 == 0 { -v } else { v })
                .collect(),
        }
    }
}

fn resample(path: &[Point2D], l: usize) -> Vec<Point2D> {
    let n = path.len();
    if n == 1 || l == 1 {
        return vec![path[0]; l];
    }
    (0..l)
        .map(|i| {
            let pos = (i * (n - 1)) as f64 / (l - 1) as f64;
            let j = (pos.floor() as usize).min(n - 2);
            let w = pos - j as f64;
            if w == 0.0 {
                path[j]
            } else {
                path[j].lerp(&path[j + 1], w)
            }
        })
        .collect()
}

/// Resamples both paths to `samples_per_path` points, evenly spaced in time.
/// With `canonicalize`, windows whose shot is released on the left side are
/// mirrored so every corner shot reads as a right-corner shot.
pub fn featurize(
    w: &TrajectoryWindow,
    court: &CourtSpec,
    samples_per_path: usize,
    canonicalize: bool,
) -> Result<FeatureVector, TrajectoryError> {
    if w.shooter_path.is_empty() || w.defender_path.is_empty() {
        return Err(TrajectoryError::EmptyWindow);
    }
    if samples_per_path == 0 {
        return Err(TrajectoryError::Invalid("samples per path must be positive".into()));
    }
    let release = w.shooter_path[w.shooter_path.len() - 1];
    let mirror = canonicalize
        && !w.canonical
        && match court.classify_zone(&release) {
            Ok(zone) => zone.is_left(),
            Err(_) => release.x < 0.0,
        };
    let mut values = Vec::with_capacity(4 * samples_per_path);
    for path in [&w.shooter_path, &w.defender_path] {
        for p in resample(path, samples_per_path) {
            let p = if mirror { p.mirror_x() } else { p };
            values.push(p.x);
            values.push(p.y);
        }
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(TrajectoryError::Invalid("non-finite coordinate".into()));
    }
    Ok(FeatureVector { values })
}

/// Root-mean-square Euclidean distance of the members from their mean.
pub fn radius_of_gyration(members: &[FeatureVector]) -> Result<f64, TrajectoryError> {
    let Some(first) = members.first() else {
        return Err(TrajectoryError::EmptyCluster);
    };
    let dim = first.dim();
    if members.iter().any(|m| m.dim() != dim) {
        return Err(TrajectoryError::Invalid("feature dimensions differ".into()));
    }
    let n = members.len() as f64;
    let mut mean = vec![0.0; dim];
    for m in members {
        for (acc, v) in mean.iter_mut().zip(&m.values) {
            *acc += v;
        }
    }
    for v in &mut mean {
        *v /= n;
    }
    let ss: f64 = members.iter().map(|m| sq_dist(&m.values, &mean)).sum();
    Ok((ss / n).sqrt())
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRank {
    pub cluster: usize,
    pub size: usize,
    /// Radius of gyration in feet; 0 for a cluster with no members.
    pub gyration: f64,
}

/// Clusters by size, largest first (ties by cluster index).
pub fn rank_clusters(model: &ClusterModel, x: &[FeatureVector]) -> Vec<ClusterRank> {
    assert_eq!(model.assignments.len(), x.len(), "model was fitted on different data");
    let mut members: Vec<Vec<FeatureVector>> = vec![Vec::new(); model.k];
    for (v, &a) in x.iter().zip(&model.assignments) {
        members[a].push(v.clone());
    }
    let mut ranks: Vec<ClusterRank> = members
        .iter()
        .enumerate()
        .map(|(cluster, m)| ClusterRank {
            cluster,
            size: m.len(),
            gyration: radius_of_gyration(m).unwrap_or(0.0),
        })
        .collect();
    ranks.sort_by(|a, b| b.size.cmp(&a.size).then(a.cluster.cmp(&b.cluster)));
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{synthesize_dataset, SyntheticConfig};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn window(shooter: Vec<(f64, f64)>, defender: Vec<(f64, f64)>) -> TrajectoryWindow {
        TrajectoryWindow {
            shooter_path: shooter.into_iter().map(|(x, y)| Point2D::new(x, y)).collect(),
            defender_path: defender.into_iter().map(|(x, y)| Point2D::new(x, y)).collect(),
            duration: 4.0,
            canonical: false,
        }
    }

    #[test]
    fn stationary_window() {
        let w = window(vec![(22.3, 1.0); 100], vec![(14.0, 6.0); 100]);
        let f = featurize(&w, &CourtSpec::nba(), 4, false).unwrap();
        assert_eq!(
            f.values,
            vec![22.3, 1.0, 22.3, 1.0, 22.3, 1.0, 22.3, 1.0, 14.0, 6.0, 14.0, 6.0, 14.0, 6.0, 14.0, 6.0]
        );
    }

    #[test]
    fn native_length_is_identity() {
        let shooter: Vec<(f64, f64)> = (0..100).map(|i| (i as f64 * 0.173, (i as f64).sin())).collect();
        let defender: Vec<(f64, f64)> = (0..100).map(|i| (-(i as f64) * 0.1, 3.0 + (i as f64).cos())).collect();
        let w = window(shooter.clone(), defender.clone());
        let f = featurize(&w, &CourtSpec::nba(), 100, false).unwrap();
        let expect: Vec<f64> = shooter.iter().chain(&defender).flat_map(|&(x, y)| [x, y]).collect();
        assert_eq!(f.values, expect);
        assert_eq!(f.shooter_path().len(), 100);
        assert_eq!(f.defender_path()[99], Point2D::new(defender[99].0, defender[99].1));
    }

    #[test]
    fn resampling_interpolates_in_time() {
        let w = window(vec![(0.0, 0.0), (10.0, 20.0)], vec![(1.0, 1.0), (1.0, 1.0)]);
        let f = featurize(&w, &CourtSpec::nba(), 3, false).unwrap();
        assert_eq!(&f.values[..6], &[0.0, 0.0, 5.0, 10.0, 10.0, 20.0]);
    }

    #[test]
    fn left_corner_canonicalizes() {
        let right = window(vec![(20.0, 8.0), (22.5, 2.0)], vec![(14.0, 6.0), (18.0, 4.0)]);
        let left = right.mirrored();
        let court = CourtSpec::nba();
        let fr = featurize(&right, &court, 10, true).unwrap();
        let fl = featurize(&left, &court, 10, true).unwrap();
        assert_eq!(fr, fl);
        assert_eq!(featurize(&left, &court, 10, false).unwrap(), fr.mirrored());
    }

    #[test]
    fn empty_window() {
        let w = window(vec![], vec![]);
        assert_eq!(featurize(&w, &CourtSpec::nba(), 20, false), Err(TrajectoryError::EmptyWindow));
    }

    #[test]
    fn gyration_analytic_cases() {
        let one = [FeatureVector::new(vec![3.0, -1.0, 7.0])];
        assert_eq!(radius_of_gyration(&one).unwrap(), 0.0);
        let pair = [FeatureVector::new(vec![0.0, 0.0]), FeatureVector::new(vec![6.0, 8.0])];
        assert_eq!(radius_of_gyration(&pair).unwrap(), 5.0);
        assert_eq!(radius_of_gyration(&[]), Err(TrajectoryError::EmptyCluster));
    }

    #[test]
    fn gyration_pairwise_oracle() {
        let pts: Vec<FeatureVector> = [
            [1.0, 2.0, 0.5],
            [-3.0, 4.0, 1.5],
            [0.0, 0.0, 0.0],
            [2.5, -1.0, 3.0],
            [7.0, 1.0, -2.0],
        ]
        .iter()
        .map(|v| FeatureVector::new(v.to_vec()))
        .collect();
        let n = pts.len() as f64;
        let mut pair_sum = 0.0;
        for a in &pts {
            for b in &pts {
                pair_sum += sq_dist(&a.values, &b.values);
            }
        }
        let oracle = (pair_sum / (2.0 * n * n)).sqrt();
        assert_abs_diff_eq!(radius_of_gyration(&pts).unwrap(), oracle, epsilon = 1e-12);
    }

    #[test]
    fn stationed_clusters_rank_first_and_tightest() {
        let cfg = SyntheticConfig::bundled();
        let data = synthesize_dataset(&cfg).unwrap();
        let court = CourtSpec::nba();
        let x: Vec<FeatureVector> = data
            .windows
            .iter()
            .map(|w| featurize(w, &court, DEFAULT_SAMPLES_PER_PATH, false).unwrap())
            .collect();
        let model = kmeans(&x, &KMeansOptions::new(cfg.cluster_archetypes.len(), 7)).unwrap();
        let ranks = rank_clusters(&model, &x);
        assert_eq!(ranks.iter().map(|r| r.size).sum::<usize>(), x.len());
        let top: Vec<usize> = ranks[..2].iter().map(|r| r.cluster).collect();
        let max_other = ranks[2..].iter().map(|r| r.gyration).fold(0.0, f64::max);
        for r in &ranks[..2] {
            assert!(r.size > ranks[2].size);
            assert!(r.gyration < ranks[2..].iter().map(|r| r.gyration).fold(f64::INFINITY, f64::min));
        }
        assert!(max_other > 0.0);
        // both top clusters are the stationed archetypes
        for c in top {
            let labels: Vec<usize> = model
                .assignments
                .iter()
                .zip(&data.window_labels)
                .filter(|(&a, _)| a == c)
                .map(|(_, &l)| l)
                .collect();
            assert!(labels.iter().all(|&l| l == labels[0] && l < 2));
        }
    }

    #[test]
    fn identical_inputs_one_cluster() {
        let x = vec![FeatureVector::new(vec![1.0, 2.0, 3.0, 4.0]); 30];
        let model = kmeans(&x, &KMeansOptions::new(1, 0)).unwrap();
        let ranks = rank_clusters(&model, &x);
        assert_eq!(ranks, vec![ClusterRank { cluster: 0, size: 30, gyration: 0.0 }]);
    }

    proptest! {
        #[test]
        fn gyration_translation_and_scale(
            pts in proptest::collection::vec(proptest::collection::vec(-50.0f64..50.0, 3), 1..20),
            shift in proptest::collection::vec(-100.0f64..100.0, 3),
            scale in 0.01f64..10.0,
        ) {
            let base: Vec<FeatureVector> = pts.iter().map(|p| FeatureVector::new(p.clone())).collect();
            let moved: Vec<FeatureVector> = pts.iter()
                .map(|p| FeatureVector::new(p.iter().zip(&shift).map(|(a, b)| a + b).collect())).collect();
            let scaled: Vec<FeatureVector> = pts.iter()
                .map(|p| FeatureVector::new(p.iter().map(|a| a * scale).collect())).collect();
            let r = radius_of_gyration(&base).unwrap();
            prop_assert!((radius_of_gyration(&moved).unwrap() - r).abs() <= 1e-9 * (1.0 + r));
            prop_assert!((radius_of_gyration(&scaled).unwrap() - scale * r).abs() <= 1e-9 * (1.0 + scale * r));
        }

        #[test]
        fn featurize_commutes_with_mirror(
            shooter in proptest::collection::vec((-25.0f64..25.0, -5.0f64..40.0), 1..60),
            defender in proptest::collection::vec((-25.0f64..25.0, -5.0f64..40.0), 1..60),
            l in 1usize..30,
        ) {
            let w = window(shooter, defender);
            let court = CourtSpec::nba();
            let a = featurize(&w.mirrored(), &court, l, false).unwrap();
            let b = featurize(&w, &court, l, false).unwrap().mirrored();
            prop_assert_eq!(a, b);
        }
    }
}
