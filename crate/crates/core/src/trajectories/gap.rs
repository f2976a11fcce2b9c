//! Gap statistic for choosing the number of clusters.
//!
//! Reference sets are drawn uniformly from the bounding box of the data in its
//! principal-component frame, clustered like the data, and compared on
//! `log W_k`.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{kmeans, FeatureVector, KMeansOptions, TrajectoryError};
use crate::rng;

pub const MIN_REFERENCE_SETS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapOptions {
    pub k_values: Vec<usize>,
    /// Number of reference sets.
    pub b: usize,
    pub seed: u64,
    /// Restarts per k-means fit, on the data and on each reference set.
    pub n_init: usize,
    pub max_iter: usize,
}

impl GapOptions {
    pub fn new(k_values: impl IntoIterator<Item = usize>, b: usize, seed: u64) -> Self {
        Self {
            k_values: k_values.into_iter().collect(),
            b,
            seed,
            n_init: 5,
            max_iter: 300,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub k: usize,
    pub log_wk: f64,
    pub expected_log_wk_ref: f64,
    pub gap: f64,
    /// Standard deviation of the reference `log W_k`, inflated by `sqrt(1 + 1/B)`.
    pub s_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub rows: Vec<GapRow>,
    pub chosen_k: usize,
    pub b: usize,
    pub seed: u64,
}

/// Smallest k with `gap(k) >= gap(k+1) - s(k+1)`, else the largest k examined.
pub fn choose_k(rows: &[GapRow]) -> usize {
    rows.windows(2)
        .find(|w| w[0].gap >= w[1].gap - w[1].s_k)
        .map_or(rows[rows.len() - 1].k, |w| w[0].k)
}

fn log_w(x: &[FeatureVector], k: usize, seed: u64, opts: &GapOptions) -> Result<f64, TrajectoryError> {
    let m = kmeans(
        x,
        &KMeansOptions {
            k,
            seed,
            max_iter: opts.max_iter,
            tol: 1e-6,
            n_init: opts.n_init,
        },
    )?;
    Ok(m.within_ss.max(f64::MIN_POSITIVE).ln())
}

/// Uniform sampler over the principal-axis bounding box of `x`.
struct ReferenceBox {
    mean: Vec<f64>,
    axes: DMatrix<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl ReferenceBox {
    fn new(x: &[FeatureVector]) -> Self {
        let n = x.len();
        let dim = x[0].dim();
        let data = DMatrix::from_fn(n, dim, |i, j| x[i].values[j]);
        let mean: Vec<f64> = (0..dim).map(|j| data.column(j).sum() / n as f64).collect();
        let centered = DMatrix::from_fn(n, dim, |i, j| data[(i, j)] - mean[j]);
        let cov = centered.transpose() * &centered / (n as f64);
        let axes = SymmetricEigen::new(cov).eigenvectors;
        let projected = &centered * &axes;
        let lo = (0..dim).map(|j| projected.column(j).min()).collect();
        let hi = (0..dim).map(|j| projected.column(j).max()).collect();
        Self { mean, axes, lo, hi }
    }

    fn sample(&self, n: usize, rng: &mut impl Rng) -> Vec<FeatureVector> {
        let dim = self.mean.len();
        (0..n)
            .map(|_| {
                let z: Vec<f64> = (0..dim)
                    .map(|j| {
                        if self.hi[j] > self.lo[j] {
                            rng.random_range(self.lo[j]..=self.hi[j])
                        } else {
                            self.lo[j]
                        }
                    })
                    .collect();
                FeatureVector::new(
                    (0..dim)
                        .map(|r| self.mean[r] + (0..dim).map(|c| self.axes[(r, c)] * z[c]).sum::<f64>())
                        .collect(),
                )
            })
            .collect()
    }
}

pub fn gap_statistic(x: &[FeatureVector], opts: &GapOptions) -> Result<GapReport, TrajectoryError> {
    if opts.k_values.is_empty() {
        return Err(TrajectoryError::Invalid("k range is empty".into()));
    }
    if opts.b < MIN_REFERENCE_SETS {
        return Err(TrajectoryError::Invalid(format!(
            "need at least {MIN_REFERENCE_SETS} reference sets, got {}",
            opts.b
        )));
    }
    let mut ks = opts.k_values.clone();
    ks.sort_unstable();
    ks.dedup();
    let k_max = *ks.last().expect("non-empty");
    if ks[0] == 0 {
        return Err(TrajectoryError::Invalid("k must be at least 1".into()));
    }
    if x.len() < k_max {
        return Err(TrajectoryError::TooFewPoints {
            needed: k_max,
            got: x.len(),
        });
    }

    let data_seed = rng::derive_seed(opts.seed, u64::MAX);
    let observed: Vec<f64> = ks
        .iter()
        .map(|&k| log_w(x, k, data_seed, opts))
        .collect::<Result<_, _>>()?;

    let reference = ReferenceBox::new(x);
    let per_set: Vec<Vec<f64>> = (0..opts.b)
        .into_par_iter()
        .map(|b| {
            let set_seed = rng::derive_seed(opts.seed, b as u64);
            let sample = reference.sample(x.len(), &mut rng::stream(set_seed, 0));
            ks.iter()
                .map(|&k| log_w(&sample, k, set_seed, opts))
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let b = opts.b as f64;
    let rows: Vec<GapRow> = ks
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let vals: Vec<f64> = per_set.iter().map(|v| v[i]).collect();
            let mean = vals.iter().sum::<f64>() / b;
            let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / b).sqrt();
            GapRow {
                k,
                log_wk: observed[i],
                expected_log_wk_ref: mean,
                gap: mean - observed[i],
                s_k: sd * (1.0 + 1.0 / b).sqrt(),
            }
        })
        .collect();
    Ok(GapReport {
        chosen_k: choose_k(&rows),
        rows,
        b: opts.b,
        seed: opts.seed,
    })
}
