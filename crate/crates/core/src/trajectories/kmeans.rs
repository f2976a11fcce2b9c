//! Lloyd's algorithm with greedy k-means++ seeding and seeded restarts.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{sq_dist, FeatureVector, TrajectoryError};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeansOptions {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop once no centroid moves further than this.
    pub tol: f64,
    /// Independent restarts; the lowest within-cluster sum of squares wins.
    pub n_init: usize,
}

impl KMeansOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            max_iter: 300,
            tol: 1e-6,
            n_init: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterModel {
    pub k: usize,
    pub centroids: Vec<FeatureVector>,
    pub assignments: Vec<usize>,
    pub within_ss: f64,
    pub seed: u64,
    pub iterations: usize,
    /// Within-cluster sum of squares after each assignment step of the winning run.
    pub history: Vec<f64>,
}

/// Row-major copy of the inputs.
struct Points {
    data: Vec<f64>,
    dim: usize,
}

impl Points {
    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    fn len(&self) -> usize {
        self.data.len() / self.dim.max(1)
    }
}

pub fn kmeans(x: &[FeatureVector], opts: &KMeansOptions) -> Result<ClusterModel, TrajectoryError> {
    if opts.k == 0 {
        return Err(TrajectoryError::Invalid("k must be at least 1".into()));
    }
    if x.len() < opts.k {
        return Err(TrajectoryError::TooFewPoints {
            needed: opts.k,
            got: x.len(),
        });
    }
    let dim = x[0].dim();
    if dim == 0 || x.iter().any(|v| v.dim() != dim) {
        return Err(TrajectoryError::Invalid("feature vectors must share a positive dimension".into()));
    }
    if x.iter().any(|v| v.values.iter().any(|c| !c.is_finite())) {
        return Err(TrajectoryError::Invalid("non-finite feature".into()));
    }
    let pts = Points {
        data: x.iter().flat_map(|v| v.values.iter().copied()).collect(),
        dim,
    };
    let n_init = opts.n_init.max(1);
    let runs: Vec<Run> = (0..n_init)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng::stream(rng::derive_seed(opts.seed, r as u64), 0);
            lloyd(&pts, opts, &mut rng)
        })
        .collect();
    let best = runs
        .into_iter()
        .reduce(|best, run| if run.within_ss < best.within_ss { run } else { best })
        .expect("at least one run");
    Ok(ClusterModel {
        k: opts.k,
        centroids: best
            .centroids
            .chunks_exact(dim)
            .map(|c| FeatureVector::new(c.to_vec()))
            .collect(),
        assignments: best.assignments,
        within_ss: best.within_ss,
        seed: opts.seed,
        iterations: best.iterations,
        history: best.history,
    })
}

struct Run {
    centroids: Vec<f64>,
    assignments: Vec<usize>,
    within_ss: f64,
    iterations: usize,
    history: Vec<f64>,
}

/// Index drawn with probability proportional to `weights` (positive total).
fn sample_weighted(weights: &[f64], total: f64, rng: &mut ChaCha8Rng) -> usize {
    let mut u = rng.random::<f64>() * total;
    let mut pick = None;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            pick = Some(i);
            if u < w {
                break;
            }
            u -= w;
        }
    }
    pick.expect("positive total implies a positive weight")
}

/// Greedy k-means++: each new centre is the best of `2 + ln k` D^2-weighted
/// candidates by resulting potential.
fn seed_plus_plus(pts: &Points, k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = pts.len();
    let trials = 2 + (k as f64).ln().floor() as usize;
    let mut chosen = Vec::with_capacity(k);
    chosen.push(rng.random_range(0..n));
    let mut d2: Vec<f64> = (0..n).map(|i| sq_dist(pts.row(i), pts.row(chosen[0]))).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        if total > 0.0 {
            let mut best: Option<(f64, usize, Vec<f64>)> = None;
            for _ in 0..trials {
                let cand = sample_weighted(&d2, total, rng);
                let next: Vec<f64> =
                    (0..n).map(|i| d2[i].min(sq_dist(pts.row(i), pts.row(cand)))).collect();
                let potential: f64 = next.iter().sum();
                if best.as_ref().is_none_or(|b| potential < b.0) {
                    best = Some((potential, cand, next));
                }
            }
            let (_, cand, next) = best.expect("at least one trial");
            chosen.push(cand);
            d2 = next;
        } else {
            // every point coincides with a centroid: pick uniformly among the rest
            let rest: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
            let next = rest[rng.random_range(0..rest.len())];
            chosen.push(next);
            for (i, d) in d2.iter_mut().enumerate() {
                *d = d.min(sq_dist(pts.row(i), pts.row(next)));
            }
        }
    }
    chosen.iter().flat_map(|&i| pts.row(i).iter().copied()).collect()
}

/// Nearest centroid per point (lowest index on ties) and the total cost.
fn assign(pts: &Points, centroids: &[f64], assignments: &mut [usize]) -> f64 {
    let dim = pts.dim;
    let mut total = 0.0;
    for (i, a) in assignments.iter_mut().enumerate() {
        let p = pts.row(i);
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (c, centroid) in centroids.chunks_exact(dim).enumerate() {
            let d = sq_dist(p, centroid);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        *a = best;
        total += best_d;
    }
    total
}

fn lloyd(pts: &Points, opts: &KMeansOptions, rng: &mut ChaCha8Rng) -> Run {
    let (n, dim, k) = (pts.len(), pts.dim, opts.k);
    let mut centroids = seed_plus_plus(pts, k, rng);
    let mut assignments = vec![0; n];
    let mut history = Vec::new();
    let mut iterations = 0;
    while iterations < opts.max_iter {
        history.push(assign(pts, &centroids, &mut assignments));
        iterations += 1;

        let mut sums = vec![0.0; k * dim];
        let mut counts = vec![0usize; k];
        for (i, &a) in assignments.iter().enumerate() {
            counts[a] += 1;
            for (s, v) in sums[a * dim..(a + 1) * dim].iter_mut().zip(pts.row(i)) {
                *s += v;
            }
        }
        let mut next = centroids.clone();
        for c in 0..k {
            if counts[c] > 0 {
                for d in 0..dim {
                    next[c * dim + d] = sums[c * dim + d] / counts[c] as f64;
                }
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                // reseed at the point farthest from its own centroid
                let far = (0..n)
                    .map(|i| (i, sq_dist(pts.row(i), &next[assignments[i] * dim..(assignments[i] + 1) * dim])))
                    .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best })
                    .0;
                next[c * dim..(c + 1) * dim].copy_from_slice(pts.row(far));
                counts[assignments[far]] -= 1;
                assignments[far] = c;
                counts[c] = 1;
            }
        }
        let shift = next
            .chunks_exact(dim)
            .zip(centroids.chunks_exact(dim))
            .map(|(a, b)| sq_dist(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = next;
        if shift < opts.tol {
            break;
        }
    }
    let within_ss = assign(pts, &centroids, &mut assignments);
    history.push(within_ss);
    Run {
        centroids,
        assignments,
        within_ss,
        iterations,
        history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_distr::{Distribution, Normal};

    fn blobs(centers: &[[f64; 2]], per: usize, sd: f64, seed: u64) -> (Vec<FeatureVector>, Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, sd).unwrap();
        let mut x = Vec::new();
        let mut labels = Vec::new();
        for (l, c) in centers.iter().enumerate() {
            for _ in 0..per {
                x.push(FeatureVector::new(vec![c[0] + noise.sample(&mut rng), c[1] + noise.sample(&mut rng)]));
                labels.push(l);
            }
        }
        (x, labels)
    }

    fn recompute_ss(x: &[FeatureVector], m: &ClusterModel) -> f64 {
        x.iter()
            .zip(&m.assignments)
            .map(|(v, &a)| sq_dist(&v.values, &m.centroids[a].values))
            .sum()
    }

    #[test]
    fn planted_blobs_recovered() {
        let centers = [[0.0, 0.0], [50.0, 0.0], [0.0, 50.0]];
        let (x, labels) = blobs(&centers, 40, 1.0, 1);
        let m = kmeans(&x, &KMeansOptions::new(3, 42)).unwrap();
        // oracle: label each point by its nearest planted mean
        let means: Vec<Vec<f64>> = (0..3)
            .map(|l| {
                let members: Vec<&FeatureVector> = x.iter().zip(&labels).filter(|(_, &y)| y == l).map(|(v, _)| v).collect();
                (0..2).map(|d| members.iter().map(|v| v.values[d]).sum::<f64>() / members.len() as f64).collect()
            })
            .collect();
        let oracle: Vec<usize> = x
            .iter()
            .map(|v| (0..3).min_by(|&a, &b| sq_dist(&v.values, &means[a]).total_cmp(&sq_dist(&v.values, &means[b]))).unwrap())
            .collect();
        assert_eq!(oracle, labels);
        let mut map = [usize::MAX; 3];
        for (&a, &l) in m.assignments.iter().zip(&labels) {
            if map[l] == usize::MAX {
                map[l] = a;
            }
            assert_eq!(map[l], a);
        }
        assert!(map[0] != map[1] && map[1] != map[2] && map[0] != map[2]);
    }

    #[test]
    fn k_equals_n_is_exact() {
        let (x, _) = blobs(&[[0.0, 0.0]], 12, 5.0, 2);
        let m = kmeans(&x, &KMeansOptions::new(12, 3)).unwrap();
        assert_eq!(m.within_ss, 0.0);
    }

    #[test]
    fn k_one_is_mean() {
        let (x, _) = blobs(&[[3.0, -2.0]], 25, 2.0, 4);
        let m = kmeans(&x, &KMeansOptions::new(1, 0)).unwrap();
        for d in 0..2 {
            let mean = x.iter().map(|v| v.values[d]).sum::<f64>() / 25.0;
            assert!((m.centroids[0].values[d] - mean).abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_points() {
        let x = vec![FeatureVector::new(vec![0.0]); 2];
        assert_eq!(
            kmeans(&x, &KMeansOptions::new(3, 0)),
            Err(TrajectoryError::TooFewPoints { needed: 3, got: 2 })
        );
    }

    #[test]
    fn duplicate_points_seed_uniformly() {
        let x = vec![FeatureVector::new(vec![1.0, 1.0]); 6];
        let m = kmeans(&x, &KMeansOptions::new(4, 9)).unwrap();
        assert_eq!(m.within_ss, 0.0);
        assert_eq!(m.assignments.len(), 6);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let (x, _) = blobs(&[[0.0, 0.0], [9.0, 1.0], [4.0, 7.0]], 50, 2.5, 5);
        let opts = KMeansOptions::new(3, 77);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| kmeans(&x, &opts).unwrap());
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| kmeans(&x, &opts).unwrap());
        assert_eq!(one, four);
    }

    proptest! {
        #[test]
        fn lloyd_invariants(seed in 0u64..1000, k in 1usize..6, n in 6usize..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<FeatureVector> = (0..n)
                .map(|_| FeatureVector::new(vec![rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0), rng.random_range(-1.0..1.0)]))
                .collect();
            let m = kmeans(&x, &KMeansOptions { n_init: 2, ..KMeansOptions::new(k, seed) }).unwrap();
            for w in m.history.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-9 * w[0].max(1.0));
            }
            prop_assert!(m.assignments.iter().all(|&a| a < k));
            let ss = recompute_ss(&x, &m);
            prop_assert!((ss - m.within_ss).abs() <= 1e-9 * ss.max(1.0));
            for (v, &a) in x.iter().zip(&m.assignments) {
                let own = sq_dist(&v.values, &m.centroids[a].values);
                for c in &m.centroids {
                    prop_assert!(own <= sq_dist(&v.values, &c.values) + 1e-9);
                }
            }
        }
    }
}
