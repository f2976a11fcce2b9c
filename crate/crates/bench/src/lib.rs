//! Seeded fixtures shared by the benchmarks.

use kickout::game::PayoffMatrix;
use kickout::trajectories::FeatureVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// `rows x 2` matrix with entries uniform on [0, 3).
pub fn random_payoff(rows: usize, seed: u64) -> PayoffMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PayoffMatrix::new(
        (0..rows)
            .map(|_| vec![rng.random_range(0.0..3.0), rng.random_range(0.0..3.0)])
            .collect(),
    )
    .expect("valid matrix")
}

/// `k` unit-variance blobs of `per` points in `dim` dimensions, centres spaced 10 apart.
pub fn blobs(k: usize, per: usize, dim: usize, seed: u64) -> Vec<FeatureVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 1.0).expect("unit normal");
    (0..k)
        .flat_map(|c| {
            (0..per)
                .map(|_| {
                    FeatureVector::new(
                        (0..dim)
                            .map(|j| if j == c % dim { 10.0 * c as f64 } else { 0.0 } + noise.sample(&mut rng))
                            .collect(),
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect()
}
