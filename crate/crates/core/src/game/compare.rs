//! Equilibrium play versus observed defender positioning.

use serde::{Deserialize, Serialize};

use super::{Equilibrium, GameError};

/// Bins below this mass count as empty when looking for separate modes.
const MODE_FLOOR: f64 = 0.01;
/// Minimum run of empty bins that separates two modes.
const MODE_GAP_BINS: usize = 3;
/// Minimum mass for a group of bins to count as a mode.
const MODE_MASS: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalComparison {
    pub n_observed: usize,
    pub observed_mean: f64,
    pub eq_mean: f64,
    /// Observations binned onto the equilibrium's strategy labels.
    pub observed_mix: Vec<f64>,
    pub total_variation: f64,
    pub observed_bimodal: bool,
    pub equilibrium_bimodal: bool,
}

/// Bins each observation to the nearest strategy label (clamped to the ends)
/// and compares the histogram with the defender mix.
pub fn compare_empirical(eq: &Equilibrium, observed: &[f64]) -> Result<EmpiricalComparison, GameError> {
    if observed.is_empty() {
        return Err(GameError::EmptyInput);
    }
    if observed.iter().any(|d| !d.is_finite()) {
        return Err(GameError::Config("observed distances must be finite".into()));
    }
    let labels = &eq.distances;
    let mut counts = vec![0usize; labels.len()];
    for &d in observed {
        counts[nearest_label(labels, d)] += 1;
    }
    let n = observed.len() as f64;
    let observed_mix: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let total_variation = 0.5
        * observed_mix
            .iter()
            .zip(&eq.defender_mix)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    Ok(EmpiricalComparison {
        n_observed: observed.len(),
        observed_mean: observed.iter().sum::<f64>() / n,
        eq_mean: eq.expected_defender_distance,
        observed_bimodal: is_bimodal(&observed_mix),
        equilibrium_bimodal: is_bimodal(&eq.defender_mix),
        observed_mix,
        total_variation,
    })
}

fn nearest_label(labels: &[f64], d: f64) -> usize {
    let mut best = 0;
    for (k, l) in labels.iter().enumerate() {
        // strict comparison keeps the lower label on exact midpoints
        if (l - d).abs() < (labels[best] - d).abs() {
            best = k;
        }
    }
    best
}

/// True when the histogram has at least two groups of occupied bins, each
/// holding 5% of the mass, separated by three or more near-empty bins.
pub fn is_bimodal(mix: &[f64]) -> bool {
    let mut modes = 0;
    let mut group_mass = 0.0;
    let mut empty_run = MODE_GAP_BINS;
    for &p in mix {
        if p >= MODE_FLOOR {
            if empty_run >= MODE_GAP_BINS {
                if group_mass >= MODE_MASS {
                    modes += 1;
                }
                group_mass = 0.0;
            }
            group_mass += p;
            empty_run = 0;
        } else {
            group_mass += p;
            empty_run += 1;
        }
    }
    if group_mass >= MODE_MASS {
        modes += 1;
    }
    modes >= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{build_payoff, solve_zero_sum, GameSpec, PayoffMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    fn pure_eq(at: usize) -> Equilibrium {
        let m = PayoffMatrix {
            row_labels: (1..=21).map(f64::from).collect(),
            col_labels: vec!["Drive".into(), "Pass".into()],
            entries: vec![vec![1.0, 1.0]; 21],
        };
        let mut x = vec![0.0; 21];
        x[at] = 1.0;
        Equilibrium::from_mixes(&m, x, vec![0.5, 0.5], 1.0)
    }

    #[test]
    fn pure_equilibrium_matches_itself() {
        let eq = pure_eq(12);
        let c = compare_empirical(&eq, &[13.0; 50]).unwrap();
        assert_eq!(c.total_variation, 0.0);
        assert_eq!(c.observed_mean, 13.0);
        assert_eq!(c.eq_mean, 13.0);
        assert!(!c.observed_bimodal);
    }

    #[test]
    fn empty_input() {
        assert!(matches!(compare_empirical(&pure_eq(0), &[]), Err(GameError::EmptyInput)));
    }

    #[test]
    fn binning_rounds_and_clamps() {
        let c = compare_empirical(&pure_eq(0), &[0.2, 1.4, 1.5, 25.0]).unwrap();
        assert_eq!(c.observed_mix[0], 0.75);
        assert_eq!(c.observed_mix[20], 0.25);
    }

    #[test]
    fn bell_shape_versus_bundled_equilibrium() {
        let eq = solve_zero_sum(&build_payoff(&GameSpec::bundled().with_alpha(1.3)).unwrap()).unwrap();
        let normal = Normal::new(12.3, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let obs: Vec<f64> = (0..5000).map(|_| normal.sample(&mut rng)).collect();
        let c = compare_empirical(&eq, &obs).unwrap();
        assert!(c.total_variation > 0.5);
        assert!((c.observed_mean - 12.3).abs() < 0.15);
        assert!(c.equilibrium_bimodal);
        assert!(!c.observed_bimodal);
    }

    #[test]
    fn bimodality_rule() {
        let mut mix = vec![0.0; 21];
        mix[0] = 0.5;
        mix[20] = 0.5;
        assert!(is_bimodal(&mix));
        mix[0] = 0.97;
        mix[20] = 0.03;
        assert!(!is_bimodal(&mix));
        let mut close = vec![0.0; 21];
        close[5] = 0.5;
        close[7] = 0.5;
        assert!(!is_bimodal(&close));
    }
}
