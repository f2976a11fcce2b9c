//! Simultaneous fictitious play, used as an independent check on the LP.

use serde::{Deserialize, Serialize};

use super::{Equilibrium, PayoffMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FictitiousPlay {
    /// Empirical mixes after `iterations` rounds; `value` is the midpoint of the bounds.
    pub equilibrium: Equilibrium,
    pub iterations: u64,
    /// `min_i (A y)_i` for the empirical offense mix.
    pub lower: f64,
    /// `max_j (x^T A)_j` for the empirical defender mix.
    pub upper: f64,
}

impl FictitiousPlay {
    /// `upper - lower`, never negative.
    pub fn exploitability(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Each round both players best-respond to the other's empirical play so far;
/// ties go to the lowest index.
pub fn fictitious_play(m: &PayoffMatrix, iters: u64) -> FictitiousPlay {
    assert!(iters >= 1, "fictitious play needs at least one iteration");
    let (rows, cols) = (m.rows(), m.cols());
    // column-major copy so the row-sum update walks contiguous memory
    let by_col: Vec<Vec<f64>> = (0..cols).map(|j| (0..rows).map(|i| m.get(i, j)).collect()).collect();
    let mut row_payoff = vec![0.0; rows]; // sum over past offense plays of A[i][j_t]
    let mut col_payoff = vec![0.0; cols]; // sum over past defender plays of A[i_t][j]
    let mut row_count = vec![0u64; rows];
    let mut col_count = vec![0u64; cols];

    for _ in 0..iters {
        let i = argmin(&row_payoff);
        let j = argmax(&col_payoff);
        row_count[i] += 1;
        col_count[j] += 1;
        for (acc, a) in row_payoff.iter_mut().zip(&by_col[j]) {
            *acc += a;
        }
        for (acc, a) in col_payoff.iter_mut().zip(&m.entries[i]) {
            *acc += a;
        }
    }

    let t = iters as f64;
    let lower = row_payoff.iter().copied().fold(f64::INFINITY, f64::min) / t;
    let upper = col_payoff.iter().copied().fold(f64::NEG_INFINITY, f64::max) / t;
    let x: Vec<f64> = row_count.iter().map(|&c| c as f64 / t).collect();
    let y: Vec<f64> = col_count.iter().map(|&c| c as f64 / t).collect();
    FictitiousPlay {
        equilibrium: Equilibrium::from_mixes(m, x, y, 0.5 * (lower + upper)),
        iterations: iters,
        lower,
        upper,
    }
}

fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for (k, &x) in v.iter().enumerate().skip(1) {
        if x < v[best] {
            best = k;
        }
    }
    best
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (k, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = k;
        }
    }
    best
}
