//! Exact zero-sum solution by a dense tableau simplex.
//!
//! With the payoffs shifted to be at least 1 the defender's problem becomes
//! `max sum(u)  s.t.  A'^T u <= 1, u >= 0`, whose slack basis is feasible, so a
//! single phase suffices. The defender mix is `u / sum(u)` and the offense mix
//! comes from the optimal duals of the column constraints.

use super::{Equilibrium, GameError, PayoffMatrix};

/// Largest accepted gap between the two players' guarantees.
pub const DUALITY_TOLERANCE: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-12;

/// `(min_i (A y)_i, max_j (x^T A)_j)`: what the offense mix `y` guarantees
/// against every pure defender row, and what the defender mix `x` concedes to
/// the best pure offense column.
pub fn best_response_bounds(m: &PayoffMatrix, x: &[f64], y: &[f64]) -> (f64, f64) {
    let lower = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) * y[j]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let upper = (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m.get(i, j) * x[i]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    (lower, upper)
}

struct Tableau {
    /// `cols` constraint rows of width `rows + cols + 1` (last entry is the rhs).
    t: Vec<Vec<f64>>,
    /// Reduced costs followed by the negated objective value.
    obj: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, k: usize) {
        let p = self.t[r][k];
        for v in &mut self.t[r] {
            *v /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                let f = row[k];
                if f != 0.0 {
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                    row[k] = 0.0;
                }
            }
        }
        let f = self.obj[k];
        for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        self.obj[k] = 0.0;
        self.basis[r] = k;
    }
}

pub fn solve_zero_sum(m: &PayoffMatrix) -> Result<Equilibrium, GameError> {
    m.validate()?;
    let (rows, cols) = (m.rows(), m.cols());
    let min = m.entries.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let max = m.entries.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    let shift = 1.0 - min;
    let width = rows + cols + 1;

    let mut tab = Tableau {
        t: (0..cols)
            .map(|j| {
                let mut row = vec![0.0; width];
                for (i, cell) in row[..rows].iter_mut().enumerate() {
                    *cell = m.get(i, j) + shift;
                }
                row[rows + j] = 1.0;
                row[width - 1] = 1.0;
                row
            })
            .collect(),
        obj: (0..width).map(|k| if k < rows { 1.0 } else { 0.0 }).collect(),
        basis: (rows..rows + cols).collect(),
    };

    let max_pivots = 50 * width;
    let mut optimal = false;
    for _ in 0..max_pivots {
        // Bland's rule: lowest-index improving column, lowest-index basic
        // variable among tied ratios.
        let Some(k) = (0..width - 1).find(|&k| tab.obj[k] > PIVOT_EPS) else {
            optimal = true;
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..cols {
            let a = tab.t[r][k];
            if a > PIVOT_EPS {
                let ratio = tab.t[r][width - 1] / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, bratio)) => {
                        let tol = 1e-12 * bratio.abs().max(1.0);
                        if ratio < bratio - tol
                            || (ratio <= bratio + tol && tab.basis[r] < tab.basis[br])
                        {
                            Some((r, ratio))
                        } else {
                            Some((br, bratio))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = leave else {
            return Err(GameError::NumericalFailure(
                "linear program reported unbounded".into(),
            ));
        };
        tab.pivot(r, k);
    }
    if !optimal {
        return Err(GameError::NumericalFailure(format!(
            "simplex exceeded {max_pivots} pivots"
        )));
    }

    let mut u = vec![0.0; rows];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < rows {
            u[b] = tab.t[r][width - 1].max(0.0);
        }
    }
    let w: Vec<f64> = (0..cols).map(|j| (-tab.obj[rows + j]).max(0.0)).collect();
    let x = normalize(&u)?;
    let y = normalize(&w)?;

    let (lower, upper) = best_response_bounds(m, &x, &y);
    let gap = upper - lower;
    // NaN gaps fail too
    if gap.is_nan() || gap.abs() > DUALITY_TOLERANCE {
        return Err(GameError::NumericalFailure(format!(
            "duality gap {gap:e} exceeds {DUALITY_TOLERANCE:e} (payoff range [{min}, {max}], shift {shift})"
        )));
    }
    let value: f64 = (0..rows)
        .map(|i| x[i] * (0..cols).map(|j| m.get(i, j) * y[j]).sum::<f64>())
        .sum();
    Ok(Equilibrium::from_mixes(m, x, y, value))
}

fn normalize(v: &[f64]) -> Result<Vec<f64>, GameError> {
    let total: f64 = v.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(GameError::NumericalFailure(format!(
            "degenerate mix with total mass {total}"
        )));
    }
    Ok(v.iter().map(|p| p / total).collect())
}
