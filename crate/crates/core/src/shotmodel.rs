//! Make-probability and expected-points models.
//!
//! [`LogisticModel`] regresses makes on shot distance alone and is fitted by
//! Newton's method on the Bernoulli log-likelihood (iteratively reweighted
//! least squares) with step halving. [`ContestCurve`] maps closest-defender
//! distance to league-average points per shot; it is configuration, not a fit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::court::{CourtError, CourtSpec, ShotClass, Zone};
use crate::data::ShotEvent;

pub const GRADIENT_TOLERANCE: f64 = 1e-8;
pub const MAX_NEWTON_ITERATIONS: usize = 200;

#[derive(Debug, Error)]
pub enum ShotModelError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("logistic fit did not converge (gradient inf-norm {gradient_inf_norm:e})")]
    NotConverged {
        model: LogisticModel,
        gradient_inf_norm: f64,
    },
    #[error("defender distance {distance} outside curve range [{min}, {max}]")]
    OutOfRange { distance: f64, min: f64, max: f64 },
    #[error("no shots to summarize")]
    EmptyInput,
    #[error("invalid contest curve: {0}")]
    Config(String),
    #[error(transparent)]
    Court(#[from] CourtError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    /// Intercept, in log-odds.
    pub beta0: f64,
    /// Log-odds change per foot of distance.
    pub beta1: f64,
    pub n_obs: usize,
    /// Log-likelihood (nats) at the fitted coefficients.
    #[serde(rename = "loglik")]
    pub fit_loglik: f64,
}

impl LogisticModel {
    pub fn new(beta0: f64, beta1: f64) -> Self {
        Self {
            beta0,
            beta1,
            n_obs: 0,
            fit_loglik: 0.0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn predict_make_prob(&self, distance: f64) -> f64 {
        sigmoid(self.beta0 + self.beta1 * distance)
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// log(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Bernoulli log-likelihood of `made ~ beta[0] + beta[1] * distance`.
pub fn log_likelihood(beta: [f64; 2], distance: &[f64], made: &[bool]) -> f64 {
    compensated_sum(distance.iter().zip(made).map(|(&x, &y)| {
        let eta = beta[0] + beta[1] * x;
        (if y { eta } else { 0.0 }) - softplus(eta)
    }))
}

pub fn gradient(beta: [f64; 2], distance: &[f64], made: &[bool]) -> [f64; 2] {
    let resid = |x: f64, y: bool| f64::from(u8::from(y)) - sigmoid(beta[0] + beta[1] * x);
    [
        compensated_sum(distance.iter().zip(made).map(|(&x, &y)| resid(x, y))),
        compensated_sum(distance.iter().zip(made).map(|(&x, &y)| resid(x, y) * x)),
    ]
}

/// Observed (= expected) information matrix `sum p(1-p) [1 x; x x^2]`.
pub fn information(beta: [f64; 2], distance: &[f64]) -> [[f64; 2]; 2] {
    let mut h = [[0.0; 2]; 2];
    for &x in distance {
        let p = sigmoid(beta[0] + beta[1] * x);
        let w = p * (1.0 - p);
        h[0][0] += w;
        h[0][1] += w * x;
        h[1][1] += w * x * x;
    }
    h[1][0] = h[0][1];
    h
}

fn invert2(m: [[f64; 2]; 2]) -> Option<[[f64; 2]; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if !(det.is_finite() && det.abs() > f64::EPSILON * (m[0][0] * m[1][1]).abs().max(1e-300)) {
        return None;
    }
    Some([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

/// Inverse Fisher information: the asymptotic covariance of the estimates.
pub fn fisher_covariance(model: &LogisticModel, distance: &[f64]) -> Option<[[f64; 2]; 2]> {
    invert2(information([model.beta0, model.beta1], distance))
}

/// Fits on every shot in the log.
pub fn fit_logistic(shots: &[ShotEvent]) -> Result<LogisticModel, ShotModelError> {
    let distance: Vec<f64> = shots.iter().map(|s| s.location.distance_to_basket()).collect();
    let made: Vec<bool> = shots.iter().map(|s| s.made).collect();
    fit_logistic_data(&distance, &made)
}

/// Fits on three-point attempts only.
pub fn fit_logistic_threes(shots: &[ShotEvent]) -> Result<LogisticModel, ShotModelError> {
    let threes: Vec<ShotEvent> = shots.iter().filter(|s| s.shot_value == 3).cloned().collect();
    fit_logistic(&threes)
}

pub fn fit_logistic_data(distance: &[f64], made: &[bool]) -> Result<LogisticModel, ShotModelError> {
    assert_eq!(distance.len(), made.len(), "distance/made length mismatch");
    let n = distance.len();
    if n < 2 {
        return Err(ShotModelError::Degenerate("need at least two shots".into()));
    }
    if distance.iter().any(|d| !d.is_finite()) {
        return Err(ShotModelError::Degenerate("non-finite distance".into()));
    }
    let makes = made.iter().filter(|&&m| m).count();
    if makes == 0 || makes == n {
        return Err(ShotModelError::Degenerate("outcomes are all made or all missed".into()));
    }
    let (lo, hi) = distance
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| (lo.min(d), hi.max(d)));
    if lo == hi {
        return Err(ShotModelError::Degenerate("all distances are equal".into()));
    }
    // In one dimension the MLE fails to exist exactly when a threshold splits
    // makes from misses (complete or quasi-complete separation).
    let extent = |want: bool| {
        distance
            .iter()
            .zip(made)
            .filter(|(_, &m)| m == want)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (&d, _)| (lo.min(d), hi.max(d)))
    };
    let (make_lo, make_hi) = extent(true);
    let (miss_lo, miss_hi) = extent(false);
    if make_hi <= miss_lo || miss_hi <= make_lo {
        return Err(ShotModelError::Degenerate("outcomes are separable by distance".into()));
    }

    let rate = makes as f64 / n as f64;
    let mut beta = [(rate / (1.0 - rate)).ln(), 0.0];
    let mut ll = log_likelihood(beta, distance, made);
    let mut grad = gradient(beta, distance, made);
    let inf_norm = |g: [f64; 2]| g[0].abs().max(g[1].abs());

    for _ in 0..MAX_NEWTON_ITERATIONS {
        if inf_norm(grad) < GRADIENT_TOLERANCE {
            return Ok(LogisticModel {
                beta0: beta[0],
                beta1: beta[1],
                n_obs: n,
                fit_loglik: ll,
            });
        }
        let Some(inv) = invert2(information(beta, distance)) else {
            break;
        };
        let step = [
            inv[0][0] * grad[0] + inv[0][1] * grad[1],
            inv[1][0] * grad[0] + inv[1][1] * grad[1],
        ];
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial = [beta[0] + scale * step[0], beta[1] + scale * step[1]];
            let trial_ll = log_likelihood(trial, distance, made);
            // allow rounding-level decreases near the optimum
            if trial_ll >= ll - 1e-12 * ll.abs().max(1.0) {
                beta = trial;
                ll = trial_ll;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        grad = gradient(beta, distance, made);
        if !accepted {
            break;
        }
    }
    if inf_norm(grad) < GRADIENT_TOLERANCE {
        return Ok(LogisticModel {
            beta0: beta[0],
            beta1: beta[1],
            n_obs: n,
            fit_loglik: ll,
        });
    }
    Err(ShotModelError::NotConverged {
        model: LogisticModel {
            beta0: beta[0],
            beta1: beta[1],
            n_obs: n,
            fit_loglik: ll,
        },
        gradient_inf_norm: inf_norm(grad),
    })
}

pub fn predict_make_prob(model: &LogisticModel, distance: f64) -> f64 {
    model.predict_make_prob(distance)
}

/// Expected points of a shot made with probability `p_make`.
pub fn expected_points(p_make: f64, shot_value: u8) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p_make));
    debug_assert!(matches!(shot_value, 2 | 3));
    p_make * f64::from(shot_value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveClass {
    C3,
    Drive,
}

/// Piecewise-linear expected points as a function of closest-defender distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContestCurve {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub shot_class: CurveClass,
    /// `[defender_distance_ft, expected_points]` pairs, strictly increasing in distance.
    pub knots: Vec<[f64; 2]>,
}

pub const CURVE_DOMAIN: (f64, f64) = (0.0, 22.0);

fn schema_version() -> u32 {
    crate::SCHEMA_VERSION
}

impl ContestCurve {
    pub fn new(shot_class: CurveClass, knots: Vec<[f64; 2]>) -> Result<Self, ShotModelError> {
        let curve = Self {
            schema_version: crate::SCHEMA_VERSION,
            shot_class,
            knots,
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn from_json(text: &str) -> Result<Self, ShotModelError> {
        let curve: Self =
            serde_json::from_str(text).map_err(|e| ShotModelError::Config(e.to_string()))?;
        curve.validate()?;
        Ok(curve)
    }

    /// The shipped corner-three curve.
    pub fn bundled_c3() -> Self {
        Self::from_json(crate::config::CONTEST_C3).expect("bundled contest curve is valid")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve serializes")
    }

    pub fn validate(&self) -> Result<(), ShotModelError> {
        let fail = |m: &str| Err(ShotModelError::Config(m.to_string()));
        if self.schema_version != crate::SCHEMA_VERSION {
            return fail("unsupported schema_version");
        }
        if self.knots.len() < 2 {
            return fail("need at least two knots");
        }
        if self.knots.iter().any(|k| !(k[0].is_finite() && k[1].is_finite())) {
            return fail("knots must be finite");
        }
        if self.knots.windows(2).any(|w| w[1][0] <= w[0][0]) {
            return fail("knot distances must be strictly increasing");
        }
        if self.knots[0][0] > CURVE_DOMAIN.0 || self.knots[self.knots.len() - 1][0] < CURVE_DOMAIN.1 {
            return fail("knots must cover [0, 22] ft");
        }
        if self.knots.iter().any(|k| k[1] < 0.0) {
            return fail("expected points must be >= 0");
        }
        if self.shot_class == CurveClass::C3 && self.knots.windows(2).any(|w| w[1][1] < w[0][1]) {
            return fail("a C3 curve must be non-decreasing in defender distance");
        }
        Ok(())
    }

    pub fn contest_points(&self, defender_distance: f64) -> Result<f64, ShotModelError> {
        let min = self.knots[0][0];
        let max = self.knots[self.knots.len() - 1][0];
        if !(defender_distance >= min && defender_distance <= max) {
            return Err(ShotModelError::OutOfRange {
                distance: defender_distance,
                min,
                max,
            });
        }
        // first knot with distance >= d
        let i = self.knots.partition_point(|k| k[0] < defender_distance);
        let hi = self.knots[i];
        if hi[0] == defender_distance || i == 0 {
            return Ok(hi[1]);
        }
        let lo = self.knots[i - 1];
        let w = (defender_distance - lo[0]) / (hi[0] - lo[0]);
        Ok(lo[1] + w * (hi[1] - lo[1]))
    }
}

pub fn contest_points(curve: &ContestCurve, defender_distance: f64) -> Result<f64, ShotModelError> {
    curve.contest_points(defender_distance)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub attempts: u64,
    pub makes: u64,
    pub assisted: u64,
    pub points: u64,
}

impl Tally {
    fn add(&mut self, shot: &ShotEvent) {
        self.attempts += 1;
        self.makes += u64::from(shot.made);
        self.assisted += u64::from(shot.assisted);
        self.points += u64::from(shot.points());
    }

    fn ratio(num: u64, den: u64) -> f64 {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    }

    pub fn fg_pct(&self) -> f64 {
        Self::ratio(self.makes, self.attempts)
    }

    pub fn pps(&self) -> f64 {
        Self::ratio(self.points, self.attempts)
    }

    pub fn assisted_rate(&self) -> f64 {
        Self::ratio(self.assisted, self.attempts)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneEfficiency {
    pub zone: Zone,
    pub attempts: u64,
    pub makes: u64,
    pub fg_pct: f64,
    /// Points per shot.
    pub pps: f64,
    pub assisted_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassEfficiency {
    pub class: ShotClass,
    pub attempts: u64,
    pub makes: u64,
    pub fg_pct: f64,
    pub pps: f64,
    pub assisted_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencySummary {
    pub zones: Vec<ZoneEfficiency>,
    pub classes: Vec<ClassEfficiency>,
    /// 100 * (pps(C3) - pps(ATB3)), absent when either class has no attempts.
    pub c3_vs_atb3_gap: Option<f64>,
}

impl EfficiencySummary {
    pub fn class(&self, class: ShotClass) -> &ClassEfficiency {
        self.classes
            .iter()
            .find(|c| c.class == class)
            .expect("every class is reported")
    }

    pub fn zone(&self, zone: Zone) -> &ZoneEfficiency {
        &self.zones[zone.index()]
    }
}

pub fn efficiency_summary(
    shots: &[ShotEvent],
    court: &CourtSpec,
) -> Result<EfficiencySummary, ShotModelError> {
    if shots.is_empty() {
        return Err(ShotModelError::EmptyInput);
    }
    let mut zones = [Tally::default(); 12];
    let classes = [ShotClass::C3, ShotClass::Atb3, ShotClass::TwoPoint];
    let mut by_class = [Tally::default(); 3];
    for shot in shots {
        let zone = court.classify_zone(&shot.location)?;
        let class = court.classify_shot(&shot.location)?;
        zones[zone.index()].add(shot);
        let ci = classes.iter().position(|c| *c == class).expect("known class");
        by_class[ci].add(shot);
    }
    let c3 = by_class[0];
    let atb3 = by_class[1];
    let gap = (c3.attempts > 0 && atb3.attempts > 0).then(|| 100.0 * (c3.pps() - atb3.pps()));
    Ok(EfficiencySummary {
        zones: Zone::ALL
            .iter()
            .map(|&z| {
                let t = zones[z.index()];
                ZoneEfficiency {
                    zone: z,
                    attempts: t.attempts,
                    makes: t.makes,
                    fg_pct: t.fg_pct(),
                    pps: t.pps(),
                    assisted_rate: t.assisted_rate(),
                }
            })
            .collect(),
        classes: classes
            .iter()
            .zip(by_class)
            .map(|(&class, t)| ClassEfficiency {
                class,
                attempts: t.attempts,
                makes: t.makes,
                fg_pct: t.fg_pct(),
                pps: t.pps(),
                assisted_rate: t.assisted_rate(),
            })
            .collect(),
        c3_vs_atb3_gap: gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::court::{League, Point2D};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shot(x: f64, y: f64, made: bool, value: u8) -> ShotEvent {
        ShotEvent {
            shot_id: String::new(),
            shooter_id: String::new(),
            location: Point2D::new(x, y),
            made,
            assisted: false,
            closest_defender_distance: None,
            shot_value: value,
            pass_origin: None,
            league: League::Nba,
        }
    }

    #[test]
    fn expected_points_examples() {
        assert_abs_diff_eq!(expected_points(0.38, 3), 1.14, epsilon = 1e-12);
        assert_abs_diff_eq!(expected_points(0.45, 2), 0.90, epsilon = 1e-12);
        assert_eq!(expected_points(0.0, 3), 0.0);
    }

    #[test]
    fn predict_examples() {
        let flat = LogisticModel::new(0.0, 0.0);
        for d in [0.0, 10.0, 30.0] {
            assert_eq!(flat.predict_make_prob(d), 0.5);
        }
        let steep = LogisticModel::new(0.0, -50.0);
        let probs: Vec<f64> = (0..30).map(|d| steep.predict_make_prob(d as f64 * 0.1)).collect();
        assert!(probs.windows(2).all(|w| w[1] <= w[0]));
        assert!(probs.iter().all(|p| (0.0..1.0).contains(p) || *p == 0.0));
    }

    #[test]
    fn reference_model_reproduces_distance_gap() {
        let m = LogisticModel::from_json(crate::config::PAPER_LOGISTIC).unwrap();
        let gap = m.predict_make_prob(23.0) - m.predict_make_prob(25.1);
        assert!((gap - 0.018).abs() < 5e-4, "gap {gap}");
    }

    #[test]
    fn equal_distances_are_degenerate() {
        let d = vec![20.0; 10];
        let y: Vec<bool> = (0..10).map(|i| i % 2 == 0).collect();
        assert!(matches!(fit_logistic_data(&d, &y), Err(ShotModelError::Degenerate(_))));
    }

    #[test]
    fn separable_and_one_sided_are_degenerate() {
        let d = [1.0, 2.0, 3.0, 4.0];
        assert!(matches!(
            fit_logistic_data(&d, &[true, true, false, false]),
            Err(ShotModelError::Degenerate(_))
        ));
        assert!(matches!(
            fit_logistic_data(&d, &[true; 4]),
            Err(ShotModelError::Degenerate(_))
        ));
        assert!(fit_logistic_data(&[1.0], &[true]).is_err());
    }

    #[test]
    fn symmetric_null_effect_gives_zero_slope() {
        // balanced makes and misses at every distance around 20 ft
        let mut d = Vec::new();
        let mut y = Vec::new();
        for k in -5..=5 {
            for made in [true, false] {
                d.push(20.0 + k as f64);
                y.push(made);
            }
        }
        let m = fit_logistic_data(&d, &y).unwrap();
        assert!(m.beta1.abs() < 1e-10);
        assert!(m.beta0.abs() < 1e-10);
        assert!(m.fit_loglik <= 0.0);
    }

    #[test]
    fn fit_reaches_gradient_tolerance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d: Vec<f64> = (0..5000).map(|_| rng.random_range(0.0..30.0)).collect();
        let y: Vec<bool> = d
            .iter()
            .map(|&x| rng.random::<f64>() < sigmoid(1.0 - 0.06 * x))
            .collect();
        let m = fit_logistic_data(&d, &y).unwrap();
        let g = gradient([m.beta0, m.beta1], &d, &y);
        assert!(g[0].abs() < GRADIENT_TOLERANCE && g[1].abs() < GRADIENT_TOLERANCE);
        assert_eq!(m.n_obs, 5000);
        assert_abs_diff_eq!(m.fit_loglik, log_likelihood([m.beta0, m.beta1], &d, &y), epsilon = 1e-9);
        // every nearby point is worse
        for (db0, db1) in [(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-4), (0.0, -1e-4)] {
            assert!(log_likelihood([m.beta0 + db0, m.beta1 + db1], &d, &y) < m.fit_loglik);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let d: Vec<f64> = (0..300).map(|_| rng.random_range(0.0..30.0)).collect();
        let y: Vec<bool> = (0..300).map(|_| rng.random::<bool>()).collect();
        let h = 1e-5;
        for _ in 0..20 {
            let b = [rng.random_range(-2.0..2.0), rng.random_range(-0.2..0.2)];
            let g = gradient(b, &d, &y);
            for k in 0..2 {
                let mut up = b;
                let mut down = b;
                up[k] += h;
                down[k] -= h;
                let fd = (log_likelihood(up, &d, &y) - log_likelihood(down, &d, &y)) / (2.0 * h);
                assert!((fd - g[k]).abs() <= 1e-5 * g[k].abs().max(1.0), "{fd} vs {}", g[k]);
            }
        }
    }

    #[test]
    fn contest_curve_interpolation() {
        let c = ContestCurve::new(CurveClass::C3, vec![[0.0, 0.6], [22.0, 1.5]]).unwrap();
        assert_abs_diff_eq!(c.contest_points(11.0).unwrap(), 1.05, epsilon = 1e-12);
        assert_eq!(c.contest_points(0.0).unwrap(), 0.6);
        assert_eq!(c.contest_points(22.0).unwrap(), 1.5);
        assert!(matches!(c.contest_points(22.5), Err(ShotModelError::OutOfRange { .. })));
        assert!(c.contest_points(-0.1).is_err());
        assert!(c.contest_points(f64::NAN).is_err());

        let bundled = ContestCurve::bundled_c3();
        for k in &bundled.knots {
            assert_eq!(bundled.contest_points(k[0]).unwrap(), k[1]);
        }
    }

    #[test]
    fn contest_curve_validation() {
        assert!(ContestCurve::new(CurveClass::C3, vec![[0.0, 1.0], [22.0, 0.5]]).is_err());
        assert!(ContestCurve::new(CurveClass::Drive, vec![[0.0, 1.0], [22.0, 0.5]]).is_ok());
        assert!(ContestCurve::new(CurveClass::C3, vec![[0.0, 1.0], [20.0, 1.5]]).is_err());
        assert!(ContestCurve::new(CurveClass::C3, vec![[0.0, 1.0], [0.0, 1.0], [22.0, 1.5]]).is_err());
        assert!(ContestCurve::new(CurveClass::C3, vec![[0.0, -1.0], [22.0, 1.5]]).is_err());
        let json = r#"{"shot_class":"C3","knots":[[0,0.5],[6,1.2],[22,1.3]]}"#;
        assert_eq!(ContestCurve::from_json(json).unwrap().knots.len(), 3);
    }

    proptest! {
        #[test]
        fn c3_curves_are_monotone(mut ys in proptest::collection::vec(0.0f64..3.0, 2..10),
                                  probes in proptest::collection::vec(0.0f64..22.0, 1..20)) {
            ys.sort_by(f64::total_cmp);
            let n = ys.len();
            let knots: Vec<[f64; 2]> = ys.iter().enumerate()
                .map(|(i, &y)| [22.0 * i as f64 / (n - 1) as f64, y]).collect();
            let c = ContestCurve::new(CurveClass::C3, knots).unwrap();
            let mut probes = probes;
            probes.sort_by(f64::total_cmp);
            let vals: Vec<f64> = probes.iter().map(|&d| c.contest_points(d).unwrap()).collect();
            prop_assert!(vals.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        }

        #[test]
        fn prediction_is_strictly_monotone(b0 in -3.0f64..3.0, b1 in -0.5f64..0.5, a in 0.0f64..30.0, delta in 0.01f64..5.0) {
            prop_assume!(b1.abs() > 1e-3);
            let m = LogisticModel::new(b0, b1);
            let (p1, p2) = (m.predict_make_prob(a), m.predict_make_prob(a + delta));
            if b1 < 0.0 { prop_assert!(p2 < p1) } else { prop_assert!(p2 > p1) }
        }
    }

    #[test]
    fn summary_gap_from_fixed_rates() {
        let mut shots = Vec::new();
        for i in 0..1000 {
            shots.push(shot(22.5, 1.0, i < 388, 3));
            shots.push(shot(0.0, 26.0, i < 347, 3));
        }
        let s = efficiency_summary(&shots, &crate::court::CourtSpec::nba()).unwrap();
        assert_abs_diff_eq!(s.c3_vs_atb3_gap.unwrap(), 12.3, epsilon = 1e-9);
        assert_abs_diff_eq!(s.class(ShotClass::C3).fg_pct, 0.388, epsilon = 1e-12);
        assert_eq!(s.zone(Zone::RightCorner).attempts, 1000);
        assert_eq!(s.zone(Zone::TopOfArc).attempts, 1000);
        let total: u64 = s.zones.iter().map(|z| z.attempts).sum();
        assert_eq!(total, 2000);
    }

    #[test]
    fn summary_all_missed_and_empty() {
        let shots = vec![shot(22.5, 1.0, false, 3), shot(0.0, 26.0, false, 3), shot(0.0, 2.0, false, 2)];
        let s = efficiency_summary(&shots, &crate::court::CourtSpec::nba()).unwrap();
        assert!(s.zones.iter().all(|z| z.pps == 0.0));
        assert_eq!(s.c3_vs_atb3_gap, Some(0.0));
        assert!(matches!(
            efficiency_summary(&[], &crate::court::CourtSpec::nba()),
            Err(ShotModelError::EmptyInput)
        ));
        let off = vec![shot(40.0, 1.0, false, 3)];
        assert!(matches!(
            efficiency_summary(&off, &crate::court::CourtSpec::nba()),
            Err(ShotModelError::Court(_))
        ));
    }

    #[test]
    fn fiba_fixture_gap() {
        // 40.0% vs 34.7% on threes = 15.9 points per 100 shots
        let court = crate::court::CourtSpec::fiba();
        let mut shots = Vec::new();
        for i in 0..1000 {
            shots.push(shot(-22.0, 0.0, i < 400, 3));
            shots.push(shot(5.0, 23.5, i < 347, 3));
        }
        let s = efficiency_summary(&shots, &court).unwrap();
        assert!((s.c3_vs_atb3_gap.unwrap() - 16.0).abs() <= 1.0);
    }
}
