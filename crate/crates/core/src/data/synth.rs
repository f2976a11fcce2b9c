//! Seeded synthetic shot logs and trajectory windows with planted ground truth.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Gamma, Normal};
use serde::{Deserialize, Serialize};

use super::tracking::{Frame, PlayerSample, PossessionTrack, TrajectoryWindow};
use super::{DataError, ShotEvent};
use crate::court::{CourtSpec, League, Point2D, ShotClass, Zone};
use crate::rng;
use crate::SCHEMA_VERSION;

const SHOT_STREAM: u64 = 0;
const WINDOW_STREAM: u64 = 1;
const MAX_REJECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMix {
    pub c3: f64,
    pub atb3: f64,
    pub two: f64,
}

/// Positive distribution with the given mean and standard deviation (Gamma,
/// or a point mass when `sd == 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceDistribution {
    pub mean: f64,
    pub sd: f64,
}

impl DistanceDistribution {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.sd == 0.0 {
            return self.mean;
        }
        let shape = (self.mean / self.sd).powi(2);
        let scale = self.sd * self.sd / self.mean;
        Gamma::new(shape, scale)
            .expect("validated gamma parameters")
            .sample(rng)
    }
}

/// Relative weights of pass-origin zones, per destination corner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassOriginWeights {
    pub left: BTreeMap<Zone, f64>,
    pub right: BTreeMap<Zone, f64>,
}

/// A planted shooter/defender movement pattern. Paths are keyframes spread
/// evenly over the window and linearly interpolated to the sample grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Archetype {
    pub name: String,
    pub weight: f64,
    /// Standard deviation (feet) of the iid Gaussian jitter on every coordinate.
    pub noise: f64,
    pub shooter: Vec<[f64; 2]>,
    pub defender: Vec<[f64; 2]>,
}

fn default_rng() -> String {
    rng::ALGORITHM.to_string()
}
fn default_league() -> League {
    League::Nba
}
fn default_mix() -> ClassMix {
    ClassMix {
        c3: 0.1,
        atb3: 0.3,
        two: 0.6,
    }
}
fn default_two_assist() -> f64 {
    0.5
}
fn default_def_c3() -> DistanceDistribution {
    DistanceDistribution { mean: 6.5, sd: 2.5 }
}
fn default_def_atb3() -> DistanceDistribution {
    DistanceDistribution { mean: 5.9, sd: 2.5 }
}
fn default_def_two() -> DistanceDistribution {
    DistanceDistribution { mean: 4.0, sd: 2.0 }
}
fn default_seconds() -> f64 {
    4.0
}
fn default_rate() -> f64 {
    25.0
}
fn default_lead_in() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    #[serde(default)]
    pub schema_version: u32,
    /// Name of the random generator; only `chacha8` is supported.
    #[serde(default = "default_rng")]
    pub rng: String,
    pub seed: u64,
    #[serde(default = "default_league")]
    pub league: League,
    pub n_shots: usize,
    #[serde(default = "default_mix")]
    pub class_mix: ClassMix,
    pub assist_rate_c3: f64,
    pub assist_rate_atb3: f64,
    #[serde(default = "default_two_assist")]
    pub assist_rate_two: f64,
    pub logistic_beta0: f64,
    pub logistic_beta1: f64,
    /// When set, corner-three outcomes are Bernoulli(fg_pct_c3) instead of
    /// following the logistic distance model.
    #[serde(default)]
    pub fg_pct_c3: Option<f64>,
    #[serde(default)]
    pub fg_pct_atb3: Option<f64>,
    #[serde(default = "default_def_c3")]
    pub def_dist_c3: DistanceDistribution,
    #[serde(default = "default_def_atb3")]
    pub def_dist_atb3: DistanceDistribution,
    #[serde(default = "default_def_two")]
    pub def_dist_two: DistanceDistribution,
    #[serde(default)]
    pub pass_origin_weights: Option<PassOriginWeights>,
    #[serde(default)]
    pub n_windows: usize,
    #[serde(default = "default_seconds")]
    pub window_seconds: f64,
    #[serde(default = "default_rate")]
    pub sample_rate: f64,
    /// Extra history (seconds) prepended to exported tracking possessions.
    #[serde(default = "default_lead_in")]
    pub lead_in_seconds: f64,
    #[serde(default)]
    pub cluster_archetypes: Vec<Archetype>,
}

impl SyntheticConfig {
    pub fn from_json(text: &str) -> Result<Self, DataError> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn bundled() -> Self {
        Self::from_json(crate::config::SYNTH_DEFAULT).expect("bundled synthetic config is valid")
    }

    pub fn validate(&self) -> Result<(), DataError> {
        let fail = |m: String| Err(DataError::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return fail(format!("schema_version must be {SCHEMA_VERSION}"));
        }
        if self.rng != rng::ALGORITHM {
            return fail(format!("unsupported rng {:?} (only {})", self.rng, rng::ALGORITHM));
        }
        let rates = [
            ("assist_rate_c3", Some(self.assist_rate_c3)),
            ("assist_rate_atb3", Some(self.assist_rate_atb3)),
            ("assist_rate_two", Some(self.assist_rate_two)),
            ("fg_pct_c3", self.fg_pct_c3),
            ("fg_pct_atb3", self.fg_pct_atb3),
        ];
        for (name, rate) in rates {
            if let Some(r) = rate {
                if !(0.0..=1.0).contains(&r) {
                    return fail(format!("{name}={r} outside [0, 1]"));
                }
            }
        }
        if !(self.logistic_beta0.is_finite() && self.logistic_beta1.is_finite()) {
            return fail("logistic coefficients must be finite".into());
        }
        let m = self.class_mix;
        if [m.c3, m.atb3, m.two].iter().any(|v| !(0.0..=1.0).contains(v))
            || (m.c3 + m.atb3 + m.two - 1.0).abs() > 1e-9
        {
            return fail("class_mix entries must be in [0,1] and sum to 1".into());
        }
        for (name, d) in [
            ("def_dist_c3", self.def_dist_c3),
            ("def_dist_atb3", self.def_dist_atb3),
            ("def_dist_two", self.def_dist_two),
        ] {
            if !(d.mean > 0.0 && d.mean.is_finite() && d.sd >= 0.0 && d.sd.is_finite()) {
                return fail(format!("{name} needs mean > 0 and sd >= 0"));
            }
        }
        if let Some(w) = &self.pass_origin_weights {
            for (corner, col) in [(Zone::LeftCorner, &w.left), (Zone::RightCorner, &w.right)] {
                if col.values().any(|v| !(*v >= 0.0 && v.is_finite())) {
                    return fail("pass-origin weights must be finite and >= 0".into());
                }
                if col.get(&corner).is_some_and(|v| *v > 0.0) {
                    return fail(format!("{corner} passes cannot originate in {corner}"));
                }
                if col.values().sum::<f64>() <= 0.0 {
                    return fail("each pass-origin column needs positive total weight".into());
                }
            }
        }
        if !(self.window_seconds > 0.0 && self.sample_rate > 0.0 && self.lead_in_seconds >= 0.0) {
            return fail("window_seconds and sample_rate must be positive".into());
        }
        if self.n_windows > 0 {
            if self.cluster_archetypes.is_empty() {
                return fail("n_windows > 0 requires cluster_archetypes".into());
            }
            if self.cluster_archetypes.iter().map(|a| a.weight).sum::<f64>() <= 0.0 {
                return fail("archetype weights must have a positive sum".into());
            }
        }
        for a in &self.cluster_archetypes {
            if !(a.noise > 0.0 && a.noise.is_finite()) {
                return fail(format!("archetype {}: noise must be > 0", a.name));
            }
            if !(a.weight >= 0.0 && a.weight.is_finite()) {
                return fail(format!("archetype {}: weight must be >= 0", a.name));
            }
            if a.shooter.is_empty() || a.defender.is_empty() {
                return fail(format!("archetype {}: paths need at least one keyframe", a.name));
            }
        }
        Ok(())
    }

    pub fn window_samples(&self) -> usize {
        (self.window_seconds * self.sample_rate).round() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticDataset {
    pub shots: Vec<ShotEvent>,
    pub windows: Vec<TrajectoryWindow>,
    /// Planted archetype index of every window.
    pub window_labels: Vec<usize>,
}

/// Generates a dataset on the league's bundled court.
pub fn synthesize_dataset(cfg: &SyntheticConfig) -> Result<SyntheticDataset, DataError> {
    synthesize_dataset_on(cfg, &CourtSpec::for_league(cfg.league))
}

pub fn synthesize_dataset_on(
    cfg: &SyntheticConfig,
    court: &CourtSpec,
) -> Result<SyntheticDataset, DataError> {
    cfg.validate()?;
    let shots = synth_shots(cfg, court)?;
    let (windows, window_labels) = synth_windows(cfg);
    Ok(SyntheticDataset {
        shots,
        windows,
        window_labels,
    })
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Splits `n` by weights with the largest-remainder rule.
fn apportion(n: usize, weights: &[f64]) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|w| n as f64 * w / total).collect();
    let mut counts: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let short = n - counts.iter().sum::<usize>();
    for &i in order.iter().take(short) {
        counts[i] += 1;
    }
    counts
}

fn synth_shots(cfg: &SyntheticConfig, court: &CourtSpec) -> Result<Vec<ShotEvent>, DataError> {
    let mut rng = rng::stream(cfg.seed, SHOT_STREAM);
    let m = cfg.class_mix;
    let counts = apportion(cfg.n_shots, &[m.c3, m.atb3, m.two]);
    let classes = [ShotClass::C3, ShotClass::Atb3, ShotClass::TwoPoint];

    let mut shots = Vec::with_capacity(cfg.n_shots);
    for (class, &count) in classes.iter().zip(&counts) {
        let (assist_rate, fg_override, def_dist) = match class {
            ShotClass::C3 => (cfg.assist_rate_c3, cfg.fg_pct_c3, cfg.def_dist_c3),
            ShotClass::Atb3 => (cfg.assist_rate_atb3, cfg.fg_pct_atb3, cfg.def_dist_atb3),
            ShotClass::TwoPoint => (cfg.assist_rate_two, None, cfg.def_dist_two),
        };
        for _ in 0..count {
            let location = sample_location(*class, court, &mut rng)?;
            let p_make = fg_override.unwrap_or_else(|| {
                sigmoid(cfg.logistic_beta0 + cfg.logistic_beta1 * location.distance_to_basket())
            });
            let made = rng.random::<f64>() < p_make;
            let assisted = rng.random::<f64>() < assist_rate;
            let closest_defender_distance = Some(def_dist.sample(&mut rng));
            let pass_origin = match (&cfg.pass_origin_weights, class, assisted) {
                (Some(w), ShotClass::C3, true) => {
                    let weights = if location.x < 0.0 { &w.left } else { &w.right };
                    Some(sample_pass_origin(weights, court, &mut rng)?)
                }
                _ => None,
            };
            let i = shots.len();
            shots.push(ShotEvent {
                shot_id: format!("s{i:06}"),
                shooter_id: format!("p{:02}", i % 40),
                location,
                made,
                assisted,
                closest_defender_distance,
                shot_value: class.points(),
                pass_origin,
                league: court.league,
            });
        }
    }
    Ok(shots)
}

fn sample_location(
    class: ShotClass,
    court: &CourtSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Point2D, DataError> {
    let c = court.constants;
    let depth = Exp::new(1.0 / 1.2).expect("positive rate");
    for _ in 0..MAX_REJECTIONS {
        let p = match class {
            ShotClass::C3 => {
                let room = (c.court_halfwidth - c.corner_line_distance - 0.05).min(1.5);
                let ax = c.corner_line_distance + rng.random_range(0.05..room.max(0.06));
                let y = rng.random_range(-c.baseline_offset + 0.5..c.corner_break_y.max(-c.baseline_offset + 0.6));
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                Point2D::new(sign * ax, y)
            }
            ShotClass::Atb3 => {
                let max_angle = c.corner_line_distance.atan2(c.corner_break_y);
                let theta = rng.random_range(-max_angle..max_angle);
                let r = c.arc_radius + 0.05 + depth.sample(rng);
                Point2D::new(r * theta.sin(), r * theta.cos())
            }
            ShotClass::TwoPoint => Point2D::new(
                rng.random_range(-c.court_halfwidth..c.court_halfwidth),
                rng.random_range(-c.baseline_offset..c.arc_radius),
            ),
        };
        if court.classify_shot(&p).ok() == Some(class) {
            return Ok(p);
        }
    }
    Err(DataError::Config(format!("could not place a {class} shot on this court")))
}

fn sample_pass_origin(
    weights: &BTreeMap<Zone, f64>,
    court: &CourtSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Point2D, DataError> {
    let total: f64 = weights.values().sum();
    let mut u = rng.random::<f64>() * total;
    let mut zone = *weights.keys().next_back().expect("validated non-empty");
    for (z, w) in weights {
        if u < *w {
            zone = *z;
            break;
        }
        u -= w;
    }
    let c = court.constants;
    for _ in 0..MAX_REJECTIONS {
        let p = Point2D::new(
            rng.random_range(-c.court_halfwidth..c.court_halfwidth),
            rng.random_range(-c.baseline_offset..c.halfcourt_depth),
        );
        if court.classify_zone(&p).ok() == Some(zone) {
            return Ok(p);
        }
    }
    Err(DataError::Config(format!("could not place a pass origin in {zone}")))
}

/// Linear interpolation of evenly spread keyframes onto `n` samples.
fn keyframe_path(keys: &[[f64; 2]], n: usize) -> Vec<Point2D> {
    let pts: Vec<Point2D> = keys.iter().map(|k| Point2D::new(k[0], k[1])).collect();
    if pts.len() == 1 || n == 1 {
        return vec![pts[0]; n];
    }
    (0..n)
        .map(|i| {
            let pos = i as f64 / (n - 1) as f64 * (pts.len() - 1) as f64;
            let j = (pos.floor() as usize).min(pts.len() - 2);
            pts[j].lerp(&pts[j + 1], pos - j as f64)
        })
        .collect()
}

fn synth_windows(cfg: &SyntheticConfig) -> (Vec<TrajectoryWindow>, Vec<usize>) {
    if cfg.n_windows == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut rng = rng::stream(cfg.seed, WINDOW_STREAM);
    let n = cfg.window_samples();
    let weights: Vec<f64> = cfg.cluster_archetypes.iter().map(|a| a.weight).collect();
    let counts = apportion(cfg.n_windows, &weights);

    let mut windows = Vec::with_capacity(cfg.n_windows);
    let mut labels = Vec::with_capacity(cfg.n_windows);
    for (label, (arch, &count)) in cfg.cluster_archetypes.iter().zip(&counts).enumerate() {
        let shooter = keyframe_path(&arch.shooter, n);
        let defender = keyframe_path(&arch.defender, n);
        let jitter = Normal::new(0.0, arch.noise).expect("validated noise");
        let mut noisy = |path: &[Point2D]| -> Vec<Point2D> {
            path.iter()
                .map(|p| Point2D::new(p.x + jitter.sample(&mut rng), p.y + jitter.sample(&mut rng)))
                .collect()
        };
        for _ in 0..count {
            let shooter_path = noisy(&shooter);
            let defender_path = noisy(&defender);
            windows.push(TrajectoryWindow {
                shooter_path,
                defender_path,
                duration: cfg.window_seconds,
                canonical: false,
            });
            labels.push(label);
        }
    }
    (windows, labels)
}

/// Embeds a window in a ten-player possession so it can be exported as
/// tracking data and re-extracted. The first window sample is held for
/// `lead_in_seconds` before the window starts; the shot frame is the last one.
pub fn window_to_track(
    window: &TrajectoryWindow,
    possession_id: &str,
    sample_rate: f64,
    lead_in_seconds: f64,
) -> PossessionTrack {
    const SPOTS: [(f64, f64); 4] = [(-20.0, 18.0), (0.0, 26.0), (-4.0, 8.0), (18.0, 18.0)];
    let lead = (lead_in_seconds * sample_rate).round() as usize;
    let n = window.len();
    let ball_handler = Point2D::new(-4.0, 8.0);
    let frames = (0..lead + n)
        .map(|k| {
            let i = k.saturating_sub(lead);
            let shooter = window.shooter_path[i];
            let defender = window.defender_path[i];
            let mut players = vec![
                PlayerSample {
                    id: "shooter".into(),
                    team: "OFF".into(),
                    x: shooter.x,
                    y: shooter.y,
                },
                PlayerSample {
                    id: "defender".into(),
                    team: "DEF".into(),
                    x: defender.x,
                    y: defender.y,
                },
            ];
            for (j, (x, y)) in SPOTS.iter().enumerate() {
                players.push(PlayerSample {
                    id: format!("o{}", j + 2),
                    team: "OFF".into(),
                    x: *x,
                    y: *y,
                });
                players.push(PlayerSample {
                    id: format!("d{}", j + 2),
                    team: "DEF".into(),
                    x: x * 0.85,
                    y: y * 0.85,
                });
            }
            let ball = if k + 1 == lead + n { shooter } else { ball_handler };
            Frame {
                t: k as f64 / sample_rate,
                ball: [ball.x, ball.y],
                players,
            }
        })
        .collect();
    PossessionTrack {
        possession_id: possession_id.to_string(),
        sample_rate,
        shot_frame: lead + n - 1,
        frames,
        shooter_id: Some("shooter".into()),
        defender_id: Some("defender".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{extract_window, write_shot_log, ShotLogFormat};

    fn small_cfg() -> SyntheticConfig {
        let mut cfg = SyntheticConfig::bundled();
        cfg.n_shots = 2_000;
        cfg.n_windows = 50;
        cfg
    }

    #[test]
    fn bundled_config_is_valid() {
        let cfg = SyntheticConfig::bundled();
        assert_eq!(cfg.cluster_archetypes.len(), 10);
        assert_eq!(cfg.window_samples(), 100);
    }

    #[test]
    fn same_seed_same_bytes() {
        let cfg = small_cfg();
        let a = synthesize_dataset(&cfg).unwrap();
        let b = synthesize_dataset(&cfg).unwrap();
        assert_eq!(
            write_shot_log(&a.shots, ShotLogFormat::Csv),
            write_shot_log(&b.shots, ShotLogFormat::Csv)
        );
        assert_eq!(serde_json::to_vec(&a).unwrap(), serde_json::to_vec(&b).unwrap());

        let mut other = cfg.clone();
        other.seed += 1;
        assert_ne!(synthesize_dataset(&other).unwrap().shots, a.shots);
    }

    #[test]
    fn shot_values_match_court_classes() {
        for league in [League::Nba, League::Fiba] {
            let mut cfg = small_cfg();
            cfg.league = league;
            let court = CourtSpec::for_league(league);
            let data = synthesize_dataset(&cfg).unwrap();
            assert_eq!(data.shots.len(), cfg.n_shots);
            for s in &data.shots {
                let class = court.classify_shot(&s.location).unwrap();
                assert_eq!(class.points(), s.shot_value);
                assert!(s.closest_defender_distance.unwrap() >= 0.0);
                if let Some(origin) = s.pass_origin {
                    assert_eq!(class, ShotClass::C3);
                    assert!(s.assisted);
                    let zone = court.classify_zone(&origin).unwrap();
                    assert_ne!(zone, court.classify_zone(&s.location).unwrap());
                }
            }
        }
    }

    #[test]
    fn planted_c3_assist_rate_is_recovered() {
        let mut cfg = small_cfg();
        cfg.n_shots = 10_000;
        cfg.n_windows = 0;
        cfg.class_mix = ClassMix {
            c3: 1.0,
            atb3: 0.0,
            two: 0.0,
        };
        cfg.assist_rate_c3 = 0.9;
        let data = synthesize_dataset(&cfg).unwrap();
        let rate = data.shots.iter().filter(|s| s.assisted).count() as f64 / 10_000.0;
        // binomial 99.9% interval: 0.9 +/- 3.29 * 0.003
        assert!((0.88..=0.92).contains(&rate), "rate {rate}");
    }

    #[test]
    fn zero_noise_limit_reproduces_archetypes() {
        let mut cfg = small_cfg();
        for a in &mut cfg.cluster_archetypes {
            a.noise = 1e-12;
        }
        let data = synthesize_dataset(&cfg).unwrap();
        for (w, &label) in data.windows.iter().zip(&data.window_labels) {
            let arch = &cfg.cluster_archetypes[label];
            let exact = keyframe_path(&arch.shooter, 100);
            for (p, q) in w.shooter_path.iter().zip(&exact) {
                assert!(p.distance(q) < 1e-9);
            }
            let exact = keyframe_path(&arch.defender, 100);
            for (p, q) in w.defender_path.iter().zip(&exact) {
                assert!(p.distance(q) < 1e-9);
            }
        }
    }

    #[test]
    fn windows_follow_weights() {
        let cfg = small_cfg();
        let data = synthesize_dataset(&cfg).unwrap();
        let expected = apportion(50, &cfg.cluster_archetypes.iter().map(|a| a.weight).collect::<Vec<_>>());
        for (label, want) in expected.iter().enumerate() {
            let got = data.window_labels.iter().filter(|&&l| l == label).count();
            assert_eq!(got, *want);
        }
    }

    #[test]
    fn exported_tracks_round_trip_through_extraction() {
        let cfg = small_cfg();
        let data = synthesize_dataset(&cfg).unwrap();
        for (i, w) in data.windows.iter().take(5).enumerate() {
            let track = window_to_track(w, &format!("w{i}"), cfg.sample_rate, 1.0);
            let back = extract_window(&track, 4.0, "shooter", None).unwrap();
            assert_eq!(&back, w);
        }
    }

    #[test]
    fn apportion_is_exact() {
        assert_eq!(apportion(10, &[0.5, 0.5]), vec![5, 5]);
        assert_eq!(apportion(10, &[1.0, 1.0, 1.0]), vec![4, 3, 3]);
        assert_eq!(apportion(7, &[0.0, 1.0]), vec![0, 7]);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = small_cfg();
        cfg.assist_rate_c3 = 1.5;
        assert!(matches!(cfg.validate(), Err(DataError::Config(_))));
        let mut cfg = small_cfg();
        cfg.cluster_archetypes[0].noise = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = small_cfg();
        cfg.rng = "mt19937".into();
        assert!(cfg.validate().is_err());
        let mut cfg = small_cfg();
        cfg.class_mix.two = 0.0;
        assert!(cfg.validate().is_err());
    }
}
