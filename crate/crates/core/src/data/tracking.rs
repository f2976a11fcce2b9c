use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::DataError;
use crate::court::Point2D;

/// Largest fraction of window samples that may be filled by interpolation.
pub const MAX_GAP_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerSample {
    pub id: String,
    pub team: String,
    pub x: f64,
    pub y: f64,
}

impl PlayerSample {
    pub fn position(&self) -> Point2D {
        Point2D::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t: f64,
    pub ball: [f64; 2],
    pub players: Vec<PlayerSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PossessionTrack {
    pub possession_id: String,
    pub sample_rate: f64,
    /// Index into `frames` of the release frame.
    pub shot_frame: usize,
    pub frames: Vec<Frame>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shooter_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defender_id: Option<String>,
}

impl PossessionTrack {
    pub fn validate(&self) -> Result<(), DataError> {
        let bad = |m: String| Err(DataError::Tracking(format!("{}: {m}", self.possession_id)));
        if !(self.sample_rate.is_finite() && self.sample_rate > 0.0) {
            return bad("sample_rate must be positive".into());
        }
        if self.shot_frame >= self.frames.len() {
            return bad(format!(
                "shot_frame {} out of range ({} frames)",
                self.shot_frame,
                self.frames.len()
            ));
        }
        for (i, f) in self.frames.iter().enumerate() {
            if !f.t.is_finite() {
                return bad(format!("frame {i} has a non-finite timestamp"));
            }
            if i > 0 && f.t <= self.frames[i - 1].t {
                return bad(format!("frame {i} is not strictly after frame {}", i - 1));
            }
            if f.players.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
                return bad(format!("frame {i} has a non-finite player coordinate"));
            }
        }
        Ok(())
    }

    /// The player nearest the ball at the release frame.
    pub fn ball_holder_at_shot(&self) -> Option<&PlayerSample> {
        let frame = self.frames.get(self.shot_frame)?;
        let ball = Point2D::new(frame.ball[0], frame.ball[1]);
        frame.players.iter().min_by(|a, b| {
            a.position()
                .distance(&ball)
                .total_cmp(&b.position().distance(&ball))
                .then_with(|| a.id.cmp(&b.id))
        })
    }
}

/// Parses one possession object or an array of them.
pub fn parse_tracking(bytes: &[u8]) -> Result<Vec<PossessionTrack>, DataError> {
    let doc: Value = serde_json::from_slice(bytes)?;
    let tracks: Vec<PossessionTrack> = match doc {
        Value::Array(_) => serde_json::from_value(doc)?,
        Value::Object(ref obj) if obj.contains_key("possessions") => {
            serde_json::from_value(obj["possessions"].clone())?
        }
        other => vec![serde_json::from_value(other)?],
    };
    for track in &tracks {
        track.validate()?;
    }
    Ok(tracks)
}

pub fn write_tracking(tracks: &[PossessionTrack]) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(tracks).expect("tracks serialize");
    bytes.push(b'\n');
    bytes
}

/// Shooter and defender positions over the pre-shot window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryWindow {
    pub shooter_path: Vec<Point2D>,
    pub defender_path: Vec<Point2D>,
    pub duration: f64,
    /// True once the window has been mirrored into right-corner form.
    pub canonical: bool,
}

impl TrajectoryWindow {
    pub fn len(&self) -> usize {
        self.shooter_path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shooter_path.is_empty()
    }

    pub fn mirrored(&self) -> Self {
        Self {
            shooter_path: self.shooter_path.iter().map(Point2D::mirror_x).collect(),
            defender_path: self.defender_path.iter().map(Point2D::mirror_x).collect(),
            duration: self.duration,
            canonical: self.canonical,
        }
    }
}

struct Observation {
    t: f64,
    p: Point2D,
}

fn observations(track: &PossessionTrack, id: &str) -> Vec<Observation> {
    track.frames[..=track.shot_frame]
        .iter()
        .filter_map(|f| {
            f.players.iter().find(|p| p.id == id).map(|p| Observation {
                t: f.t,
                p: p.position(),
            })
        })
        .collect()
}

/// Resamples one player's observations at `times`, interpolating linearly over
/// missing frames. A sample counts as observed when a frame lies within a
/// quarter sample period of it.
fn resample(
    id: &str,
    obs: &[Observation],
    times: &[f64],
    period: f64,
) -> Result<Vec<Point2D>, DataError> {
    let tol = 0.25 * period;
    let (first, last) = match (obs.first(), obs.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(DataError::UnknownPlayer(id.to_string())),
    };
    let start = times[0];
    let end = *times.last().expect("window has samples");
    if first.t > start + tol {
        return Err(DataError::InsufficientHistory {
            needed_s: end - start,
            available_s: (end - first.t).max(0.0),
        });
    }
    let allowed = (MAX_GAP_FRACTION * times.len() as f64).floor() as usize;
    if last.t < end - tol {
        return Err(DataError::ExcessiveGaps {
            player: id.to_string(),
            missing: times.len(),
            samples: times.len(),
            allowed,
        });
    }

    let mut path = Vec::with_capacity(times.len());
    let mut missing = 0;
    let mut j = 0;
    for &s in times {
        while j + 1 < obs.len() && obs[j + 1].t <= s + tol {
            j += 1;
        }
        // obs[j] is the last observation at or before s (within tolerance)
        let cur = &obs[j];
        if (cur.t - s).abs() <= tol {
            path.push(cur.p);
        } else if let Some(next) = obs.get(j + 1) {
            missing += 1;
            let w = (s - cur.t) / (next.t - cur.t);
            path.push(cur.p.lerp(&next.p, w));
        } else {
            missing += 1;
            path.push(cur.p);
        }
    }
    if missing > allowed {
        return Err(DataError::ExcessiveGaps {
            player: id.to_string(),
            missing,
            samples: times.len(),
            allowed,
        });
    }
    Ok(path)
}

/// Cuts the `seconds`-long shooter/defender window ending at the release frame.
///
/// The window holds `round(seconds * sample_rate)` samples spaced one sample
/// period apart, the last one at the shot frame. When `defender_id` is `None`
/// (and the track names none) the defender is the opponent with the smallest
/// mean distance to the shooter over the window.
pub fn extract_window(
    track: &PossessionTrack,
    seconds: f64,
    shooter_id: &str,
    defender_id: Option<&str>,
) -> Result<TrajectoryWindow, DataError> {
    track.validate()?;
    if !(seconds.is_finite() && seconds > 0.0) {
        return Err(DataError::Tracking("window length must be positive".into()));
    }
    let n = (seconds * track.sample_rate).round() as usize;
    if n == 0 {
        return Err(DataError::Tracking("window holds no samples".into()));
    }
    let period = 1.0 / track.sample_rate;
    let t_shot = track.frames[track.shot_frame].t;
    let times: Vec<f64> = (0..n)
        .map(|i| t_shot - (n - 1 - i) as f64 * period)
        .collect();

    let shooter_obs = observations(track, shooter_id);
    if shooter_obs.is_empty() {
        return Err(DataError::UnknownPlayer(shooter_id.to_string()));
    }
    let shooter_path = resample(shooter_id, &shooter_obs, &times, period)?;

    let defender_id = defender_id.or(track.defender_id.as_deref());
    let defender_path = match defender_id {
        Some(id) => {
            let obs = observations(track, id);
            if obs.is_empty() {
                return Err(DataError::UnknownPlayer(id.to_string()));
            }
            resample(id, &obs, &times, period)?
        }
        None => nearest_opponent_path(track, shooter_id, &shooter_path, &times, period)?,
    };

    Ok(TrajectoryWindow {
        shooter_path,
        defender_path,
        duration: seconds,
        canonical: false,
    })
}

fn nearest_opponent_path(
    track: &PossessionTrack,
    shooter_id: &str,
    shooter_path: &[Point2D],
    times: &[f64],
    period: f64,
) -> Result<Vec<Point2D>, DataError> {
    let shooter_team = track.frames[..=track.shot_frame]
        .iter()
        .rev()
        .find_map(|f| f.players.iter().find(|p| p.id == shooter_id))
        .map(|p| p.team.clone())
        .ok_or_else(|| DataError::UnknownPlayer(shooter_id.to_string()))?;

    let mut candidates: Vec<String> = track
        .frames
        .iter()
        .flat_map(|f| f.players.iter())
        .filter(|p| p.team != shooter_team)
        .map(|p| p.id.clone())
        .collect();
    candidates.sort();
    candidates.dedup();

    let mut best: Option<(f64, Vec<Point2D>)> = None;
    for id in &candidates {
        let Ok(path) = resample(id, &observations(track, id), times, period) else {
            continue;
        };
        let mean = path
            .iter()
            .zip(shooter_path)
            .map(|(d, s)| d.distance(s))
            .sum::<f64>()
            / path.len() as f64;
        if best.as_ref().is_none_or(|(m, _)| mean < *m) {
            best = Some((mean, path));
        }
    }
    best.map(|(_, path)| path)
        .ok_or_else(|| DataError::UnknownPlayer(format!("no trackable opponent of {shooter_id}")))
}
