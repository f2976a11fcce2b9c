//! Half-court geometry.
//!
//! Every coordinate in the crate lives in one frame: the basket center is the
//! origin, `y` grows toward halfcourt and `x` runs along the baseline with
//! negative values on the left side. League dimensions and zone boundaries are
//! configuration (see `config/court_*.json`), never literals in code.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::SCHEMA_VERSION;

#[derive(Debug, Error, PartialEq)]
pub enum CourtError {
    #[error("point ({x}, {y}) is off the court")]
    OffCourt { x: f64, y: f64 },
    #[error("invalid court config: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Euclidean distance from the basket center.
    pub fn distance_to_basket(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Reflection across the `x = 0` axis (left/right swap).
    pub fn mirror_x(&self) -> Self {
        Self::new(-self.x, self.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(&self, other: &Point2D, t: f64) -> Self {
        Self::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum League {
    Nba,
    Fiba,
}

impl fmt::Display for League {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            League::Nba => "NBA",
            League::Fiba => "FIBA",
        })
    }
}

impl FromStr for League {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NBA" => Ok(League::Nba),
            "FIBA" => Ok(League::Fiba),
            other => Err(format!("unknown league {other:?} (expected NBA or FIBA)")),
        }
    }
}

/// The twelve court zones used for pass origins and efficiency heatmaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Zone {
    BasketArea,
    DeepPaint,
    LeftBaseline,
    LeftCorner,
    LeftWing2,
    LeftWing3,
    MidrangeSlot,
    RightBaseline,
    RightCorner,
    RightWing2,
    RightWing3,
    TopOfArc,
}

impl Zone {
    pub const ALL: [Zone; 12] = [
        Zone::BasketArea,
        Zone::DeepPaint,
        Zone::LeftBaseline,
        Zone::LeftCorner,
        Zone::LeftWing2,
        Zone::LeftWing3,
        Zone::MidrangeSlot,
        Zone::RightBaseline,
        Zone::RightCorner,
        Zone::RightWing2,
        Zone::RightWing3,
        Zone::TopOfArc,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Zone::BasketArea => "BasketArea",
            Zone::DeepPaint => "DeepPaint",
            Zone::LeftBaseline => "LeftBaseline",
            Zone::LeftCorner => "LeftCorner",
            Zone::LeftWing2 => "LeftWing2",
            Zone::LeftWing3 => "LeftWing3",
            Zone::MidrangeSlot => "MidrangeSlot",
            Zone::RightBaseline => "RightBaseline",
            Zone::RightCorner => "RightCorner",
            Zone::RightWing2 => "RightWing2",
            Zone::RightWing3 => "RightWing3",
            Zone::TopOfArc => "TopOfArc",
        }
    }

    /// The zone occupying the mirrored position across `x = 0`.
    pub fn mirror(self) -> Zone {
        match self {
            Zone::LeftBaseline => Zone::RightBaseline,
            Zone::RightBaseline => Zone::LeftBaseline,
            Zone::LeftCorner => Zone::RightCorner,
            Zone::RightCorner => Zone::LeftCorner,
            Zone::LeftWing2 => Zone::RightWing2,
            Zone::RightWing2 => Zone::LeftWing2,
            Zone::LeftWing3 => Zone::RightWing3,
            Zone::RightWing3 => Zone::LeftWing3,
            z => z,
        }
    }

    pub fn is_corner(self) -> bool {
        matches!(self, Zone::LeftCorner | Zone::RightCorner)
    }

    pub fn is_left(self) -> bool {
        matches!(
            self,
            Zone::LeftBaseline | Zone::LeftCorner | Zone::LeftWing2 | Zone::LeftWing3
        )
    }

    /// Zones that make up the "around the basket" pass-origin roll-up.
    pub fn is_basket_vicinity(self) -> bool {
        matches!(
            self,
            Zone::BasketArea | Zone::DeepPaint | Zone::LeftBaseline | Zone::RightBaseline
        )
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShotClass {
    C3,
    #[serde(rename = "ATB3")]
    Atb3,
    TwoPoint,
}

impl ShotClass {
    pub fn points(self) -> u8 {
        match self {
            ShotClass::TwoPoint => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for ShotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShotClass::C3 => "C3",
            ShotClass::Atb3 => "ATB3",
            ShotClass::TwoPoint => "TwoPoint",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// One ordered zone rule. Every present constraint must hold (bounds are
/// inclusive); absent constraints are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneRule {
    pub name: Zone,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub three: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub below_break: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_abs_x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_y: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_abs_angle_deg: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CourtConstants {
    pub corner_line_distance: f64,
    pub arc_radius: f64,
    /// Height above the basket below which the straight corner line governs.
    pub corner_break_y: f64,
    pub court_halfwidth: f64,
    /// Distance from the basket center back to the baseline.
    pub baseline_offset: f64,
    /// Distance from the basket center forward to the halfcourt line.
    pub halfcourt_depth: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CourtFile {
    schema_version: u32,
    league: League,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    units: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    notes: Option<String>,
    constants: CourtConstants,
    zones: Vec<ZoneRule>,
}

/// League geometry plus the ordered zone partition.
#[derive(Debug, Clone, PartialEq)]
pub struct CourtSpec {
    pub league: League,
    pub constants: CourtConstants,
    pub zones: Vec<ZoneRule>,
}

impl CourtSpec {
    pub fn from_json(text: &str) -> Result<Self, CourtError> {
        let file: CourtFile =
            serde_json::from_str(text).map_err(|e| CourtError::Config(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CourtError::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        let spec = CourtSpec {
            league: file.league,
            constants: file.constants,
            zones: file.zones,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let file = CourtFile {
            schema_version: SCHEMA_VERSION,
            league: self.league,
            units: Some("feet".into()),
            notes: None,
            constants: self.constants,
            zones: self.zones.clone(),
        };
        serde_json::to_string_pretty(&file).expect("court spec serializes")
    }

    /// Built-in NBA geometry from the checked-in config.
    pub fn nba() -> Self {
        Self::from_json(crate::config::COURT_NBA).expect("bundled NBA court config is valid")
    }

    /// Built-in FIBA geometry from the checked-in config.
    pub fn fiba() -> Self {
        Self::from_json(crate::config::COURT_FIBA).expect("bundled FIBA court config is valid")
    }

    pub fn for_league(league: League) -> Self {
        match league {
            League::Nba => Self::nba(),
            League::Fiba => Self::fiba(),
        }
    }

    fn validate(&self) -> Result<(), CourtError> {
        let c = &self.constants;
        let fields = [
            ("corner_line_distance", c.corner_line_distance),
            ("arc_radius", c.arc_radius),
            ("corner_break_y", c.corner_break_y),
            ("court_halfwidth", c.court_halfwidth),
            ("baseline_offset", c.baseline_offset),
            ("halfcourt_depth", c.halfcourt_depth),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v < 0.0 {
                return Err(CourtError::Config(format!("{name} must be finite and >= 0")));
            }
        }
        if c.corner_line_distance > c.arc_radius {
            return Err(CourtError::Config(
                "corner_line_distance must not exceed arc_radius".into(),
            ));
        }
        if c.corner_line_distance >= c.court_halfwidth {
            return Err(CourtError::Config(
                "corner line must lie inside the sideline".into(),
            ));
        }
        if c.corner_break_y > c.arc_radius {
            return Err(CourtError::Config("corner_break_y exceeds arc_radius".into()));
        }

        let mut seen = [false; 12];
        for rule in &self.zones {
            let i = rule.name.index();
            if seen[i] {
                return Err(CourtError::Config(format!("zone {} listed twice", rule.name)));
            }
            seen[i] = true;
        }
        if let Some(missing) = Zone::ALL.iter().find(|z| !seen[z.index()]) {
            return Err(CourtError::Config(format!("zone {missing} is not defined")));
        }

        // Coverage: every on-court grid point must match some rule.
        let step = 0.25;
        let nx = (2.0 * c.court_halfwidth / step).floor() as i64;
        let ny = ((c.baseline_offset + c.halfcourt_depth) / step).floor() as i64;
        for ix in 0..=nx {
            for iy in 0..=ny {
                let p = Point2D::new(
                    -c.court_halfwidth + ix as f64 * step,
                    -c.baseline_offset + iy as f64 * step,
                );
                if self.match_zone(&p).is_none() {
                    return Err(CourtError::Config(format!(
                        "zone rules leave ({}, {}) uncovered",
                        p.x, p.y
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn on_court(&self, p: &Point2D) -> bool {
        let c = &self.constants;
        p.is_finite()
            && p.x.abs() <= c.court_halfwidth
            && p.y >= -c.baseline_offset
            && p.y <= c.halfcourt_depth
    }

    /// True when the point lies strictly beyond the three-point line. Points
    /// on the line itself count as two-pointers.
    pub fn is_three(&self, p: &Point2D) -> bool {
        let c = &self.constants;
        if p.y <= c.corner_break_y {
            p.x.abs() > c.corner_line_distance
        } else {
            p.distance_to_basket() > c.arc_radius
        }
    }

    fn rule_matches(&self, rule: &ZoneRule, p: &Point2D) -> bool {
        if let Some(three) = rule.three {
            if self.is_three(p) != three {
                return false;
            }
        }
        if let Some(below) = rule.below_break {
            if (p.y <= self.constants.corner_break_y) != below {
                return false;
            }
        }
        match rule.side {
            Some(Side::Left) if p.x >= 0.0 => return false,
            Some(Side::Right) if p.x <= 0.0 => return false,
            _ => {}
        }
        if let Some(r) = rule.max_radius {
            if p.distance_to_basket() > r {
                return false;
            }
        }
        if let Some(ax) = rule.max_abs_x {
            if p.x.abs() > ax {
                return false;
            }
        }
        if let Some(my) = rule.max_y {
            if p.y > my {
                return false;
            }
        }
        if let Some(deg) = rule.max_abs_angle_deg {
            // angle measured from the +y axis
            if p.x.atan2(p.y).abs().to_degrees() > deg {
                return false;
            }
        }
        true
    }

    fn match_zone(&self, p: &Point2D) -> Option<Zone> {
        self.zones
            .iter()
            .find(|rule| self.rule_matches(rule, p))
            .map(|rule| rule.name)
    }

    pub fn classify_zone(&self, p: &Point2D) -> Result<Zone, CourtError> {
        if !self.on_court(p) {
            return Err(CourtError::OffCourt { x: p.x, y: p.y });
        }
        // validate() guarantees coverage of the court rectangle
        self.match_zone(p)
            .ok_or(CourtError::OffCourt { x: p.x, y: p.y })
    }

    pub fn classify_shot(&self, p: &Point2D) -> Result<ShotClass, CourtError> {
        let zone = self.classify_zone(p)?;
        Ok(if zone.is_corner() {
            ShotClass::C3
        } else if self.is_three(p) {
            ShotClass::Atb3
        } else {
            ShotClass::TwoPoint
        })
    }

    /// Extra distance an above-the-break three travels over a corner three.
    pub fn three_point_geometry_gap(&self) -> f64 {
        self.constants.arc_radius - self.constants.corner_line_distance
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distance_examples() {
        assert_eq!(Point2D::new(22.0, 0.0).distance_to_basket(), 22.0);
        assert_eq!(Point2D::new(0.0, 0.0).distance_to_basket(), 0.0);
        assert_eq!(Point2D::new(3.0, 4.0).distance_to_basket(), 5.0);
    }

    #[test]
    fn zone_examples() {
        let nba = CourtSpec::nba();
        assert_eq!(nba.classify_zone(&Point2D::new(-22.5, 2.0)), Ok(Zone::LeftCorner));
        assert_eq!(nba.classify_zone(&Point2D::new(0.0, 26.0)), Ok(Zone::TopOfArc));
        assert_eq!(nba.classify_zone(&Point2D::new(0.0, 2.0)), Ok(Zone::BasketArea));
        assert_eq!(nba.classify_zone(&Point2D::new(0.0, 10.0)), Ok(Zone::DeepPaint));
        assert_eq!(nba.classify_zone(&Point2D::new(15.0, 3.0)), Ok(Zone::RightBaseline));
        assert_eq!(nba.classify_zone(&Point2D::new(0.0, 18.0)), Ok(Zone::MidrangeSlot));
        assert_eq!(nba.classify_zone(&Point2D::new(-14.0, 14.0)), Ok(Zone::LeftWing2));
        assert_eq!(nba.classify_zone(&Point2D::new(19.0, 19.0)), Ok(Zone::RightWing3));
    }

    #[test]
    fn shot_examples() {
        let nba = CourtSpec::nba();
        assert_eq!(nba.classify_shot(&Point2D::new(22.3, 1.0)), Ok(ShotClass::C3));
        // sqrt(16^2 + 19^2) = 24.84 > 23.75 and 19 ft is well above the break
        assert_eq!(nba.classify_shot(&Point2D::new(-16.0, 19.0)), Ok(ShotClass::Atb3));
        assert_eq!(nba.classify_zone(&Point2D::new(-16.0, 19.0)), Ok(Zone::LeftWing3));
        assert_eq!(nba.classify_shot(&Point2D::new(10.0, 10.0)), Ok(ShotClass::TwoPoint));
    }

    #[test]
    fn off_court_is_rejected() {
        let nba = CourtSpec::nba();
        assert!(matches!(
            nba.classify_zone(&Point2D::new(26.0, 0.0)),
            Err(CourtError::OffCourt { .. })
        ));
        assert!(nba.classify_zone(&Point2D::new(0.0, -6.0)).is_err());
        assert!(nba.classify_zone(&Point2D::new(f64::NAN, 1.0)).is_err());
    }

    #[test]
    fn line_points_are_two_pointers() {
        let nba = CourtSpec::nba();
        assert_eq!(nba.classify_shot(&Point2D::new(22.0, 0.0)), Ok(ShotClass::TwoPoint));
        assert_eq!(nba.classify_shot(&Point2D::new(0.0, 23.75)), Ok(ShotClass::TwoPoint));
        // boundary of the basket area belongs to the basket area
        assert_eq!(nba.classify_zone(&Point2D::new(0.0, 4.0)), Ok(Zone::BasketArea));
    }

    #[test]
    fn geometry_gap() {
        assert_abs_diff_eq!(CourtSpec::nba().three_point_geometry_gap(), 1.75, epsilon = 1e-12);
        let fiba = CourtSpec::fiba().three_point_geometry_gap();
        assert_abs_diff_eq!(fiba, 0.49, epsilon = 0.01);
        let ratio = fiba / 1.75;
        assert!((ratio - 0.28).abs() <= 0.15 * 0.28, "ratio {ratio}");

        let mut degenerate = CourtSpec::nba();
        degenerate.constants.corner_line_distance = degenerate.constants.arc_radius;
        assert_eq!(degenerate.three_point_geometry_gap(), 0.0);
    }

    #[test]
    fn config_validation() {
        let mut bad: serde_json::Value = serde_json::from_str(crate::config::COURT_NBA).unwrap();
        bad["zones"].as_array_mut().unwrap().pop();
        assert!(matches!(
            CourtSpec::from_json(&bad.to_string()),
            Err(CourtError::Config(_))
        ));

        let mut bad: serde_json::Value = serde_json::from_str(crate::config::COURT_NBA).unwrap();
        bad["constants"]["corner_line_distance"] = 30.0.into();
        assert!(CourtSpec::from_json(&bad.to_string()).is_err());

        let mut bad: serde_json::Value = serde_json::from_str(crate::config::COURT_NBA).unwrap();
        bad["schema_version"] = 9.into();
        assert!(CourtSpec::from_json(&bad.to_string()).is_err());

        // a rule set with a hole in it
        let mut bad: serde_json::Value = serde_json::from_str(crate::config::COURT_NBA).unwrap();
        bad["zones"][11]["max_y"] = 20.0.into();
        assert!(CourtSpec::from_json(&bad.to_string()).is_err());
    }

    #[test]
    fn json_round_trip() {
        for court in [CourtSpec::nba(), CourtSpec::fiba()] {
            let back = CourtSpec::from_json(&court.to_json()).unwrap();
            assert_eq!(back, court);
        }
    }

    fn sample_on_court(court: &CourtSpec, rng: &mut ChaCha8Rng) -> Point2D {
        let c = &court.constants;
        Point2D::new(
            rng.random_range(-c.court_halfwidth..=c.court_halfwidth),
            rng.random_range(-c.baseline_offset..=c.halfcourt_depth),
        )
    }

    #[test]
    fn partition_and_symmetry_on_a_million_points() {
        for court in [CourtSpec::nba(), CourtSpec::fiba()] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut counts = [0usize; 12];
            for _ in 0..1_000_000 {
                let p = sample_on_court(&court, &mut rng);
                let zone = court.classify_zone(&p).expect("on-court point classifies");
                counts[zone.index()] += 1;
                assert_eq!(court.classify_zone(&p.mirror_x()), Ok(zone.mirror()));
            }
            assert_eq!(counts.iter().sum::<usize>(), 1_000_000);
            assert!(counts.iter().all(|&n| n > 0), "{counts:?}");
        }
    }

    #[test]
    fn corner_threes_respect_the_corner_line() {
        let court = CourtSpec::nba();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200_000 {
            let p = sample_on_court(&court, &mut rng);
            if court.classify_shot(&p).unwrap() == ShotClass::C3 {
                assert!(p.distance_to_basket() >= court.constants.corner_line_distance - 1e-9);
                assert!(p.y <= court.constants.corner_break_y);
            }
        }
    }
}
