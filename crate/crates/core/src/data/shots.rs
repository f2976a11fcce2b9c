use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::DataError;
use crate::court::{League, Point2D};

pub const SHOT_LOG_COLUMNS: [&str; 11] = [
    "shot_id",
    "shooter_id",
    "x",
    "y",
    "made",
    "assisted",
    "def_dist",
    "shot_value",
    "pass_x",
    "pass_y",
    "league",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShotLogFormat {
    Csv,
    Json,
}

impl FromStr for ShotLogFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotEvent {
    pub shot_id: String,
    pub shooter_id: String,
    pub location: Point2D,
    pub made: bool,
    pub assisted: bool,
    /// Distance to the closest defender at release, when tracked.
    pub closest_defender_distance: Option<f64>,
    pub shot_value: u8,
    pub pass_origin: Option<Point2D>,
    pub league: League,
}

impl ShotEvent {
    pub fn points(&self) -> u8 {
        if self.made {
            self.shot_value
        } else {
            0
        }
    }
}

/// Parses a shot log. Rows are numbered from 1 (the first data row) in error
/// messages. Lines starting with `#` are comments.
pub fn parse_shot_log(bytes: &[u8], format: ShotLogFormat) -> Result<Vec<ShotEvent>, DataError> {
    match format {
        ShotLogFormat::Csv => parse_csv(bytes),
        ShotLogFormat::Json => parse_json(bytes),
    }
}

fn parse_csv(bytes: &[u8]) -> Result<Vec<ShotEvent>, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = reader.headers()?.clone();
    let mut index = HashMap::new();
    for (i, h) in headers.iter().enumerate() {
        index.insert(h.to_string(), i);
    }
    if let Some(missing) = SHOT_LOG_COLUMNS.iter().find(|c| !index.contains_key(**c)) {
        return Err(DataError::Schema(format!("missing column {missing:?}")));
    }

    let mut shots = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| DataError::Value {
            row,
            message: e.to_string(),
        })?;
        let field = |name: &str| record.get(index[name]).unwrap_or("").to_string();
        shots.push(parse_fields(row, field)?);
    }
    Ok(shots)
}

fn parse_json(bytes: &[u8]) -> Result<Vec<ShotEvent>, DataError> {
    let doc: Value = serde_json::from_slice(bytes)?;
    let rows = match &doc {
        Value::Array(rows) => rows,
        Value::Object(obj) => obj
            .get("shots")
            .and_then(Value::as_array)
            .ok_or_else(|| DataError::Schema("expected an array or {\"shots\": [...]}".into()))?,
        _ => return Err(DataError::Schema("expected an array of shot objects".into())),
    };
    let mut shots = Vec::with_capacity(rows.len());
    for (i, item) in rows.iter().enumerate() {
        let row = i + 1;
        let obj = item.as_object().ok_or_else(|| DataError::Value {
            row,
            message: "shot entry is not an object".into(),
        })?;
        if let Some(missing) = SHOT_LOG_COLUMNS
            .iter()
            .find(|c| !obj.contains_key(**c) && !is_optional(c))
        {
            return Err(DataError::Schema(format!("row {row}: missing field {missing:?}")));
        }
        let field = |name: &str| match obj.get(name) {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.trim().to_string(),
            Some(Value::Bool(b)) => if *b { "1" } else { "0" }.to_string(),
            Some(other) => other.to_string(),
        };
        shots.push(parse_fields(row, field)?);
    }
    Ok(shots)
}

fn is_optional(column: &str) -> bool {
    matches!(column, "def_dist" | "pass_x" | "pass_y")
}

fn parse_fields(row: usize, field: impl Fn(&str) -> String) -> Result<ShotEvent, DataError> {
    let err = |message: String| DataError::Value { row, message };

    let required = |name: &str| {
        let v = field(name);
        if v.is_empty() {
            Err(err(format!("{name} is empty")))
        } else {
            Ok(v)
        }
    };
    let coord = |name: &str| -> Result<f64, DataError> {
        let raw = required(name)?;
        let v: f64 = raw
            .parse()
            .map_err(|_| err(format!("{name}={raw:?} is not a number")))?;
        if !v.is_finite() {
            return Err(err(format!("{name}={raw:?} is not finite")));
        }
        Ok(v)
    };
    let flag = |name: &str| -> Result<bool, DataError> {
        match required(name)?.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(err(format!("{name}={other:?} must be 0 or 1"))),
        }
    };
    let optional_coord = |name: &str| -> Result<Option<f64>, DataError> {
        if field(name).is_empty() {
            Ok(None)
        } else {
            coord(name).map(Some)
        }
    };

    let location = Point2D::new(coord("x")?, coord("y")?);
    let closest_defender_distance = optional_coord("def_dist")?;
    if let Some(d) = closest_defender_distance {
        if d < 0.0 {
            return Err(err(format!("def_dist={d} is negative")));
        }
    }
    let shot_value = match required("shot_value")?.as_str() {
        "2" => 2,
        "3" => 3,
        other => return Err(err(format!("shot_value={other:?} must be 2 or 3"))),
    };
    let pass_origin = match (optional_coord("pass_x")?, optional_coord("pass_y")?) {
        (Some(x), Some(y)) => Some(Point2D::new(x, y)),
        (None, None) => None,
        _ => return Err(err("pass_x and pass_y must be given together".into())),
    };
    let league = required("league")?.parse::<League>().map_err(err)?;

    Ok(ShotEvent {
        shot_id: required("shot_id")?,
        shooter_id: required("shooter_id")?,
        location,
        made: flag("made")?,
        assisted: flag("assisted")?,
        closest_defender_distance,
        shot_value,
        pass_origin,
        league,
    })
}

/// Serializes shots in the same column layout `parse_shot_log` reads.
pub fn write_shot_log(shots: &[ShotEvent], format: ShotLogFormat) -> Vec<u8> {
    match format {
        ShotLogFormat::Csv => {
            let mut out = String::new();
            out.push_str(&SHOT_LOG_COLUMNS.join(","));
            out.push('\n');
            for s in shots {
                let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
                let row = [
                    csv_escape(&s.shot_id),
                    csv_escape(&s.shooter_id),
                    s.location.x.to_string(),
                    s.location.y.to_string(),
                    u8::from(s.made).to_string(),
                    u8::from(s.assisted).to_string(),
                    opt(s.closest_defender_distance),
                    s.shot_value.to_string(),
                    opt(s.pass_origin.map(|p| p.x)),
                    opt(s.pass_origin.map(|p| p.y)),
                    s.league.to_string(),
                ];
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out.into_bytes()
        }
        ShotLogFormat::Json => {
            let rows: Vec<Value> = shots
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "shot_id": s.shot_id,
                        "shooter_id": s.shooter_id,
                        "x": s.location.x,
                        "y": s.location.y,
                        "made": u8::from(s.made),
                        "assisted": u8::from(s.assisted),
                        "def_dist": s.closest_defender_distance,
                        "shot_value": s.shot_value,
                        "pass_x": s.pass_origin.map(|p| p.x),
                        "pass_y": s.pass_origin.map(|p| p.y),
                        "league": s.league.to_string(),
                    })
                })
                .collect();
            let mut bytes = serde_json::to_vec_pretty(&rows).expect("shots serialize");
            bytes.push(b'\n');
            bytes
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) || s.starts_with('#') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIXTURE: &str = "\
shot_id,shooter_id,x,y,made,assisted,def_dist,shot_value,pass_x,pass_y,league
s1,p7,22.3,1.0,1,1,6.5,3,0.5,3.0,NBA
s2,p8,-16,19,0,0,,3,,,NBA
s3,p9,10,10,1,0,4.25,2,,,FIBA
";

    #[test]
    fn parses_three_row_fixture() {
        let shots = parse_shot_log(FIXTURE.as_bytes(), ShotLogFormat::Csv).unwrap();
        assert_eq!(shots.len(), 3);
        assert_eq!(shots[0].shot_id, "s1");
        assert_eq!(shots[0].location, Point2D::new(22.3, 1.0));
        assert!(shots[0].made && shots[0].assisted);
        assert_eq!(shots[0].closest_defender_distance, Some(6.5));
        assert_eq!(shots[0].pass_origin, Some(Point2D::new(0.5, 3.0)));
        assert_eq!(shots[1].closest_defender_distance, None);
        assert_eq!(shots[1].pass_origin, None);
        assert_eq!(shots[2].shot_value, 2);
        assert_eq!(shots[2].league, League::Fiba);
    }

    #[test]
    fn header_only_is_empty() {
        let text = format!("{}\n", SHOT_LOG_COLUMNS.join(","));
        assert!(parse_shot_log(text.as_bytes(), ShotLogFormat::Csv).unwrap().is_empty());
        assert!(parse_shot_log(b"[]", ShotLogFormat::Json).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_binary_made() {
        let text = FIXTURE.replacen("22.3,1.0,1,", "22.3,1.0,yes,", 1);
        match parse_shot_log(text.as_bytes(), ShotLogFormat::Csv) {
            Err(DataError::Value { row, message }) => {
                assert_eq!(row, 1);
                assert!(message.contains("made"), "{message}");
            }
            other => panic!("expected a value error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_missing_column_and_bad_values() {
        let text = FIXTURE.replace(",league", "");
        assert!(matches!(
            parse_shot_log(text.as_bytes(), ShotLogFormat::Csv),
            Err(DataError::Schema(_))
        ));
        let text = FIXTURE.replace("10,10,1", "10,inf,1");
        assert!(matches!(
            parse_shot_log(text.as_bytes(), ShotLogFormat::Csv),
            Err(DataError::Value { row: 3, .. })
        ));
        let text = FIXTURE.replace("0.5,3.0", "0.5,");
        assert!(matches!(
            parse_shot_log(text.as_bytes(), ShotLogFormat::Csv),
            Err(DataError::Value { row: 1, .. })
        ));
        let text = FIXTURE.replace("4.25", "-1");
        assert!(parse_shot_log(text.as_bytes(), ShotLogFormat::Csv).is_err());
    }

    #[test]
    fn json_matches_csv() {
        let csv_shots = parse_shot_log(FIXTURE.as_bytes(), ShotLogFormat::Csv).unwrap();
        let json = write_shot_log(&csv_shots, ShotLogFormat::Json);
        let json_shots = parse_shot_log(&json, ShotLogFormat::Json).unwrap();
        assert_eq!(csv_shots, json_shots);
        let bad = br#"[{"shot_id":"a","shooter_id":"b","x":1,"y":2,"made":1,"assisted":0,"shot_value":2}]"#;
        assert!(matches!(
            parse_shot_log(bad, ShotLogFormat::Json),
            Err(DataError::Schema(_))
        ));
    }

    #[test]
    fn csv_normalizes_formatting() {
        let messy = FIXTURE.replace("-16,19", " -16.000 , 19.0 ");
        let shots = parse_shot_log(messy.as_bytes(), ShotLogFormat::Csv).unwrap();
        let clean = parse_shot_log(FIXTURE.as_bytes(), ShotLogFormat::Csv).unwrap();
        assert_eq!(
            write_shot_log(&shots, ShotLogFormat::Csv),
            write_shot_log(&clean, ShotLogFormat::Csv)
        );
    }

    fn arb_shot() -> impl Strategy<Value = ShotEvent> {
        (
            "[a-z0-9,\"]{1,8}",
            "[a-z0-9]{1,8}",
            (-25.0f64..25.0, -5.0f64..41.0),
            any::<(bool, bool, bool)>(),
            proptest::option::of(0.0f64..30.0),
            proptest::option::of((-25.0f64..25.0, -5.0f64..41.0)),
            any::<bool>(),
        )
            .prop_map(|(id, shooter, (x, y), (made, assisted, three), dd, pass, fiba)| ShotEvent {
                shot_id: id,
                shooter_id: shooter,
                location: Point2D::new(x, y),
                made,
                assisted,
                closest_defender_distance: dd,
                shot_value: if three { 3 } else { 2 },
                pass_origin: pass.map(|(x, y)| Point2D::new(x, y)),
                league: if fiba { League::Fiba } else { League::Nba },
            })
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(shots in proptest::collection::vec(arb_shot(), 0..20)) {
            for format in [ShotLogFormat::Csv, ShotLogFormat::Json] {
                let bytes = write_shot_log(&shots, format);
                let back = parse_shot_log(&bytes, format).unwrap();
                prop_assert_eq!(&back, &shots);
                prop_assert_eq!(write_shot_log(&back, format), bytes);
            }
        }
    }
}
