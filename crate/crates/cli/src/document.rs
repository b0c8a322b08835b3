//! Instance files (`"format": "concentric-gons/1"`).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use concentric_gons::{CircleFamily, PlanePoint, RegularPolygonSpec};
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "concentric-gons/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Default for Point {
    fn default() -> Self {
        Point { x: 0.0, y: 0.0 }
    }
}

impl From<PlanePoint> for Point {
    fn from(p: PlanePoint) -> Self {
        Point { x: p.x, y: p.y }
    }
}

impl From<Point> for PlanePoint {
    fn from(p: Point) -> Self {
        PlanePoint::new(p.x, p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub n: usize,
    pub center: Point,
    pub circumradius: f64,
    #[serde(default)]
    pub phase: f64,
}

impl From<&RegularPolygonSpec> for PolygonRecord {
    fn from(p: &RegularPolygonSpec) -> Self {
        PolygonRecord {
            n: p.n(),
            center: p.center().into(),
            circumradius: p.circumradius(),
            phase: p.phase(),
        }
    }
}

impl PolygonRecord {
    pub fn to_spec(self) -> Result<RegularPolygonSpec, InputError> {
        RegularPolygonSpec::new(self.n, self.center.into(), self.circumradius, self.phase)
            .map_err(|e| InputError(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Circles {
        #[serde(default)]
        center: Point,
        radii: Vec<f64>,
    },
    PolygonPair {
        first: PolygonRecord,
        second: PolygonRecord,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub format: String,
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

/// Bad flags or unreadable input; maps to exit code 1.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl InstanceDocument {
    pub fn circles(center: PlanePoint, radii: Vec<f64>) -> Self {
        InstanceDocument {
            format: FORMAT.to_string(),
            payload: Payload::Circles {
                center: center.into(),
                radii,
            },
            metadata: BTreeMap::new(),
        }
    }

    pub fn polygon_pair(first: &RegularPolygonSpec, second: &RegularPolygonSpec) -> Self {
        InstanceDocument {
            format: FORMAT.to_string(),
            payload: Payload::PolygonPair {
                first: first.into(),
                second: second.into(),
            },
            metadata: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let doc: InstanceDocument = serde_json::from_str(text)
            .map_err(|e| InputError(format!("malformed instance: {e}")))?;
        if doc.format != FORMAT {
            return Err(InputError(format!(
                "unsupported format {:?}, expected {FORMAT:?}",
                doc.format
            )));
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Comma-separated decimal radii, e.g. `1,1.5,2`.
pub fn parse_radii(text: &str) -> Result<Vec<f64>, InputError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v >= 0.0)
                .ok_or_else(|| {
                    InputError(format!(
                        "bad radius {t:?}: expected a finite non-negative number"
                    ))
                })
        })
        .collect()
}

/// A family from unordered radii; warns on stderr when they were reordered.
pub fn family_from(center: PlanePoint, radii: Vec<f64>) -> Result<CircleFamily, InputError> {
    let (family, reordered) =
        CircleFamily::from_unsorted(center, radii).map_err(|e| InputError(e.to_string()))?;
    if reordered {
        eprintln!("warning: radii were not in ascending order; sorted before use");
    }
    Ok(family)
}
