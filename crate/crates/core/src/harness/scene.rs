//! Scene files: geometry plus measure in one UTF-8 JSON document.
//!
//! ```json
//! {
//!   "shape": "circle", "center": [0, 0], "radius": 1.0,
//!   "orientation": "outward",
//!   "measure": {
//!     "density": { "name": "constant", "coefficients": [1.0] },
//!     "atoms": [[[0.5, 1.5], 1.0]]
//!   }
//! }
//! ```
//!
//! Shapes: `segment` (endpoints), `circle` (center, radius), `polyline`
//! (vertices), `fourier-graph` (interval, sin, cos, offset),
//! `poly-graph` (interval, coefficients), `sphere` (center, radius).

use crate::error::{Error, Result};
use crate::geometry::{Orientation, Patch, PatchKind, Rect, RectifiableSet};
use crate::measure::{Atom, Density, RadonMeasure};
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneSpec {
    #[serde(flatten)]
    pub shape: ShapeSpec,
    pub orientation: Option<Orientation>,
    #[serde(default)]
    pub measure: MeasureSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum ShapeSpec {
    Segment {
        endpoints: [Vec<f64>; 2],
    },
    Circle {
        center: Vec<f64>,
        radius: f64,
    },
    Polyline {
        vertices: Vec<Vec<f64>>,
    },
    FourierGraph {
        interval: [f64; 2],
        #[serde(default)]
        sin: Vec<f64>,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        offset: f64,
    },
    PolyGraph {
        interval: [f64; 2],
        coefficients: Vec<f64>,
    },
    Sphere {
        center: Vec<f64>,
        radius: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub density: Density,
    #[serde(default)]
    pub atoms: Vec<(Vec<f64>, f64)>,
}

impl Default for MeasureSpec {
    fn default() -> Self {
        MeasureSpec {
            density: Density::constant(1.0),
            atoms: Vec::new(),
        }
    }
}

impl SceneSpec {
    pub fn from_json(text: &str) -> Result<SceneSpec> {
        serde_json::from_str(text).map_err(|e| Error::Scene(format!("scene parse: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene specs serialize")
    }

    /// Built-in shorthands accepted by the CLI in place of a file.
    pub fn builtin(name: &str) -> Result<SceneSpec> {
        let json = match name {
            "circle" => {
                r#"{"shape":"circle","center":[0,0],"radius":1.0,"orientation":"outward",
                    "measure":{"density":{"name":"constant","coefficients":[1.0]}}}"#
            }
            "line" | "segment" => {
                r#"{"shape":"segment","endpoints":[[-100.0,0.0],[100.0,0.0]],
                    "measure":{"density":{"name":"constant","coefficients":[1.0]}}}"#
            }
            "fourier" | "fourier-graph" => {
                r#"{"shape":"fourier-graph","interval":[-3.0,3.0],"sin":[0.12,0.05],
                    "orientation":"graph-up",
                    "measure":{"density":{"name":"trig","coefficients":[1.0,0.25]}}}"#
            }
            "sphere" => {
                r#"{"shape":"sphere","center":[0,0,0],"radius":1.0,"orientation":"outward",
                    "measure":{"density":{"name":"constant","coefficients":[1.0]}}}"#
            }
            other => {
                return Err(Error::Scene(format!(
                    "unknown builtin scene '{other}' (known: circle, line, fourier, sphere)"
                )))
            }
        };
        SceneSpec::from_json(json)
    }

    pub fn build(&self) -> Result<RadonMeasure> {
        let default_orientation = match &self.shape {
            ShapeSpec::Circle { .. } | ShapeSpec::Sphere { .. } => Orientation::Outward,
            _ => Orientation::GraphUp,
        };
        let orientation = self.orientation.unwrap_or(default_orientation);
        let patches = match &self.shape {
            ShapeSpec::Segment { endpoints } => vec![Patch {
                kind: PatchKind::Segment {
                    p0: Vec3::from_slice(&endpoints[0]).0,
                    p1: Vec3::from_slice(&endpoints[1]).0,
                },
                domain: Rect::interval(0.0, 1.0),
            }],
            ShapeSpec::Circle { center, radius } => vec![Patch {
                kind: PatchKind::Circle {
                    center: Vec3::from_slice(center).0,
                    radius: *radius,
                },
                domain: Rect::interval(0.0, 2.0 * PI),
            }],
            ShapeSpec::Polyline { vertices } => {
                if vertices.len() < 2 {
                    return Err(Error::Scene("polyline needs at least two vertices".into()));
                }
                vertices
                    .windows(2)
                    .map(|w| Patch {
                        kind: PatchKind::Segment {
                            p0: Vec3::from_slice(&w[0]).0,
                            p1: Vec3::from_slice(&w[1]).0,
                        },
                        domain: Rect::interval(0.0, 1.0),
                    })
                    .collect()
            }
            ShapeSpec::FourierGraph {
                interval,
                sin,
                cos,
                offset,
            } => vec![Patch {
                kind: PatchKind::FourierGraph {
                    sin: sin.clone(),
                    cos: cos.clone(),
                    offset: *offset,
                },
                domain: Rect::interval(interval[0], interval[1]),
            }],
            ShapeSpec::PolyGraph {
                interval,
                coefficients,
            } => vec![Patch {
                kind: PatchKind::PolyGraph1 {
                    coeffs: coefficients.clone(),
                },
                domain: Rect::interval(interval[0], interval[1]),
            }],
            ShapeSpec::Sphere { center, radius } => vec![Patch {
                kind: PatchKind::Sphere {
                    center: Vec3::from_slice(center).0,
                    radius: *radius,
                },
                domain: Rect::square([0.0, 0.0], [PI, 2.0 * PI]),
            }],
        };
        let set = RectifiableSet::new(patches, orientation)?;
        let atoms = self
            .measure
            .atoms
            .iter()
            .map(|(loc, w)| Atom::new(Vec3::from_slice(loc), *w))
            .collect();
        Ok(RadonMeasure::new(set, self.measure.density.clone(), atoms))
    }
}

/// Equispaced parameter grid across all patches, offset from patch
/// endpoints by 1% of each domain.
pub fn default_evaluation_points(set: &RectifiableSet, count: usize) -> Vec<(usize, [f64; 2])> {
    let patches = set.patches().len();
    let mut out = Vec::new();
    let per_patch = count.div_ceil(patches);
    for (idx, patch) in set.patches().iter().enumerate() {
        let d = &patch.domain;
        let take = per_patch.min(count - out.len());
        for i in 0..take {
            let frac = 0.01 + 0.98 * (i as f64 + 0.5) / per_patch as f64;
            let t0 = d.lo[0] + (d.hi[0] - d.lo[0]) * frac;
            let t1 = if patch.dim() == 2 {
                // Stagger the second coordinate to avoid poles and seams.
                let frac2 = 0.01 + 0.98 * ((i as f64 * 0.61803398875) % 1.0);
                d.lo[1] + (d.hi[1] - d.lo[1]) * frac2
            } else {
                0.0
            };
            out.push((idx, [t0, t1]));
        }
        if out.len() >= count {
            break;
        }
    }
    out
}
