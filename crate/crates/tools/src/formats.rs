//! File formats.
//!
//! Every exact scalar crosses the process boundary as a decimal rational
//! string `"p/q"` (`/q` omitted when the denominator is 1), e.g. `"-3/7"`.
//! The JSON shapes:
//!
//! * point: `{"x": "1", "y": "-2/3", "z": "0"}`
//! * plane `ax+by+cz+d=0`: `{"a": ..., "b": ..., "c": ..., "d": ...}`
//! * line: `{"base": <point>, "direction": {"x": ..., "y": ..., "z": ...}}`
//! * quadric, by scalar equation coefficients:
//!   `{"xx","yy","zz","xy","xz","yz","x","y","z","c"}` for
//!   `xx*x^2 + ... + xy*x*y + ... + x*x + ... + c = 0`
//! * instance: `{"points": [<point>...], "planes": [<plane>...]}`
//! * number set `A`: `["0", "1", "1/2", ...]`
//! * decomposition: `{"residual": [[i,j]...], "factors":
//!   [{"line": <line>, "points": [i...], "planes": [j...]}],
//!   "apex_incidences": [[i,j]...]}`
//!
//! CSV exports are plain comma-joined lines with a header row; all rows are
//! emitted in a canonical sort order so identical inputs give byte-identical
//! files.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use quadrics_core::bounds::BoundEvaluator;
use quadrics_core::decompose::{Decomposition, LineFactor};
use quadrics_core::incidence::IncidenceGraph;
use quadrics_core::mobius::RichTransformReport;
use quadrics_core::{Line3, Plane, Point3, Quadric, QuadricClass, Rational, Vec3};

use crate::{Result, ToolError};

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| ToolError::Input(format!("bad rational {s:?}: {e}")))
}

fn rat_string(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointJson {
    pub x: String,
    pub y: String,
    pub z: String,
}

impl PointJson {
    pub fn from_point(p: &Point3) -> Self {
        PointJson { x: rat_string(&p.x), y: rat_string(&p.y), z: rat_string(&p.z) }
    }

    pub fn to_point(&self) -> Result<Point3> {
        Ok(Point3::new(
            parse_rational(&self.x)?,
            parse_rational(&self.y)?,
            parse_rational(&self.z)?,
        ))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaneJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

impl PlaneJson {
    pub fn from_plane(h: &Plane) -> Self {
        let (a, b, c, d) = h.coeffs();
        PlaneJson {
            a: rat_string(a),
            b: rat_string(b),
            c: rat_string(c),
            d: rat_string(d),
        }
    }

    pub fn to_plane(&self) -> Result<Plane> {
        Plane::new(
            parse_rational(&self.a)?,
            parse_rational(&self.b)?,
            parse_rational(&self.c)?,
            parse_rational(&self.d)?,
        )
        .map_err(Into::into)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineJson {
    pub base: PointJson,
    pub direction: PointJson,
}

impl LineJson {
    pub fn from_line(l: &Line3) -> Self {
        let d = l.direction();
        let [dx, dy, dz] = d.coords();
        LineJson {
            base: PointJson::from_point(l.base()),
            direction: PointJson {
                x: rat_string(dx),
                y: rat_string(dy),
                z: rat_string(dz),
            },
        }
    }

    pub fn to_line(&self) -> Result<Line3> {
        let base = self.base.to_point()?;
        let d = self.direction.to_point()?;
        Line3::new(&base, &Vec3::new(d.x, d.y, d.z)).map_err(Into::into)
    }
}

/// Scalar-equation coefficients of a quadric; absent fields default to "0".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadricJson {
    #[serde(default = "zero")]
    pub xx: String,
    #[serde(default = "zero")]
    pub yy: String,
    #[serde(default = "zero")]
    pub zz: String,
    #[serde(default = "zero")]
    pub xy: String,
    #[serde(default = "zero")]
    pub xz: String,
    #[serde(default = "zero")]
    pub yz: String,
    #[serde(default = "zero")]
    pub x: String,
    #[serde(default = "zero")]
    pub y: String,
    #[serde(default = "zero")]
    pub z: String,
    #[serde(default = "zero")]
    pub c: String,
}

fn zero() -> String {
    "0".to_string()
}

impl QuadricJson {
    pub fn to_quadric(&self) -> Result<Quadric> {
        Ok(Quadric::from_equation_coeffs(
            [
                parse_rational(&self.xx)?,
                parse_rational(&self.yy)?,
                parse_rational(&self.zz)?,
            ],
            [
                parse_rational(&self.xy)?,
                parse_rational(&self.xz)?,
                parse_rational(&self.yz)?,
            ],
            [
                parse_rational(&self.x)?,
                parse_rational(&self.y)?,
                parse_rational(&self.z)?,
            ],
            parse_rational(&self.c)?,
        ))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceJson {
    pub points: Vec<PointJson>,
    pub planes: Vec<PlaneJson>,
}

impl InstanceJson {
    pub fn from_instance(points: &[Point3], planes: &[Plane]) -> Self {
        InstanceJson {
            points: points.iter().map(PointJson::from_point).collect(),
            planes: planes.iter().map(PlaneJson::from_plane).collect(),
        }
    }

    pub fn to_instance(&self) -> Result<(Vec<Point3>, Vec<Plane>)> {
        let points = self.points.iter().map(|p| p.to_point()).collect::<Result<_>>()?;
        let planes = self.planes.iter().map(|h| h.to_plane()).collect::<Result<_>>()?;
        Ok((points, planes))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorJson {
    pub line: LineJson,
    pub points: Vec<usize>,
    pub planes: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub residual: Vec<[usize; 2]>,
    pub factors: Vec<FactorJson>,
    pub apex_incidences: Vec<[usize; 2]>,
}

impl DecompositionJson {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        DecompositionJson {
            residual: d.residual.iter().map(|&(i, j)| [i, j]).collect(),
            factors: d
                .factors
                .iter()
                .map(|f| FactorJson {
                    line: LineJson::from_line(&f.line),
                    points: f.point_indices.clone(),
                    planes: f.plane_indices.clone(),
                })
                .collect(),
            apex_incidences: d.apex_incidences.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }

    /// Edge sets and factors in core form; classification fields are
    /// recomputed by the caller, not stored.
    pub fn to_parts(&self) -> Result<(BTreeSet<(usize, usize)>, Vec<LineFactor>, BTreeSet<(usize, usize)>)> {
        let residual = self.residual.iter().map(|&[i, j]| (i, j)).collect();
        let apex = self.apex_incidences.iter().map(|&[i, j]| (i, j)).collect();
        let factors = self
            .factors
            .iter()
            .map(|f| {
                Ok(LineFactor {
                    line: f.line.to_line()?,
                    point_indices: f.points.clone(),
                    plane_indices: f.planes.clone(),
                })
            })
            .collect::<Result<_>>()?;
        Ok((residual, factors, apex))
    }
}

/// `A` on disk: a JSON list of rational strings.
pub fn parse_set(json: &str) -> Result<Vec<Rational>> {
    let raw: Vec<String> = serde_json::from_str(json)?;
    raw.iter().map(|s| parse_rational(s)).collect()
}

/// Incidence graph CSV: `point_index,plane_index`, lexicographically sorted.
pub fn graph_csv(g: &IncidenceGraph) -> String {
    let mut out = String::from("point_index,plane_index\n");
    for (i, j) in g.edges() {
        out.push_str(&format!("{i},{j}\n"));
    }
    out
}

/// Per-instance bound measurements.
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    pub g0: usize,
    pub sum_pl: usize,
    pub sum_hl: usize,
    pub bound_quadric: f64,
    pub bound_weak: f64,
    /// `g0 / bound_quadric`.
    pub ratio: f64,
}

impl BoundReport {
    pub fn measure(
        d: &Decomposition,
        m: usize,
        n: usize,
        ev: &mut BoundEvaluator,
        beta: (i64, u64),
        kappa: f64,
    ) -> Self {
        let g0 = d.residual.len();
        let bq = ev.bound_general(m.max(1) as u64, n.max(1) as u64, beta.0, beta.1);
        let bq = ev.to_f64(&bq);
        let bw = ev.bound_weak(m.max(1) as u64, n.max(1) as u64, kappa);
        let bw = ev.to_f64(&bw);
        BoundReport {
            m,
            n,
            g0,
            sum_pl: d.sum_point_sides(),
            sum_hl: d.sum_plane_sides(),
            bound_quadric: bq,
            bound_weak: bw,
            ratio: g0 as f64 / bq,
        }
    }

    pub const CSV_HEADER: &'static str = "m,n,G0,sumPl,sumHl,bound_quadric,bound_weak,ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.6},{:.6},{:.6}",
            self.m, self.n, self.g0, self.sum_pl, self.sum_hl,
            self.bound_quadric, self.bound_weak, self.ratio
        )
    }
}

/// Cross-ratio report CSV: one row per tabulated `k`.
pub fn crossratio_csv(report: &RichTransformReport, n: usize, ev: &mut BoundEvaluator) -> String {
    let mut out = String::from("k,N_geq_k,bound_ngek,ratio\n");
    for (&k, &ngeq) in &report.n_geq {
        let b = ev.bound_ngek(n.max(1) as u64, k.max(3) as u64);
        let b = ev.to_f64(&b);
        out.push_str(&format!("{},{},{:.6},{:.6}\n", k, ngeq, b, ngeq as f64 / b));
    }
    out
}

/// Summary attached to a cross-ratio run; counts are absent below the
/// minimum set sizes that define them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossRatioSummary {
    pub n: usize,
    pub transformations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_cross_ratios: Option<usize>,
}

pub fn classification_tag(class: &QuadricClass) -> String {
    match class {
        QuadricClass::Reducible => "reducible".to_string(),
        QuadricClass::Linear => "linear".to_string(),
        QuadricClass::Cone { apex } => format!(
            "cone apex=({},{},{})",
            rat_string(&apex.x),
            rat_string(&apex.y),
            rat_string(&apex.z)
        ),
        QuadricClass::DoublyRuledNondegenerate => "doubly-ruled-nondegenerate".to_string(),
        QuadricClass::NonRuledNondegenerate => "non-ruled-nondegenerate".to_string(),
        QuadricClass::CylinderOrOtherRank3 => "cylinder-or-other-rank3".to_string(),
    }
}
