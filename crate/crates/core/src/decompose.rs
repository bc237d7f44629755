//! The incidence-graph decomposition: residual edges plus complete
//! bipartite factors along lines contained in the quadric, the
//! pseudo-circle intersection counter for plane-section pairs, and the
//! structural audits the decomposition is guaranteed to satisfy.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num::{Signed, Zero};

use crate::geom::{line_in_plane, Line3, Plane, Point3};
use crate::incidence::{incidence_graph, IncidenceGraph};
use crate::lines::{build_l, lines_in_plane_section};
use crate::quadric::{line_restriction_coeffs, point_on_quadric, Quadric, QuadricClass};
use crate::rational::Rational;
use crate::{Error, Result};

/// One complete bipartite factor `P_l x H_l` of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFactor {
    pub line: Line3,
    /// Indices into `P` of the points on the line (apex excluded on cones).
    pub point_indices: Vec<usize>,
    /// Indices into `H` of the planes containing the line.
    pub plane_indices: Vec<usize>,
}

/// `G(P,H) = G_0 u U_l (P_l x H_l) u apex incidences`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Residual edges: incidences with no explaining rational line of `L`.
    pub residual: BTreeSet<(usize, usize)>,
    pub factors: Vec<LineFactor>,
    /// Incidences of the cone apex, when the quadric is a cone and the apex
    /// belongs to `P`; empty otherwise.
    pub apex_incidences: BTreeSet<(usize, usize)>,
    /// Apex index in `P`, when present.
    pub apex_index: Option<usize>,
    /// Irrational rulings seen while building `L` (never materialized).
    pub irrational_ruling_count: usize,
    pub classification: QuadricClass,
}

impl Decomposition {
    /// Sum over factors of `|P_l|`.
    pub fn sum_point_sides(&self) -> usize {
        self.factors.iter().map(|f| f.point_indices.len()).sum()
    }

    /// Sum over factors of `|H_l|`.
    pub fn sum_plane_sides(&self) -> usize {
        self.factors.iter().map(|f| f.plane_indices.len()).sum()
    }

    /// Every edge covered by some factor.
    pub fn factor_edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for f in &self.factors {
            for &i in &f.point_indices {
                for &j in &f.plane_indices {
                    out.insert((i, j));
                }
            }
        }
        out
    }
}

/// Builds the decomposition for points of `P` on the classified quadric `V`.
///
/// Factors are built for exactly the lines of `L` contained in at least one
/// plane of `H`; the residual keeps every incidence with no explaining line.
/// On cones the apex is segregated: its incidences go to `apex_incidences`.
pub fn decompose(points: &[Point3], planes: &[Plane], v: &Quadric) -> Result<Decomposition> {
    let class = v.classify()?;
    match class {
        QuadricClass::Cone { .. }
        | QuadricClass::DoublyRuledNondegenerate
        | QuadricClass::NonRuledNondegenerate => {}
        c => return Err(Error::UnsupportedQuadric(c)),
    }
    let graph = incidence_graph(points, planes)?;
    let line_set = build_l(points, v)?;

    let mut factors = Vec::new();
    for line in &line_set.lines {
        let plane_indices: Vec<usize> = planes
            .iter()
            .enumerate()
            .filter(|(_, h)| line_in_plane(line, h))
            .map(|(j, _)| j)
            .collect();
        if plane_indices.is_empty() {
            continue;
        }
        let point_indices: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|&(i, p)| Some(i) != line_set.apex_index && line.contains(p))
            .map(|(i, _)| i)
            .collect();
        debug_assert!(!point_indices.is_empty());
        factors.push(LineFactor { line: line.clone(), point_indices, plane_indices });
    }

    let covered = {
        let mut s = BTreeSet::new();
        for f in &factors {
            for &i in &f.point_indices {
                for &j in &f.plane_indices {
                    s.insert((i, j));
                }
            }
        }
        s
    };

    let mut residual = BTreeSet::new();
    let mut apex_incidences = BTreeSet::new();
    for &(i, j) in graph.edges() {
        if Some(i) == line_set.apex_index {
            apex_incidences.insert((i, j));
        } else if !covered.contains(&(i, j)) {
            residual.insert((i, j));
        }
    }

    Ok(Decomposition {
        residual,
        factors,
        apex_incidences,
        apex_index: line_set.apex_index,
        irrational_ruling_count: line_set.irrational_ruling_count,
        classification: class,
    })
}

/// Number of intersections of the section curves of two distinct planes:
/// the real roots of the quadric restricted to the line `h` meet `h'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvePairCount {
    Zero,
    One,
    Two,
    /// The common line lies inside the quadric (callers are expected to have
    /// removed line-carrying planes first).
    InfiniteFlag,
}

impl CurvePairCount {
    pub fn as_count(self) -> Option<usize> {
        match self {
            CurvePairCount::Zero => Some(0),
            CurvePairCount::One => Some(1),
            CurvePairCount::Two => Some(2),
            CurvePairCount::InfiniteFlag => None,
        }
    }
}

/// The pseudo-circle counter: sections of two line-free planes meet in at
/// most two points, namely the intersections of the line `h` meet `h'`
/// with `V`, counted by exact discriminant sign.
pub fn curve_pair_intersections(h: &Plane, hp: &Plane, v: &Quadric) -> Result<CurvePairCount> {
    if h == hp {
        return Err(Error::IdenticalPlanes);
    }
    let Some(line) = crate::geom::plane_intersection_line(h, hp) else {
        // Parallel distinct planes: disjoint section curves.
        return Ok(CurvePairCount::Zero);
    };
    let (c2, c1, c0) = line_restriction_coeffs(&line, v);
    if c2.is_zero() && c1.is_zero() && c0.is_zero() {
        return Ok(CurvePairCount::InfiniteFlag);
    }
    if c2.is_zero() {
        return Ok(if c1.is_zero() { CurvePairCount::Zero } else { CurvePairCount::One });
    }
    let disc = &c1 * &c1 - Rational::from_integer(num::BigInt::from(4)) * &c2 * &c0;
    Ok(if disc.is_positive() {
        CurvePairCount::Two
    } else if disc.is_zero() {
        CurvePairCount::One
    } else {
        CurvePairCount::Zero
    })
}

/// Full structural audit of a decomposition against its instance. Returns
/// every violated invariant; empty means the instance passes.
pub fn audit(
    d: &Decomposition,
    points: &[Point3],
    planes: &[Plane],
    v: &Quadric,
    graph: &IncidenceGraph,
) -> Vec<String> {
    let mut failures = Vec::new();
    let factor_edges = d.factor_edges();

    // Coverage: residual u factors u apex == G exactly.
    let mut union: BTreeSet<(usize, usize)> = d.residual.clone();
    union.extend(factor_edges.iter().copied());
    union.extend(d.apex_incidences.iter().copied());
    if &union != graph.edges() {
        failures.push(format!(
            "coverage: union has {} edges, incidence graph has {}",
            union.len(),
            graph.edge_count()
        ));
    }

    // Residual disjoint from every factor.
    if d.residual.intersection(&factor_edges).next().is_some() {
        failures.push("residual overlaps a bipartite factor".into());
    }

    // Factor soundness: line in quadric, points on line, planes around line.
    for (fi, f) in d.factors.iter().enumerate() {
        if !crate::quadric::line_in_quadric(&f.line, v) {
            failures.push(format!("factor {fi}: line not contained in the quadric"));
        }
        if f.point_indices.is_empty() || f.plane_indices.is_empty() {
            failures.push(format!("factor {fi}: empty side"));
        }
        for &i in &f.point_indices {
            if !f.line.contains(&points[i]) {
                failures.push(format!("factor {fi}: point {i} not on line"));
            }
        }
        for &j in &f.plane_indices {
            if !line_in_plane(&f.line, &planes[j]) {
                failures.push(format!("factor {fi}: plane {j} does not contain line"));
            }
        }
        for &i in &f.point_indices {
            for &j in &f.plane_indices {
                if !graph.edges().contains(&(i, j)) {
                    failures.push(format!("factor {fi}: ({i},{j}) is not a true incidence"));
                }
            }
        }
    }

    // Quadric budgets: at most 2 lines per point and per plane, so
    // sum |P_l| <= 2m and sum |H_l| <= 2n on non-conical instances.
    if !matches!(d.classification, QuadricClass::Cone { .. }) {
        if d.sum_point_sides() > 2 * points.len() {
            failures.push(format!(
                "point-side budget: sum |P_l| = {} > 2m = {}",
                d.sum_point_sides(),
                2 * points.len()
            ));
        }
    }
    if d.sum_plane_sides() > 2 * planes.len() {
        failures.push(format!(
            "plane-side budget: sum |H_l| = {} > 2n = {}",
            d.sum_plane_sides(),
            2 * planes.len()
        ));
    }

    // Residual purity: no residual edge is explained by any line of L.
    let all_lines: Vec<&Line3> = d.factors.iter().map(|f| &f.line).collect();
    for &(i, j) in &d.residual {
        for line in &all_lines {
            if line.contains(&points[i]) && line_in_plane(line, &planes[j]) {
                failures.push(format!("residual edge ({i},{j}) explained by a line of L"));
            }
        }
    }

    // Ruled / non-ruled dichotomy.
    match &d.classification {
        QuadricClass::NonRuledNondegenerate => {
            if !d.factors.is_empty() {
                failures.push("non-ruled quadric produced line factors".into());
            }
        }
        QuadricClass::Cone { apex } => {
            for (fi, f) in d.factors.iter().enumerate() {
                if !f.line.contains(apex) {
                    failures.push(format!("factor {fi}: cone line avoids the apex"));
                }
            }
        }
        _ => {}
    }

    // Apex incidences really belong to the apex.
    if let Some(ai) = d.apex_index {
        for &(i, _) in &d.apex_incidences {
            if i != ai {
                failures.push("apex incidence from a non-apex point".into());
            }
        }
        if !point_on_quadric(&points[ai], v) {
            failures.push("recorded apex is off the variety".into());
        }
    } else if !d.apex_incidences.is_empty() {
        failures.push("apex incidences recorded without an apex".into());
    }

    // Every plane section carries at most 2 lines.
    for (j, h) in planes.iter().enumerate() {
        match lines_in_plane_section(h, v) {
            Ok(s) if s.count <= 2 => {}
            Ok(s) => failures.push(format!("plane {j}: section carries {} lines", s.count)),
            Err(e) => failures.push(format!("plane {j}: section analysis failed: {e}")),
        }
    }

    failures
}
