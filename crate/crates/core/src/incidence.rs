//! The incidence graph `G(P,H)`, richness histograms, and the
//! strongly-degenerate-plane classification.
//!
//! The reference algorithm is the full `m x n` exact predicate sweep;
//! everything downstream (decomposition audits, bound reports) measures
//! against the edge set produced here.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::geom::{collinear, point_on_plane, Plane, Point3};
use crate::{Error, Result};

/// Exact bipartite incidence graph over index pairs `(point, plane)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    edges: BTreeSet<(usize, usize)>,
    per_point: Vec<Vec<usize>>,
    per_plane: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Planes incident to point `i`.
    pub fn planes_of_point(&self, i: usize) -> &[usize] {
        &self.per_point[i]
    }

    /// Points incident to plane `j`.
    pub fn points_of_plane(&self, j: usize) -> &[usize] {
        &self.per_plane[j]
    }

    pub fn point_count(&self) -> usize {
        self.per_point.len()
    }

    pub fn plane_count(&self) -> usize {
        self.per_plane.len()
    }

    pub fn plane_degree(&self, j: usize) -> usize {
        self.per_plane[j].len()
    }
}

/// Full `m x n` sweep. Inputs must be internally deduplicated; duplicates
/// would silently double-count incidences, so they are an error.
pub fn incidence_graph(points: &[Point3], planes: &[Plane]) -> Result<IncidenceGraph> {
    let distinct_points: BTreeSet<&Point3> = points.iter().collect();
    if distinct_points.len() != points.len() {
        return Err(Error::DuplicateInput("points"));
    }
    let distinct_planes: BTreeSet<&Plane> = planes.iter().collect();
    if distinct_planes.len() != planes.len() {
        return Err(Error::DuplicateInput("planes"));
    }
    let mut edges = BTreeSet::new();
    let mut per_point = vec![Vec::new(); points.len()];
    let mut per_plane = vec![Vec::new(); planes.len()];
    for (i, p) in points.iter().enumerate() {
        for (j, h) in planes.iter().enumerate() {
            if point_on_plane(p, h) {
                edges.insert((i, j));
                per_point[i].push(j);
                per_plane[j].push(i);
            }
        }
    }
    Ok(IncidenceGraph { edges, per_point, per_plane })
}

use alloc::vec;

/// Map `k -> number of planes containing exactly k points of P`
/// (zero-degree planes included under `k = 0`).
pub type RichnessHistogram = BTreeMap<usize, usize>;

pub fn richness_histogram(g: &IncidenceGraph) -> RichnessHistogram {
    let mut hist = RichnessHistogram::new();
    for j in 0..g.plane_count() {
        *hist.entry(g.plane_degree(j)).or_insert(0) += 1;
    }
    hist
}

/// `sum_k k * count(k) = |edges|`, the defining identity of the histogram.
pub fn histogram_consistent(hist: &RichnessHistogram, g: &IncidenceGraph) -> bool {
    hist.iter().map(|(k, c)| k * c).sum::<usize>() == g.edge_count()
}

/// Indices of planes with degree `>= k`, sorted by decreasing degree
/// (ties broken by index, so output is deterministic).
pub fn rich_planes(g: &IncidenceGraph, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..g.plane_count()).filter(|&j| g.plane_degree(j) >= k).collect();
    out.sort_by(|&a, &b| g.plane_degree(b).cmp(&g.plane_degree(a)).then(a.cmp(&b)));
    out
}

/// Partition of `H` by the small-`m` case analysis: planes with at most two
/// incident points are `Sparse`; planes with three or more are `Degenerate`
/// when all their incident points are collinear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneClass {
    Sparse,
    Degenerate,
    NonDegenerate,
}

pub fn classify_degenerate_planes(points: &[Point3], g: &IncidenceGraph) -> Vec<PlaneClass> {
    (0..g.plane_count())
        .map(|j| {
            let idx = g.points_of_plane(j);
            if idx.len() <= 2 {
                return PlaneClass::Sparse;
            }
            let p0 = &points[idx[0]];
            let p1 = &points[idx[1]];
            if idx[2..].iter().all(|&i| collinear(p0, p1, &points[i])) {
                PlaneClass::Degenerate
            } else {
                PlaneClass::NonDegenerate
            }
        })
        .collect()
}

/// Count of incidences lying on non-degenerate planes; the unique-triple
/// argument of the small-`m` case bounds it by `m^3 + 2n`.
pub fn non_degenerate_incidences(g: &IncidenceGraph, classes: &[PlaneClass]) -> usize {
    (0..g.plane_count())
        .filter(|&j| classes[j] == PlaneClass::NonDegenerate)
        .map(|j| g.plane_degree(j))
        .sum()
}
