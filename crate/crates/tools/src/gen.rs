//! Seeded instance generators: rational points exactly on one of five
//! model quadrics, and four plane-generation strategies that stress the
//! decomposition in different ways.
//!
//! All randomness flows from the spec's seed through a splitmix64 stream,
//! so identical specs reproduce identical instances byte for byte.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use quadrics_core::geom::{collinear, plane_through_points};
use quadrics_core::mobius::Mobius;
use quadrics_core::quadric::{line_in_quadric, point_on_quadric};
use quadrics_core::rational::{rat, Rational};
use quadrics_core::transforms::SplitMix64;
use quadrics_core::{Line3, Plane, Point3, Quadric, Vec3};

use crate::{Result, ToolError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadricKind {
    HyperbolicParaboloid,
    Paraboloid,
    Sphere,
    Cone,
    OneSheetHyperboloid,
}

impl QuadricKind {
    pub const ALL: [QuadricKind; 5] = [
        QuadricKind::HyperbolicParaboloid,
        QuadricKind::Paraboloid,
        QuadricKind::Sphere,
        QuadricKind::Cone,
        QuadricKind::OneSheetHyperboloid,
    ];

    pub fn quadric(&self) -> Quadric {
        match self {
            QuadricKind::HyperbolicParaboloid => Quadric::hyperbolic_paraboloid(),
            QuadricKind::Paraboloid => Quadric::paraboloid(),
            QuadricKind::Sphere => Quadric::unit_sphere(),
            QuadricKind::Cone => Quadric::standard_cone(),
            QuadricKind::OneSheetHyperboloid => Quadric::one_sheet_hyperboloid(),
        }
    }

    pub fn is_ruled(&self) -> bool {
        !matches!(self, QuadricKind::Paraboloid | QuadricKind::Sphere)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaneStrategy {
    ThroughTriples,
    RulingPlanes,
    Random,
    MobiusPlanes,
}

fn default_num_bound() -> u64 {
    10_000
}

fn default_den_bound() -> u64 {
    1_000
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: QuadricKind,
    /// Point count `m`.
    pub m: usize,
    /// Plane count `n`.
    pub n: usize,
    pub strategy: PlaneStrategy,
    pub seed: u64,
    /// Bound on |numerator| of random rationals.
    #[serde(default = "default_num_bound")]
    pub num_bound: u64,
    /// Bound on denominators of random rationals.
    #[serde(default = "default_den_bound")]
    pub den_bound: u64,
}

impl InstanceSpec {
    pub fn new(kind: QuadricKind, m: usize, n: usize, strategy: PlaneStrategy, seed: u64) -> Self {
        InstanceSpec {
            kind,
            m,
            n,
            strategy,
            seed,
            num_bound: default_num_bound(),
            den_bound: default_den_bound(),
        }
    }

    /// Same spec with smaller random-rational magnitudes; small coordinate
    /// pools force the coincidences (collinear points, shared rulings) the
    /// decomposition is supposed to factor out.
    pub fn with_bounds(mut self, num_bound: u64, den_bound: u64) -> Self {
        self.num_bound = num_bound.max(1);
        self.den_bound = den_bound.max(1);
        self
    }
}

fn rand_rational(rng: &mut SplitMix64, num_bound: u64, den_bound: u64) -> Rational {
    let num = rng.below(2 * num_bound + 1) as i64 - num_bound as i64;
    let den = rng.below(den_bound) as i64 + 1;
    Rational::new(num.into(), den.into())
}

/// `m` distinct rational points exactly on the spec's quadric.
pub fn gen_points(spec: &InstanceSpec) -> Result<Vec<Point3>> {
    if spec.m == 0 {
        return Err(ToolError::Input("point count must be >= 1".into()));
    }
    let mut rng = SplitMix64::new(spec.seed.wrapping_mul(2).wrapping_add(1));
    let v = spec.kind.quadric();
    let mut set: BTreeSet<Point3> = BTreeSet::new();
    let mut attempts = 0usize;
    while set.len() < spec.m {
        attempts += 1;
        if attempts > 200 * spec.m + 1000 {
            return Err(ToolError::Input(format!(
                "could not draw {} distinct points (coordinate pool too small?)",
                spec.m
            )));
        }
        let p = draw_point(spec, &mut rng);
        debug_assert!(point_on_quadric(&p, &v));
        set.insert(p);
    }
    Ok(set.into_iter().collect())
}

fn draw_point(spec: &InstanceSpec, rng: &mut SplitMix64) -> Point3 {
    let (nb, db) = (spec.num_bound, spec.den_bound);
    match spec.kind {
        QuadricKind::HyperbolicParaboloid => {
            let x = rand_rational(rng, nb, db);
            let y = rand_rational(rng, nb, db);
            let z = &x * &y;
            Point3::new(x, y, z)
        }
        QuadricKind::Paraboloid => {
            let x = rand_rational(rng, nb, db);
            let y = rand_rational(rng, nb, db);
            let z = &x * &x + &y * &y;
            Point3::new(x, y, z)
        }
        QuadricKind::Sphere => {
            // Stereographic chart from the north pole: (u, v) maps to
            // (2u/s, 2v/s, (u^2+v^2-1)/s) with s = u^2 + v^2 + 1.
            let u = rand_rational(rng, nb, db);
            let v = rand_rational(rng, nb, db);
            let uv2 = &u * &u + &v * &v;
            let s = &uv2 + rat(1);
            Point3::new(
                (rat(2) * &u) / &s,
                (rat(2) * &v) / &s,
                (&uv2 - rat(1)) / &s,
            )
        }
        QuadricKind::Cone => {
            // lambda * (1-t^2, 2t, 1+t^2); lambda = 0 gives the apex.
            let (d, _) = cone_ruling(rng, nb, db);
            let lambda = rand_rational(rng, nb, db);
            Point3::from_vec(d.scale(&lambda))
        }
        QuadricKind::OneSheetHyperboloid => {
            // Waist-circle point plus a multiple of the ruling direction.
            let (base, dir) = hyperboloid_ruling(rng, nb, db);
            let s = rand_rational(rng, nb, db);
            Point3::from_vec(base.as_vec().add(&dir.scale(&s)))
        }
    }
}

/// Rational direction of a ruling of `x^2 + y^2 = z^2` (through the apex).
fn cone_ruling(rng: &mut SplitMix64, nb: u64, db: u64) -> (Vec3, Rational) {
    let t = rand_rational(rng, nb, db);
    let t2 = &t * &t;
    let d = Vec3::new(rat(1) - &t2, rat(2) * &t, rat(1) + &t2);
    (d, t)
}

/// A ruling of `x^2 + y^2 - z^2 = 1`: base point on the waist circle
/// `(cos, sin, 0)` in the tangent-line chart, direction `(-sin, cos, +-1)`.
fn hyperboloid_ruling(rng: &mut SplitMix64, nb: u64, db: u64) -> (Point3, Vec3) {
    let t = rand_rational(rng, nb, db);
    let w = rat(1) + &t * &t;
    let cos = (rat(1) - &t * &t) / &w;
    let sin = (rat(2) * &t) / &w;
    let base = Point3::new(cos.clone(), sin.clone(), rat(0));
    let sign = if rng.below(2) == 0 { rat(1) } else { rat(-1) };
    let dir = Vec3::new(-sin, cos, sign);
    (base, dir)
}

/// A ruling line of the spec's (ruled) quadric.
fn draw_ruling(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Line3> {
    let (nb, db) = (spec.num_bound, spec.den_bound);
    let line = match spec.kind {
        QuadricKind::HyperbolicParaboloid => {
            // Through (a, b, ab): constant-y family (1, 0, b) or
            // constant-x family (0, 1, a).
            let a = rand_rational(rng, nb, db);
            let b = rand_rational(rng, nb, db);
            let p = Point3::new(a.clone(), b.clone(), &a * &b);
            let dir = if rng.below(2) == 0 {
                Vec3::new(rat(1), rat(0), b)
            } else {
                Vec3::new(rat(0), rat(1), a)
            };
            Line3::new(&p, &dir)?
        }
        QuadricKind::Cone => {
            let (d, _) = cone_ruling(rng, nb, db);
            Line3::new(&Point3::new(rat(0), rat(0), rat(0)), &d)?
        }
        QuadricKind::OneSheetHyperboloid => {
            let (base, dir) = hyperboloid_ruling(rng, nb, db);
            Line3::new(&base, &dir)?
        }
        QuadricKind::Paraboloid | QuadricKind::Sphere => {
            return Err(ToolError::Input(
                "ruling-planes strategy needs a ruled quadric".into(),
            ))
        }
    };
    debug_assert!(line_in_quadric(&line, &spec.kind.quadric()));
    Ok(line)
}

/// `n` distinct planes per the spec's strategy.
pub fn gen_planes(spec: &InstanceSpec, points: &[Point3]) -> Result<Vec<Plane>> {
    if spec.n == 0 {
        return Err(ToolError::Input("plane count must be >= 1".into()));
    }
    let mut rng = SplitMix64::new(spec.seed.wrapping_mul(2).wrapping_add(2));
    let (nb, db) = (spec.num_bound, spec.den_bound);
    let mut set: BTreeSet<Plane> = BTreeSet::new();
    let mut attempts = 0usize;
    while set.len() < spec.n {
        attempts += 1;
        if attempts > 500 * spec.n + 1000 {
            return Err(ToolError::Input(format!(
                "could not draw {} distinct planes for {:?}",
                spec.n, spec.strategy
            )));
        }
        match spec.strategy {
            PlaneStrategy::ThroughTriples => {
                if points.len() < 3 {
                    return Err(ToolError::Input(
                        "through-triples strategy needs at least 3 points".into(),
                    ));
                }
                let m = points.len() as u64;
                let i = rng.below(m) as usize;
                let j = rng.below(m) as usize;
                let k = rng.below(m) as usize;
                if i == j || j == k || i == k {
                    continue;
                }
                if collinear(&points[i], &points[j], &points[k]) {
                    continue;
                }
                let h = plane_through_points(&points[i], &points[j], &points[k])
                    .expect("non-collinear triple spans a plane");
                set.insert(h);
            }
            PlaneStrategy::RulingPlanes => {
                let line = draw_ruling(spec, &mut rng)?;
                let p0 = line.base().clone();
                let p1 = line.at(&rat(1));
                let q = Point3::new(
                    rand_rational(&mut rng, nb, db),
                    rand_rational(&mut rng, nb, db),
                    rand_rational(&mut rng, nb, db),
                );
                if line.contains(&q) {
                    continue;
                }
                let h = plane_through_points(&p0, &p1, &q)
                    .expect("point off the line spans a plane");
                debug_assert!(quadrics_core::geom::line_in_plane(&line, &h));
                set.insert(h);
            }
            PlaneStrategy::Random => {
                let a = rand_rational(&mut rng, nb, db);
                let b = rand_rational(&mut rng, nb, db);
                let c = rand_rational(&mut rng, nb, db);
                let d = rand_rational(&mut rng, nb, db);
                if let Ok(h) = Plane::new(a, b, c, d) {
                    set.insert(h);
                }
            }
            PlaneStrategy::MobiusPlanes => {
                let alpha = rand_rational(&mut rng, nb, db);
                let beta = rand_rational(&mut rng, nb, db);
                let delta = rand_rational(&mut rng, nb, db);
                if let Ok(tau) = Mobius::new(alpha, beta, delta) {
                    set.insert(tau.plane());
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Points and planes together.
pub fn gen_instance(spec: &InstanceSpec) -> Result<(Vec<Point3>, Vec<Plane>)> {
    let points = gen_points(spec)?;
    let planes = gen_planes(spec, &points)?;
    Ok((points, planes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: QuadricKind, strategy: PlaneStrategy, seed: u64) -> InstanceSpec {
        InstanceSpec::new(kind, 6, 5, strategy, seed).with_bounds(8, 4)
    }

    #[test]
    fn points_lie_on_their_quadric() {
        for kind in QuadricKind::ALL {
            let spec = small(kind, PlaneStrategy::Random, 7);
            let pts = gen_points(&spec).unwrap();
            assert_eq!(pts.len(), 6);
            let v = kind.quadric();
            for p in &pts {
                assert!(point_on_quadric(p, &v), "{kind:?} point off quadric");
            }
        }
    }

    #[test]
    fn ruling_planes_contain_a_quadric_line() {
        for kind in [
            QuadricKind::HyperbolicParaboloid,
            QuadricKind::Cone,
            QuadricKind::OneSheetHyperboloid,
        ] {
            let spec = small(kind, PlaneStrategy::RulingPlanes, 3);
            let pts = gen_points(&spec).unwrap();
            let planes = gen_planes(&spec, &pts).unwrap();
            assert_eq!(planes.len(), 5);
            let v = kind.quadric();
            for h in &planes {
                let s = quadrics_core::lines::lines_in_plane_section(h, &v).unwrap();
                assert!(s.count >= 1, "{kind:?} ruling plane has a line-free section");
            }
        }
    }

    #[test]
    fn ruling_planes_need_ruled_quadric() {
        let spec = small(QuadricKind::Sphere, PlaneStrategy::RulingPlanes, 1);
        let pts = gen_points(&spec).unwrap();
        assert!(matches!(gen_planes(&spec, &pts), Err(ToolError::Input(_))));
    }

    #[test]
    fn through_triples_have_three_incidences() {
        let spec = small(QuadricKind::Paraboloid, PlaneStrategy::ThroughTriples, 11);
        let (pts, planes) = gen_instance(&spec).unwrap();
        let g = quadrics_core::incidence::incidence_graph(&pts, &planes).unwrap();
        for j in 0..planes.len() {
            assert!(g.plane_degree(j) >= 3);
        }
    }

    #[test]
    fn mobius_planes_have_line_free_sections() {
        let spec = small(QuadricKind::HyperbolicParaboloid, PlaneStrategy::MobiusPlanes, 5);
        let (_, planes) = gen_instance(&spec).unwrap();
        let v = Quadric::hyperbolic_paraboloid();
        for h in &planes {
            let s = quadrics_core::lines::lines_in_plane_section(h, &v).unwrap();
            assert_eq!(s.count, 0);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = small(QuadricKind::Cone, PlaneStrategy::ThroughTriples, 42);
        assert_eq!(gen_instance(&spec).unwrap(), gen_instance(&spec).unwrap());
    }
}
