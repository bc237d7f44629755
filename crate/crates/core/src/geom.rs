//! Rational 3-space primitives with canonical, deduplicable forms.
//!
//! Canonicalization rules are fixed crate-wide so that two descriptions of
//! the same geometric object always compare (and hash) equal:
//! * `Plane`: scaled so the first nonzero coefficient among `(a,b,c,d)` is 1.
//! * `Line3`: primitive integer direction with positive first nonzero entry;
//!   base is the unique point of the line whose coordinate at the first
//!   nonzero direction index is 0.

use alloc::vec::Vec;

use num::{Signed, Zero};

use crate::rational::{lex_positive, primitive_integer_vector, Rational};
use crate::{Error, Result};

/// A rational 3-vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Vec3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, o: &Vec3) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn add(&self, o: &Vec3) -> Vec3 {
        Vec3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &Vec3) -> Vec3 {
        Vec3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn scale(&self, s: &Rational) -> Vec3 {
        Vec3::new(&self.x * s, &self.y * s, &self.z * s)
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// A point of the set `P`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn as_vec(&self) -> Vec3 {
        Vec3::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn from_vec(v: Vec3) -> Self {
        Point3::new(v.x, v.y, v.z)
    }
}

/// A plane `a*x + b*y + c*z + d = 0` of the set `H`, stored canonicalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plane {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Plane {
    /// Canonicalizes by dividing through by the first nonzero coefficient
    /// among `(a,b,c)` (always ahead of `d` since the normal is nonzero).
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else if !c.is_zero() {
            c.clone()
        } else {
            return Err(Error::ZeroNormal);
        };
        Ok(Plane {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
            d: d / &lead,
        })
    }

    pub fn coeffs(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn normal(&self) -> Vec3 {
        Vec3::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn offset(&self) -> &Rational {
        &self.d
    }

    /// Exact signed evaluation `a*px + b*py + c*pz + d`.
    pub fn eval(&self, p: &Point3) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c * &p.z + &self.d
    }

    /// Some rational point on the plane.
    pub fn sample_point(&self) -> Point3 {
        if !self.a.is_zero() {
            Point3::new(-(&self.d / &self.a), Rational::zero(), Rational::zero())
        } else if !self.b.is_zero() {
            Point3::new(Rational::zero(), -(&self.d / &self.b), Rational::zero())
        } else {
            Point3::new(Rational::zero(), Rational::zero(), -(&self.d / &self.c))
        }
    }

    /// Two independent rational directions spanning the plane.
    pub fn basis(&self) -> (Vec3, Vec3) {
        orthogonal_basis(&self.normal())
    }
}

/// Two independent rational vectors orthogonal to a nonzero `g`.
pub(crate) fn orthogonal_basis(g: &Vec3) -> (Vec3, Vec3) {
    let [gx, gy, gz] = [g.x.clone(), g.y.clone(), g.z.clone()];
    debug_assert!(!g.is_zero());
    if !gx.is_zero() {
        (
            Vec3::new(-gy.clone(), gx.clone(), Rational::zero()),
            Vec3::new(-gz, Rational::zero(), gx),
        )
    } else if !gy.is_zero() {
        (
            Vec3::new(gy.clone(), Rational::zero(), Rational::zero()),
            Vec3::new(Rational::zero(), -gz, gy),
        )
    } else {
        (
            Vec3::new(gz.clone(), Rational::zero(), Rational::zero()),
            Vec3::new(Rational::zero(), gz, Rational::zero()),
        )
    }
}

/// A line of the set `L`, stored canonicalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line3 {
    base: Point3,
    direction: Vec3,
}

impl Line3 {
    /// Builds the canonical representative of the line through `p` with
    /// direction `dir`.
    pub fn new(p: &Point3, dir: &Vec3) -> Result<Self> {
        if dir.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let mut ints = primitive_integer_vector(&[dir.x.clone(), dir.y.clone(), dir.z.clone()]);
        lex_positive(&mut ints);
        let direction = Vec3::new(
            Rational::from_integer(ints[0].clone()),
            Rational::from_integer(ints[1].clone()),
            Rational::from_integer(ints[2].clone()),
        );
        // Slide the base so its coordinate at the first nonzero direction
        // index is 0; this is the unique such point, so equal lines get
        // equal fields.
        let idx = direction
            .coords()
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero direction");
        let t = p.as_vec().coords()[idx] / direction.coords()[idx];
        let base = Point3::from_vec(p.as_vec().sub(&direction.scale(&t)));
        Ok(Line3 { base, direction })
    }

    pub fn base(&self) -> &Point3 {
        &self.base
    }

    pub fn direction(&self) -> &Vec3 {
        &self.direction
    }

    /// Point `base + t*direction`.
    pub fn at(&self, t: &Rational) -> Point3 {
        Point3::from_vec(self.base.as_vec().add(&self.direction.scale(t)))
    }

    pub fn contains(&self, p: &Point3) -> bool {
        self.direction.cross(&p.as_vec().sub(&self.base.as_vec())).is_zero()
    }
}

/// A planar circle `(x-a)^2 + (y-b)^2 = r^2`, parametrized by `r^2` so that
/// rational circles stay rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circle2 {
    pub center: (Rational, Rational),
    pub radius_squared: Rational,
}

impl Circle2 {
    pub fn new(center: (Rational, Rational), radius_squared: Rational) -> Result<Self> {
        if !radius_squared.is_positive() {
            return Err(Error::InvalidParameter("circle radius_squared must be > 0"));
        }
        Ok(Circle2 { center, radius_squared })
    }

    pub fn contains(&self, p: &(Rational, Rational)) -> bool {
        let dx = &p.0 - &self.center.0;
        let dy = &p.1 - &self.center.1;
        &dx * &dx + &dy * &dy == self.radius_squared
    }
}

/// `true` iff `p` satisfies the plane equation exactly.
pub fn point_on_plane(p: &Point3, h: &Plane) -> bool {
    h.eval(p).is_zero()
}

/// `true` iff the base lies on `h` and the direction is orthogonal to the
/// plane normal.
pub fn line_in_plane(l: &Line3, h: &Plane) -> bool {
    point_on_plane(l.base(), h) && l.direction().dot(&h.normal()).is_zero()
}

/// `true` iff the three points are collinear (cross-product test).
pub fn collinear(p: &Point3, q: &Point3, r: &Point3) -> bool {
    let u = q.as_vec().sub(&p.as_vec());
    let v = r.as_vec().sub(&p.as_vec());
    u.cross(&v).is_zero()
}

/// Solves the 2-plane intersection. Returns `None` when the planes are
/// parallel (including identical).
pub fn plane_intersection_line(h: &Plane, g: &Plane) -> Option<Line3> {
    let dir = h.normal().cross(&g.normal());
    if dir.is_zero() {
        return None;
    }
    // Pick the coordinate to zero out from the largest-index nonzero minor,
    // then solve the remaining 2x2 system exactly.
    let (ha, hb, hc, hd) = h.coeffs();
    let (ga, gb, gc, gd) = g.coeffs();
    let p = if !dir.z.is_zero() {
        // set z = 0, solve for (x, y)
        let x = (-hd * gb + gd * hb) / &dir.z;
        let y = (-ha * gd + ga * hd) / &dir.z;
        Point3::new(x, y, Rational::zero())
    } else if !dir.y.is_zero() {
        // set y = 0, solve for (z, x)
        let z = (-hd * ga + gd * ha) / &dir.y;
        let x = (-hc * gd + gc * hd) / &dir.y;
        Point3::new(x, Rational::zero(), z)
    } else {
        // set x = 0, solve for (y, z)
        let y = (-hd * gc + gd * hc) / &dir.x;
        let z = (-hb * gd + gb * hd) / &dir.x;
        Point3::new(Rational::zero(), y, z)
    };
    debug_assert!(point_on_plane(&p, h) && point_on_plane(&p, g));
    Some(Line3::new(&p, &dir).expect("nonzero direction"))
}

/// Plane through three non-collinear points.
pub fn plane_through_points(p: &Point3, q: &Point3, r: &Point3) -> Result<Plane> {
    let n = q.as_vec().sub(&p.as_vec()).cross(&r.as_vec().sub(&p.as_vec()));
    if n.is_zero() {
        return Err(Error::ZeroNormal);
    }
    let d = -n.dot(&p.as_vec());
    Plane::new(n.x, n.y, n.z, d)
}

/// Deduplicated, sorted copy of a slice of canonical values.
pub fn dedup_sorted<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    let mut v: Vec<T> = items.to_vec();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn pt(x: i64, y: i64, z: i64) -> Point3 {
        Point3::new(rat(x), rat(y), rat(z))
    }

    #[test]
    fn point_on_plane_examples() {
        let z0 = Plane::new(rat(0), rat(0), rat(1), rat(0)).unwrap();
        let z1 = Plane::new(rat(0), rat(0), rat(1), rat(-1)).unwrap();
        let s = Plane::new(rat(1), rat(1), rat(1), rat(-2)).unwrap();
        assert!(point_on_plane(&pt(0, 0, 0), &z0));
        assert!(point_on_plane(&pt(1, 0, 1), &z1));
        assert!(!point_on_plane(&pt(1, 1, 1), &s));
    }

    #[test]
    fn line_in_plane_examples() {
        let x_axis = Line3::new(&pt(0, 0, 0), &Vec3::new(rat(1), rat(0), rat(0))).unwrap();
        let z0 = Plane::new(rat(0), rat(0), rat(1), rat(0)).unwrap();
        let z1 = Plane::new(rat(0), rat(0), rat(1), rat(-1)).unwrap();
        assert!(line_in_plane(&x_axis, &z0));
        assert!(!line_in_plane(&x_axis, &z1));
        let l = Line3::new(&pt(0, 0, 1), &Vec3::new(rat(1), rat(1), rat(0))).unwrap();
        assert!(line_in_plane(&l, &z1));
    }

    #[test]
    fn plane_canonical_form_dedups() {
        let h1 = Plane::new(rat(2), rat(4), rat(-2), rat(6)).unwrap();
        let h2 = Plane::new(rat(-1), rat(-2), rat(1), rat(-3)).unwrap();
        assert_eq!(h1, h2);
        let v = Plane::new(rat(0), rat(3), rat(6), rat(9)).unwrap();
        assert_eq!(*v.coeffs().1, rat(1));
    }

    #[test]
    fn line_canonical_form_dedups() {
        let a = Line3::new(&pt(1, 1, 1), &Vec3::new(rat(2), rat(0), rat(2))).unwrap();
        let b = Line3::new(&pt(3, 1, 3), &Vec3::new(rat(-1), rat(0), rat(-1))).unwrap();
        assert_eq!(a, b);
        assert_eq!(*a.base(), pt(0, 1, 0));
        assert_eq!(*a.direction(), Vec3::new(rat(1), rat(0), rat(1)));
    }

    #[test]
    fn line_contains_points() {
        let l = Line3::new(&pt(1, 2, 3), &Vec3::new(rat(1), rat(-1), rat(2))).unwrap();
        assert!(l.contains(&pt(2, 1, 5)));
        assert!(!l.contains(&pt(2, 1, 4)));
        assert!(l.contains(&l.at(&ratio(7, 3))));
    }

    #[test]
    fn intersection_line_of_planes() {
        let z0 = Plane::new(rat(0), rat(0), rat(1), rat(0)).unwrap();
        let x0 = Plane::new(rat(1), rat(0), rat(0), rat(0)).unwrap();
        let l = plane_intersection_line(&z0, &x0).unwrap();
        assert!(line_in_plane(&l, &z0) && line_in_plane(&l, &x0));
        let z1 = Plane::new(rat(0), rat(0), rat(1), rat(-1)).unwrap();
        assert!(plane_intersection_line(&z0, &z1).is_none());
    }

    #[test]
    fn plane_through_triangle() {
        let h = plane_through_points(&pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1)).unwrap();
        assert_eq!(h, Plane::new(rat(1), rat(1), rat(1), rat(-1)).unwrap());
        assert!(plane_through_points(&pt(0, 0, 0), &pt(1, 1, 1), &pt(2, 2, 2)).is_err());
    }

    #[test]
    fn circle_membership() {
        let c = Circle2::new((rat(0), rat(0)), rat(1)).unwrap();
        assert!(c.contains(&(rat(1), rat(0))));
        assert!(c.contains(&(ratio(3, 5), ratio(4, 5))));
        assert!(!c.contains(&(rat(1), rat(1))));
        assert!(Circle2::new((rat(0), rat(0)), rat(0)).is_err());
    }
}
