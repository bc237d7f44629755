//! The two coordinate transforms used throughout: the lifting of planar
//! point-circle incidences onto the paraboloid, and the standard point-plane
//! duality `(a,b,c) <-> z = ax + by - c`, plus a seeded family of rational
//! shear products for making a frame generic.

use alloc::vec::Vec;

use num::{One, Zero};

use crate::geom::{Circle2, Plane, Point3, Vec3};
use crate::rational::{ratio, Rational};
use crate::{Error, Result};

/// `(x, y) -> (x, y, x^2 + y^2)`.
pub fn lift_point(q: &(Rational, Rational)) -> Point3 {
    let z = &q.0 * &q.0 + &q.1 * &q.1;
    Point3::new(q.0.clone(), q.1.clone(), z)
}

/// `(x-a)^2 + (y-b)^2 = r^2  ->  z = 2ax + 2by + (r^2 - a^2 - b^2)`.
///
/// A planar point lies on the circle iff its lift lies on this plane.
pub fn lift_circle(c: &Circle2) -> Plane {
    let (a, b) = (&c.center.0, &c.center.1);
    let d = &c.radius_squared - a * a - b * b;
    let two = Rational::from_integer(num::BigInt::from(2));
    // z - 2ax - 2by - d = 0
    Plane::new(-(&two * a), -(&two * b), Rational::one(), -d).expect("z coefficient is 1")
}

/// Point `(a,b,c)` maps to the plane `z = ax + by - c`.
pub fn dualize_point(p: &Point3) -> Plane {
    // ax + by - z - c = 0
    Plane::new(p.x.clone(), p.y.clone(), -Rational::one(), -p.z.clone())
        .expect("z coefficient is -1")
}

/// Plane `z = px + qy - r` maps to the point `(p,q,r)`.
///
/// Vertical planes have no image under this chart; callers should apply a
/// `generic_rotation` to the instance and retry.
pub fn dualize_plane(h: &Plane) -> Result<Point3> {
    let (a, b, c, d) = h.coeffs();
    if c.is_zero() {
        return Err(Error::VerticalPlane);
    }
    Ok(Point3::new(-(a / c), -(b / c), d / c))
}

/// An invertible rational 3x3 matrix bundled with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    pub m: [[Rational; 3]; 3],
    pub inv: [[Rational; 3]; 3],
}

fn mat_identity() -> [[Rational; 3]; 3] {
    core::array::from_fn(|i| core::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }))
}

fn mat_mul(a: &[[Rational; 3]; 3], b: &[[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let mut acc = Rational::zero();
            for (k, row) in b.iter().enumerate() {
                acc += &a[i][k] * &row[j];
            }
            acc
        })
    })
}

impl Mat3 {
    pub fn identity() -> Self {
        Mat3 { m: mat_identity(), inv: mat_identity() }
    }

    /// Unit shear `I + t * e_i e_j^T` (`i != j`); inverse negates `t`.
    fn shear(i: usize, j: usize, t: Rational) -> Self {
        let mut m = mat_identity();
        let mut inv = mat_identity();
        m[i][j] = t.clone();
        inv[i][j] = -t;
        Mat3 { m, inv }
    }

    fn compose(&self, o: &Mat3) -> Mat3 {
        Mat3 {
            m: mat_mul(&self.m, &o.m),
            inv: mat_mul(&o.inv, &self.inv),
        }
    }

    pub fn apply_vec(&self, v: &Vec3) -> Vec3 {
        let vc = [&v.x, &v.y, &v.z];
        let row = |i: usize| {
            let mut acc = Rational::zero();
            for j in 0..3 {
                acc += &self.m[i][j] * vc[j];
            }
            acc
        };
        Vec3::new(row(0), row(1), row(2))
    }

    pub fn apply_point(&self, p: &Point3) -> Point3 {
        Point3::from_vec(self.apply_vec(&p.as_vec()))
    }

    /// Image of a plane under `x -> Mx`: the normal transforms by the
    /// inverse transpose, the offset is unchanged.
    pub fn apply_plane(&self, h: &Plane) -> Plane {
        let (a, b, c, d) = h.coeffs();
        let nc = [a, b, c];
        let col = |j: usize| {
            let mut acc = Rational::zero();
            for i in 0..3 {
                acc += &self.inv[i][j] * nc[i];
            }
            acc
        };
        Plane::new(col(0), col(1), col(2), d.clone()).expect("invertible map keeps normal nonzero")
    }
}

/// Deterministic splitmix64 generator; good enough for picking shear
/// parameters, and keeps this crate free of `std`-only RNG dependencies.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Seeded family of rational invertible matrices: products of six unit
/// shears with small rational parameters. Seed 0 is the identity by
/// convention; fresh seeds eventually remove any vertical-plane degeneracy
/// of a fixed finite instance.
pub fn generic_rotation(seed: u64) -> Mat3 {
    if seed == 0 {
        return Mat3::identity();
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = Mat3::identity();
    let offdiag = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    for &(i, j) in &offdiag {
        let num = rng.below(19) as i64 - 9;
        let den = rng.below(7) as i64 + 1;
        let t = ratio(num, den);
        if t.is_zero() {
            continue;
        }
        out = out.compose(&Mat3::shear(i, j, t));
    }
    out
}

/// Determinant of the forward matrix; shear products always give 1.
pub fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    let d = |a: &Rational, b: &Rational, c: &Rational, e: &Rational| a * e - b * c;
    &m[0][0] * d(&m[1][1], &m[1][2], &m[2][1], &m[2][2])
        - &m[0][1] * d(&m[1][0], &m[1][2], &m[2][0], &m[2][2])
        + &m[0][2] * d(&m[1][0], &m[1][1], &m[2][0], &m[2][1])
}

/// Applies the map to every point and plane of an instance.
pub fn transform_instance(t: &Mat3, points: &[Point3], planes: &[Plane]) -> (Vec<Point3>, Vec<Plane>) {
    (
        points.iter().map(|p| t.apply_point(p)).collect(),
        planes.iter().map(|h| t.apply_plane(h)).collect(),
    )
}
