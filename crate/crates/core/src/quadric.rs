//! Quadric surfaces as symmetric 4x4 rational forms over homogeneous
//! coordinates `(x, y, z, 1)`, and their exact classification.
//!
//! Classification is by rank and signature of the full form `Q` and of its
//! quadratic part `A` (the upper-left 3x3 block), computed by symmetric
//! congruence diagonalization over the rationals. No numerics involved.

use alloc::vec;
use alloc::vec::Vec;

use num::{One, Signed, Zero};

use crate::geom::{Point3, Vec3};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadricClass {
    /// Rank of `Q` at most 2: a pair of planes (possibly coincident or
    /// complex). Rejected by the decomposition pipeline.
    Reducible,
    /// Quadratic part identically zero: the equation is linear.
    Linear,
    /// Real cone; all lines of the surface pass through the apex.
    Cone { apex: Point3 },
    /// Nondegenerate with signature (2,2): hyperbolic paraboloid or
    /// one-sheet hyperboloid; two rulings per point.
    DoublyRuledNondegenerate,
    /// Nondegenerate containing no line: ellipsoid, elliptic paraboloid,
    /// two-sheet hyperboloid (or empty).
    NonRuledNondegenerate,
    /// Rank-3 forms that are not real cones: cylinders, imaginary cones.
    CylinderOrOtherRank3,
}

/// Signature of a symmetric rational matrix: counts of positive and
/// negative entries after congruence diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn is_indefinite(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }
}

/// Symmetric congruence diagonalization; exact. Returns the diagonal.
pub fn diagonalize_symmetric(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut diag = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        // Find a nonzero diagonal pivot at or below `start`.
        if let Some(k) = (start..n).find(|&k| !a[k][k].is_zero()) {
            if k != start {
                // Congruence permutation: swap rows and columns start <-> k.
                a.swap(start, k);
                for row in a.iter_mut() {
                    row.swap(start, k);
                }
            }
        } else if let Some((i, j)) = (start..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            // All remaining diagonal entries vanish; add row/col j into i to
            // surface the off-diagonal entry (new a[i][i] = 2*a[i][j] != 0),
            // then move it to the front.
            for col in 0..n {
                let v = a[j][col].clone();
                a[i][col] += v;
            }
            for row in 0..n {
                let v = a[row][j].clone();
                a[row][i] += v;
            }
            if i != start {
                a.swap(start, i);
                for row in a.iter_mut() {
                    row.swap(start, i);
                }
            }
        } else {
            // Remaining block is zero.
            for _ in start..n {
                diag.push(Rational::zero());
            }
            break;
        }
        let pivot = a[start][start].clone();
        for i in (start + 1)..n {
            let f = &a[i][start] / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in start..n {
                let v = &a[start][j] * &f;
                a[i][j] -= v;
            }
            for j in start..n {
                let v = &a[j][start] * &f;
                a[j][i] -= v;
            }
        }
        diag.push(pivot);
        start += 1;
    }
    diag
}

pub fn signature(m: &[Vec<Rational>]) -> Signature {
    let diag = diagonalize_symmetric(m);
    Signature {
        positive: diag.iter().filter(|x| x.is_positive()).count(),
        negative: diag.iter().filter(|x| x.is_negative()).count(),
    }
}

/// The variety `V`: symmetric 4x4 rational form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadric {
    q: [[Rational; 4]; 4],
}

impl Quadric {
    /// Accepts any 4x4 matrix and symmetrizes it (`(M + M^T)/2`), so callers
    /// may pass the natural non-symmetric coefficient layout.
    pub fn new(m: [[Rational; 4]; 4]) -> Result<Self> {
        let half = Rational::new(num::BigInt::one(), num::BigInt::from(2));
        let mut q: [[Rational; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| Rational::zero()));
        let mut all_zero = true;
        for i in 0..4 {
            for j in 0..4 {
                q[i][j] = (&m[i][j] + &m[j][i]) * &half;
                if !q[i][j].is_zero() {
                    all_zero = false;
                }
            }
        }
        if all_zero {
            return Err(Error::ZeroQuadric);
        }
        Ok(Quadric { q })
    }

    /// Builds `z = xy` (the hyperbolic paraboloid of the cross-ratio
    /// application), as the form `xy - z = 0`.
    pub fn hyperbolic_paraboloid() -> Self {
        Self::from_equation_coeffs(
            [Rational::zero(), Rational::zero(), Rational::zero()],
            [Rational::one(), Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero(), -Rational::one()],
            Rational::zero(),
        )
    }

    /// Builds `z = x^2 + y^2` as `x^2 + y^2 - z = 0`.
    pub fn paraboloid() -> Self {
        Self::from_equation_coeffs(
            [Rational::one(), Rational::one(), Rational::zero()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero(), -Rational::one()],
            Rational::zero(),
        )
    }

    /// Builds the unit sphere `x^2 + y^2 + z^2 = 1`.
    pub fn unit_sphere() -> Self {
        Self::from_equation_coeffs(
            [Rational::one(), Rational::one(), Rational::one()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            -Rational::one(),
        )
    }

    /// Builds the cone `x^2 + y^2 - z^2 = 0`.
    pub fn standard_cone() -> Self {
        Self::from_equation_coeffs(
            [Rational::one(), Rational::one(), -Rational::one()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            Rational::zero(),
        )
    }

    /// Builds the one-sheet hyperboloid `x^2 + y^2 - z^2 = 1`.
    pub fn one_sheet_hyperboloid() -> Self {
        Self::from_equation_coeffs(
            [Rational::one(), Rational::one(), -Rational::one()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            -Rational::one(),
        )
    }

    /// From the scalar equation
    /// `sq.x*x^2 + sq.y*y^2 + sq.z*z^2 + mixed.x*xy + mixed.y*xz + mixed.z*yz
    ///  + lin.x*x + lin.y*y + lin.z*z + constant = 0`.
    pub fn from_equation_coeffs(
        sq: [Rational; 3],
        mixed: [Rational; 3],
        lin: [Rational; 3],
        constant: Rational,
    ) -> Self {
        let half = Rational::new(num::BigInt::one(), num::BigInt::from(2));
        let [sx, sy, sz] = sq;
        let [mxy, mxz, myz] = mixed;
        let [lx, ly, lz] = lin;
        let q = [
            [sx, &mxy * &half, &mxz * &half, &lx * &half],
            [&mxy * &half, sy, &myz * &half, &ly * &half],
            [&mxz * &half, &myz * &half, sz, &lz * &half],
            [&lx * &half, &ly * &half, &lz * &half, constant],
        ];
        Quadric { q }
    }

    pub fn matrix(&self) -> &[[Rational; 4]; 4] {
        &self.q
    }

    /// Upper-left 3x3 quadratic part `A`.
    pub fn quadratic_part(&self) -> [[Rational; 3]; 3] {
        core::array::from_fn(|i| core::array::from_fn(|j| self.q[i][j].clone()))
    }

    /// Linear part `b` (so the equation reads `x^T A x + 2 b.x + c = 0`).
    pub fn linear_part(&self) -> Vec3 {
        Vec3::new(self.q[0][3].clone(), self.q[1][3].clone(), self.q[2][3].clone())
    }

    pub fn constant_part(&self) -> &Rational {
        &self.q[3][3]
    }

    /// `v^T A v` for the quadratic part.
    pub fn apply_quadratic(&self, v: &Vec3) -> Rational {
        let a = self.quadratic_part();
        let mut acc = Rational::zero();
        let vc = [&v.x, &v.y, &v.z];
        for i in 0..3 {
            for j in 0..3 {
                acc += &a[i][j] * vc[i] * vc[j];
            }
        }
        acc
    }

    /// `A u . v` bilinear form of the quadratic part.
    pub fn bilinear(&self, u: &Vec3, v: &Vec3) -> Rational {
        let a = self.quadratic_part();
        let uc = [&u.x, &u.y, &u.z];
        let vc = [&v.x, &v.y, &v.z];
        let mut acc = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += &a[i][j] * uc[i] * vc[j];
            }
        }
        acc
    }

    /// `A p + b`: half the gradient of the defining polynomial at `p`.
    pub fn half_gradient(&self, p: &Point3) -> Vec3 {
        let a = self.quadratic_part();
        let b = self.linear_part();
        let pc = [&p.x, &p.y, &p.z];
        let row = |i: usize| -> Rational {
            let mut acc = Rational::zero();
            for j in 0..3 {
                acc += &a[i][j] * pc[j];
            }
            acc
        };
        Vec3::new(row(0) + b.x, row(1) + b.y, row(2) + b.z)
    }

    /// `(p,1)^T Q (p,1)`.
    pub fn eval(&self, p: &Point3) -> Rational {
        let coords = [&p.x, &p.y, &p.z];
        let mut acc = Rational::zero();
        for i in 0..4 {
            for j in 0..4 {
                let vi = if i < 3 { coords[i].clone() } else { Rational::one() };
                let vj = if j < 3 { coords[j].clone() } else { Rational::one() };
                acc += &self.q[i][j] * vi * vj;
            }
        }
        acc
    }

    fn full_rows(&self) -> Vec<Vec<Rational>> {
        self.q.iter().map(|r| r.to_vec()).collect()
    }

    fn quad_rows(&self) -> Vec<Vec<Rational>> {
        (0..3).map(|i| (0..3).map(|j| self.q[i][j].clone()).collect()).collect()
    }

    /// Exact classification from ranks and signatures of `Q` and `A`.
    pub fn classify(&self) -> Result<QuadricClass> {
        let quad_sig = signature(&self.quad_rows());
        if quad_sig.rank() == 0 {
            // Quadratic part vanishes; the matrix is nonzero by construction.
            return Ok(QuadricClass::Linear);
        }
        let full_sig = signature(&self.full_rows());
        Ok(match full_sig.rank() {
            0 | 1 | 2 => QuadricClass::Reducible,
            3 => {
                if quad_sig.rank() == 3 && quad_sig.is_indefinite() {
                    // Real cone: the unique singular point solves A x = -b.
                    let apex = self.solve_apex().expect("rank-3 quadratic part");
                    QuadricClass::Cone { apex }
                } else {
                    QuadricClass::CylinderOrOtherRank3
                }
            }
            _ => {
                if full_sig.positive == 2 && full_sig.negative == 2 {
                    QuadricClass::DoublyRuledNondegenerate
                } else {
                    QuadricClass::NonRuledNondegenerate
                }
            }
        })
    }

    /// Solves `A x = -b` when `A` is invertible.
    fn solve_apex(&self) -> Option<Point3> {
        let a = self.quadratic_part();
        let b = self.linear_part();
        let mut m: Vec<Vec<Rational>> = (0..3)
            .map(|i| {
                let mut row: Vec<Rational> = a[i].to_vec();
                row.push(-[&b.x, &b.y, &b.z][i].clone());
                row
            })
            .collect();
        // Gaussian elimination with exact pivoting.
        for col in 0..3 {
            let pivot_row = (col..3).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot_row);
            let pivot = m[col][col].clone();
            for r in 0..3 {
                if r == col {
                    continue;
                }
                let f = &m[r][col] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for c in col..4 {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        Some(Point3::new(
            &m[0][3] / &m[0][0],
            &m[1][3] / &m[1][1],
            &m[2][3] / &m[2][2],
        ))
    }
}

/// `true` iff `(p,1)^T Q (p,1) = 0` exactly.
pub fn point_on_quadric(p: &Point3, v: &Quadric) -> bool {
    v.eval(p).is_zero()
}

/// Substitutes `base + t*dir` into the quadric form and checks that all three
/// coefficients of the resulting quadratic in `t` vanish.
pub fn line_in_quadric(l: &crate::geom::Line3, v: &Quadric) -> bool {
    let (c2, c1, c0) = line_restriction_coeffs(l, v);
    c2.is_zero() && c1.is_zero() && c0.is_zero()
}

/// Coefficients `(c2, c1, c0)` of `F(base + t*dir)` as a quadratic in `t`.
pub fn line_restriction_coeffs(l: &crate::geom::Line3, v: &Quadric) -> (Rational, Rational, Rational) {
    let d = l.direction();
    let c2 = v.apply_quadratic(d);
    let c1 = Rational::from_integer(num::BigInt::from(2)) * v.half_gradient(l.base()).dot(d);
    let c0 = v.eval(l.base());
    (c2, c1, c0)
}

pub fn identity3() -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}
