//! Lines contained in a quadric: the rulings through a point, the set `L`
//! of lines meeting `P`, and the exact conic analysis of a plane section.
//!
//! Rational-only universe: a rational point of a doubly ruled quadric can
//! have ruling directions that need a square root. Those lines are never
//! materialized; they are reported as exact counts, and `build_L` carries an
//! `irrational_ruling_count` diagnostic so the omission stays visible.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num::{Signed, Zero};

use crate::geom::{orthogonal_basis, Line3, Plane, Point3};
use crate::quadric::{line_in_quadric, point_on_quadric, signature, Quadric, QuadricClass};
use crate::rational::{sqrt_exact, Rational};
use crate::{Error, Result};

/// Result of the ruling search at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinesThroughPoint {
    /// The point is a cone apex: infinitely many lines.
    Apex,
    /// The at most two rulings; irrational directions are counted, not built.
    Lines {
        rational: Vec<Line3>,
        irrational_count: usize,
    },
}

/// All lines of the quadric through `p`: directions `d` with `d^T A d = 0`
/// and `grad F(p) . d = 0`. The two conditions reduce to a univariate
/// quadratic on the tangent plane whose rational roots are extracted exactly.
pub fn lines_through_point(p: &Point3, v: &Quadric) -> Result<LinesThroughPoint> {
    if !point_on_quadric(p, v) {
        return Err(Error::PointNotOnQuadric);
    }
    let g = v.half_gradient(p);
    if g.is_zero() {
        return Ok(LinesThroughPoint::Apex);
    }
    let (u, w) = orthogonal_basis(&g);
    // Isotropic directions d = s*u + t*w of the quadratic part:
    // qa s^2 + 2 qb s t + qc t^2 = 0, projectively in (s : t).
    let qa = v.apply_quadratic(&u);
    let qb = v.bilinear(&u, &w);
    let qc = v.apply_quadratic(&w);

    let mut roots: Vec<(Rational, Rational)> = Vec::new();
    let mut irrational = 0usize;
    if qa.is_zero() && qb.is_zero() && qc.is_zero() {
        // The whole tangent plane is isotropic: only possible when the
        // quadric contains that plane, i.e. it is reducible.
        return Err(Error::UnsupportedQuadric(QuadricClass::Reducible));
    } else if qa.is_zero() {
        // t * (2 qb s + qc t) = 0
        roots.push((Rational::one(), Rational::zero()));
        if !qb.is_zero() {
            let two = Rational::from_integer(num::BigInt::from(2));
            let second = (qc.clone(), -(&two * &qb));
            if !same_projective_root(&roots[0], &second) {
                roots.push(second);
            }
        }
    } else {
        // s/t = (-qb +- sqrt(qb^2 - qa qc)) / qa
        let disc = &qb * &qb - &qa * &qc;
        if disc.is_negative() {
            // no real isotropic direction
        } else if disc.is_zero() {
            roots.push((-qb.clone(), qa.clone()));
        } else if let Some(r) = sqrt_exact(&disc) {
            roots.push((&r - &qb, qa.clone()));
            roots.push((-(&r + &qb), qa.clone()));
        } else {
            irrational = 2;
        }
    }

    let rational: Vec<Line3> = roots
        .iter()
        .map(|(s, t)| {
            let d = u.scale(s).add(&w.scale(t));
            let line = Line3::new(p, &d).expect("isotropic direction is nonzero");
            debug_assert!(line_in_quadric(&line, v));
            line
        })
        .collect();
    Ok(LinesThroughPoint::Lines { rational, irrational_count: irrational })
}

fn same_projective_root(a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    (&a.0 * &b.1 - &a.1 * &b.0).is_zero()
}

use num::One;

/// The set `L` restricted to rational lines, plus diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSet {
    /// Canonical, deduplicated lines of the quadric through points of `P`
    /// (cone apex excluded).
    pub lines: Vec<Line3>,
    /// Total count of irrational rulings encountered at points of `P`.
    pub irrational_ruling_count: usize,
    /// Index of the apex in `P`, when the quadric is a cone and `P`
    /// contains its apex.
    pub apex_index: Option<usize>,
}

/// Builds `L`: the deduplicated union of the rulings through each non-apex
/// point of `P`. Every point must lie on `V`.
pub fn build_l(points: &[Point3], v: &Quadric) -> Result<LineSet> {
    let class = v.classify()?;
    let apex = match &class {
        QuadricClass::Reducible | QuadricClass::Linear => {
            return Err(Error::UnsupportedQuadric(class))
        }
        QuadricClass::Cone { apex } => Some(apex.clone()),
        _ => None,
    };
    let mut set: BTreeSet<Line3> = BTreeSet::new();
    let mut irrational = 0usize;
    let mut apex_index = None;
    for (i, p) in points.iter().enumerate() {
        if !point_on_quadric(p, v) {
            return Err(Error::PointOffVariety(i));
        }
        if apex.as_ref() == Some(p) {
            apex_index = Some(i);
            continue;
        }
        match lines_through_point(p, v)? {
            LinesThroughPoint::Apex => {
                // A second singular point cannot occur on an irreducible
                // quadric; classification above would have caught it.
                return Err(Error::UnsupportedQuadric(class.clone()));
            }
            LinesThroughPoint::Lines { rational, irrational_count } => {
                irrational += irrational_count;
                set.extend(rational);
            }
        }
    }
    Ok(LineSet {
        lines: set.into_iter().collect(),
        irrational_ruling_count: irrational,
        apex_index,
    })
}

/// Shape of the plane-section conic `h` intersected with `V`, from the rank
/// and signature of its 3x3 matrix in plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    /// Rank 3: irreducible conic (possibly empty over the reals); no lines.
    Irreducible,
    /// Rank 2, indefinite: two real lines (intersecting or parallel).
    RealLinePair,
    /// Rank 2, definite: two complex lines; real locus is one point or empty.
    IsolatedPointOrEmpty,
    /// Rank 1: a double line.
    DoubleLine,
    /// The restricted polynomial drops to degree 1: a single affine line
    /// (the conic's second factor is the line at infinity of the chart).
    SingleLine,
}

/// Exact analysis of the section `h` with `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionLines {
    pub kind: ConicKind,
    /// Number of real lines in the section (exact even when irrational).
    pub count: usize,
    /// The lines with rational data, canonicalized.
    pub rational: Vec<Line3>,
}

/// Classifies the conic `h` meets `V` in and splits it into lines when
/// degenerate. The count is never more than 2 (the degree bound).
pub fn lines_in_plane_section(h: &Plane, v: &Quadric) -> Result<SectionLines> {
    match v.classify()? {
        c @ (QuadricClass::Reducible | QuadricClass::Linear) => {
            return Err(Error::UnsupportedQuadric(c))
        }
        _ => {}
    }
    let p0 = h.sample_point();
    let (u, w) = h.basis();
    // Conic q(s,t) = a20 s^2 + a11 st + a02 t^2 + a10 s + a01 t + a00 in the
    // chart x = p0 + s u + t w.
    let two = Rational::from_integer(num::BigInt::from(2));
    let a20 = v.apply_quadratic(&u);
    let a11 = &two * v.bilinear(&u, &w);
    let a02 = v.apply_quadratic(&w);
    let grad0 = v.half_gradient(&p0);
    let a10 = &two * grad0.dot(&u);
    let a01 = &two * grad0.dot(&w);
    let a00 = v.eval(&p0);

    let to_line = |sp: &(Rational, Rational), dir2: &(Rational, Rational)| -> Line3 {
        let point = Point3::from_vec(p0.as_vec().add(&u.scale(&sp.0)).add(&w.scale(&sp.1)));
        let d3 = u.scale(&dir2.0).add(&w.scale(&dir2.1));
        let line = Line3::new(&point, &d3).expect("nonzero line direction");
        debug_assert!(crate::geom::line_in_plane(&line, h));
        debug_assert!(line_in_quadric(&line, v));
        line
    };

    if a20.is_zero() && a11.is_zero() && a02.is_zero() {
        // Degree drops below 2. A nonzero linear part leaves the single
        // affine line a10 s + a01 t + a00 = 0; a constant leaves nothing.
        if a10.is_zero() && a01.is_zero() {
            if a00.is_zero() {
                // The plane lies inside the quadric: reducible, excluded.
                return Err(Error::UnsupportedQuadric(QuadricClass::Reducible));
            }
            return Ok(SectionLines {
                kind: ConicKind::IsolatedPointOrEmpty,
                count: 0,
                rational: Vec::new(),
            });
        }
        let sp = if !a10.is_zero() {
            (-(&a00 / &a10), Rational::zero())
        } else {
            (Rational::zero(), -(&a00 / &a01))
        };
        let line = to_line(&sp, &(-a01.clone(), a10.clone()));
        return Ok(SectionLines {
            kind: ConicKind::SingleLine,
            count: 1,
            rational: alloc::vec![line],
        });
    }

    let half = Rational::new(num::BigInt::one(), num::BigInt::from(2));
    let c_rows = alloc::vec![
        alloc::vec![a20.clone(), &a11 * &half, &a10 * &half],
        alloc::vec![&a11 * &half, a02.clone(), &a01 * &half],
        alloc::vec![&a10 * &half, &a01 * &half, a00.clone()],
    ];
    let sig = signature(&c_rows);
    match sig.rank() {
        3 => Ok(SectionLines { kind: ConicKind::Irreducible, count: 0, rational: Vec::new() }),
        2 if !sig.is_indefinite() => Ok(SectionLines {
            kind: ConicKind::IsolatedPointOrEmpty,
            count: 0,
            rational: Vec::new(),
        }),
        2 => {
            // Two real lines. Split on whether the quadratic part is
            // degenerate (parallel pair) or not (intersecting pair).
            let delta = &a20 * &a02 - &(&a11 * &half) * &(&a11 * &half);
            let mut rational = Vec::new();
            let count = 2;
            if !delta.is_zero() {
                // Center (s0, t0): solve the 2x2 system from the gradient.
                let s0 = (&(&a11 * &half) * &(&a01 * &half) - &a02 * &(&a10 * &half)) / &delta;
                let t0 = (&(&a11 * &half) * &(&a10 * &half) - &a20 * &(&a01 * &half)) / &delta;
                debug_assert!(
                    (&a20 * &s0 * &s0 + &a11 * &s0 * &t0 + &a02 * &t0 * &t0
                        + &a10 * &s0 + &a01 * &t0 + &a00)
                        .is_zero()
                );
                // Directions from a20 x^2 + a11 x + a02 = 0 (x = ds/dt).
                let center = (s0, t0);
                if a20.is_zero() {
                    rational.push(to_line(&center, &(Rational::one(), Rational::zero())));
                    // a11 != 0 here since delta != 0
                    rational.push(to_line(&center, &(-(&a02 / &a11), Rational::one())));
                } else {
                    let disc = &a11 * &a11 - &(&two * &two) * &a20 * &a02;
                    debug_assert!(disc.is_positive());
                    if let Some(r) = sqrt_exact(&disc) {
                        let dx1 = (&r - &a11) / (&two * &a20);
                        let dx2 = (-(&r + &a11)) / (&two * &a20);
                        rational.push(to_line(&center, &(dx1, Rational::one())));
                        rational.push(to_line(&center, &(dx2, Rational::one())));
                    }
                }
            } else {
                // Quadratic part has rank 1: the conic depends only on
                // lambda = alpha s + beta t; parallel line pair at the two
                // real roots of the univariate quadratic in lambda.
                let (alpha, beta, lead) = if !a20.is_zero() {
                    (a20.clone(), &a11 * &half, a20.clone())
                } else {
                    // a20 = 0 and delta = 0 force a11 = 0, a02 != 0.
                    (Rational::zero(), a02.clone(), a02.clone())
                };
                // q = (alpha s + beta t)^2 / lead + a10 s + a01 t + a00, and
                // the linear part is proportional to (alpha, beta) as well:
                // a10 = mu * alpha, a01 = mu * beta for the same mu.
                let mu = if !alpha.is_zero() { &a10 / &alpha } else { &a01 / &beta };
                debug_assert_eq!(&a10, &(&mu * &alpha));
                debug_assert_eq!(&a01, &(&mu * &beta));
                // lambda^2 / lead + mu lambda + a00 = 0
                let disc = &mu * &mu - &(&two * &two) * &a00 / &lead;
                debug_assert!(disc.is_positive());
                if let Some(r) = sqrt_exact(&disc) {
                    for root in [(&r - &mu) * &lead * &half, (-(&r + &mu)) * &lead * &half] {
                        // alpha s + beta t = root: pick a rational point.
                        let sp = if !alpha.is_zero() {
                            (&root / &alpha, Rational::zero())
                        } else {
                            (Rational::zero(), &root / &beta)
                        };
                        rational.push(to_line(&sp, &(-beta.clone(), alpha.clone())));
                    }
                }
            }
            Ok(SectionLines { kind: ConicKind::RealLinePair, count, rational })
        }
        _ => {
            // Rank 1: double line lambda(alpha s + beta t + gamma)^2; any
            // nonzero row of the conic matrix is proportional to the line.
            let row = c_rows
                .iter()
                .find(|r| r.iter().any(|x| !x.is_zero()))
                .expect("conic of a nondegenerate section is nonzero");
            let (alpha, beta, gamma) = (&row[0], &row[1], &row[2]);
            let sp = if !alpha.is_zero() {
                (-(gamma / alpha), Rational::zero())
            } else {
                (Rational::zero(), -(gamma / beta))
            };
            let line = to_line(&sp, &(-beta.clone(), alpha.clone()));
            Ok(SectionLines { kind: ConicKind::DoubleLine, count: 1, rational: alloc::vec![line] })
        }
    }
}
