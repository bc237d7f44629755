//! Exact-arithmetic toolkit for point-plane incidences on quadric surfaces.
//!
//! Everything here is computed over arbitrary-precision rationals: membership
//! predicates, the incidence graph, the complete-bipartite decomposition along
//! lines contained in a quadric, and the Mobius-transformation / cross-ratio
//! pipeline over grids on `z = xy`. There are no tolerance parameters; every
//! predicate is exact.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `quadrics-tools` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod decompose;
pub mod geom;
pub mod incidence;
pub mod lines;
pub mod mobius;
pub mod quadric;
pub mod rational;
pub mod transforms;

pub use geom::{Circle2, Line3, Plane, Point3, Vec3};
pub use quadric::{Quadric, QuadricClass};
pub use rational::Rational;

use alloc::string::String;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A plane needs a nonzero normal vector.
    ZeroNormal,
    /// A line needs a nonzero direction vector.
    ZeroDirection,
    /// The quadric matrix is identically zero.
    ZeroQuadric,
    /// Attempted to dualize a vertical plane (normal z-coefficient zero).
    VerticalPlane,
    /// The operation requires an irreducible nonlinear quadric.
    UnsupportedQuadric(QuadricClass),
    /// A point that was required to lie on the variety does not.
    PointOffVariety(usize),
    /// `lines_through_point` called for a point not on the quadric.
    PointNotOnQuadric,
    /// Input point or plane lists must be deduplicated.
    DuplicateInput(&'static str),
    /// `curve_pair_intersections` called with identical planes.
    IdenticalPlanes,
    /// Mobius pair constraints need distinct sources and distinct targets.
    RepeatedMobiusPair,
    /// Constant Mobius transformations (`beta = alpha*delta`) are excluded.
    ConstantMobius,
    /// Parameter out of the documented range.
    InvalidParameter(&'static str),
    /// Free-form failure from a structural audit.
    Audit(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::ZeroNormal => write!(f, "plane normal is the zero vector"),
            Error::ZeroDirection => write!(f, "line direction is the zero vector"),
            Error::ZeroQuadric => write!(f, "quadric matrix is identically zero"),
            Error::VerticalPlane => {
                write!(f, "cannot dualize a vertical plane; apply a generic rotation first")
            }
            Error::UnsupportedQuadric(c) => {
                write!(f, "operation requires an irreducible nonlinear quadric, got {c:?}")
            }
            Error::PointOffVariety(i) => write!(f, "point {i} does not lie on the variety"),
            Error::PointNotOnQuadric => write!(f, "point does not lie on the quadric"),
            Error::DuplicateInput(what) => write!(f, "duplicate {what} in input"),
            Error::IdenticalPlanes => write!(f, "the two planes are identical"),
            Error::RepeatedMobiusPair => {
                write!(f, "sources and targets of the three pairs must each be distinct")
            }
            Error::ConstantMobius => write!(f, "beta = alpha*delta defines a constant map"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::Audit(msg) => write!(f, "audit failure: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
