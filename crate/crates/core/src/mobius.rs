//! Mobius transformations in the `gamma = 1` normal form
//! `y = (alpha x + beta)/(x + delta)`, their plane encoding over the grid on
//! `z = xy`, k-rich transformation counting, congruent-pentuple counting,
//! and distinct cross-ratio enumeration.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num::{One, Zero};

use crate::geom::{dedup_sorted, Plane, Point3};
use crate::incidence::incidence_graph;
use crate::rational::Rational;
use crate::{Error, Result};

/// `y = (alpha x + beta) / (x + delta)`, with `beta != alpha*delta` so the
/// map is non-constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mobius {
    alpha: Rational,
    beta: Rational,
    delta: Rational,
}

impl Mobius {
    pub fn new(alpha: Rational, beta: Rational, delta: Rational) -> Result<Self> {
        if beta == &alpha * &delta {
            return Err(Error::ConstantMobius);
        }
        Ok(Mobius { alpha, beta, delta })
    }

    pub fn coeffs(&self) -> (&Rational, &Rational, &Rational) {
        (&self.alpha, &self.beta, &self.delta)
    }

    /// The unique pole `-delta`.
    pub fn pole(&self) -> Rational {
        -self.delta.clone()
    }

    /// Exact application; `None` at the pole.
    pub fn apply(&self, x: &Rational) -> Option<Rational> {
        let den = x + &self.delta;
        if den.is_zero() {
            return None;
        }
        Some((&self.alpha * x + &self.beta) / den)
    }

    /// The encoding plane `z - alpha x + delta y - beta = 0`: for `a` not
    /// the pole, `tau(a) = b` iff `(a, b, ab)` lies on this plane.
    pub fn plane(&self) -> Plane {
        Plane::new(
            -self.alpha.clone(),
            self.delta.clone(),
            Rational::one(),
            -self.beta.clone(),
        )
        .expect("z coefficient is 1")
    }

    /// `|{a in A : a != pole, tau(a) in A}|` for a deduplicated `A`.
    pub fn richness(&self, set: &[Rational]) -> usize {
        set.iter()
            .filter(|a| match self.apply(a) {
                Some(b) => set.contains(&b),
                None => false,
            })
            .count()
    }
}

/// Outcome of fitting a Mobius map to three pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MobiusFit {
    Unique(Mobius),
    /// Singular or inconsistent system, or a solution with
    /// `beta = alpha*delta` (constant map) or `gamma = 0` (affine, outside
    /// this normal form).
    Degenerate,
}

/// Solves `{a_i b_i - alpha a_i + delta b_i - beta = 0}` exactly for
/// `(alpha, beta, delta)`. Sources and targets must each be distinct.
pub fn mobius_from_pairs(pairs: &[(Rational, Rational); 3]) -> Result<MobiusFit> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if pairs[i].0 == pairs[j].0 || pairs[i].1 == pairs[j].1 {
                return Err(Error::RepeatedMobiusPair);
            }
        }
    }
    // Rows [a_i, 1, -b_i] . (alpha, beta, delta)^T = a_i b_i.
    let mut m: Vec<[Rational; 4]> = pairs
        .iter()
        .map(|(a, b)| [a.clone(), Rational::one(), -b.clone(), a * b])
        .collect();
    for col in 0..3 {
        let Some(pivot_row) = (col..3).find(|&r| !m[r][col].is_zero()) else {
            return Ok(MobiusFit::Degenerate);
        };
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
    let alpha = &m[0][3] / &m[0][0];
    let beta = &m[1][3] / &m[1][1];
    let delta = &m[2][3] / &m[2][2];
    match Mobius::new(alpha, beta, delta) {
        Ok(tau) => {
            debug_assert!(pairs.iter().all(|(a, b)| tau.apply(a).as_ref() == Some(b)));
            Ok(MobiusFit::Unique(tau))
        }
        Err(Error::ConstantMobius) => Ok(MobiusFit::Degenerate),
        Err(e) => Err(e),
    }
}

/// An affine map `y = alpha x + beta` (`alpha != 0`): the `gamma = 0`
/// transformations excluded from the normal form, available behind a flag
/// for completeness experiments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineMap {
    pub alpha: Rational,
    pub beta: Rational,
}

impl AffineMap {
    pub fn apply(&self, x: &Rational) -> Rational {
        &self.alpha * x + &self.beta
    }

    pub fn richness(&self, set: &[Rational]) -> usize {
        set.iter().filter(|a| set.contains(&self.apply(a))).count()
    }
}

/// The lifted grid `{(a, b, ab) : a, b in A}` of `m = |A|^2` points on
/// `z = xy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridInstance {
    pub set: Vec<Rational>,
    pub points: Vec<Point3>,
}

impl GridInstance {
    pub fn new(set: &[Rational]) -> Self {
        let set = dedup_sorted(set);
        let mut points = Vec::with_capacity(set.len() * set.len());
        for a in &set {
            for b in &set {
                points.push(Point3::new(a.clone(), b.clone(), a * b));
            }
        }
        GridInstance { set, points }
    }
}

/// Tabulated k-rich transformations over a set `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichTransformReport {
    /// Deduplicated transformations with richness `>= k_min`, sorted by
    /// `(alpha, beta, delta)`.
    pub transformations: Vec<(Mobius, usize)>,
    /// Affine `gamma = 0` maps, populated only when requested.
    pub affine: Vec<(AffineMap, usize)>,
    /// `k -> N_{>=k}` for `k_min <= k <= |A|`.
    pub n_geq: BTreeMap<usize, usize>,
    pub k_min: usize,
}

impl RichTransformReport {
    /// `N_{>=k} - N_{>=k+1} = #{tau : r_tau = k}` for every tabulated `k`.
    pub fn histogram_consistent(&self) -> bool {
        let max_k = *self.n_geq.keys().last().unwrap_or(&0);
        self.n_geq.iter().all(|(&k, &ngeq)| {
            let next = if k < max_k { self.n_geq[&(k + 1)] } else { 0 };
            let exact = self.transformations.iter().filter(|(_, r)| *r == k).count()
                + self.affine.iter().filter(|(_, r)| *r == k).count();
            ngeq == next + exact
        })
    }
}

/// Enumerates every transformation that is at least `k_min`-rich on `A`
/// (`k_min >= 3`): any 3-rich map is determined by three of its pairs, so
/// sweeping all source-triples against all distinct target-triples is
/// complete for `k >= 3`.
pub fn rich_transformations(
    set: &[Rational],
    k_min: usize,
    include_affine: bool,
) -> Result<RichTransformReport> {
    if k_min < 3 {
        return Err(Error::InvalidParameter("k_min must be >= 3"));
    }
    let a = dedup_sorted(set);
    let n = a.len();
    if n < 3 {
        return Err(Error::InvalidParameter("set must have at least 3 elements"));
    }
    let mut seen: BTreeSet<Mobius> = BTreeSet::new();
    // Unordered source triples; ordered distinct target triples.
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for ti in 0..n {
                    for tj in 0..n {
                        if tj == ti {
                            continue;
                        }
                        for tk in 0..n {
                            if tk == ti || tk == tj {
                                continue;
                            }
                            let pairs = [
                                (a[i].clone(), a[ti].clone()),
                                (a[j].clone(), a[tj].clone()),
                                (a[k].clone(), a[tk].clone()),
                            ];
                            if let MobiusFit::Unique(tau) = mobius_from_pairs(&pairs)? {
                                seen.insert(tau);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut transformations: Vec<(Mobius, usize)> = seen
        .into_iter()
        .map(|tau| {
            let r = tau.richness(&a);
            (tau, r)
        })
        .filter(|(_, r)| *r >= k_min)
        .collect();
    transformations.sort();

    let mut affine: Vec<(AffineMap, usize)> = Vec::new();
    if include_affine {
        let mut seen_aff: BTreeSet<AffineMap> = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for ti in 0..n {
                    for tj in 0..n {
                        if ti == tj {
                            continue;
                        }
                        // Fit y = alpha x + beta through two pairs.
                        let dx = &a[i] - &a[j];
                        let alpha = (&a[ti] - &a[tj]) / &dx;
                        if alpha.is_zero() {
                            continue;
                        }
                        let beta = &a[ti] - &alpha * &a[i];
                        seen_aff.insert(AffineMap { alpha, beta });
                    }
                }
            }
        }
        affine = seen_aff
            .into_iter()
            .map(|f| {
                let r = f.richness(&a);
                (f, r)
            })
            .filter(|(_, r)| *r >= k_min)
            .collect();
        affine.sort();
    }

    let mut n_geq = BTreeMap::new();
    for k in k_min..=n {
        let count = transformations.iter().filter(|(_, r)| *r >= k).count()
            + affine.iter().filter(|(_, r)| *r >= k).count();
        n_geq.insert(k, count);
    }
    Ok(RichTransformReport { transformations, affine, n_geq, k_min })
}

/// Checks the grid reduction for one transformation: richness on `A` equals
/// the number of grid points on the encoding plane whose first coordinate is
/// not the pole.
pub fn grid_incidence_crosscheck(set: &[Rational], tau: &Mobius) -> Result<bool> {
    let grid = GridInstance::new(set);
    let plane = tau.plane();
    let graph = incidence_graph(&grid.points, core::slice::from_ref(&plane))?;
    let pole = tau.pole();
    let on_plane_non_pole = grid
        .points
        .iter()
        .enumerate()
        .filter(|(i, p)| graph.edges().contains(&(*i, 0)) && p.x != pole)
        .count();
    Ok(on_plane_non_pole == tau.richness(&grid.set))
}

/// `Q`: over all transformations of richness `r >= 5`, the number of
/// ordered distinct-source pentuples they map into `A`, i.e.
/// `sum r (r-1) (r-2) (r-3) (r-4)`.
pub fn count_congruent_pentuples(set: &[Rational]) -> Result<u128> {
    let a = dedup_sorted(set);
    if a.len() < 5 {
        return Err(Error::InvalidParameter("set must have at least 5 elements"));
    }
    let report = rich_transformations(&a, 3, false)?;
    Ok(report
        .transformations
        .iter()
        .filter(|(_, r)| *r >= 5)
        .map(|(_, r)| {
            let r = *r as u128;
            r * (r - 1) * (r - 2) * (r - 3) * (r - 4)
        })
        .sum())
}

/// The projective cross-ratio `(a,b;c,d) = (a-c)(b-d) / ((a-d)(b-c))`.
/// `None` when the denominator vanishes (only possible with repeats).
pub fn cross_ratio(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Option<Rational> {
    let den = (a - d) * (b - c);
    if den.is_zero() {
        return None;
    }
    Some((a - c) * (b - d) / den)
}

/// Number of distinct cross-ratio values over ordered 4-tuples of distinct
/// elements of `A`.
pub fn distinct_cross_ratios(set: &[Rational]) -> Result<usize> {
    let a = dedup_sorted(set);
    let n = a.len();
    if n < 4 {
        return Err(Error::InvalidParameter("set must have at least 4 elements"));
    }
    let mut values: BTreeSet<Rational> = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if i == j || i == k || i == l || j == k || j == l || k == l {
                        continue;
                    }
                    if let Some(v) = cross_ratio(&a[i], &a[j], &a[k], &a[l]) {
                        values.insert(v);
                    }
                }
            }
        }
    }
    Ok(values.len())
}
