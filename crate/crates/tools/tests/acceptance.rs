//! Acceptance gate: one test per criterion, each ending in a single
//! `criterion N (...): PASS` line (run with `-- --nocapture` to see them;
//! a failure panics with the offending detail instead).

use std::sync::OnceLock;

use quadrics_core::bounds::BoundEvaluator;
use quadrics_core::decompose::{audit, curve_pair_intersections, decompose, Decomposition};
use quadrics_core::incidence::{histogram_consistent, incidence_graph, richness_histogram, IncidenceGraph};
use quadrics_core::lines::{build_l, lines_in_plane_section};
use quadrics_core::mobius::{
    count_congruent_pentuples, distinct_cross_ratios, grid_incidence_crosscheck,
    mobius_from_pairs, rich_transformations, Mobius, MobiusFit,
};
use quadrics_core::quadric::point_on_quadric;
use quadrics_core::rational::{rat, Rational};
use quadrics_core::transforms::{dualize_plane, dualize_point, lift_circle, lift_point, SplitMix64};
use quadrics_core::{Circle2, Plane, Point3, Quadric, QuadricClass};

use quadrics_tools::experiment::run_experiment;
use quadrics_tools::formats::DecompositionJson;
use quadrics_tools::gen::{gen_instance, InstanceSpec, PlaneStrategy, QuadricKind};

struct Case {
    spec: InstanceSpec,
    points: Vec<Point3>,
    planes: Vec<Plane>,
    v: Quadric,
    graph: IncidenceGraph,
    d: Decomposition,
}

fn sweep() -> &'static [Case] {
    static SWEEP: OnceLock<Vec<Case>> = OnceLock::new();
    SWEEP.get_or_init(build_sweep)
}

fn build_sweep() -> Vec<Case> {
    let mut cases = Vec::with_capacity(200);
    for i in 0..200u64 {
        let kind = QuadricKind::ALL[(i % 5) as usize];
        let strategy = match i % 4 {
            0 => PlaneStrategy::ThroughTriples,
            1 if kind.is_ruled() => PlaneStrategy::RulingPlanes,
            1 => PlaneStrategy::Random,
            2 => PlaneStrategy::Random,
            _ => PlaneStrategy::MobiusPlanes,
        };
        let m = 6 + (i % 4) as usize * 3;
        let n = 4 + (i % 3) as usize * 2;
        let spec = InstanceSpec::new(kind, m, n, strategy, 1000 + i)
            .with_bounds(6 + i % 4, 3);
        let (points, planes) = gen_instance(&spec).expect("generator succeeds at these sizes");
        let v = kind.quadric();
        let graph = incidence_graph(&points, &planes).expect("deduplicated instance");
        let d = decompose(&points, &planes, &v).expect("supported quadric");
        cases.push(Case { spec, points, planes, v, graph, d });
    }
    cases
}

fn rrat(rng: &mut SplitMix64, num_bound: u64, den_bound: u64) -> Rational {
    let num = rng.below(2 * num_bound + 1) as i64 - num_bound as i64;
    let den = rng.below(den_bound) as i64 + 1;
    Rational::new(num.into(), den.into())
}

fn rand_set(rng: &mut SplitMix64, size: usize, num_bound: u64, den_bound: u64) -> Vec<Rational> {
    let mut set = std::collections::BTreeSet::new();
    while set.len() < size {
        set.insert(rrat(rng, num_bound, den_bound));
    }
    set.into_iter().collect()
}

#[test]
fn criterion_1_coverage_and_purity() {
    for case in sweep() {
        let messages = audit(&case.d, &case.points, &case.planes, &case.v, &case.graph);
        assert!(
            messages.is_empty(),
            "audit failures on {:?}: {messages:?}",
            case.spec
        );
        // Coverage, recomputed here rather than trusted from the audit.
        let mut union = case.d.residual.clone();
        union.extend(case.d.factor_edges());
        union.extend(case.d.apex_incidences.iter().copied());
        assert_eq!(&union, case.graph.edges(), "coverage gap on {:?}", case.spec);
        // Purity against an independent line source: the per-plane section
        // split, not the point-by-point ruling search the builder used.
        for (j, h) in case.planes.iter().enumerate() {
            let section = lines_in_plane_section(h, &case.v).unwrap();
            for &(i, jj) in &case.d.residual {
                if jj != j {
                    continue;
                }
                for line in &section.rational {
                    assert!(
                        !line.contains(&case.points[i]),
                        "residual edge ({i},{j}) explained by a section line on {:?}",
                        case.spec
                    );
                }
            }
        }
    }
    println!("criterion 1 (decomposition coverage & purity, 200 instances): PASS");
}

#[test]
fn criterion_2_structural_budgets() {
    for case in sweep() {
        let conical = matches!(case.d.classification, QuadricClass::Cone { .. });
        if !conical {
            assert!(
                case.d.sum_point_sides() <= 2 * case.points.len(),
                "sum |P_l| over 2m on {:?}",
                case.spec
            );
        }
        assert!(
            case.d.sum_plane_sides() <= 2 * case.planes.len(),
            "sum |H_l| over 2n on {:?}",
            case.spec
        );
        for h in &case.planes {
            let s = lines_in_plane_section(h, &case.v).unwrap();
            assert!(s.count <= 2, "{} lines in one section on {:?}", s.count, case.spec);
        }
    }
    println!("criterion 2 (factor budgets and 2-lines-per-section): PASS");
}

#[test]
fn criterion_3_ruled_dichotomy() {
    for case in sweep() {
        match case.spec.kind {
            QuadricKind::Paraboloid | QuadricKind::Sphere => {
                let l = build_l(&case.points, &case.v).unwrap();
                assert!(l.lines.is_empty(), "line on a non-ruled quadric: {:?}", case.spec);
                assert_eq!(l.irrational_ruling_count, 0);
                assert!(case.d.factors.is_empty());
            }
            QuadricKind::Cone => {
                let apex = Point3::new(rat(0), rat(0), rat(0));
                for f in &case.d.factors {
                    assert!(f.line.contains(&apex), "cone factor avoids apex: {:?}", case.spec);
                }
            }
            _ => {}
        }
    }
    println!("criterion 3 (ruled/non-ruled dichotomy, cone apex routing): PASS");
}

#[test]
fn criterion_4_pseudo_circle_property() {
    let mut pairs = 0usize;
    for case in sweep() {
        let line_free: Vec<usize> = (0..case.planes.len())
            .filter(|&j| lines_in_plane_section(&case.planes[j], &case.v).unwrap().count == 0)
            .collect();
        for (x, &j1) in line_free.iter().enumerate() {
            for &j2 in &line_free[x + 1..] {
                let c = curve_pair_intersections(&case.planes[j1], &case.planes[j2], &case.v)
                    .unwrap();
                let count = c.as_count().expect("line-free sections cannot share a quadric line");
                assert!(count <= 2);
                pairs += 1;
            }
        }
    }
    assert!(pairs > 1000, "sweep produced too few line-free section pairs: {pairs}");
    println!("criterion 4 (pseudo-circles: {pairs} section pairs meet at most twice): PASS");
}

#[test]
fn criterion_5_transform_round_trips() {
    let mut rng = SplitMix64::new(0xC1C1_E5);
    // Lifting: planar point-circle membership must transport exactly to
    // point-plane incidence, 1000 checks split between hits and misses.
    for t in 0..1000 {
        let cx = rrat(&mut rng, 8, 4);
        let cy = rrat(&mut rng, 8, 4);
        let q = (rrat(&mut rng, 8, 4), rrat(&mut rng, 8, 4));
        let r2 = if t % 2 == 0 {
            // Radius through q: forces membership.
            let dx = &q.0 - &cx;
            let dy = &q.1 - &cy;
            &dx * &dx + &dy * &dy
        } else {
            rrat(&mut rng, 8, 4)
        };
        if r2 <= rat(0) {
            continue;
        }
        let c = Circle2::new((cx, cy), r2).unwrap();
        let lifted = lift_point(&q);
        let h = lift_circle(&c);
        assert_eq!(
            c.contains(&q),
            quadrics_core::geom::point_on_plane(&lifted, &h),
            "lifting mismatch at iteration {t}"
        );
    }
    // Duality: 1000 point-plane pairs, half constructed incident.
    for t in 0..1000 {
        let p = Point3::new(rrat(&mut rng, 8, 4), rrat(&mut rng, 8, 4), rrat(&mut rng, 8, 4));
        let h = if t % 2 == 0 {
            let a = rrat(&mut rng, 8, 4);
            let b = rrat(&mut rng, 8, 4);
            let d = -(&a * &p.x) - &b * &p.y - &p.z;
            Plane::new(a, b, rat(1), d).unwrap()
        } else {
            loop {
                let c = rrat(&mut rng, 8, 4);
                if c != rat(0) {
                    break Plane::new(rrat(&mut rng, 8, 4), rrat(&mut rng, 8, 4), c, rrat(&mut rng, 8, 4))
                        .unwrap();
                }
            }
        };
        let p_dual = dualize_point(&p);
        let h_dual = dualize_plane(&h).unwrap();
        assert_eq!(
            quadrics_core::geom::point_on_plane(&p, &h),
            quadrics_core::geom::point_on_plane(&h_dual, &p_dual),
            "duality mismatch at iteration {t}"
        );
    }
    println!("criterion 5 (1000 lifting + 1000 duality round-trips): PASS");
}

/// Independent 3-pair fit by hand elimination (not the library's solver):
/// subtracting the first equation of `a_i b_i = alpha a_i - delta b_i + beta`
/// leaves a 2x2 system in `(alpha, delta)`.
fn cheap_fit(p1: &(Rational, Rational), p2: &(Rational, Rational), p3: &(Rational, Rational)) -> Option<Mobius> {
    let r2 = (&p2.0 - &p1.0, &p2.1 - &p1.1, &p2.0 * &p2.1 - &p1.0 * &p1.1);
    let r3 = (&p3.0 - &p1.0, &p3.1 - &p1.1, &p3.0 * &p3.1 - &p1.0 * &p1.1);
    let det = -(&r2.0 * &r3.1) + &r2.1 * &r3.0;
    if det == rat(0) {
        return None;
    }
    let alpha = (-(&r2.2 * &r3.1) + &r2.1 * &r3.2) / &det;
    let delta = (&r2.0 * &r3.2 - &r2.2 * &r3.0) / &det;
    let beta = &p1.0 * &p1.1 - &alpha * &p1.0 + &delta * &p1.1;
    Mobius::new(alpha, beta, delta).ok()
}

/// Pairs-of-pentuples count, with no transformation dedup anywhere: fit on
/// the first three coordinates, count completions on the last two.
fn pentuple_pair_oracle(a: &[Rational]) -> u128 {
    let n = a.len();
    let mut q: u128 = 0;
    for i1 in 0..n {
        for i2 in 0..n {
            if i2 == i1 {
                continue;
            }
            for i3 in 0..n {
                if i3 == i1 || i3 == i2 {
                    continue;
                }
                for j1 in 0..n {
                    for j2 in 0..n {
                        if j2 == j1 {
                            continue;
                        }
                        for j3 in 0..n {
                            if j3 == j1 || j3 == j2 {
                                continue;
                            }
                            let Some(tau) = cheap_fit(
                                &(a[i1].clone(), a[j1].clone()),
                                &(a[i2].clone(), a[j2].clone()),
                                &(a[i3].clone(), a[j3].clone()),
                            ) else {
                                continue;
                            };
                            // Sources s4 != s5 outside the triple whose
                            // images land back in the set complete a pair
                            // of congruent pentuples.
                            let c = (0..n)
                                .filter(|&k| k != i1 && k != i2 && k != i3)
                                .filter(|&k| {
                                    tau.apply(&a[k]).is_some_and(|b| a.contains(&b))
                                })
                                .count() as u128;
                            q += c * c.saturating_sub(1);
                        }
                    }
                }
            }
        }
    }
    q
}

#[test]
fn criterion_6_pentuple_oracle_and_grid_crosscheck() {
    let mut rng = SplitMix64::new(0x5EED_6);
    // The oracle's fit must agree with the library's on random triples.
    for _ in 0..200 {
        let p1 = (rrat(&mut rng, 5, 3), rrat(&mut rng, 5, 3));
        let p2 = (rrat(&mut rng, 5, 3), rrat(&mut rng, 5, 3));
        let p3 = (rrat(&mut rng, 5, 3), rrat(&mut rng, 5, 3));
        if p1.0 == p2.0 || p1.0 == p3.0 || p2.0 == p3.0 {
            continue;
        }
        if p1.1 == p2.1 || p1.1 == p3.1 || p2.1 == p3.1 {
            continue;
        }
        let lib = mobius_from_pairs(&[p1.clone(), p2.clone(), p3.clone()]).unwrap();
        match (cheap_fit(&p1, &p2, &p3), lib) {
            (Some(a), MobiusFit::Unique(b)) => assert_eq!(a, b),
            (None, MobiusFit::Degenerate) => {}
            (a, b) => panic!("fit disagreement: {a:?} vs {b:?}"),
        }
    }
    for trial in 0..50 {
        let size = match trial {
            0..=43 => 5,
            44..=47 => 6,
            _ => 7,
        };
        let a = rand_set(&mut rng, size, 5, 3);
        let fast = count_congruent_pentuples(&a).unwrap();
        let slow = pentuple_pair_oracle(&a);
        assert_eq!(fast, slow, "pentuple mismatch on {a:?}");
    }
    // Structured sets where 5-rich maps actually exist.
    for a in [
        vec![rat(1), rat(2), Rational::new(1.into(), 2.into()), rat(3), Rational::new(1.into(), 3.into())],
        (0..7).map(rat).collect::<Vec<_>>(),
    ] {
        assert_eq!(count_congruent_pentuples(&a).unwrap(), pentuple_pair_oracle(&a));
    }

    for size in [4usize, 5, 6, 7, 8] {
        let a = rand_set(&mut rng, size, 6, 2);
        let report = rich_transformations(&a, 3, false).unwrap();
        for (tau, _) in &report.transformations {
            assert!(
                grid_incidence_crosscheck(&a, tau).unwrap(),
                "grid crosscheck failed for {tau:?} on {a:?}"
            );
        }
    }
    println!("criterion 6 (pentuple oracle x50, grid crosscheck, |A| <= 8): PASS");
}

#[test]
fn criterion_7_distinct_cross_ratios() {
    let a = [rat(0), rat(1), rat(2), rat(3)];
    assert_eq!(distinct_cross_ratios(&a).unwrap(), 6);

    let mut rng = SplitMix64::new(0x5EED_7);
    let mut done = 0;
    while done < 100 {
        let size = 4 + (rng.below(7) as usize);
        let a = rand_set(&mut rng, size, 6, 3);
        let tau = match Mobius::new(
            rrat(&mut rng, 4, 2),
            rrat(&mut rng, 4, 2),
            rrat(&mut rng, 4, 2),
        ) {
            Ok(t) => t,
            Err(_) => continue,
        };
        if a.contains(&tau.pole()) {
            continue;
        }
        let image: Vec<Rational> = a.iter().map(|x| tau.apply(x).unwrap()).collect();
        assert_eq!(
            distinct_cross_ratios(&a).unwrap(),
            distinct_cross_ratios(&image).unwrap(),
            "invariance broke for {tau:?} on {a:?}"
        );
        done += 1;
    }
    println!("criterion 7 (6 cross-ratios on {{0,1,2,3}}; invariance x100): PASS");
}

#[test]
fn criterion_8_bound_monitoring() {
    let mut ev = BoundEvaluator::new();
    // Residual against the quadric bound, across the whole sweep.
    let mut max_g0_ratio: f64 = 0.0;
    for case in sweep() {
        let b = ev.bound_quadric(case.points.len() as u64, case.planes.len() as u64);
        let b = ev.to_f64(&b);
        let ratio = case.d.residual.len() as f64 / b;
        assert!(ratio.is_finite());
        max_g0_ratio = max_g0_ratio.max(ratio);
        let hist = richness_histogram(&case.graph);
        assert!(histogram_consistent(&hist, &case.graph));
    }
    // Rich-transformation counts against the k-rich bound on grids.
    let mut rng = SplitMix64::new(0x5EED_8);
    let mut max_ngek_ratio: f64 = 0.0;
    for size in [5usize, 6, 8, 10] {
        let a = rand_set(&mut rng, size, 5, 2);
        let report = rich_transformations(&a, 3, false).unwrap();
        assert!(report.histogram_consistent(), "N_geq histogram broken on {a:?}");
        for (&k, &ngeq) in &report.n_geq {
            let b = ev.bound_ngek(size as u64, k.max(3) as u64);
            let ratio = ngeq as f64 / ev.to_f64(&b);
            assert!(ratio.is_finite());
            max_ngek_ratio = max_ngek_ratio.max(ratio);
        }
    }
    println!(
        "criterion 8 (bound monitoring): PASS (max G0 ratio {:.4}, max N_k ratio {:.4})",
        max_g0_ratio, max_ngek_ratio
    );
}

#[test]
fn criterion_9_determinism() {
    // Generators: byte-identical instances from identical specs.
    for case in sweep().iter().take(20) {
        let again = gen_instance(&case.spec).unwrap();
        assert_eq!(again.0, case.points);
        assert_eq!(again.1, case.planes);
    }
    // Decomposition JSON twice.
    let case = &sweep()[7];
    let d2 = decompose(&case.points, &case.planes, &case.v).unwrap();
    let a = serde_json::to_string(&DecompositionJson::from_decomposition(&case.d)).unwrap();
    let b = serde_json::to_string(&DecompositionJson::from_decomposition(&d2)).unwrap();
    assert_eq!(a, b);
    // Experiment CSV twice.
    let specs: Vec<InstanceSpec> = (0..10)
        .map(|s| {
            InstanceSpec::new(
                QuadricKind::ALL[s as usize % 5],
                7,
                6,
                PlaneStrategy::ThroughTriples,
                300 + s,
            )
            .with_bounds(5, 3)
        })
        .collect();
    let r1 = run_experiment(&specs, None, (2, 11), 1.0).unwrap();
    let r2 = run_experiment(&specs, None, (2, 11), 1.0).unwrap();
    assert!(!r1.any_failure);
    assert_eq!(r1.csv(), r2.csv());
    // Cross-ratio CSV twice.
    let a_set = rand_set(&mut SplitMix64::new(99), 6, 5, 2);
    let rep1 = rich_transformations(&a_set, 3, false).unwrap();
    let rep2 = rich_transformations(&a_set, 3, false).unwrap();
    let mut ev = BoundEvaluator::new();
    let c1 = quadrics_tools::formats::crossratio_csv(&rep1, a_set.len(), &mut ev);
    let c2 = quadrics_tools::formats::crossratio_csv(&rep2, a_set.len(), &mut ev);
    assert_eq!(c1, c2);
    println!("criterion 9 (byte-identical reruns): PASS");
}

#[test]
fn sweep_points_really_lie_on_their_quadrics() {
    for case in sweep() {
        for p in &case.points {
            assert!(point_on_quadric(p, &case.v));
        }
    }
}
