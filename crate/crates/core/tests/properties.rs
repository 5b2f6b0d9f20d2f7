use normalis_core::constructions::{self, LayeredParams};
use normalis_core::geom::{arc_cross, minor_cap_classify, slab_classify, CapClass};
use normalis_core::io::{read_point_set, PointSetFile};
use normalis_core::spherical::{sphere_double_normals, strict_gabriel, verify_embedded, weak_gabriel};
use normalis_core::verify::{oracle_double_normals, random_planar, random_search, random_sphere};
use normalis_core::{diameter_graph, double_normal_graph, DnMode, PointSet, Space, Tolerance, Vec3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit(x: f64, y: f64, z: f64) -> Option<Vec3> {
    let v = Vec3::new(x, y, z);
    (v.norm() > 1e-3).then(|| v.normalized())
}

/// Rotation about `axis` by `angle` (Rodrigues).
fn rotate(p: Vec3, axis: Vec3, angle: f64) -> Vec3 {
    let k = axis.normalized();
    p * angle.cos() + k.cross(p) * angle.sin() + k * (k.dot(p) * (1.0 - angle.cos()))
}

fn random_space3(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..n)
        .map(|_| Vec3::new(rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    PointSet::with_default_tol(Space::Space3, pts).unwrap()
}

fn coord() -> impl Strategy<Value = f64> {
    -10.0f64..10.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn slab_is_symmetric(p in (coord(), coord(), coord()), q in (coord(), coord(), coord()), x in (coord(), coord(), coord())) {
        let (p, q, x) = (Vec3::new(p.0, p.1, p.2), Vec3::new(q.0, q.1, q.2), Vec3::new(x.0, x.1, x.2));
        prop_assume!(p.distance(q) > 1e-3);
        let tol = Tolerance::default();
        prop_assert_eq!(slab_classify(p, q, x, &tol).unwrap(), slab_classify(q, p, x, &tol).unwrap());
    }

    #[test]
    fn cap_endpoints_on_boundary(a in (coord(), coord(), coord()), b in (coord(), coord(), coord())) {
        let (Some(a), Some(b)) = (unit(a.0, a.1, a.2), unit(b.0, b.1, b.2)) else { return Ok(()) };
        prop_assume!(a.distance(b) > 1e-3 && (a + b).norm() > 1e-3);
        let tol = Tolerance::default();
        prop_assert_eq!(minor_cap_classify(a, b, a, &tol).unwrap(), CapClass::OnBoundary);
        prop_assert_eq!(minor_cap_classify(a, b, b, &tol).unwrap(), CapClass::OnBoundary);
    }

    #[test]
    fn arc_cross_symmetries(seed in any::<u64>()) {
        let v = random_sphere(4, seed);
        let [a, b, c, d] = [v.point(0), v.point(1), v.point(2), v.point(3)];
        let tol = Tolerance::default();
        let base = arc_cross(a, b, c, d, &tol).unwrap();
        for other in [arc_cross(c, d, a, b, &tol), arc_cross(b, a, c, d, &tol), arc_cross(a, b, d, c, &tol)] {
            let other = other.unwrap();
            prop_assert_eq!(base.is_some(), other.is_some());
            if let (Some(x), Some(y)) = (base, other) {
                prop_assert!(x.distance(y) < 1e-9);
            }
        }
    }

    #[test]
    fn planar_graph_inclusions_and_bounds(n in 3usize..=14, seed in any::<u64>()) {
        let v = random_planar(n, seed);
        let weak = double_normal_graph(&v, DnMode::Weak).unwrap();
        let strict = double_normal_graph(&v, DnMode::Strict).unwrap();
        let diam = diameter_graph(&v).unwrap();
        prop_assert!(strict.is_subgraph_of(&weak));
        prop_assert!(diam.is_subgraph_of(&strict));
        prop_assert!(weak.edge_count() <= 3 * (n / 2));
        prop_assert!(strict.edge_count() <= n);
    }

    #[test]
    fn oracle_agrees_in_every_space(n in 3usize..=14, seed in any::<u64>()) {
        for v in [random_planar(n, seed), random_space3(n, seed), random_sphere(n, seed)] {
            for mode in [DnMode::Weak, DnMode::Strict] {
                let fast = double_normal_graph(&v, mode).unwrap();
                let slow = oracle_double_normals(&v, mode).unwrap();
                prop_assert_eq!(fast.edges(), slow.edges());
            }
        }
    }

    #[test]
    fn planar_rigid_motion_invariance(n in 3usize..=12, seed in any::<u64>(), angle in 0.0f64..6.3,
                                      shift in (coord(), coord()), scale in 0.1f64..20.0) {
        let sets = [random_planar(n, seed), constructions::regular_polygon(n).unwrap()];
        for v in sets {
            let moved: Vec<[f64; 2]> = v.points().iter().map(|p| {
                let r = rotate(*p, Vec3::new(0.0, 0.0, 1.0), angle) * scale;
                [r.x + shift.0, r.y + shift.1]
            }).collect();
            let w = PointSet::plane(moved).unwrap();
            for mode in [DnMode::Weak, DnMode::Strict] {
                let (a, b) = (double_normal_graph(&v, mode).unwrap(), double_normal_graph(&w, mode).unwrap());
                prop_assert_eq!(a.edges(), b.edges());
            }
        }
    }

    #[test]
    fn blue_edges_pairwise_cross(n in 3usize..=14, seed in any::<u64>()) {
        let v = random_planar(n, seed);
        let g = double_normal_graph(&v, DnMode::Weak).unwrap();
        let rb = normalis_core::double_normal::red_blue_decomposition(&v, &g).unwrap();
        prop_assert!(rb.all_passed(), "{:?}", rb.claim_results);
    }

    #[test]
    fn sphere_invariants(n in 4usize..=14, seed in any::<u64>()) {
        let v = random_sphere(n, seed);
        let weak = weak_gabriel(&v).unwrap();
        let strict = strict_gabriel(&v).unwrap();
        prop_assert!(strict.is_subgraph_of(&weak));
        prop_assert!(verify_embedded(&strict, &v).is_ok());
        prop_assert!(4 * weak.edge_count() + 24 <= 15 * n);
        let s = sphere_double_normals(&v, DnMode::Strict).unwrap();
        prop_assert!(s.count + 2 <= 2 * n);
        let w = sphere_double_normals(&v, DnMode::Weak).unwrap();
        prop_assert_eq!(2 * w.count, w.e1.edge_count() + w.e2.edge_count() + w.intersection.len());
        if n >= 8 {
            prop_assert!(4 * w.count + 24 <= 17 * n);
        }
    }

    #[test]
    fn antipodal_pairs_are_isolated_in_strict_graph(n in 3usize..=10, seed in any::<u64>()) {
        let base = random_sphere(n, seed);
        let mut pts = base.points().to_vec();
        pts.push(-pts[0]);
        let Ok(v) = PointSet::sphere(pts) else { return Ok(()) };
        let g = double_normal_graph(&v, DnMode::Strict).unwrap();
        prop_assert!(g.contains(0, n));
        prop_assert_eq!(g.degree(0), 1);
        prop_assert_eq!(g.degree(n), 1);
    }

    #[test]
    fn sphere_rotation_invariance(n in 4usize..=12, seed in any::<u64>(), axis in (coord(), coord(), coord()), angle in 0.0f64..6.3) {
        let Some(axis) = unit(axis.0, axis.1, axis.2) else { return Ok(()) };
        for v in [random_sphere(n, seed), constructions::cube_vertices()] {
            let w = PointSet::sphere(v.points().iter().map(|&p| rotate(p, axis, angle))).unwrap();
            prop_assert_eq!(
                double_normal_graph(&v, DnMode::Weak).unwrap().edge_count(),
                double_normal_graph(&w, DnMode::Weak).unwrap().edge_count()
            );
            prop_assert_eq!(weak_gabriel(&v).unwrap().edge_count(), weak_gabriel(&w).unwrap().edge_count());
            prop_assert_eq!(strict_gabriel(&v).unwrap().edge_count(), strict_gabriel(&w).unwrap().edge_count());
        }
    }

    #[test]
    fn point_files_round_trip(n in 2usize..=30, seed in any::<u64>(), sphere in any::<bool>()) {
        let v = if sphere { random_sphere(n, seed) } else { random_planar(n, seed) };
        let text = PointSetFile::from_point_set(&v, serde_json::Value::Null).to_json();
        let back = read_point_set(&text, Tolerance::default()).unwrap();
        prop_assert_eq!(back.points(), v.points());
        prop_assert_eq!(PointSetFile::parse(&text).unwrap().to_json(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn search_is_reproducible(seed in any::<u64>(), sphere in any::<bool>()) {
        let space = if sphere { Space::Sphere } else { Space::Plane };
        let a = random_search(space, 6, 400, seed).unwrap();
        let b = random_search(space, 6, 400, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn cap_sign_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = random_sphere(3 * 10_000, 11);
    let mut checked = 0;
    for t in 0..10_000 {
        let (a, b, x) = (v.point(3 * t), v.point(3 * t + 1), v.point(3 * t + 2));
        let x = if rng.random::<bool>() { x } else { (a + b).normalized() };
        let s = x.dot(a + b) - (1.0 + a.dot(b));
        let r = -(x - a).dot(x - b);
        if s.abs() > 1e-12 && r.abs() > 1e-12 {
            assert_eq!(s > 0.0, r > 0.0, "a={a:?} b={b:?} x={x:?}");
            checked += 1;
        }
    }
    assert!(checked > 9_000);
}

#[test]
fn generated_sphere_sets_are_valid() {
    let mut sets = vec![
        constructions::cube_vertices(),
        constructions::octahedron_vertices(),
        constructions::rhombicuboctahedron_vertices(),
        constructions::five_point_strict(),
    ];
    for (k, m) in [(4, 1), (4, 2), (6, 2), (8, 2), (6, 3)] {
        let v = constructions::layered_construction(&LayeredParams::new(k, m)).unwrap();
        for p in v.points() {
            assert!(v.find(-*p).is_some(), "layered({k},{m}) not closed under antipody");
        }
        sets.push(v);
    }
    sets.push(constructions::near_extremal(40).unwrap());
    for v in sets {
        for (i, p) in v.points().iter().enumerate() {
            assert!((p.norm() - 1.0).abs() < 1e-12);
            for q in &v.points()[i + 1..] {
                assert!(p.distance(*q) > 1e-6);
            }
        }
    }
}
