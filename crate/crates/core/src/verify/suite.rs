//! The acceptance battery: ten numbered checks, each reduced to a pass/fail
//! line with a short detail string.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{bound_formula, check_bound, TheoremId, Verdict};
use super::oracle::oracle_double_normals;
use super::search::random_search;
use super::{random_planar, random_sphere};
use crate::constructions::{self, LayeredParams, SEVEN_POINT_EDGES};
use crate::double_normal::{double_normal_graph, red_blue_decomposition, DnMode, CLAIM_BLUE_CROSS, CLAIM_BLUE_MATCHING};
use crate::geom::{arc_cross, PointSet, Space};
use crate::spherical::{
    crossing_classes, delaunay_tiling, sphere_double_normals, strict_gabriel, verify_embedded, weak_gabriel,
};

/// Constant in the near-extremal lower bound `17n/4 − C√n`.
pub const NEAR_EXTREMAL_C: f64 = 16.0;

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "planar even extremal"),
    (2, "planar odd extremal"),
    (3, "planar bound sweep"),
    (4, "sphere strict bound"),
    (5, "sphere weak bound and equality"),
    (6, "gabriel bound"),
    (7, "layered construction"),
    (8, "padding"),
    (9, "structural invariants"),
    (10, "search sanity"),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteItem {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Wall time; left out of serialized output so reports stay reproducible.
    #[serde(skip)]
    pub millis: u128,
}

impl std::fmt::Display for SuiteItem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2}. {}: {} ({} ms)", self.id, self.name, self.detail, self.millis)
    }
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: crate::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn weak_count(v: &PointSet) -> std::result::Result<usize, String> {
    Ok(lib(double_normal_graph(v, DnMode::Weak), "double normals")?.edge_count())
}

/// Runs one numbered check.
pub fn criterion(id: u8) -> SuiteItem {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown criterion");
    let start = Instant::now();
    let outcome = match id {
        1 => planar_even(),
        2 => planar_odd(),
        3 => planar_sweep(1000),
        4 => sphere_strict(1000),
        5 => sphere_weak(1000),
        6 => gabriel_bound(1000),
        7 => layered(),
        8 => padding(),
        9 => structural(200),
        10 => search_sanity(100),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    SuiteItem {
        id,
        name,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

/// Every check, run in parallel and reported in numeric order.
pub fn run_suite() -> Vec<SuiteItem> {
    CRITERIA.par_iter().map(|c| criterion(c.0)).collect()
}

fn planar_even() -> Check {
    let start = Instant::now();
    for n in [4, 6, 8, 12, 20, 50] {
        let v = lib(constructions::regular_polygon(n), "regular polygon")?;
        let got = weak_count(&v)?;
        ensure(got == 3 * n / 2, || format!("regular {n}-gon has {got} pairs, expected {}", 3 * n / 2))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok("n in {4,6,8,12,20,50} give 3n/2; octagon 12; under 1 s".into())
}

fn planar_odd() -> Check {
    for n in [5, 7, 9, 21] {
        let v = lib(constructions::planar_odd_extremal(n), "odd extremal")?;
        let got = weak_count(&v)?;
        ensure(got == 3 * (n / 2), || format!("odd set n={n} has {got} pairs, expected {}", 3 * (n / 2)))?;
    }
    let v = constructions::seven_point_example();
    let g = lib(double_normal_graph(&v, DnMode::Weak), "double normals")?;
    ensure(g.edges() == SEVEN_POINT_EDGES, || format!("seven-point edges {:?}", g.edges()))?;
    Ok("n in {5,7,9,21} give 3(n-1)/2; seven-point set has its 9 edges".into())
}

fn planar_sweep(seeds: u64) -> Check {
    let bad: Vec<String> = (0..seeds)
        .into_par_iter()
        .filter_map(|seed| {
            let n = 3 + (seed % 12) as usize;
            let v = random_planar(n, seed);
            let run = || -> std::result::Result<(), String> {
                for (mode, bound) in [(DnMode::Weak, 3 * (n / 2)), (DnMode::Strict, n)] {
                    let fast = lib(double_normal_graph(&v, mode), "fast path")?;
                    let slow = lib(oracle_double_normals(&v, mode), "oracle")?;
                    ensure(fast.edges() == slow.edges(), || format!("{mode:?} fast path differs from oracle"))?;
                    ensure(fast.edge_count() <= bound, || format!("{mode:?} count {} > {bound}", fast.edge_count()))?;
                }
                Ok(())
            };
            run().err().map(|e| format!("seed {seed} (n={n}): {e}"))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{seeds} random sets, 3 <= n <= 14: no violations, oracle agrees"))
}

fn verdict_ok(v: &PointSet, t: TheoremId) -> std::result::Result<(), String> {
    let r = lib(check_bound(v, t), "check_bound")?;
    ensure(r.verdict != Verdict::Fail, || {
        format!("{} exceeded at n={}: {} > {}", t.name(), r.n, r.observed, r.bound.value)
    })
}

fn sphere_strict(seeds: u64) -> Check {
    let bad: Vec<String> = (0..seeds)
        .into_par_iter()
        .filter_map(|seed| {
            let n = 4 + (seed % 11) as usize;
            let v = random_sphere(n, seed);
            verdict_ok(&v, TheoremId::T2).err().map(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first: {}", bad.len(), bad[0]))?;
    let five = constructions::five_point_strict();
    let got = lib(double_normal_graph(&five, DnMode::Strict), "strict double normals")?.edge_count();
    ensure(got == 8, || format!("five-point set has {got} strict pairs"))?;
    Ok(format!("{seeds} random sets, 4 <= n <= 14: N' <= 2n-2; five-point set has 8"))
}

fn sphere_weak(seeds: u64) -> Check {
    for (label, v, expected) in [
        ("cube", constructions::cube_vertices(), 28),
        ("rhombicuboctahedron", constructions::rhombicuboctahedron_vertices(), 96),
    ] {
        let r = lib(check_bound(&v, TheoremId::T3), "check_bound")?;
        ensure(r.observed == expected && r.equality, || format!("{label}: N = {}", r.observed))?;
        ensure(r.characterization_holds() == Some(true), || format!("{label}: characterization {:?}", r.characterization))?;
    }
    let bad: Vec<String> = (0..seeds)
        .into_par_iter()
        .filter_map(|seed| {
            let n = 8 + (seed % 7) as usize;
            let v = random_sphere(n, seed);
            verdict_ok(&v, TheoremId::T3).err().map(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first: {}", bad.len(), bad[0]))?;
    Ok(format!("cube 28 and rhombicuboctahedron 96 with equality; {seeds} random sets within 17n/4-6"))
}

/// The sphere sets produced by the generators.
pub fn generated_sphere_sets() -> crate::Result<Vec<(String, PointSet)>> {
    let mut out = vec![
        ("cube".to_string(), constructions::cube_vertices()),
        ("octahedron".to_string(), constructions::octahedron_vertices()),
        ("rhombicuboctahedron".to_string(), constructions::rhombicuboctahedron_vertices()),
        ("five-point".to_string(), constructions::five_point_strict()),
    ];
    for (k, m) in [(4, 1), (4, 2), (6, 2), (8, 2)] {
        out.push((format!("layered({k},{m})"), constructions::layered_construction(&LayeredParams::new(k, m))?));
    }
    for n in [16, 24] {
        out.push((format!("near-extremal({n})"), constructions::near_extremal(n)?));
    }
    Ok(out)
}

fn gabriel_bound(seeds: u64) -> Check {
    let generated = lib(generated_sphere_sets(), "generators")?;
    for (label, v) in &generated {
        verdict_ok(v, TheoremId::Gabriel).map_err(|e| format!("{label}: {e}"))?;
    }
    let cube = lib(weak_gabriel(&constructions::cube_vertices()), "gabriel")?.edge_count();
    ensure(cube == 24, || format!("cube has {cube} Gabriel edges"))?;
    let bad: Vec<String> = (0..seeds)
        .into_par_iter()
        .filter_map(|seed| {
            let n = 4 + (seed % 11) as usize;
            verdict_ok(&random_sphere(n, seed), TheoremId::Gabriel)
                .err()
                .map(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{} generated and {seeds} random sets within 15n/4-6; cube 24", generated.len()))
}

fn layered() -> Check {
    let mut slowest = Duration::ZERO;
    for (k, m) in [(4, 1), (4, 2), (4, 3), (6, 2), (6, 3), (8, 2)] {
        let start = Instant::now();
        let p = LayeredParams::new(k, m);
        let v = lib(constructions::layered_construction(&p), "layered construction")?;
        ensure(v.len() == p.point_count(), || format!("({k},{m}): {} points", v.len()))?;
        let n = weak_count(&v)?;
        ensure(4 * n + 6 * k == 17 * v.len(), || format!("({k},{m}): N = {n}, expected {}", p.expected_double_normals()))?;
        let t = lib(delaunay_tiling(&v), "tiling")?;
        ensure(t.face_census == p.expected_face_census(), || format!("({k},{m}): faces {:?}", t.face_census))?;
        if k > 4 {
            ensure(t.edges.len() == p.expected_edges(), || format!("({k},{m}): {} edges", t.edges.len()))?;
            let faces: usize = t.face_census.values().sum();
            ensure(v.len() + faces == t.edges.len() + 2, || format!("({k},{m}): Euler fails"))?;
        }
        slowest = slowest.max(start.elapsed());
    }
    ensure(slowest < Duration::from_secs(30), || format!("slowest case took {slowest:?}"))?;
    Ok("six (k,m) cases exact; each under 30 s".into())
}

fn padding() -> Check {
    let base = lib(constructions::layered_construction(&LayeredParams::new(4, 2)), "layered")?;
    for count in 1..=4 {
        let v = lib(constructions::pad_with_interior_points(&base, count), "padding")?;
        let n = weak_count(&v)?;
        ensure(n >= 90, || format!("padded by {count}: N = {n}"))?;
    }
    for n in [16usize, 24, 100] {
        let (m, k) = lib(constructions::near_extremal_params(n), "parameters")?;
        let layered_len = LayeredParams::new(k, m).point_count();
        let root = (n as f64).sqrt();
        ensure(((n - layered_len) as f64) < 2.0 * root, || format!("n={n}: layered part has {layered_len} points"))?;
        let v = lib(constructions::near_extremal(n), "near extremal")?;
        ensure(v.len() == n, || format!("near_extremal({n}) has {} points", v.len()))?;
        let got = weak_count(&v)?;
        let floor = 17.0 * n as f64 / 4.0 - NEAR_EXTREMAL_C * root;
        ensure(got as f64 >= floor, || format!("n={n}: N = {got} < {floor:.2}"))?;
    }
    Ok(format!("padding keeps N >= 90; near-extremal 16/24/100 within C = {NEAR_EXTREMAL_C}"))
}

/// No weak Gabriel edge crosses a Delaunay edge.
fn gabriel_vs_delaunay(v: &PointSet) -> std::result::Result<(), String> {
    let g = lib(weak_gabriel(v), "gabriel")?;
    let t = lib(delaunay_tiling(v), "tiling")?;
    let tol = v.tol();
    for &(a, b) in g.edges() {
        for &(c, d) in &t.edges {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let hit = lib(arc_cross(v.point(a), v.point(b), v.point(c), v.point(d), &tol), "arc crossing")?;
            ensure(hit.is_none(), || format!("Gabriel edge ({a},{b}) crosses Delaunay edge ({c},{d})"))?;
        }
    }
    Ok(())
}

fn sphere_structure(v: &PointSet) -> std::result::Result<(), String> {
    lib(verify_embedded(&lib(strict_gabriel(v), "strict gabriel")?, v), "strict Gabriel drawing")?;
    lib(crossing_classes(&lib(weak_gabriel(v), "gabriel")?, v), "crossing classes")?;
    gabriel_vs_delaunay(v)?;
    for mode in [DnMode::Weak, DnMode::Strict] {
        lib(sphere_double_normals(v, mode), "lift")?;
    }
    Ok(())
}

fn planar_structure(v: &PointSet) -> std::result::Result<(), String> {
    let g = lib(double_normal_graph(v, DnMode::Weak), "double normals")?;
    let rb = lib(red_blue_decomposition(v, &g), "red/blue decomposition")?;
    for claim in [CLAIM_BLUE_MATCHING, CLAIM_BLUE_CROSS] {
        let ok = rb.claim(claim).is_some_and(|c| c.passed);
        ensure(ok, || format!("claim failed: {claim}"))?;
    }
    Ok(())
}

fn structural(random: u64) -> Check {
    let mut sphere: Vec<(String, PointSet)> = lib(generated_sphere_sets(), "generators")?;
    sphere.extend((0..random).map(|s| (format!("random sphere seed {s}"), random_sphere(4 + (s % 11) as usize, s))));
    let mut planar: Vec<(String, PointSet)> = Vec::new();
    for n in [4, 5, 6, 7, 8, 9, 12, 20] {
        planar.push((format!("regular {n}-gon"), lib(constructions::regular_polygon(n), "polygon")?));
    }
    for n in [5, 7, 9, 21] {
        planar.push((format!("odd extremal {n}"), lib(constructions::planar_odd_extremal(n), "odd")?));
    }
    planar.push(("seven-point".into(), constructions::seven_point_example()));
    planar.extend((0..random).map(|s| (format!("random planar seed {s}"), random_planar(3 + (s % 12) as usize, s))));

    let failures: BTreeSet<String> = sphere
        .par_iter()
        .filter_map(|(label, v)| sphere_structure(v).err().map(|e| format!("{label}: {e}")))
        .chain(
            planar
                .par_iter()
                .filter_map(|(label, v)| planar_structure(v).err().map(|e| format!("{label}: {e}"))),
        )
        .collect();
    ensure(failures.is_empty(), || {
        format!("{} failures, first: {}", failures.len(), failures.iter().next().unwrap())
    })?;
    Ok(format!("{} sphere and {} planar inputs", sphere.len(), planar.len()))
}

fn search_sanity(seeds: u64) -> Check {
    let targets = [(Space::Plane, 20_000, 12usize), (Space::Sphere, 50_000, 28)];
    for (space, budget, want) in targets {
        let s = lib(random_search(space, 8, budget, 1), "search")?;
        ensure(s.best_n == want, || format!("{space:?} n=8 seed 1 reached {}", s.best_n))?;
    }
    let runs: Vec<(Space, usize, u64)> = targets
        .iter()
        .flat_map(|&(space, budget, _)| (1..=seeds).map(move |seed| (space, budget, seed)))
        .collect();
    let bad: Vec<String> = runs
        .par_iter()
        .filter_map(|&(space, budget, seed)| {
            let s = match random_search(space, 8, budget, seed) {
                Ok(s) => s,
                Err(e) => return Some(format!("{space:?} seed {seed}: {e}")),
            };
            let bound = bound_formula(if space == Space::Plane { TheoremId::T1 } else { TheoremId::T3 }, 8);
            let over = Ratio::from_integer(s.best_n as i64) > bound.value;
            (s.violation.is_some() || over).then(|| format!("{space:?} seed {seed}: violation reported"))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first: {}", bad.len(), bad[0]))?;
    Ok(format!("plane 12 and sphere 28 at seed 1; no violation over {seeds} seeds each"))
}
