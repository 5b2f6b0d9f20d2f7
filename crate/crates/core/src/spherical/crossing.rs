use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{arc_contains_interior, arc_cross, PointSet, Space, Vec3};
use crate::graph::GeoGraph;

/// The spherical polygon spanned by a class of pairwise crossing arcs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingPolygon {
    pub class: usize,
    /// Endpoints of the class's arcs, counter-clockwise around the midpoint
    /// as seen from outside the sphere.
    pub vertices: Vec<usize>,
    /// Common midpoint of the arcs.
    pub midpoint: Vec3,
    /// Common chord length of the arcs.
    pub chord: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingReport {
    /// Edge indices (into the graph's sorted edge list) of each class.
    pub classes: Vec<Vec<usize>>,
    /// Class id per edge.
    pub class_of: Vec<usize>,
    /// One polygon per class of size at least 2.
    pub polygons: Vec<CrossingPolygon>,
    /// Polygon size → number of polygons.
    pub g_census: BTreeMap<usize, usize>,
    /// Pairs of polygons meeting in something other than a vertex or a common edge.
    pub polygon_claim_violations: Vec<(usize, usize)>,
}

impl CrossingReport {
    pub fn polygons_of_size(&self, k: usize) -> usize {
        self.g_census.get(&k).copied().unwrap_or(0)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All crossing edge pairs `(e, f)` with `e < f`, in sorted order.
pub fn crossing_pairs(g: &GeoGraph, v: &PointSet) -> Result<Vec<(usize, usize)>> {
    let tol = v.tol();
    let edges = g.edges();
    let m = edges.len();
    let pairs: Vec<Result<Option<(usize, usize)>>> = (0..m)
        .into_par_iter()
        .flat_map_iter(|e| {
            ((e + 1)..m).map(move |f| {
                let (a, b) = edges[e];
                let (c, d) = edges[f];
                if a == c || a == d || b == c || b == d {
                    return Ok(None);
                }
                let hit = arc_cross(v.point(a), v.point(b), v.point(c), v.point(d), &tol)?;
                Ok(hit.map(|_| (e, f)))
            })
        })
        .collect();
    let mut out = Vec::new();
    for p in pairs {
        if let Some(pair) = p? {
            out.push(pair);
        }
    }
    Ok(out)
}

fn midpoint(v: &PointSet, (a, b): (usize, usize)) -> Vec3 {
    (v.point(a) + v.point(b)).normalized()
}

/// Orders `ids` counter-clockwise around `centre`, seen from outside.
fn order_around(v: &PointSet, centre: Vec3, ids: &mut [usize]) {
    let e1 = centre.any_orthogonal().normalized();
    let e2 = centre.cross(e1);
    let angle = |i: usize| {
        let p = v.point(i);
        p.dot(e2).atan2(p.dot(e1))
    };
    ids.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
}

/// Partitions the edges of a weak Gabriel graph into classes of pairwise
/// crossing arcs and builds the crossing polygon of every non-trivial class.
pub fn crossing_classes(g: &GeoGraph, v: &PointSet) -> Result<CrossingReport> {
    v.require_space(Space::Sphere)?;
    let tol = v.tol();
    let edges = g.edges();
    let m = edges.len();
    let pairs = crossing_pairs(g, v).map_err(|e| match e {
        Error::CollinearArcs => Error::NotAnEquivalence("two edges overlap along a great circle".into()),
        other => other,
    })?;
    let crossing: BTreeSet<(usize, usize)> = pairs.iter().copied().collect();

    let mut dsu = Dsu((0..m).collect());
    for &(e, f) in &pairs {
        dsu.union(e, f);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..m {
        by_root.entry(dsu.find(e)).or_default().push(e);
    }
    let classes: Vec<Vec<usize>> = by_root.into_values().collect();
    let mut class_of = vec![0; m];
    for (c, members) in classes.iter().enumerate() {
        for &e in members {
            class_of[e] = c;
        }
    }

    let mut polygons = Vec::new();
    for (c, members) in classes.iter().enumerate() {
        if members.len() < 2 {
            continue;
        }
        for (i, &e) in members.iter().enumerate() {
            for &f in &members[i + 1..] {
                if !crossing.contains(&(e, f)) {
                    return Err(Error::NotAnEquivalence(format!(
                        "edges {:?} and {:?} share a class but do not cross",
                        edges[e], edges[f]
                    )));
                }
            }
        }
        let first = edges[members[0]];
        let mid = midpoint(v, first);
        let chord = v.point(first.0).distance(v.point(first.1));
        for &e in &members[1..] {
            let mid_e = midpoint(v, edges[e]);
            let chord_e = v.point(edges[e].0).distance(v.point(edges[e].1));
            if mid_e.distance(mid) > tol.concyclic_eps || (chord_e - chord).abs() > tol.concyclic_eps {
                return Err(Error::NotAnEquivalence(format!(
                    "edges {:?} and {:?} cross but differ in midpoint or length",
                    first, edges[e]
                )));
            }
        }
        let mut vertices: Vec<usize> = members.iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != 2 * members.len() {
            return Err(Error::NotAnEquivalence(format!("crossing arcs of class {c} share an endpoint")));
        }
        order_around(v, mid, &mut vertices);
        polygons.push(CrossingPolygon {
            class: c,
            vertices,
            midpoint: mid,
            chord,
        });
    }

    let mut g_census = BTreeMap::new();
    for p in &polygons {
        *g_census.entry(p.vertices.len()).or_insert(0) += 1;
    }
    let polygon_claim_violations = polygon_intersections(v, &polygons);

    Ok(CrossingReport {
        classes,
        class_of,
        polygons,
        g_census,
        polygon_claim_violations,
    })
}

fn sides(p: &CrossingPolygon) -> Vec<(usize, usize)> {
    let k = p.vertices.len();
    (0..k)
        .map(|i| {
            let (a, b) = (p.vertices[i], p.vertices[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Pairs of polygons whose intersection is neither empty, a single vertex,
/// nor a common side.
fn polygon_intersections(v: &PointSet, polygons: &[CrossingPolygon]) -> Vec<(usize, usize)> {
    let tol = v.tol();
    let mut bad = Vec::new();
    for i in 0..polygons.len() {
        for j in (i + 1)..polygons.len() {
            let (p, q) = (&polygons[i], &polygons[j]);
            let shared: Vec<usize> = p.vertices.iter().copied().filter(|x| q.vertices.contains(x)).collect();
            let mut ok = match shared.len() {
                0 | 1 => true,
                2 => {
                    let e = (shared[0].min(shared[1]), shared[0].max(shared[1]));
                    sides(p).contains(&e) && sides(q).contains(&e)
                }
                _ => false,
            };
            if ok {
                'outer: for (a, b) in sides(p) {
                    for (c, d) in sides(q) {
                        if a == c || a == d || b == c || b == d {
                            continue;
                        }
                        match arc_cross(v.point(a), v.point(b), v.point(c), v.point(d), &tol) {
                            Ok(None) => {}
                            _ => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ok {
                // one polygon strictly inside the other's region
                ok = !inside_polygon(v, p, q.midpoint) && !inside_polygon(v, q, p.midpoint);
            }
            if !ok {
                bad.push((p.class, q.class));
            }
        }
    }
    bad
}

fn inside_polygon(v: &PointSet, p: &CrossingPolygon, x: Vec3) -> bool {
    let eps = v.tol().boundary_eps;
    let k = p.vertices.len();
    (0..k).all(|i| {
        let (a, b) = (v.point(p.vertices[i]), v.point(p.vertices[(i + 1) % k]));
        a.cross(b).dot(x) > eps
    })
}

/// Replaces every non-trivial crossing class by the sides of its crossing
/// polygon and checks that the result is embedded.
pub fn reduce_to_gprime(g: &GeoGraph, v: &PointSet, report: &CrossingReport) -> Result<GeoGraph> {
    v.require_space(Space::Sphere)?;
    let edges = g.edges();
    let mut kept: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .filter(|&(e, _)| report.classes[report.class_of[e]].len() < 2)
        .map(|(_, &e)| e)
        .collect();
    for p in &report.polygons {
        kept.extend(sides(p));
    }
    let gp = GeoGraph::new(g.n(), Space::Sphere, kept);
    verify_embedded(&gp, v)?;
    Ok(gp)
}

/// Fails with a witness if two edges cross or a vertex sits inside an edge.
pub fn verify_embedded(g: &GeoGraph, v: &PointSet) -> Result<()> {
    let eps = v.tol().boundary_eps;
    for &(a, b) in g.edges() {
        for x in 0..v.len() {
            if x != a && x != b && arc_contains_interior(v.point(a), v.point(b), v.point(x), eps) {
                return Err(Error::ReductionInvariantViolated(format!(
                    "vertex {x} lies inside edge ({a}, {b})"
                )));
            }
        }
    }
    match crossing_pairs(g, v) {
        Ok(p) if p.is_empty() => Ok(()),
        Ok(p) => {
            let (e, f) = p[0];
            Err(Error::ReductionInvariantViolated(format!(
                "edges {:?} and {:?} cross",
                g.edges()[e],
                g.edges()[f]
            )))
        }
        Err(e) => Err(Error::ReductionInvariantViolated(e.to_string())),
    }
}
