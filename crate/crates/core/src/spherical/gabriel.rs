use rayon::prelude::*;

use crate::error::Result;
use crate::geom::{minor_cap_classify, CapClass, PointSet, Space};
use crate::graph::GeoGraph;

fn gabriel(v: &PointSet, strict: bool) -> Result<GeoGraph> {
    v.require_space(Space::Sphere)?;
    v.require_len(2)?;
    let n = v.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| ((i + 1)..n).filter(move |&j| is_gabriel_edge(v, i, j, strict)).map(move |j| (i, j)))
        .collect();
    Ok(GeoGraph::new(n, Space::Sphere, edges))
}

/// Whether `{i, j}` is an edge of the weak (`strict == false`) or strict Gabriel graph.
/// Antipodal pairs are never joined.
pub fn is_gabriel_edge(v: &PointSet, i: usize, j: usize, strict: bool) -> bool {
    let tol = v.tol();
    let (a, b) = (v.point(i), v.point(j));
    if (a + b).norm() <= tol.boundary_eps {
        return false;
    }
    v.points().iter().enumerate().all(|(k, &x)| {
        if k == i || k == j {
            return true;
        }
        match minor_cap_classify(a, b, x, &tol).expect("validated pair") {
            CapClass::Outside => true,
            CapClass::OnBoundary => !strict,
            CapClass::InsideOpen => false,
        }
    })
}

/// Joins non-antipodal `a`, `b` when no point lies in the open minor cap on `ab`.
pub fn weak_gabriel(v: &PointSet) -> Result<GeoGraph> {
    gabriel(v, false)
}

/// As [`weak_gabriel`], but points on the cap boundary also block the edge.
pub fn strict_gabriel(v: &PointSet) -> Result<GeoGraph> {
    gabriel(v, true)
}
