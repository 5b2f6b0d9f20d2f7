//! Double-normal, strict double-normal and diameter graphs in R² and R³.

mod audit;
pub(crate) mod hull2d;

pub use audit::{
    audit_basic_claims, red_blue_decomposition, ClaimResult, StructureReport, CLAIM_BLUE_CROSS, CLAIM_BLUE_MATCHING,
    CLAIM_BLUE_RED_CROSS, CLAIM_COUNT, CLAIM_DISJOINT_RECTANGLE, CLAIM_HULL_VERTICES, CLAIM_INTERIOR_VERTEX,
    CLAIM_NOT_IN_NEIGHBOUR_HULL, CLAIM_NO_COMMON_LINE, CLAIM_RIGHTMOST_EXISTS,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{slab_classify, PointSet, SlabClass, Space};
use crate::graph::GeoGraph;

/// Weak (closed slab) or strict (open slab) double normals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DnMode {
    Weak,
    Strict,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DnOptions {
    /// Restrict candidate endpoints to points on the convex-hull boundary
    /// (planar inputs only; other spaces ignore the flag).
    pub hull_filter: bool,
}

/// True when `{i, j}` is a double-normal pair of `v` in the given mode.
pub fn is_double_normal(v: &PointSet, i: usize, j: usize, mode: DnMode) -> bool {
    let tol = v.tol();
    let (p, q) = (v.point(i), v.point(j));
    v.points().iter().enumerate().all(|(k, &x)| {
        if k == i || k == j {
            return true;
        }
        // ingestion guarantees p != q
        match slab_classify(p, q, x, &tol).expect("distinct points") {
            SlabClass::Interior => true,
            SlabClass::OnBoundary => mode == DnMode::Weak,
            SlabClass::Outside => false,
        }
    })
}

/// The double-normal graph of `v` (sphere inputs are treated as subsets of R³).
pub fn double_normal_graph(v: &PointSet, mode: DnMode) -> Result<GeoGraph> {
    double_normal_graph_with(v, mode, DnOptions::default())
}

pub fn double_normal_graph_with(v: &PointSet, mode: DnMode, opts: DnOptions) -> Result<GeoGraph> {
    v.require_len(2)?;
    let n = v.len();
    let candidate = if opts.hull_filter && v.space() == Space::Plane {
        hull2d::on_hull_boundary(v.points(), v.tol().boundary_eps)
    } else {
        vec![true; n]
    };
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .filter(|&i| candidate[i])
        .flat_map_iter(|i| {
            let candidate = &candidate;
            ((i + 1)..n)
                .filter(move |&j| candidate[j] && is_double_normal(v, i, j, mode))
                .map(move |j| (i, j))
        })
        .collect();
    Ok(GeoGraph::new(n, v.space(), edges))
}

/// Pairs realizing the diameter, compared on squared distances with relative tolerance.
pub fn diameter_graph(v: &PointSet) -> Result<GeoGraph> {
    v.require_len(2)?;
    let pts = v.points();
    let n = pts.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            best = best.max(pts[i].distance_squared(pts[j]));
        }
    }
    let cutoff = best * (1.0 - v.tol().boundary_eps);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i].distance_squared(pts[j]) >= cutoff {
                edges.push((i, j));
            }
        }
    }
    Ok(GeoGraph::new(n, v.space(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::error::Error;
    use crate::geom::Vec3;

    #[test]
    fn octagon_has_twelve() {
        let v = constructions::regular_polygon(8).unwrap();
        assert_eq!(double_normal_graph(&v, DnMode::Weak).unwrap().edge_count(), 12);
    }

    #[test]
    fn cube_all_pairs() {
        let v = constructions::cube_vertices();
        assert_eq!(double_normal_graph(&v, DnMode::Weak).unwrap().edge_count(), 28);
    }

    #[test]
    fn equilateral_triangle_strict() {
        let v = constructions::regular_polygon(3).unwrap();
        assert_eq!(double_normal_graph(&v, DnMode::Strict).unwrap().edge_count(), 3);
    }

    #[test]
    fn seven_point_figure_set() {
        let v = constructions::seven_point_example();
        let g = double_normal_graph(&v, DnMode::Weak).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.edges(), constructions::SEVEN_POINT_EDGES);
    }

    #[test]
    fn diameters() {
        let tri = constructions::regular_polygon(3).unwrap();
        assert_eq!(diameter_graph(&tri).unwrap().edge_count(), 3);
        let sq = constructions::regular_polygon(4).unwrap();
        assert_eq!(diameter_graph(&sq).unwrap().edges(), &[(0, 2), (1, 3)]);
        let pent = constructions::regular_polygon(5).unwrap();
        assert_eq!(diameter_graph(&pent).unwrap().edge_count(), 5);
    }

    #[test]
    fn too_few_points() {
        let v = PointSet::plane([[0.0, 0.0]]).unwrap();
        assert_eq!(
            double_normal_graph(&v, DnMode::Weak).unwrap_err(),
            Error::TooFewPoints { needed: 2, got: 1 }
        );
        assert!(diameter_graph(&v).is_err());
    }

    #[test]
    fn hull_filter_matches_full_enumeration() {
        let v = PointSet::with_default_tol(
            Space::Plane,
            vec![
                Vec3::planar(0.0, 0.0),
                Vec3::planar(2.0, 0.0),
                Vec3::planar(2.0, 1.0),
                Vec3::planar(0.0, 1.0),
                Vec3::planar(1.0, 0.5),
                Vec3::planar(1.0, 0.0),
            ],
        )
        .unwrap();
        for mode in [DnMode::Weak, DnMode::Strict] {
            let full = double_normal_graph(&v, mode).unwrap();
            let fast =
                double_normal_graph_with(&v, mode, DnOptions { hull_filter: true }).unwrap();
            assert_eq!(full.edges(), fast.edges());
        }
    }
}
