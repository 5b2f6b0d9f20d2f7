use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::hull::{convex_hull, ConvexHull3};
use crate::error::Result;
use crate::geom::{PointSet, Space, Vec3};
use crate::graph::GeoGraph;

/// Where the sphere centre sits relative to the hull; decides how much of
/// the sphere the tiling covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OriginCase {
    /// Tiling of the whole sphere.
    InteriorOfHull,
    /// Tiling of a hemisphere.
    InFaceRelint,
    /// Tiling of the intersection of two hemispheres.
    InEdgeRelint,
    /// Tiling of the smallest spherical polygon containing the points.
    OutsideHull,
}

/// Central projection of the outside faces and edges of the hull.
#[derive(Clone, Debug, Serialize)]
pub struct Tiling {
    pub vertices: PointSet,
    /// Vertex cycles of the tiling faces (counter-clockwise from outside).
    pub faces: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub origin_case: OriginCase,
    /// Set when the origin lies within a few tolerance bands of a hull facet.
    pub origin_flagged: bool,
    /// Face size → number of faces.
    pub face_census: BTreeMap<usize, usize>,
    pub hull: ConvexHull3,
}

impl Tiling {
    pub fn graph(&self) -> GeoGraph {
        GeoGraph::new(self.vertices.len(), Space::Sphere, self.edges.iter().copied())
    }

    /// Total spherical area of the faces.
    pub fn total_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let pts: Vec<Vec3> = f.iter().map(|&i| self.vertices.point(i)).collect();
                spherical_polygon_area(&pts)
            })
            .sum()
    }

    pub fn faces_of_size(&self, k: usize) -> usize {
        self.face_census.get(&k).copied().unwrap_or(0)
    }
}

/// Area of a convex spherical polygon by fanning into triangles.
pub fn spherical_polygon_area(pts: &[Vec3]) -> f64 {
    (1..pts.len().saturating_sub(1))
        .map(|i| spherical_triangle_area(pts[0], pts[i], pts[i + 1]))
        .sum()
}

/// Solid angle of the spherical triangle with unit vertices `a`, `b`, `c`.
pub fn spherical_triangle_area(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let det = a.dot(b.cross(c)).abs();
    let denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * det.atan2(denom)
}

/// Delaunay tiling of points on the unit sphere via the convex hull in R³.
pub fn delaunay_tiling(v: &PointSet) -> Result<Tiling> {
    v.require_space(Space::Sphere)?;
    v.require_len(3)?;
    let tol = v.tol();
    let hull = convex_hull(v.points(), tol.boundary_eps, tol.concyclic_eps)?;
    let eps = tol.boundary_eps;

    let outside: Vec<bool> = hull.faces.iter().map(|f| f.offset > eps).collect();
    let on_plane = hull.faces.iter().filter(|f| f.offset.abs() <= eps).count();
    let negative = hull.faces.iter().any(|f| f.offset < -eps);
    let origin_case = if negative {
        OriginCase::OutsideHull
    } else {
        match on_plane {
            0 => OriginCase::InteriorOfHull,
            1 => OriginCase::InFaceRelint,
            _ => OriginCase::InEdgeRelint,
        }
    };
    let origin_flagged = on_plane > 2
        || hull
            .faces
            .iter()
            .any(|f| f.offset.abs() > eps && f.offset.abs() <= 100.0 * eps);

    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (fi, f) in hull.faces.iter().enumerate() {
        let k = f.vertices.len();
        for i in 0..k {
            let (a, b) = (f.vertices[i], f.vertices[(i + 1) % k]);
            edge_faces.entry((a.min(b), a.max(b))).or_default().push(fi);
        }
    }
    let mut edges: Vec<(usize, usize)> = edge_faces
        .iter()
        .filter(|(_, fs)| fs.iter().any(|&f| outside[f]))
        .map(|(&e, _)| e)
        .collect();
    edges.sort_unstable();

    let faces: Vec<Vec<usize>> = hull
        .faces
        .iter()
        .zip(&outside)
        .filter(|(_, &o)| o)
        .map(|(f, _)| f.vertices.clone())
        .collect();
    let mut face_census = BTreeMap::new();
    for f in &faces {
        *face_census.entry(f.len()).or_insert(0) += 1;
    }

    Ok(Tiling {
        vertices: v.clone(),
        faces,
        edges,
        origin_case,
        origin_flagged,
        face_census,
        hull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::error::Error;
    use std::f64::consts::PI;

    #[test]
    fn cube_tiling() {
        let t = delaunay_tiling(&constructions::cube_vertices()).unwrap();
        assert_eq!(t.faces_of_size(4), 6);
        assert_eq!(t.faces.len(), 6);
        assert_eq!(t.edges.len(), 12);
        assert_eq!(t.origin_case, OriginCase::InteriorOfHull);
        assert!((t.total_area() - 4.0 * PI).abs() < 1e-7);
    }

    #[test]
    fn octahedron_tiling() {
        let t = delaunay_tiling(&constructions::octahedron_vertices()).unwrap();
        assert_eq!(t.faces_of_size(3), 8);
        assert_eq!(t.edges.len(), 12);
        assert_eq!(t.origin_case, OriginCase::InteriorOfHull);
        assert!((t.total_area() - 4.0 * PI).abs() < 1e-7);
    }

    fn sphere(points: &[[f64; 3]]) -> PointSet {
        PointSet::sphere(points.iter().map(|&p| Vec3::from(p).normalized())).unwrap()
    }

    #[test]
    fn origin_on_a_face() {
        // square on the equator plus the north pole: the hull's base passes through o
        let v = sphere(&[
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]);
        let t = delaunay_tiling(&v).unwrap();
        assert_eq!(t.origin_case, OriginCase::InFaceRelint);
        assert_eq!(t.faces_of_size(3), 4);
        assert_eq!(t.faces.len(), 4);
        // the tiling covers a hemisphere
        assert!((t.total_area() - 2.0 * PI).abs() < 1e-7);
    }

    #[test]
    fn origin_on_an_edge() {
        // quarter lune: o lies on the hull edge between the two poles
        let v = sphere(&[
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0],
        ]);
        let t = delaunay_tiling(&v).unwrap();
        assert_eq!(t.origin_case, OriginCase::InEdgeRelint);
        // a lune of opening angle pi/2 has area 2 * (pi/2)
        assert!((t.total_area() - PI).abs() < 1e-7);
    }

    #[test]
    fn origin_outside() {
        let v = sphere(&[
            [0.0, 0.0, 1.0],
            [0.3, 0.0, 1.0],
            [0.0, 0.3, 1.0],
            [-0.3, -0.2, 1.0],
        ]);
        let t = delaunay_tiling(&v).unwrap();
        assert_eq!(t.origin_case, OriginCase::OutsideHull);
        // the outer cap-side faces only
        assert!(t.total_area() < 2.0 * PI);
        assert!(t.faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn great_circle_input_is_rejected() {
        let v = sphere(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]]);
        assert!(matches!(delaunay_tiling(&v), Err(Error::DegenerateHull(_))));
    }
}
