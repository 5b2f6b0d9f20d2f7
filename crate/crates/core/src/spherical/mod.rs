//! Gabriel graphs, Delaunay tilings, crossing reduction, Euler audits and
//! double normals of point sets on the unit sphere.

mod crossing;
mod euler;
mod gabriel;
pub mod hull;
mod lift;
mod tiling;

pub use crossing::{
    crossing_classes, crossing_pairs, reduce_to_gprime, verify_embedded, CrossingPolygon, CrossingReport,
};
pub use euler::{euler_audit, EulerAudit};
pub use gabriel::{is_gabriel_edge, strict_gabriel, weak_gabriel};
pub use hull::{convex_hull, ConvexHull3, HullFace};
pub use lift::{sphere_double_normals, SphereDoubleNormals};
pub use tiling::{delaunay_tiling, spherical_polygon_area, spherical_triangle_area, OriginCase, Tiling};
