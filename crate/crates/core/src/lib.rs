//! Double-normal pairs of finite point sets in the plane, in space and on the
//! sphere, together with spherical Gabriel graphs, Delaunay tilings and the
//! extremal configurations for their edge counts.

pub mod constructions;
pub mod double_normal;
pub mod error;
pub mod geom;
pub mod graph;
pub mod io;
pub mod spherical;
pub mod verify;

pub use double_normal::{diameter_graph, double_normal_graph, DnMode};
pub use error::{Error, Result};
pub use geom::{Point, PointSet, Space, Tolerance, Vec3};
pub use graph::{EdgeColor, GeoGraph};
