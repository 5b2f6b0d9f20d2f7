//! Point types, tolerance policy and the three predicates everything else builds on.

mod predicates;
mod vec3;

pub use predicates::{
    arc_cross, arc_contains_interior, minor_cap_classify, slab_classify, slab_position,
    CapClass, SlabClass,
};
pub use vec3::Vec3;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Vec3;

/// Ambient space of a point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Plane,
    Space3,
    Sphere,
}

impl Space {
    pub fn dimension(self) -> usize {
        match self {
            Space::Plane => 2,
            Space::Space3 | Space::Sphere => 3,
        }
    }
}

/// Numeric tolerances used by every classification.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative band for on-boundary calls.
    pub boundary_eps: f64,
    /// Allowed deviation of sphere points from unit length.
    pub unit_norm: f64,
    /// Equal-length / common-midpoint / coplanarity comparisons.
    pub concyclic_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            boundary_eps: 1e-9,
            unit_norm: 1e-6,
            concyclic_eps: 1e-7,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("boundary_eps", self.boundary_eps),
            ("unit_norm", self.unit_norm),
            ("concyclic_eps", self.concyclic_eps),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!("{name} must be positive, got {v}")));
            }
        }
        if self.boundary_eps < f64::EPSILON * 1e3 {
            return Err(Error::InvalidTolerance(format!(
                "boundary_eps {} is below 1e3 x machine epsilon",
                self.boundary_eps
            )));
        }
        Ok(())
    }

    pub fn with_boundary_eps(mut self, eps: f64) -> Self {
        self.boundary_eps = eps;
        self
    }
}

/// A labelled finite point set; the index of a point is its vertex id.
///
/// Construction validates finiteness, dimension, unit norm (sphere) and
/// rejects coincident points, so every `PointSet` is a genuine set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointSet {
    points: Vec<Vec3>,
    space: Space,
    tol: Tolerance,
}

impl PointSet {
    pub fn new(space: Space, points: Vec<Vec3>, tol: Tolerance) -> Result<Self> {
        tol.validate()?;
        let mut points = points;
        for (i, p) in points.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidPoint {
                    index: i,
                    reason: "non-finite coordinate".into(),
                });
            }
            match space {
                Space::Plane => {
                    if p.z != 0.0 {
                        return Err(Error::InvalidPoint {
                            index: i,
                            reason: format!("planar point has z = {}", p.z),
                        });
                    }
                }
                Space::Space3 => {}
                Space::Sphere => {
                    let n = p.norm();
                    if (n - 1.0).abs() > tol.unit_norm {
                        return Err(Error::InvalidPoint {
                            index: i,
                            reason: format!("sphere point has norm {n}"),
                        });
                    }
                    // leave machine-unit points alone so re-ingestion is bit-exact
                    if (n - 1.0).abs() > 4.0 * f64::EPSILON {
                        *p = *p / n;
                    }
                }
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if coincident(points[i], points[j], tol.boundary_eps) {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        Ok(PointSet { points, space, tol })
    }

    pub fn with_default_tol(space: Space, points: Vec<Vec3>) -> Result<Self> {
        PointSet::new(space, points, Tolerance::default())
    }

    pub fn plane(points: impl IntoIterator<Item = [f64; 2]>) -> Result<Self> {
        PointSet::with_default_tol(Space::Plane, points.into_iter().map(Vec3::from).collect())
    }

    pub fn sphere(points: impl IntoIterator<Item = Vec3>) -> Result<Self> {
        PointSet::with_default_tol(Space::Sphere, points.into_iter().collect())
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Vec3 {
        self.points[i]
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same points with a different tolerance (re-validated).
    pub fn with_tolerance(&self, tol: Tolerance) -> Result<Self> {
        PointSet::new(self.space, self.points.clone(), tol)
    }

    /// Re-tags the set as living in R³, keeping its coordinates.
    pub fn as_space3(&self) -> PointSet {
        PointSet {
            points: self.points.clone(),
            space: Space::Space3,
            tol: self.tol,
        }
    }

    /// Index of a point coinciding with `p`, if any.
    pub fn find(&self, p: Vec3) -> Option<usize> {
        self.points
            .iter()
            .position(|&q| coincident(p, q, self.tol.boundary_eps))
    }

    pub(crate) fn require_space(&self, expected: Space) -> Result<()> {
        if self.space != expected {
            return Err(Error::WrongSpace {
                expected,
                got: self.space,
            });
        }
        Ok(())
    }

    pub(crate) fn require_len(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            return Err(Error::TooFewPoints {
                needed,
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// Coincidence test shared by ingestion and lookups.
pub fn coincident(p: Vec3, q: Vec3, eps: f64) -> bool {
    let scale = 1f64.max(p.norm()).max(q.norm());
    p.distance(q) <= eps * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        let err = PointSet::plane([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::DuplicatePoint(0, 2));
    }

    #[test]
    fn renormalizes_sphere_points_within_tolerance() {
        let v = PointSet::sphere([Vec3::new(1.0 + 1e-8, 0.0, 0.0)]).unwrap();
        assert_eq!(v.point(0).norm(), 1.0);
        assert!(PointSet::sphere([Vec3::new(1.1, 0.0, 0.0)]).is_err());
    }

    #[test]
    fn rejects_non_finite_and_lifted_planar_points() {
        assert!(PointSet::plane([[f64::NAN, 0.0]]).is_err());
        let err = PointSet::with_default_tol(Space::Plane, vec![Vec3::new(0.0, 0.0, 1.0)]);
        assert!(matches!(err, Err(Error::InvalidPoint { index: 0, .. })));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::default().validate().is_ok());
        assert!(Tolerance::default().with_boundary_eps(0.0).validate().is_err());
        assert!(Tolerance::default().with_boundary_eps(1e-16).validate().is_err());
    }
}
