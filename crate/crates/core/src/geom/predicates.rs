use serde::{Deserialize, Serialize};

use super::{coincident, Tolerance, Vec3};
use crate::error::{Error, Result};

/// Position of a point relative to the closed slab spanned by a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlabClass {
    Interior,
    OnBoundary,
    Outside,
}

/// Position of a sphere point relative to the minor cap with a given chord as diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CapClass {
    InsideOpen,
    OnBoundary,
    Outside,
}

fn check_distinct(p: Vec3, q: Vec3, tol: &Tolerance) -> Result<()> {
    if coincident(p, q, tol.boundary_eps) {
        return Err(Error::DegeneratePair(p.to_array(), q.to_array()));
    }
    Ok(())
}

fn check_minor_arc(a: Vec3, b: Vec3, tol: &Tolerance) -> Result<()> {
    check_distinct(a, b, tol)?;
    if (a + b).norm() <= tol.boundary_eps {
        return Err(Error::AntipodalPair(a.to_array(), b.to_array()));
    }
    Ok(())
}

/// Normalized projection of `x` onto the line through `p` and `q`: 0 at `p`, 1 at `q`.
pub fn slab_position(p: Vec3, q: Vec3, x: Vec3) -> f64 {
    let d = q - p;
    (x - p).dot(d) / d.norm_squared()
}

/// Classifies `x` against the closed slab bounded by the hyperplanes through
/// `p` and `q` perpendicular to `pq`.
pub fn slab_classify(p: Vec3, q: Vec3, x: Vec3, tol: &Tolerance) -> Result<SlabClass> {
    check_distinct(p, q, tol)?;
    let t = slab_position(p, q, x);
    let eps = tol.boundary_eps;
    Ok(if t.abs() <= eps || (t - 1.0).abs() <= eps {
        SlabClass::OnBoundary
    } else if t > 0.0 && t < 1.0 {
        SlabClass::Interior
    } else {
        SlabClass::Outside
    })
}

/// Classifies sphere point `x` against the minor spherical cap whose boundary
/// circle has the chord `ab` as a diameter.
///
/// Uses the sign of `x·(a+b) − (1 + a·b)`, which for unit vectors equals the
/// sign of `−(x−a)·(x−b)`.
pub fn minor_cap_classify(a: Vec3, b: Vec3, x: Vec3, tol: &Tolerance) -> Result<CapClass> {
    check_minor_arc(a, b, tol)?;
    let s = x.dot(a + b) - (1.0 + a.dot(b));
    Ok(if s.abs() <= tol.boundary_eps {
        CapClass::OnBoundary
    } else if s > 0.0 {
        CapClass::InsideOpen
    } else {
        CapClass::Outside
    })
}

/// True when `x` lies on the great circle through `a`, `b` strictly inside the
/// minor arc `ab` (endpoints excluded).
pub fn arc_contains_interior(a: Vec3, b: Vec3, x: Vec3, eps: f64) -> bool {
    let n = a.cross(b).normalized();
    if x.dot(n).abs() > eps {
        return false;
    }
    a.cross(x).dot(n) > eps && x.cross(b).dot(n) > eps
}

/// Interior intersection point of the minor arcs `ab` and `cd`, if any.
///
/// Arcs sharing only an endpoint do not cross. Arcs on a common great circle
/// that overlap in more than a point are reported as [`Error::CollinearArcs`].
pub fn arc_cross(a: Vec3, b: Vec3, c: Vec3, d: Vec3, tol: &Tolerance) -> Result<Option<Vec3>> {
    check_minor_arc(a, b, tol)?;
    check_minor_arc(c, d, tol)?;
    let eps = tol.boundary_eps;
    let n1 = a.cross(b).normalized();
    let n2 = c.cross(d).normalized();
    let axis = n1.cross(n2);
    if axis.norm() <= eps {
        return collinear_overlap(a, b, c, d, n1, eps).map(|_| None);
    }
    let s = axis.normalized();
    for cand in [s, -s] {
        if arc_contains_interior(a, b, cand, eps) && arc_contains_interior(c, d, cand, eps) {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

fn collinear_overlap(a: Vec3, b: Vec3, c: Vec3, d: Vec3, n: Vec3, eps: f64) -> Result<()> {
    let e1 = a;
    let e2 = n.cross(a);
    let angle = |v: Vec3| {
        let t = v.dot(e2).atan2(v.dot(e1));
        if t < 0.0 {
            t + std::f64::consts::TAU
        } else {
            t
        }
    };
    let (tb, tc, td) = (angle(b), angle(c), angle(d));
    // arc cd as the minor interval [lo, lo + len] on the circle
    let mut lo = tc;
    let mut len = td - tc;
    if len < 0.0 {
        len += std::f64::consts::TAU;
    }
    if len > std::f64::consts::PI {
        lo = td;
        len = std::f64::consts::TAU - len;
    }
    let overlap = |s0: f64, l0: f64, s1: f64, l1: f64| -> f64 {
        (s0 + l0).min(s1 + l1) - s0.max(s1)
    };
    let tau = std::f64::consts::TAU;
    let best = [lo - tau, lo, lo + tau]
        .into_iter()
        .map(|s| overlap(0.0, tb, s, len))
        .fold(f64::NEG_INFINITY, f64::max);
    if best > eps {
        return Err(Error::CollinearArcs);
    }
    Ok(())
}
