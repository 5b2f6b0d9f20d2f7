use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::double_normal::{double_normal_graph, DnMode};
use crate::error::{Error, Result};
use crate::geom::{PointSet, Space, Vec3};
use crate::spherical::{convex_hull, weak_gabriel, ConvexHull3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// Planar double normals: `3⌊n/2⌋`.
    #[serde(rename = "t1")]
    T1,
    /// Planar strict double normals: `n`.
    #[serde(rename = "t1s")]
    T1Strict,
    /// Strict double normals on the sphere: `2n − 2`.
    #[serde(rename = "t2")]
    T2,
    /// Double normals on the sphere: `17n/4 − 6`.
    #[serde(rename = "t3")]
    T3,
    /// Weak Gabriel edges on the sphere: `15n/4 − 6`.
    #[serde(rename = "gabriel")]
    Gabriel,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::T1,
        TheoremId::T1Strict,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::Gabriel,
    ];

    pub fn space(self) -> Space {
        match self {
            TheoremId::T1 | TheoremId::T1Strict => Space::Plane,
            _ => Space::Sphere,
        }
    }

    /// Smallest `n` for which the bound is asserted.
    pub fn min_n(self) -> usize {
        match self {
            TheoremId::T1 | TheoremId::T1Strict => 3,
            TheoremId::T2 => 4,
            TheoremId::T3 => 8,
            TheoremId::Gabriel => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T1 => "t1",
            TheoremId::T1Strict => "t1s",
            TheoremId::T2 => "t2",
            TheoremId::T3 => "t3",
            TheoremId::Gabriel => "gabriel",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown theorem '{s}'")))
    }
}

/// An exact bound value and whether `n` lies in the range where it is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: Ratio<i64>,
    pub in_range: bool,
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Bound", 3)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("approx", &(*self.value.numer() as f64 / *self.value.denom() as f64))?;
        st.serialize_field("in_range", &self.in_range)?;
        st.end()
    }
}

/// Upper bound of `theorem` at `n`, evaluated exactly.
pub fn bound_formula(theorem: TheoremId, n: usize) -> Bound {
    let ni = n as i64;
    let value = match theorem {
        TheoremId::T1 => Ratio::from_integer(3 * (ni / 2)),
        TheoremId::T1Strict => Ratio::from_integer(ni),
        TheoremId::T2 => Ratio::from_integer(2 * ni - 2),
        TheoremId::T3 => Ratio::new(17 * ni, 4) - 6,
        TheoremId::Gabriel => Ratio::new(15 * ni, 4) - 6,
    };
    Bound {
        value,
        in_range: n >= theorem.min_n(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Bound exceeded inside the stated range.
    Fail,
    /// `n` is below the stated range; the bound is reported, not asserted.
    NotAsserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub bound: Bound,
    pub observed: usize,
    pub equality: bool,
    /// Equality-case predicates; evaluated only when `equality` holds.
    pub characterization: Option<Vec<PredicateResult>>,
    pub verdict: Verdict,
    /// The configuration, attached on a failed verdict.
    pub witness: Option<Vec<[f64; 3]>>,
}

impl BoundReport {
    pub fn characterization_holds(&self) -> Option<bool> {
        self.characterization.as_ref().map(|c| c.iter().all(|p| p.holds))
    }
}

/// The count bounded by `theorem`, computed on `v`.
pub fn observed_count(v: &PointSet, theorem: TheoremId) -> Result<usize> {
    let g = match theorem {
        TheoremId::T1 | TheoremId::T3 => double_normal_graph(v, DnMode::Weak)?,
        TheoremId::T1Strict | TheoremId::T2 => double_normal_graph(v, DnMode::Strict)?,
        TheoremId::Gabriel => weak_gabriel(v)?,
    };
    Ok(g.edge_count())
}

/// Compares the observed count with the bound and, on equality, evaluates
/// the equality-case characterization.
pub fn check_bound(v: &PointSet, theorem: TheoremId) -> Result<BoundReport> {
    if v.space() != theorem.space() {
        return Err(Error::WrongSpace {
            expected: theorem.space(),
            got: v.space(),
        });
    }
    let n = v.len();
    let bound = bound_formula(theorem, n);
    let observed = observed_count(v, theorem)?;
    let obs = Ratio::from_integer(observed as i64);
    let equality = obs == bound.value;
    let verdict = if !bound.in_range {
        Verdict::NotAsserted
    } else if obs <= bound.value {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let characterization = if equality {
        Some(match theorem {
            TheoremId::T1 => planar_characterization(v),
            TheoremId::T3 => sphere_characterization(v, true),
            TheoremId::Gabriel => sphere_characterization(v, false),
            TheoremId::T1Strict | TheoremId::T2 => Vec::new(),
        })
    } else {
        None
    };
    let witness = (verdict == Verdict::Fail).then(|| v.points().iter().map(|p| p.to_array()).collect());
    Ok(BoundReport {
        theorem,
        n,
        bound,
        observed,
        equality,
        characterization,
        verdict,
        witness,
    })
}

pub const PRED_CONCYCLIC: &str = "points lie on a circle";
pub const PRED_CENTRALLY_SYMMETRIC: &str = "symmetric with respect to the centre";
pub const PRED_ANTIPODAL: &str = "V = -V";
pub const PRED_ORIGIN_INTERIOR: &str = "origin in the interior of the hull";
pub const PRED_FACES: &str = "hull faces are rectangles and acute triangles";
pub const PRED_THREE_RECTANGLES: &str = "every vertex lies on exactly 3 rectangles";

fn circumcentre(a: Vec3, b: Vec3, c: Vec3) -> Option<Vec3> {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d.abs() < 1e-12 {
        return None;
    }
    let (a2, b2, c2) = (a.norm_squared(), b.norm_squared(), c.norm_squared());
    Some(Vec3::planar(
        (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
        (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d,
    ))
}

fn planar_characterization(v: &PointSet) -> Vec<PredicateResult> {
    let tol = v.tol();
    let pts = v.points();
    let n = pts.len() as f64;
    let centroid = pts.iter().copied().sum::<Vec3>() / n;
    let scale = pts.iter().map(|p| p.distance(centroid)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

    let centre = (2..pts.len()).find_map(|k| circumcentre(pts[0], pts[1], pts[k]));
    let concyclic = centre.is_some_and(|c| {
        let r = pts[0].distance(c);
        pts.iter().all(|p| (p.distance(c) - r).abs() <= tol.concyclic_eps * scale)
    });
    let c = if concyclic { centre.unwrap() } else { centroid };
    let symmetric = pts.iter().all(|&p| {
        let q = c * 2.0 - p;
        pts.iter().any(|&r| r.distance(q) <= tol.concyclic_eps * scale)
    });
    vec![
        PredicateResult {
            name: PRED_CONCYCLIC,
            holds: concyclic,
        },
        PredicateResult {
            name: PRED_CENTRALLY_SYMMETRIC,
            holds: symmetric,
        },
    ]
}

/// Hull faces classified as rectangles or acute triangles, with the number
/// of rectangles at each vertex.
struct FaceShapes {
    all_rect_or_acute: bool,
    rectangles_at: Vec<usize>,
}

fn face_shapes(hull: &ConvexHull3, pts: &[Vec3], eps: f64) -> FaceShapes {
    let mut rectangles_at = vec![0; pts.len()];
    let mut ok = true;
    for f in &hull.faces {
        let p: Vec<Vec3> = f.vertices.iter().map(|&i| pts[i]).collect();
        match p.len() {
            3 => {
                for i in 0..3 {
                    let (a, b, c) = (p[i], p[(i + 1) % 3], p[(i + 2) % 3]);
                    let cos = (b - a).normalized().dot((c - a).normalized());
                    if cos <= eps {
                        ok = false;
                    }
                }
            }
            4 => {
                let parallelogram = (p[0] + p[2] - p[1] - p[3]).norm() <= eps;
                let equal_diagonals = (p[0].distance(p[2]) - p[1].distance(p[3])).abs() <= eps;
                if parallelogram && equal_diagonals {
                    for &i in &f.vertices {
                        rectangles_at[i] += 1;
                    }
                } else {
                    ok = false;
                }
            }
            _ => ok = false,
        }
    }
    FaceShapes {
        all_rect_or_acute: ok,
        rectangles_at,
    }
}

/// Equality-case predicates for the sphere bounds; `antipodal` adds `V = −V`.
fn sphere_characterization(v: &PointSet, antipodal: bool) -> Vec<PredicateResult> {
    let tol = v.tol();
    let mut out = Vec::new();
    if antipodal {
        out.push(PredicateResult {
            name: PRED_ANTIPODAL,
            holds: v.points().iter().all(|&p| v.find(-p).is_some()),
        });
    }
    let hull = convex_hull(v.points(), tol.boundary_eps, tol.concyclic_eps).ok();
    let origin_interior = hull
        .as_ref()
        .is_some_and(|h| h.faces.iter().all(|f| f.offset > tol.boundary_eps));
    if !antipodal {
        out.push(PredicateResult {
            name: PRED_ORIGIN_INTERIOR,
            holds: origin_interior,
        });
    }
    let shapes = hull.as_ref().map(|h| face_shapes(h, v.points(), tol.concyclic_eps));
    out.push(PredicateResult {
        name: PRED_FACES,
        holds: shapes.as_ref().is_some_and(|s| s.all_rect_or_acute),
    });
    out.push(PredicateResult {
        name: PRED_THREE_RECTANGLES,
        holds: shapes.as_ref().is_some_and(|s| s.rectangles_at.iter().all(|&k| k == 3)),
    });
    out
}
