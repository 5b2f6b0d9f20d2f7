//! Generators for the extremal and example configurations.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::double_normal::{double_normal_graph, DnMode};
use crate::geom::{slab_classify, PointSet, SlabClass, Space, Vec3};
use crate::spherical::delaunay_tiling;

/// Unit-circumradius regular `n`-gon, first vertex at angle `π/n`, counter-clockwise.
pub fn regular_polygon(n: usize) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::BadParameter(format!("regular polygon needs n >= 3, got {n}")));
    }
    let pts = (0..n).map(|j| {
        let a = PI / n as f64 + TAU * j as f64 / n as f64;
        [a.cos(), a.sin()]
    });
    PointSet::plane(pts)
}

/// Odd `n`: a regular `(n−1)`-gon plus its centre; `n = 3` gives the triangle.
pub fn planar_odd_extremal(n: usize) -> Result<PointSet> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::BadParameter(format!("odd extremal set needs odd n >= 3, got {n}")));
    }
    if n == 3 {
        return regular_polygon(3);
    }
    let base = regular_polygon(n - 1)?;
    let mut pts = base.points().to_vec();
    pts.push(Vec3::ZERO);
    PointSet::with_default_tol(Space::Plane, pts)
}

/// The points `±(cos θ, sin θ)` for the given angles (radians); all `+` points first.
pub fn symmetric_circle_set(angles: &[f64]) -> Result<PointSet> {
    if angles.is_empty() {
        return Err(Error::BadParameter("at least one angle is required".into()));
    }
    for (i, &a) in angles.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::BadParameter(format!("angle {a} is not finite")));
        }
        for &b in &angles[..i] {
            let d = (a - b).rem_euclid(PI);
            if d < 1e-9 || PI - d < 1e-9 {
                return Err(Error::DuplicateAngle(a));
            }
        }
    }
    let plus = angles.iter().map(|a| [a.cos(), a.sin()]);
    let minus = angles.iter().map(|a| [-a.cos(), -a.sin()]);
    PointSet::plane(plus.chain(minus).collect::<Vec<_>>())
}

fn sphere_set(pts: Vec<Vec3>) -> PointSet {
    PointSet::sphere(pts.into_iter().map(Vec3::normalized)).expect("generator output is valid")
}

/// `{±1}³ / √3`.
pub fn cube_vertices() -> PointSet {
    let mut pts = Vec::with_capacity(8);
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                pts.push(Vec3::new(x, y, z));
            }
        }
    }
    sphere_set(pts)
}

/// `{±e₁, ±e₂, ±e₃}`.
pub fn octahedron_vertices() -> PointSet {
    let mut pts = Vec::with_capacity(6);
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut a = [0.0; 3];
            a[i] = s;
            pts.push(Vec3::from(a));
        }
    }
    sphere_set(pts)
}

/// All permutations of `(±1, ±1, ±(1+√2))`, normalized.
pub fn rhombicuboctahedron_vertices() -> PointSet {
    let big = 1.0 + 2f64.sqrt();
    let mut pts = Vec::with_capacity(24);
    for axis in 0..3 {
        for &s0 in &[-1.0, 1.0] {
            for &s1 in &[-1.0, 1.0] {
                for &s2 in &[-1.0, 1.0] {
                    let mut a = [s0, s1, s2];
                    a[axis] *= big;
                    pts.push(Vec3::from(a));
                }
            }
        }
    }
    sphere_set(pts)
}

/// Five points with 8 strict double normals, offsets of ±5°.
pub fn five_point_strict() -> PointSet {
    five_point_strict_with_offset(5.0).expect("default offset is valid")
}

/// `p₁, p₂, p₃` equidistant on the equator with `p₃ = e₁`, and `p₄, p₅` on
/// the meridian through `p₃` at `±offset_deg` degrees. Index order is `p₁..p₅`.
pub fn five_point_strict_with_offset(offset_deg: f64) -> Result<PointSet> {
    if !(offset_deg > 0.0 && offset_deg < 30.0) {
        return Err(Error::BadParameter(format!("offset must lie in (0, 30) degrees, got {offset_deg}")));
    }
    let d = offset_deg.to_radians();
    let eq = |deg: f64| {
        let a = deg.to_radians();
        Vec3::new(a.cos(), a.sin(), 0.0)
    };
    Ok(sphere_set(vec![
        eq(120.0),
        eq(240.0),
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(d.cos(), 0.0, d.sin()),
        Vec3::new(d.cos(), 0.0, -d.sin()),
    ]))
}

/// Double-normal pairs of [`seven_point_example`], labels `a..g` = `0..6`.
pub const SEVEN_POINT_EDGES: [(usize, usize); 9] =
    [(0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (1, 6), (2, 5), (2, 6), (3, 6)];

/// Seven planar points with exactly nine double-normal pairs: two rectangles
/// `a b d e` and `b c f g` sharing the vertex `b`.
pub fn seven_point_example() -> PointSet {
    let (h, s, alpha, len) = (3.1, 1.2, -1.0f64, 3.0);
    let u = Vec3::planar(alpha.cos(), alpha.sin());
    let w = Vec3::planar(u.y, -u.x);
    let a = Vec3::planar(-1.0, 0.0);
    let b = Vec3::ZERO;
    let c = u * s;
    let d = Vec3::planar(0.0, -h);
    let e = Vec3::planar(-1.0, -h);
    let g = w * len;
    let f = c + g;
    PointSet::with_default_tol(Space::Plane, vec![a, b, c, d, e, f, g]).expect("fixed coordinates")
}

/// Parameters of the layered sphere construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayeredParams {
    /// Size of the polar polygon; even, at least 4.
    pub k: usize,
    /// Rings per hemisphere.
    pub m: usize,
    /// Common chord length; chosen automatically when `None`.
    pub c: Option<f64>,
}

impl LayeredParams {
    pub fn new(k: usize, m: usize) -> Self {
        LayeredParams { k, m, c: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 4 || !self.k.is_multiple_of(2) {
            return Err(Error::BadParameter(format!("k must be even and >= 4, got {}", self.k)));
        }
        if self.m < 1 || self.m > 20 {
            return Err(Error::BadParameter(format!("m must lie in 1..=20, got {}", self.m)));
        }
        if let Some(c) = self.c {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InfeasibleSideLength(format!("side length {c} is not positive")));
            }
        }
        Ok(())
    }

    /// `2(2^m − 1)k`.
    pub fn point_count(&self) -> usize {
        2 * ((1 << self.m) - 1) * self.k
    }

    /// `17/4·|V| − 3k/2`.
    pub fn expected_double_normals(&self) -> usize {
        (17 * self.point_count() - 6 * self.k) / 4
    }

    /// `k(2^{m+2} + 2^{m−1} − 6)`.
    pub fn expected_edges(&self) -> usize {
        self.k * ((1 << (self.m + 2)) + (1 << (self.m - 1)) - 6)
    }

    /// Hull face sizes → counts. For `k = 4` the two polar squares are
    /// counted among the quadrilaterals.
    pub fn expected_face_census(&self) -> BTreeMap<usize, usize> {
        let (k, m) = (self.k, self.m);
        let f3 = 2 * ((1 << (m - 1)) - 1) * k;
        let f4 = ((1 << m) + (1 << (m - 1)) - 2) * k;
        let mut census = BTreeMap::new();
        if f3 > 0 {
            census.insert(3, f3);
        }
        if k == 4 {
            census.insert(4, f4 + 2);
        } else {
            census.insert(4, f4);
            census.insert(k, 2);
        }
        census
    }

    fn max_side(&self) -> f64 {
        2.0 * (PI / ((1usize << (self.m - 1)) * self.k) as f64).sin()
    }
}

fn layered_points(p: &LayeredParams, c: f64) -> Result<PointSet> {
    let mut pts = Vec::with_capacity(p.point_count());
    let mut phi = 0.0;
    for i in 0..p.m {
        let ring = (1usize << i) * p.k;
        let step = TAU / ring as f64;
        if i > 0 {
            phi += step / 2.0;
        }
        let s = c / (2.0 * (PI / ring as f64).sin());
        if !(s < 1.0 - 1e-12) {
            return Err(Error::InfeasibleSideLength(format!(
                "side {c} does not fit on ring {i} with {ring} vertices"
            )));
        }
        let rho = s.asin();
        for j in 0..ring {
            let a = phi + step * j as f64;
            pts.push(Vec3::new(rho.sin() * a.cos(), rho.sin() * a.sin(), rho.cos()));
        }
    }
    let north = pts.len();
    for i in 0..north {
        let x = pts[i];
        pts.push(-x);
    }
    PointSet::sphere(pts)
}

fn census_matches(p: &LayeredParams, v: &PointSet) -> bool {
    match delaunay_tiling(v) {
        Ok(t) => t.face_census == p.expected_face_census() && t.edges.len() == p.expected_edges(),
        Err(_) => false,
    }
}

/// The side length used by [`layered_construction`]: `p.c` if given, else the
/// largest `2 sin(π/(2^{m−1}k))·2^{−j}` whose hull has the expected faces.
pub fn layered_side_length(p: &LayeredParams) -> Result<f64> {
    p.validate()?;
    if let Some(c) = p.c {
        return Ok(c);
    }
    let top = p.max_side();
    for j in 1..=60 {
        let c = top * 0.5f64.powi(j);
        if let Ok(v) = layered_points(p, c) {
            if census_matches(p, &v) {
                return Ok(c);
            }
        }
    }
    Err(Error::InfeasibleSideLength(format!(
        "no side length passed the face check after 60 halvings (k = {}, m = {})",
        p.k, p.m
    )))
}

/// `m` regular polygons with `k, 2k, …, 2^{m−1}k` vertices around the north
/// pole, all with chord `c`, each ring rotated half a step against the
/// previous one, together with the antipodes of all of them.
pub fn layered_construction(p: &LayeredParams) -> Result<PointSet> {
    let c = layered_side_length(p)?;
    layered_points(p, c)
}

/// Adds `count` points strictly inside a triangular face of the Delaunay
/// tiling of `v`, on a small spiral. Spiral centres range over a barycentric
/// grid of every triangular face; the first one destroying the fewest
/// double-normal pairs of `v` wins, ties going to the one nearest a centroid.
pub fn pad_with_interior_points(v: &PointSet, count: usize) -> Result<PointSet> {
    const GRID: usize = 20;
    if count == 0 {
        return Err(Error::BadParameter("padding count must be at least 1".into()));
    }
    let tiling = delaunay_tiling(v)?;
    let pairs = double_normal_graph(v, DnMode::Weak)?;
    let tol = v.tol();
    let mut best: Option<((usize, usize), Vec<Vec3>)> = None;
    for face in tiling.faces.iter().filter(|f| f.len() == 3) {
        let tri = [v.point(face[0]), v.point(face[1]), v.point(face[2])];
        for u in 1..GRID - 1 {
            for w in 1..GRID - u {
                let bary = [u, w, GRID - u - w];
                let off_centre = bary.iter().map(|&x| (3 * x).abs_diff(GRID)).sum::<usize>();
                let extra = spiral_in_triangle(tri, bary.map(|x| x as f64 / GRID as f64), count);
                let mut destroyed = 0;
                for &(i, j) in pairs.edges() {
                    for &x in &extra {
                        if slab_classify(v.point(i), v.point(j), x, &tol)? == SlabClass::Outside {
                            destroyed += 1;
                            break;
                        }
                    }
                }
                let score = (destroyed, off_centre);
                if best.as_ref().is_none_or(|(s, _)| score < *s) {
                    best = Some((score, extra));
                }
            }
        }
    }
    let (_, extra) = best.ok_or(Error::NoTriangularFace)?;
    let mut pts = v.points().to_vec();
    pts.extend(extra);
    PointSet::new(Space::Sphere, pts, tol)
}

/// Spiral of `count` points around the point with barycentric coordinates
/// `bary`, kept within a tenth of the distance to the nearest side.
fn spiral_in_triangle([a, b, c]: [Vec3; 3], bary: [f64; 3], count: usize) -> Vec<Vec3> {
    let centre = a * bary[0] + b * bary[1] + c * bary[2];
    let area2 = (b - a).cross(c - a).norm();
    let heights = [area2 / b.distance(c), area2 / c.distance(a), area2 / a.distance(b)];
    let reach = (0..3).map(|i| bary[i] * heights[i]).fold(f64::INFINITY, f64::min) / 10.0;
    let e1 = (b - a).normalized();
    let e2 = (b - a).cross(c - a).normalized().cross(e1);
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|j| {
            let r = reach * (j + 1) as f64 / (count + 1) as f64;
            let t = golden * j as f64;
            (centre + e1 * (r * t.cos()) + e2 * (r * t.sin())).normalized()
        })
        .collect()
}

/// `(m, k)` with `m = ⌊½ log₂ n − 1⌋` and `k = 2⌊n / (4(2^m − 1))⌋`.
pub fn near_extremal_params(n: usize) -> Result<(usize, usize)> {
    if n < 16 {
        return Err(Error::BadParameter(format!("near-extremal sets need n >= 16, got {n}")));
    }
    let m = (n.ilog2() / 2 - 1) as usize;
    let k = 2 * (n / (4 * ((1 << m) - 1)));
    Ok((m, k))
}

/// Layered construction with the parameters of [`near_extremal_params`],
/// padded to exactly `n` points.
pub fn near_extremal(n: usize) -> Result<PointSet> {
    let (m, k) = near_extremal_params(n)?;
    let v = layered_construction(&LayeredParams::new(k, m))?;
    let missing = n - v.len();
    if missing == 0 {
        Ok(v)
    } else {
        pad_with_interior_points(&v, missing)
    }
}
