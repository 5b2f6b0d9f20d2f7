//! Structural audits of planar double-normal drawings: the five basic
//! properties of the drawing and the rightmost-edge red/blue decomposition.

use serde::{Deserialize, Serialize};

use super::hull2d;
use crate::error::Result;
use crate::geom::{PointSet, Space, Vec3};
use crate::graph::{EdgeColor, GeoGraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub name: String,
    pub passed: bool,
    /// Vertex tuples witnessing each failure.
    pub witnesses: Vec<Vec<usize>>,
}

impl ClaimResult {
    fn new(name: &str, witnesses: Vec<Vec<usize>>) -> Self {
        ClaimResult {
            name: name.to_string(),
            passed: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub claim_results: Vec<ClaimResult>,
    pub red_edges: Vec<(usize, usize)>,
    pub blue_edges: Vec<(usize, usize)>,
    /// Other endpoint of the rightmost edge at each vertex (`None` when isolated).
    pub rightmost_edge: Vec<Option<usize>>,
    /// Non-fatal findings such as rightmost-edge ties.
    pub diagnostics: Vec<String>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.claim_results.iter().all(|c| c.passed)
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimResult> {
        self.claim_results.iter().find(|c| c.name == name)
    }

    /// Copy of `g` with red/blue colours attached.
    pub fn colored(&self, g: &GeoGraph) -> GeoGraph {
        let mut out = g.clone();
        let colors = g
            .edges()
            .iter()
            .map(|e| {
                if self.red_edges.binary_search(e).is_ok() {
                    EdgeColor::Red
                } else {
                    EdgeColor::Blue
                }
            })
            .collect();
        out.set_colors(colors);
        out
    }
}

pub const CLAIM_NO_COMMON_LINE: &str = "two edges never lie on a common line";
pub const CLAIM_INTERIOR_VERTEX: &str = "vertex inside an edge has degree <= 1, perpendicular";
pub const CLAIM_DISJOINT_RECTANGLE: &str = "disjoint edges are opposite sides of a rectangle";
pub const CLAIM_NOT_IN_NEIGHBOUR_HULL: &str = "no vertex in the convex hull of its neighbours";
pub const CLAIM_HULL_VERTICES: &str = "non-isolated vertices are hull vertices";
pub const CLAIM_RIGHTMOST_EXISTS: &str = "every non-isolated vertex has a unique rightmost edge";
pub const CLAIM_BLUE_MATCHING: &str = "blue edges form a matching";
pub const CLAIM_BLUE_CROSS: &str = "any two blue edges cross";
pub const CLAIM_BLUE_RED_CROSS: &str = "disjoint blue and red edges cross";
pub const CLAIM_COUNT: &str = "|E| = |R| + |B| <= n + n/2";

struct Planar<'a> {
    pts: &'a [Vec3],
    eps: f64,
    rel: f64,
}

impl Planar<'_> {
    fn p(&self, i: usize) -> Vec3 {
        self.pts[i]
    }

    fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        let (u, v) = (self.p(b) - self.p(a), self.p(c) - self.p(a));
        u.cross2(v).abs() <= self.eps * u.norm() * v.norm()
    }

    /// `x` strictly inside segment `yz`.
    fn in_segment_interior(&self, x: usize, y: usize, z: usize) -> bool {
        if !self.collinear(y, z, x) {
            return false;
        }
        let d = self.p(z) - self.p(y);
        let t = (self.p(x) - self.p(y)).dot(d) / d.norm_squared();
        t > self.eps && t < 1.0 - self.eps
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> i8 {
        let (u, v) = (self.p(b) - self.p(a), self.p(c) - self.p(a));
        let s = u.cross2(v);
        if s.abs() <= self.eps * u.norm() * v.norm() {
            0
        } else if s > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Segments share a point in the relative interior of both.
    fn cross(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let o1 = self.orient(a, b, c);
        let o2 = self.orient(a, b, d);
        let o3 = self.orient(c, d, a);
        let o4 = self.orient(c, d, b);
        o1 * o2 < 0 && o3 * o4 < 0
    }

    /// Closed segments intersect (touching counts).
    fn intersect(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        if a == c || a == d || b == c || b == d {
            return true;
        }
        let o1 = self.orient(a, b, c);
        let o2 = self.orient(a, b, d);
        let o3 = self.orient(c, d, a);
        let o4 = self.orient(c, d, b);
        if o1 * o2 < 0 && o3 * o4 < 0 {
            return true;
        }
        let on = |x: usize, y: usize, z: usize| {
            self.collinear(y, z, x) && {
                let d = self.p(z) - self.p(y);
                let t = (self.p(x) - self.p(y)).dot(d) / d.norm_squared();
                t >= -self.eps && t <= 1.0 + self.eps
            }
        };
        on(c, a, b) || on(d, a, b) || on(a, c, d) || on(b, c, d)
    }

    fn rectangle_with_opposite_sides(&self, (p, q): (usize, usize), (r, s): (usize, usize)) -> bool {
        let side = self.p(q) - self.p(p);
        let scale = side.norm_squared();
        let close = |u: Vec3, v: Vec3| (u - v).norm_squared() <= self.rel * self.rel * scale;
        let perpendicular =
            |u: Vec3, v: Vec3| u.dot(v).abs() <= self.rel * u.norm() * v.norm();
        // p→q parallel to s→r: cycle p q r s
        if close(side, self.p(r) - self.p(s)) && perpendicular(side, self.p(r) - self.p(q)) {
            return true;
        }
        // p→q parallel to r→s: cycle p q s r
        close(side, self.p(s) - self.p(r)) && perpendicular(side, self.p(s) - self.p(q))
    }

    /// `x` lies in the convex hull of `others` (boundary included).
    fn in_hull_of(&self, x: usize, others: &[usize]) -> bool {
        match others.len() {
            0 => false,
            1 => false,
            _ => {
                let mut angles: Vec<f64> = others
                    .iter()
                    .map(|&o| {
                        let d = self.p(o) - self.p(x);
                        d.y.atan2(d.x)
                    })
                    .collect();
                angles.sort_by(f64::total_cmp);
                let mut max_gap = angles[0] + std::f64::consts::TAU - angles[angles.len() - 1];
                for w in angles.windows(2) {
                    max_gap = max_gap.max(w[1] - w[0]);
                }
                max_gap <= std::f64::consts::PI + self.eps
            }
        }
    }
}

fn planar_context(v: &PointSet) -> Result<Planar<'_>> {
    v.require_space(Space::Plane)?;
    let tol = v.tol();
    Ok(Planar {
        pts: v.points(),
        eps: tol.boundary_eps,
        rel: tol.concyclic_eps,
    })
}

/// Checks the five elementary properties of a planar double-normal drawing.
///
/// `g` is expected to be the weak double-normal graph of `v`; any failure
/// carries the vertex tuples that witness it.
pub fn audit_basic_claims(v: &PointSet, g: &GeoGraph) -> Result<StructureReport> {
    let ctx = planar_context(v)?;
    let edges = g.edges();
    let adj = g.adjacency();

    let mut common_line = Vec::new();
    let mut rectangles = Vec::new();
    for (k, &e) in edges.iter().enumerate() {
        for &f in &edges[k + 1..] {
            if ctx.collinear(e.0, e.1, f.0) && ctx.collinear(e.0, e.1, f.1) {
                common_line.push(vec![e.0, e.1, f.0, f.1]);
            }
            if !ctx.intersect(e, f) && !ctx.rectangle_with_opposite_sides(e, f) {
                rectangles.push(vec![e.0, e.1, f.0, f.1]);
            }
        }
    }

    let mut interior_vertex = Vec::new();
    for x in 0..v.len() {
        for &(y, z) in edges {
            if x == y || x == z || !ctx.in_segment_interior(x, y, z) {
                continue;
            }
            let ok = match adj[x].as_slice() {
                [] => true,
                [w] => {
                    let (u, d) = (ctx.p(*w) - ctx.p(x), ctx.p(z) - ctx.p(y));
                    u.dot(d).abs() <= ctx.rel * u.norm() * d.norm()
                }
                _ => false,
            };
            if !ok {
                interior_vertex.push(vec![x, y, z]);
            }
        }
    }

    let mut neighbour_hull = Vec::new();
    for (x, nbrs) in adj.iter().enumerate() {
        if ctx.in_hull_of(x, nbrs) {
            let mut w = vec![x];
            w.extend(nbrs);
            neighbour_hull.push(w);
        }
    }

    let hull = hull2d::hull_vertices(v.points(), ctx.eps);
    let hull_vertices: Vec<usize> = (0..v.len())
        .filter(|&x| !adj[x].is_empty() && !hull.contains(&x))
        .collect();

    Ok(StructureReport {
        claim_results: vec![
            ClaimResult::new(CLAIM_NO_COMMON_LINE, common_line),
            ClaimResult::new(CLAIM_INTERIOR_VERTEX, interior_vertex),
            ClaimResult::new(CLAIM_DISJOINT_RECTANGLE, rectangles),
            ClaimResult::new(CLAIM_NOT_IN_NEIGHBOUR_HULL, neighbour_hull),
            ClaimResult::new(
                CLAIM_HULL_VERTICES,
                hull_vertices.into_iter().map(|x| vec![x]).collect(),
            ),
        ],
        ..Default::default()
    })
}

/// Rightmost-edge decomposition: the rightmost edge at every non-isolated
/// vertex is red, everything else blue; then audits the matching and
/// crossing properties of the colouring and the edge count.
///
/// "Right" is the negative side of `(y − x) × (z − x)`; only the neighbours
/// of `x` are tested against the half-plane.
pub fn red_blue_decomposition(v: &PointSet, g: &GeoGraph) -> Result<StructureReport> {
    let ctx = planar_context(v)?;
    let adj = g.adjacency();
    let n = v.len();

    let mut rightmost = vec![None; n];
    let mut missing = Vec::new();
    let mut diagnostics = Vec::new();
    for x in 0..n {
        let nbrs = &adj[x];
        if nbrs.is_empty() {
            continue;
        }
        let candidates: Vec<usize> = nbrs
            .iter()
            .copied()
            .filter(|&y| nbrs.iter().all(|&z| z == y || ctx.orient(x, y, z) >= 0))
            .collect();
        match candidates.as_slice() {
            [] => missing.push(vec![x]),
            [y] => rightmost[x] = Some(*y),
            many => {
                let far = *many
                    .iter()
                    .max_by(|&&a, &&b| {
                        ctx.p(a)
                            .distance_squared(ctx.p(x))
                            .total_cmp(&ctx.p(b).distance_squared(ctx.p(x)))
                    })
                    .unwrap();
                diagnostics.push(format!(
                    "rightmost-edge tie at vertex {x} among {many:?}; chose farthest {far}"
                ));
                rightmost[x] = Some(far);
                missing.push(std::iter::once(x).chain(many.iter().copied()).collect());
            }
        }
    }

    let mut red: Vec<(usize, usize)> = rightmost
        .iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| (x.min(y), x.max(y))))
        .collect();
    red.sort_unstable();
    red.dedup();
    let blue: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| red.binary_search(e).is_err())
        .collect();

    let mut matching = Vec::new();
    let mut blue_cross = Vec::new();
    for (k, &e) in blue.iter().enumerate() {
        for &f in &blue[k + 1..] {
            let shared = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
            if shared {
                matching.push(vec![e.0, e.1, f.0, f.1]);
            } else if !ctx.cross(e, f) {
                blue_cross.push(vec![e.0, e.1, f.0, f.1]);
            }
        }
    }
    let mut blue_red = Vec::new();
    for &b in &blue {
        for &r in &red {
            let shared = b.0 == r.0 || b.0 == r.1 || b.1 == r.0 || b.1 == r.1;
            if !shared && !ctx.cross(b, r) {
                blue_red.push(vec![b.0, b.1, r.0, r.1]);
            }
        }
    }
    let count_ok = red.len() + blue.len() == g.edge_count() && 2 * g.edge_count() <= 3 * n;
    let count = if count_ok {
        Vec::new()
    } else {
        vec![vec![red.len(), blue.len(), n]]
    };

    Ok(StructureReport {
        claim_results: vec![
            ClaimResult::new(CLAIM_RIGHTMOST_EXISTS, missing),
            ClaimResult::new(CLAIM_BLUE_MATCHING, matching),
            ClaimResult::new(CLAIM_BLUE_CROSS, blue_cross),
            ClaimResult::new(CLAIM_BLUE_RED_CROSS, blue_red),
            ClaimResult::new(CLAIM_COUNT, count),
        ],
        red_edges: red,
        blue_edges: blue,
        rightmost_edge: rightmost,
        diagnostics,
    })
}
