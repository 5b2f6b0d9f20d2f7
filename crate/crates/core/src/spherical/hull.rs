//! Incremental 3D convex hull with coplanar facet merging.
//!
//! Points are inserted one at a time; each insertion deletes the facets that
//! see the new point and cones the horizon to it. Adjacent triangles whose
//! planes agree within tolerance are merged into polygonal faces afterwards.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec3;

/// A polygonal hull face, vertices counter-clockwise seen from outside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullFace {
    pub vertices: Vec<usize>,
    /// Unit outward normal.
    pub normal: Vec3,
    /// Plane offset: `normal · x = offset` on the face.
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexHull3 {
    pub faces: Vec<HullFace>,
}

impl ConvexHull3 {
    /// Undirected hull edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|f| {
                let k = f.vertices.len();
                (0..k).map(move |i| {
                    let (a, b) = (f.vertices[i], f.vertices[(i + 1) % k]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.faces.iter().flat_map(|f| f.vertices.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Clone, Copy)]
struct Tri {
    v: [usize; 3],
    alive: bool,
}

fn signed_distance(pts: &[Vec3], t: &[usize; 3], p: Vec3) -> f64 {
    let (a, b, c) = (pts[t[0]], pts[t[1]], pts[t[2]]);
    let n = (b - a).cross(c - a);
    n.dot(p - a) / n.norm()
}

/// Convex hull of `pts`.
///
/// `eps` is the visibility band (absolute, scaled by the point-cloud extent);
/// `merge_eps` decides which adjacent triangles are coplanar.
pub fn convex_hull(pts: &[Vec3], eps: f64, merge_eps: f64) -> Result<ConvexHull3> {
    if pts.len() < 4 {
        return Err(Error::DegenerateHull(format!("{} points cannot span a solid", pts.len())));
    }
    let scale = pts.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let band = eps * scale;
    let seed = initial_simplex(pts, band)?;

    let mut tris: Vec<Tri> = Vec::new();
    // directed edge (a, b) -> triangle index
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    let add = |tris: &mut Vec<Tri>, owner: &mut HashMap<(usize, usize), usize>, v: [usize; 3]| {
        let id = tris.len();
        tris.push(Tri { v, alive: true });
        for k in 0..3 {
            owner.insert((v[k], v[(k + 1) % 3]), id);
        }
    };

    let [a, b, c, d] = seed;
    let base = if signed_distance(pts, &[a, b, c], pts[d]) > 0.0 {
        [a, c, b]
    } else {
        [a, b, c]
    };
    add(&mut tris, &mut owner, base);
    add(&mut tris, &mut owner, [base[1], base[0], d]);
    add(&mut tris, &mut owner, [base[2], base[1], d]);
    add(&mut tris, &mut owner, [base[0], base[2], d]);

    for (p, &pt) in pts.iter().enumerate() {
        if seed.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = (0..tris.len())
            .filter(|&t| tris[t].alive && signed_distance(pts, &tris[t].v, pt) > band)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut horizon = Vec::new();
        for &t in &visible {
            let v = tris[t].v;
            for k in 0..3 {
                let (x, y) = (v[k], v[(k + 1) % 3]);
                let across = owner.get(&(y, x)).copied();
                if across.is_none_or(|o| !visible.contains(&o)) {
                    horizon.push((x, y));
                }
            }
        }
        for &t in &visible {
            tris[t].alive = false;
            let v = tris[t].v;
            for k in 0..3 {
                let key = (v[k], v[(k + 1) % 3]);
                if owner.get(&key) == Some(&t) {
                    owner.remove(&key);
                }
            }
        }
        for (x, y) in horizon {
            add(&mut tris, &mut owner, [x, y, p]);
        }
    }

    let live: Vec<[usize; 3]> = tris.iter().filter(|t| t.alive).map(|t| t.v).collect();
    merge_coplanar(pts, &live, merge_eps * scale)
}

fn initial_simplex(pts: &[Vec3], band: f64) -> Result<[usize; 4]> {
    let a = 0;
    let b = (0..pts.len())
        .max_by(|&i, &j| pts[i].distance_squared(pts[a]).total_cmp(&pts[j].distance_squared(pts[a])))
        .unwrap();
    if pts[a].distance(pts[b]) <= band {
        return Err(Error::DegenerateHull("all points coincide".into()));
    }
    let dir = (pts[b] - pts[a]).normalized();
    let off_line = |i: usize| {
        let w = pts[i] - pts[a];
        (w - dir * w.dot(dir)).norm()
    };
    let c = (0..pts.len()).max_by(|&i, &j| off_line(i).total_cmp(&off_line(j))).unwrap();
    if off_line(c) <= band {
        return Err(Error::DegenerateHull("all points are collinear".into()));
    }
    let n = (pts[b] - pts[a]).cross(pts[c] - pts[a]).normalized();
    let off_plane = |i: usize| (pts[i] - pts[a]).dot(n).abs();
    let d = (0..pts.len()).max_by(|&i, &j| off_plane(i).total_cmp(&off_plane(j))).unwrap();
    if off_plane(d) <= band {
        return Err(Error::DegenerateHull("all points are coplanar; the hull has empty interior".into()));
    }
    Ok([a, b, c, d])
}

fn merge_coplanar(pts: &[Vec3], tris: &[[usize; 3]], merge_band: f64) -> Result<ConvexHull3> {
    let normal = |t: &[usize; 3]| {
        let (a, b, c) = (pts[t[0]], pts[t[1]], pts[t[2]]);
        (b - a).cross(c - a)
    };
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            owner.insert((t[k], t[(k + 1) % 3]), i);
        }
    }
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, t) in tris.iter().enumerate() {
        let ni = normal(t).normalized();
        for k in 0..3 {
            let (x, y) = (t[k], t[(k + 1) % 3]);
            let Some(&j) = owner.get(&(y, x)) else {
                return Err(Error::DegenerateHull(format!("open edge ({x}, {y}) in hull")));
            };
            if j <= i {
                continue;
            }
            let other = tris[j];
            let apex = other.iter().copied().find(|&w| w != x && w != y).unwrap();
            let nj = normal(&other).normalized();
            if ni.dot(nj) > 0.0 && (pts[apex] - pts[x]).dot(ni).abs() <= merge_band {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..tris.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut faces = Vec::new();
    for members in groups.values() {
        // boundary = directed edges whose reverse lies outside the group
        let mut next: HashMap<usize, usize> = HashMap::new();
        let mut area_normal = Vec3::ZERO;
        for &m in members {
            let t = tris[m];
            area_normal += normal(&t);
            for k in 0..3 {
                let (x, y) = (t[k], t[(k + 1) % 3]);
                let across = owner[&(y, x)];
                if !members.contains(&across)
                    && next.insert(x, y).is_some() {
                        return Err(Error::DegenerateHull(format!(
                            "merged face is not a disc at vertex {x}"
                        )));
                    }
            }
        }
        let start = *next.keys().min().unwrap();
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = *next
                .get(&cur)
                .ok_or_else(|| Error::DegenerateHull("broken face boundary".into()))?;
            if cycle.len() > next.len() {
                return Err(Error::DegenerateHull("face boundary does not close".into()));
            }
        }
        if cycle.len() != next.len() {
            return Err(Error::DegenerateHull("merged face has several boundary loops".into()));
        }
        let n = area_normal.normalized();
        let offset = cycle.iter().map(|&v| n.dot(pts[v])).sum::<f64>() / cycle.len() as f64;
        faces.push(HullFace {
            vertices: cycle,
            normal: n,
            offset,
        });
    }
    faces.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(ConvexHull3 { faces })
}

/// Brute-force hull: every supporting plane through three points, with all
/// points on it collected into one face. O(n⁴); used as a test oracle.
pub fn supporting_faces_bruteforce(pts: &[Vec3], eps: f64) -> Vec<Vec<usize>> {
    let n = pts.len();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let nrm = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
                if nrm.norm() <= eps {
                    continue;
                }
                let nrm = nrm.normalized();
                let dist: Vec<f64> = pts.iter().map(|&p| (p - pts[i]).dot(nrm)).collect();
                let above = dist.iter().any(|&d| d > eps);
                let below = dist.iter().any(|&d| d < -eps);
                if above && below {
                    continue;
                }
                let mut on: Vec<usize> = (0..n).filter(|&q| dist[q].abs() <= eps).collect();
                on.sort_unstable();
                if !faces.contains(&on) {
                    faces.push(on);
                }
            }
        }
    }
    faces.sort();
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn sorted_faces(h: &ConvexHull3) -> Vec<Vec<usize>> {
        let mut f: Vec<Vec<usize>> = h
            .faces
            .iter()
            .map(|f| {
                let mut v = f.vertices.clone();
                v.sort_unstable();
                v
            })
            .collect();
        f.sort();
        f
    }

    #[test]
    fn cube_has_six_quads() {
        let v = constructions::cube_vertices();
        let h = convex_hull(v.points(), 1e-9, 1e-7).unwrap();
        assert_eq!(h.faces.len(), 6);
        assert!(h.faces.iter().all(|f| f.vertices.len() == 4));
        assert_eq!(h.edges().len(), 12);
        assert_eq!(sorted_faces(&h), supporting_faces_bruteforce(v.points(), 1e-9));
    }

    #[test]
    fn faces_are_outward_and_counter_clockwise() {
        let v = constructions::rhombicuboctahedron_vertices();
        let h = convex_hull(v.points(), 1e-9, 1e-7).unwrap();
        assert_eq!(h.faces.len(), 26);
        for f in &h.faces {
            assert!(f.offset > 0.0);
            let p: Vec<Vec3> = f.vertices.iter().map(|&i| v.point(i)).collect();
            let turn = (p[1] - p[0]).cross(p[2] - p[1]);
            assert!(turn.dot(f.normal) > 0.0);
        }
        assert_eq!(sorted_faces(&h), supporting_faces_bruteforce(v.points(), 1e-9));
    }

    #[test]
    fn coplanar_input_is_degenerate() {
        let v = constructions::regular_polygon(6).unwrap();
        assert!(matches!(
            convex_hull(v.points(), 1e-9, 1e-7),
            Err(Error::DegenerateHull(_))
        ));
    }
}
