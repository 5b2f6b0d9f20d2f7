use serde::Serialize;

use super::gabriel::is_gabriel_edge;
use crate::double_normal::{double_normal_graph, DnMode};
use crate::error::{Error, Result};
use crate::geom::{PointSet, Space};
use crate::graph::GeoGraph;

/// Double normals of a sphere set, counted directly and through the lift to
/// `V ∪ −V`.
#[derive(Clone, Debug, Serialize)]
pub struct SphereDoubleNormals {
    pub mode: DnMode,
    /// Number of double-normal pairs.
    pub count: usize,
    /// The double-normal graph on `V`.
    pub graph: GeoGraph,
    /// `V ∪ −V`; the first `|V|` points are `V` in order.
    pub union: PointSet,
    /// Index in `union` of the antipode of each `union` point.
    pub antipode: Vec<usize>,
    /// Indices of `V ∩ −V`.
    pub intersection: Vec<usize>,
    /// Lift edges `x y'` on `union`.
    pub e1: GeoGraph,
    /// Lift edges with both endpoints in `V ∩ −V`.
    pub e2: GeoGraph,
    /// Lift edges missing from the Gabriel graph of `union` (weak graph in
    /// weak mode, strict graph in strict mode).
    pub e1_not_gabriel: Vec<(usize, usize)>,
    /// `E₂` edges missing from the Gabriel graph of `V ∩ −V`.
    pub e2_not_gabriel: Vec<(usize, usize)>,
}

impl SphereDoubleNormals {
    /// `(|E₁| + |E₂| + |V∩V'|) / 2`.
    pub fn lifted_count(&self) -> usize {
        (self.e1.edge_count() + self.e2.edge_count() + self.intersection.len()) / 2
    }

    pub fn gabriel_containment_holds(&self) -> bool {
        self.e1_not_gabriel.is_empty() && self.e2_not_gabriel.is_empty()
    }
}

/// Counts double-normal pairs of `v` directly and via the antipodal lift,
/// failing if the two counts disagree.
pub fn sphere_double_normals(v: &PointSet, mode: DnMode) -> Result<SphereDoubleNormals> {
    v.require_space(Space::Sphere)?;
    v.require_len(2)?;
    let graph = double_normal_graph(v, mode)?;
    let n = v.len();

    let mut pts = v.points().to_vec();
    let mut antipode = vec![usize::MAX; n];
    for i in 0..n {
        if antipode[i] != usize::MAX {
            continue;
        }
        match v.find(-v.point(i)) {
            Some(j) => {
                antipode[i] = j;
                antipode[j] = i;
            }
            None => {
                antipode[i] = pts.len();
                pts.push(-v.point(i));
            }
        }
    }
    for i in 0..n {
        if antipode[i] >= n {
            antipode.push(i);
        }
    }
    let union = PointSet::new(Space::Sphere, pts, v.tol())?;
    let intersection: Vec<usize> = (0..n).filter(|&i| antipode[i] < n).collect();
    let in_both = |i: usize| i < n && antipode[i] < n;

    let mut lift = Vec::new();
    for &(x, y) in graph.edges() {
        if antipode[x] == y {
            continue;
        }
        lift.push((x, antipode[y]));
        lift.push((y, antipode[x]));
    }
    let e1 = GeoGraph::new(union.len(), Space::Sphere, lift);
    let e2 = GeoGraph::new(
        union.len(),
        Space::Sphere,
        e1.edges().iter().copied().filter(|&(a, b)| in_both(a) && in_both(b)),
    );

    let strict = mode == DnMode::Strict;
    let e1_not_gabriel: Vec<(usize, usize)> = e1
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| !is_gabriel_edge(&union, a, b, strict))
        .collect();
    let e2_not_gabriel = if e2.edge_count() == 0 {
        Vec::new()
    } else {
        let sub = PointSet::new(Space::Sphere, intersection.iter().map(|&i| v.point(i)).collect(), v.tol())?;
        let local = |i: usize| intersection.binary_search(&i).expect("endpoint in V ∩ V'");
        e2.edges()
            .iter()
            .copied()
            .filter(|&(a, b)| !is_gabriel_edge(&sub, local(a), local(b), strict))
            .collect()
    };

    let out = SphereDoubleNormals {
        mode,
        count: graph.edge_count(),
        graph,
        union,
        antipode,
        intersection,
        e1,
        e2,
        e1_not_gabriel,
        e2_not_gabriel,
    };
    let total = out.e1.edge_count() + out.e2.edge_count() + out.intersection.len();
    if !total.is_multiple_of(2) || out.lifted_count() != out.count {
        return Err(Error::LiftMismatch {
            direct: out.count,
            lifted: total / 2,
            detail: format!(
                "|E1| = {}, |E2| = {}, |V ∩ V'| = {}",
                out.e1.edge_count(),
                out.e2.edge_count(),
                out.intersection.len()
            ),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::geom::Vec3;

    #[test]
    fn cube() {
        let r = sphere_double_normals(&constructions::cube_vertices(), DnMode::Weak).unwrap();
        assert_eq!(r.count, 28);
        assert_eq!(r.intersection.len(), 8);
        assert_eq!(r.union.len(), 8);
        assert!(r.gabriel_containment_holds());
    }

    #[test]
    fn rhombicuboctahedron() {
        let r = sphere_double_normals(&constructions::rhombicuboctahedron_vertices(), DnMode::Weak).unwrap();
        assert_eq!(r.count, 96);
        assert!(r.gabriel_containment_holds());
    }

    #[test]
    fn five_point_strict() {
        let v = constructions::five_point_strict();
        let r = sphere_double_normals(&v, DnMode::Strict).unwrap();
        assert_eq!(r.count, 8);
        assert!(!r.graph.contains(2, 3) && !r.graph.contains(2, 4));
        assert!(r.intersection.is_empty());
        assert_eq!(r.union.len(), 10);
        assert!(r.gabriel_containment_holds());
    }

    #[test]
    fn no_antipodes() {
        let v = PointSet::sphere([
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ])
        .unwrap();
        let r = sphere_double_normals(&v, DnMode::Weak).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.e1.edge_count(), 6);
        assert_eq!(r.e2.edge_count(), 0);
    }
}
