use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::crossing::CrossingReport;
use crate::error::{Error, Result};
use crate::geom::{PointSet, Space};
use crate::graph::GeoGraph;

/// Face counts of an embedded graph together with the counting identities
/// and inequalities that bound the Gabriel edge count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerAudit {
    pub vertices: usize,
    pub edges: usize,
    /// Connected components, isolated vertices included.
    pub components: usize,
    /// Number of faces of the drawing.
    pub faces: usize,
    /// Boundary length → number of boundary walks.
    pub f_census: BTreeMap<usize, usize>,
    pub g_census: BTreeMap<usize, usize>,
    /// Set when the graph is disconnected; then `f_census` counts boundary walks
    /// and a face may be bounded by several of them.
    pub walk_based_census: bool,
    /// `2|E| = Σ i·f_i`.
    pub identity_holds: bool,
    /// `|V| − |E| + F = 1 + c`.
    pub euler_holds: bool,
    /// `3|V| − 6 − Σ (i−3)·f_i − |E|`.
    pub edge_bound_slack: i64,
    /// `min_i (f_i − g_i)`.
    pub g_le_f_slack: i64,
    /// `3|V| − 4·g_4`.
    pub g4_slack: i64,
    /// `3|V| − Σ i·g_i`.
    pub polygon_incidence_slack: i64,
}

impl EulerAudit {
    pub fn f(&self, i: usize) -> usize {
        self.f_census.get(&i).copied().unwrap_or(0)
    }

    pub fn g(&self, i: usize) -> usize {
        self.g_census.get(&i).copied().unwrap_or(0)
    }

    /// True when both identities hold and every slack is non-negative.
    pub fn all_hold(&self) -> bool {
        self.identity_holds
            && self.euler_holds
            && self.edge_bound_slack >= 0
            && self.g_le_f_slack >= 0
            && self.g4_slack >= 0
            && self.polygon_incidence_slack >= 0
    }
}

/// Neighbours of every vertex in counter-clockwise order of their tangent
/// directions, seen from outside the sphere.
fn rotation_system(g: &GeoGraph, v: &PointSet) -> Result<Vec<Vec<usize>>> {
    let eps = v.tol().boundary_eps;
    let mut adj = g.adjacency();
    for (x, nbrs) in adj.iter_mut().enumerate() {
        let p = v.point(x);
        let e1 = p.any_orthogonal().normalized();
        let e2 = p.cross(e1);
        let mut keyed: Vec<(f64, usize)> = nbrs
            .iter()
            .map(|&y| {
                let t = v.point(y) - p * p.dot(v.point(y));
                (t.dot(e2).atan2(t.dot(e1)), y)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in keyed.windows(2) {
            if (w[1].0 - w[0].0).abs() <= eps {
                return Err(Error::EmbeddingError(format!(
                    "edges ({x}, {}) and ({x}, {}) leave in the same direction",
                    w[0].1, w[1].1
                )));
            }
        }
        *nbrs = keyed.into_iter().map(|(_, y)| y).collect();
    }
    Ok(adj)
}

/// Boundary walks of the rotation system; returns the length of each walk
/// and the component (by smallest vertex) it belongs to.
fn face_walks(rot: &[Vec<usize>]) -> Result<Vec<(usize, usize)>> {
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for (x, nbrs) in rot.iter().enumerate() {
        for (i, &y) in nbrs.iter().enumerate() {
            pos.insert((x, y), i);
        }
    }
    let mut used: HashMap<(usize, usize), bool> = pos.keys().map(|&k| (k, false)).collect();
    let mut darts: Vec<(usize, usize)> = pos.keys().copied().collect();
    darts.sort_unstable();
    let mut walks = Vec::new();
    for start in darts {
        if used[&start] {
            continue;
        }
        let mut len = 0;
        let mut lowest = start.0;
        let mut d = start;
        loop {
            if used[&d] {
                return Err(Error::EmbeddingError(format!("dart {d:?} visited twice")));
            }
            used.insert(d, true);
            len += 1;
            lowest = lowest.min(d.0);
            let (u, w) = d;
            let around = &rot[w];
            let i = pos[&(w, u)];
            let next = around[(i + around.len() - 1) % around.len()];
            d = (w, next);
            if d == start {
                break;
            }
        }
        walks.push((len, lowest));
    }
    Ok(walks)
}

/// Euler-formula audit of an embedded graph `gp` on the sphere.
pub fn euler_audit(gp: &GeoGraph, v: &PointSet, report: &CrossingReport) -> Result<EulerAudit> {
    v.require_space(Space::Sphere)?;
    let rot = rotation_system(gp, v)?;
    let walks = face_walks(&rot)?;

    // per-component genus check: V_k − E_k + W_k = 2
    let comp = component_labels(gp);
    let mut per: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
    for x in 0..gp.n() {
        if !rot[x].is_empty() {
            per.entry(comp[x]).or_default().0 += 1;
        }
    }
    for &(a, _) in gp.edges() {
        per.entry(comp[a]).or_default().1 += 1;
    }
    for &(_, lowest) in &walks {
        per.entry(comp[lowest]).or_default().2 += 1;
    }
    for (c, (nv, ne, nw)) in &per {
        if nv - ne + nw != 2 {
            return Err(Error::EmbeddingError(format!(
                "component of vertex {c} has V - E + W = {} (not planar)",
                nv - ne + nw
            )));
        }
    }

    let nv = gp.n() as i64;
    let ne = gp.edge_count() as i64;
    let components = gp.component_count();
    let isolated = (0..gp.n()).filter(|&x| rot[x].is_empty()).count();
    let faces = walks.len() + isolated + 1 - components;

    let mut f_census = BTreeMap::new();
    for &(len, _) in &walks {
        *f_census.entry(len).or_insert(0usize) += 1;
    }
    let sum_if: i64 = f_census.iter().map(|(&i, &c)| (i * c) as i64).sum();
    let excess: i64 = f_census.iter().map(|(&i, &c)| (i as i64 - 3) * c as i64).sum();
    let g_census = report.g_census.clone();
    let g_le_f_slack = f_census
        .keys()
        .chain(g_census.keys())
        .map(|i| {
            f_census.get(i).copied().unwrap_or(0) as i64 - g_census.get(i).copied().unwrap_or(0) as i64
        })
        .min()
        .unwrap_or(0);
    let g4 = g_census.get(&4).copied().unwrap_or(0) as i64;
    let sum_ig: i64 = g_census.iter().map(|(&i, &c)| (i * c) as i64).sum();

    Ok(EulerAudit {
        vertices: gp.n(),
        edges: gp.edge_count(),
        components,
        faces,
        f_census,
        g_census,
        walk_based_census: components > 1,
        identity_holds: 2 * ne == sum_if,
        euler_holds: nv - ne + faces as i64 == 1 + components as i64,
        edge_bound_slack: 3 * nv - 6 - excess - ne,
        g_le_f_slack,
        g4_slack: 3 * nv - 4 * g4,
        polygon_incidence_slack: 3 * nv - sum_ig,
    })
}

fn component_labels(g: &GeoGraph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut label = vec![usize::MAX; g.n()];
    for s in 0..g.n() {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if label[y] == usize::MAX {
                    label[y] = s;
                    stack.push(y);
                }
            }
        }
    }
    label
}
