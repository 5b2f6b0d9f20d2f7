use serde::{Deserialize, Serialize};

use crate::geom::Space;

/// Colour of an edge in the rightmost-edge decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Red,
    Blue,
}

/// Vertex-indexed undirected graph drawn on its point set.
///
/// Edges are stored as `(i, j)` with `i < j`, sorted and without duplicates.
/// Planar and R³ edges are drawn as segments, sphere edges as minor arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeoGraph {
    n: usize,
    space: Space,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<EdgeColor>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crossing_class: Option<Vec<usize>>,
}

impl GeoGraph {
    /// Builds a graph from any edge list; endpoints are canonicalized and deduplicated.
    ///
    /// # Panics
    /// On self-loops or out-of-range endpoints.
    pub fn new(n: usize, space: Space, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a != b, "self-loop at {a}");
                assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} vertices");
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        GeoGraph {
            n,
            space,
            edges,
            colors: None,
            crossing_class: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn is_subgraph_of(&self, other: &GeoGraph) -> bool {
        self.n == other.n && self.edges.iter().all(|&(a, b)| other.contains(a, b))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Adjacency lists with neighbours in increasing order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut comps = self.n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }

    pub fn colors(&self) -> Option<&[EdgeColor]> {
        self.colors.as_deref()
    }

    /// Attaches one colour per edge, in edge order.
    pub fn set_colors(&mut self, colors: Vec<EdgeColor>) {
        assert_eq!(colors.len(), self.edges.len());
        self.colors = Some(colors);
    }

    pub fn crossing_classes(&self) -> Option<&[usize]> {
        self.crossing_class.as_deref()
    }

    pub fn set_crossing_classes(&mut self, ids: Vec<usize>) {
        assert_eq!(ids.len(), self.edges.len());
        self.crossing_class = Some(ids);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_edges() {
        let g = GeoGraph::new(4, Space::Plane, [(2, 1), (1, 2), (0, 3)]);
        assert_eq!(g.edges(), &[(0, 3), (1, 2)]);
        assert!(g.contains(3, 0));
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.degree(1), 1);
    }

    #[test]
    #[should_panic]
    fn rejects_self_loops() {
        GeoGraph::new(2, Space::Plane, [(1, 1)]);
    }
}
