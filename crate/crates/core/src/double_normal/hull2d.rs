//! Planar convex hull (Andrew's monotone chain) with a tolerance band.

use crate::geom::Vec3;

fn turn(o: Vec3, a: Vec3, b: Vec3) -> f64 {
    (a - o).cross2(b - o)
}

/// Indices of the strict hull vertices in counter-clockwise order.
/// Points within `eps` (relative) of a hull edge's line are dropped.
pub fn hull_vertices(points: &[Vec3], eps: f64) -> Vec<usize> {
    let n = points.len();
    if n < 3 {
        return (0..n).collect();
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .x
            .total_cmp(&points[b].x)
            .then(points[a].y.total_cmp(&points[b].y))
    });
    let keeps_left = |o: Vec3, a: Vec3, b: Vec3| {
        let scale = (a - o).norm() * (b - o).norm();
        turn(o, a, b) > eps * scale
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && !keeps_left(
                    points[hull[hull.len() - 2]],
                    points[hull[hull.len() - 1]],
                    points[i],
                )
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Marks points lying on the hull boundary (vertices or within `eps` of an edge).
pub fn on_hull_boundary(points: &[Vec3], eps: f64) -> Vec<bool> {
    let hull = hull_vertices(points, eps);
    if hull.len() < 3 {
        return vec![true; points.len()];
    }
    points
        .iter()
        .map(|&p| {
            hull.iter().enumerate().any(|(k, &a)| {
                let b = hull[(k + 1) % hull.len()];
                let (pa, pb) = (points[a], points[b]);
                let len = (pb - pa).norm();
                let dist = turn(pa, pb, p) / len;
                let scale = 1f64.max(len);
                dist <= eps * scale
            })
        })
        .collect()
}
