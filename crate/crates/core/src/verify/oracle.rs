use crate::double_normal::DnMode;
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::graph::GeoGraph;

/// Deliberately naive double-normal enumeration over raw coordinate arrays:
/// every pair, every third point, no filtering and no parallelism.
pub fn oracle_double_normals(v: &PointSet, mode: DnMode) -> Result<GeoGraph> {
    let n = v.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let eps = v.tol().boundary_eps;
    let raw: Vec<[f64; 3]> = v.points().iter().map(|p| [p.x, p.y, p.z]).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = [raw[j][0] - raw[i][0], raw[j][1] - raw[i][1], raw[j][2] - raw[i][2]];
            let dd = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
            let mut ok = true;
            for (k, x) in raw.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let w = [x[0] - raw[i][0], x[1] - raw[i][1], x[2] - raw[i][2]];
                let t = (w[0] * d[0] + w[1] * d[1] + w[2] * d[2]) / dd;
                let on_plane = t.abs() <= eps || (t - 1.0).abs() <= eps;
                let inside = t > 0.0 && t < 1.0;
                let allowed = match mode {
                    DnMode::Weak => on_plane || inside,
                    DnMode::Strict => inside && !on_plane,
                };
                if !allowed {
                    ok = false;
                    break;
                }
            }
            if ok {
                edges.push((i, j));
            }
        }
    }
    Ok(GeoGraph::new(n, v.space(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn known_counts() {
        let cube = constructions::cube_vertices();
        assert_eq!(oracle_double_normals(&cube, DnMode::Weak).unwrap().edge_count(), 28);
        let oct = constructions::regular_polygon(8).unwrap();
        assert_eq!(oracle_double_normals(&oct, DnMode::Weak).unwrap().edge_count(), 12);
        let one = PointSet::plane([[0.0, 0.0]]).unwrap();
        assert!(oracle_double_normals(&one, DnMode::Weak).is_err());
    }
}
