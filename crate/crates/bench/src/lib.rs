//! Shared inputs for the benchmarks.

use normalis_core::constructions::{self, LayeredParams};
use normalis_core::verify::{random_planar, random_sphere};
use normalis_core::PointSet;

pub fn planar_inputs() -> Vec<(String, PointSet)> {
    let mut out: Vec<(String, PointSet)> = [8, 50, 100]
        .into_iter()
        .map(|n| (format!("regular-{n}"), constructions::regular_polygon(n).expect("n >= 3")))
        .collect();
    out.push(("random-100".into(), random_planar(100, 1)));
    out
}

pub fn sphere_inputs() -> Vec<(String, PointSet)> {
    vec![
        ("cube".into(), constructions::cube_vertices()),
        ("rhombicuboctahedron".into(), constructions::rhombicuboctahedron_vertices()),
        (
            "layered-6-3".into(),
            constructions::layered_construction(&LayeredParams::new(6, 3)).expect("valid parameters"),
        ),
        ("random-60".into(), random_sphere(60, 1)),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn inputs_build() {
        assert_eq!(super::planar_inputs().len(), 4);
        assert_eq!(super::sphere_inputs()[2].1.len(), 84);
    }
}
