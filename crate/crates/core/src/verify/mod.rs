//! Bound formulas, equality predicates, the naive oracle, seeded random
//! inputs, annealing search and the verification battery.

mod bounds;
mod oracle;
mod search;
pub mod suite;

pub use bounds::{
    bound_formula, check_bound, observed_count, Bound, BoundReport, PredicateResult, TheoremId, Verdict,
    PRED_ANTIPODAL, PRED_CENTRALLY_SYMMETRIC, PRED_CONCYCLIC, PRED_FACES, PRED_ORIGIN_INTERIOR,
    PRED_THREE_RECTANGLES,
};
pub use oracle::oracle_double_normals;
pub use search::{random_search, random_search_with, search_theorem, Schedule, SearchState, Violation};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geom::{PointSet, Space, Vec3};

/// `n` points drawn uniformly from the unit square, seeded.
pub fn random_planar(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Vec3> = (0..n)
            .map(|_| Vec3::planar(rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        if let Ok(v) = PointSet::with_default_tol(Space::Plane, pts) {
            return v;
        }
    }
}

/// `n` points drawn uniformly from the unit sphere, seeded.
pub fn random_sphere(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Vec3> = (0..n)
            .map(|_| {
                let g = Vec3::new(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                );
                g.normalized()
            })
            .collect();
        if let Ok(v) = PointSet::sphere(pts) {
            return v;
        }
    }
}
