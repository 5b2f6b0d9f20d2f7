use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::bounds::{bound_formula, Bound, TheoremId};
use crate::double_normal::{double_normal_graph, DnMode};
use crate::error::{Error, Result};
use crate::geom::{PointSet, Space, Tolerance, Vec3};

/// Annealing schedule and objective parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Schedule {
    pub t0: f64,
    pub t_end: f64,
    /// Gaussian step at `t0`; shrinks linearly with temperature.
    pub step0: f64,
    pub step_min: f64,
    /// Pairs whose slab excursion is within this band are polishing targets.
    pub band: f64,
    /// Iterations between polishing passes.
    pub polish_every: usize,
    /// Probability of moving a point next to the reflection of another.
    pub antipodal_moves: f64,
    /// Probability of moving a planar point radially onto the mean radius.
    pub radial_moves: f64,
    /// Minimum pairwise distance, in units of `diameter / sqrt(n)`.
    pub separation: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            t0: 0.05,
            t_end: 1e-5,
            step0: 0.2,
            step_min: 1e-3,
            band: 0.05,
            polish_every: 250,
            antipodal_moves: 0.05,
            radial_moves: 0.05,
            separation: 0.5,
        }
    }
}

/// A configuration exceeding the asserted bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub iteration: usize,
    pub observed: usize,
    pub points: Vec<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchState {
    pub space: Space,
    pub n: usize,
    pub seed: u64,
    pub budget: usize,
    pub schedule: Schedule,
    pub iterations: usize,
    /// Theorem whose bound is enforced on every visited state, if any.
    pub theorem: Option<TheoremId>,
    pub bound: Option<Bound>,
    pub best_n: usize,
    pub best_points: Vec<[f64; 3]>,
    pub violation: Option<Violation>,
}

impl SearchState {
    pub fn best_point_set(&self) -> Result<PointSet> {
        PointSet::with_default_tol(self.space, self.best_points.iter().map(|&p| Vec3::from(p)).collect())
    }
}

/// The bound enforced during a search, if the theorem asserts one at this size.
pub fn search_theorem(space: Space, n: usize) -> Option<TheoremId> {
    let t = match space {
        Space::Plane => TheoremId::T1,
        Space::Sphere => TheoremId::T3,
        Space::Space3 => return None,
    };
    bound_formula(t, n).in_range.then_some(t)
}

/// Largest excursion of any third point outside the slab of each pair.
fn pair_excess(pts: &[Vec3], i: usize, j: usize) -> f64 {
    let d = pts[j] - pts[i];
    let dd = d.norm_squared();
    let mut worst = 0.0f64;
    for (k, &x) in pts.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let t = (x - pts[i]).dot(d) / dd;
        worst = worst.max(-t).max(t - 1.0);
    }
    worst
}

/// Pairs sorted by slab excursion, smallest first.
fn ranked_pairs(pts: &[Vec3]) -> Vec<(f64, (usize, usize))> {
    let n = pts.len();
    let mut out: Vec<(f64, (usize, usize))> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| (pair_excess(pts, i, j), (i, j)))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

/// Sum of the `k` smallest excursions: zero exactly when `k` pairs are
/// double normals.
fn energy(pts: &[Vec3], k: usize) -> f64 {
    ranked_pairs(pts).iter().take(k).map(|e| e.0).sum()
}

fn exact_count(pts: &[Vec3], eps: f64) -> usize {
    ranked_pairs(pts).iter().take_while(|e| e.0 <= eps).count()
}

fn residuals(pts: &[Vec3], targets: &[(usize, usize)], sphere: bool, out: &mut Vec<f64>) {
    out.clear();
    for &(i, j) in targets {
        let d = pts[j] - pts[i];
        let dd = d.norm_squared();
        for (k, &x) in pts.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let t = (x - pts[i]).dot(d) / dd;
            out.push((-t).max(0.0) + (t - 1.0).max(0.0));
        }
    }
    if sphere {
        out.extend(pts.iter().map(|p| p.norm_squared() - 1.0));
    }
}

fn unpack(x: &DVector<f64>, dim: usize) -> Vec<Vec3> {
    (0..x.len() / dim)
        .map(|i| {
            if dim == 2 {
                Vec3::planar(x[2 * i], x[2 * i + 1])
            } else {
                Vec3::new(x[3 * i], x[3 * i + 1], x[3 * i + 2])
            }
        })
        .collect()
}

/// Levenberg–Marquardt on the slab excursions of the nearly double-normal
/// pairs, so that near-tight incidences become exact.
fn polish(pts: &[Vec3], targets: &[(usize, usize)], sphere: bool) -> Vec<Vec3> {
    let n = pts.len();
    if targets.is_empty() {
        return pts.to_vec();
    }
    let dim = if sphere { 3 } else { 2 };
    let mut x = DVector::from_iterator(
        dim * n,
        pts.iter().flat_map(|p| if sphere { vec![p.x, p.y, p.z] } else { vec![p.x, p.y] }),
    );
    let mut r = Vec::new();
    let mut r2 = Vec::new();
    residuals(&unpack(&x, dim), targets, sphere, &mut r);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut lambda = 1e-3;
    for _ in 0..60 {
        if cost < 1e-28 {
            break;
        }
        let m = r.len();
        let mut jac = DMatrix::<f64>::zeros(m, x.len());
        for c in 0..x.len() {
            let h = 1e-7 * (1.0 + x[c].abs());
            let mut xp = x.clone();
            xp[c] += h;
            residuals(&unpack(&xp, dim), targets, sphere, &mut r2);
            for row in 0..m {
                jac[(row, c)] = (r2[row] - r[row]) / h;
            }
        }
        let rv = DVector::from_column_slice(&r);
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * &rv;
        let mut improved = false;
        for _ in 0..10 {
            let mut a = jtj.clone();
            for c in 0..x.len() {
                a[(c, c)] += lambda * (1.0 + jtj[(c, c)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let xn = &x + &step;
            residuals(&unpack(&xn, dim), targets, sphere, &mut r2);
            let c2: f64 = r2.iter().map(|v| v * v).sum();
            if c2 < cost {
                x = xn;
                std::mem::swap(&mut r, &mut r2);
                cost = c2;
                lambda = (lambda / 3.0).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let mut out = unpack(&x, dim);
    if sphere {
        for p in &mut out {
            *p = p.normalized();
        }
    }
    out
}

fn random_point(rng: &mut ChaCha8Rng, space: Space) -> Vec3 {
    let mut g = || rng.sample::<f64, _>(StandardNormal);
    match space {
        Space::Plane => Vec3::planar(g(), g()),
        Space::Space3 => Vec3::new(g(), g(), g()),
        Space::Sphere => Vec3::new(g(), g(), g()).normalized(),
    }
}

/// Centres planar and spatial configurations and scales them to unit radius.
fn normalize_frame(pts: &mut [Vec3], space: Space) {
    if space == Space::Sphere {
        return;
    }
    let c = pts.iter().copied().sum::<Vec3>() / pts.len() as f64;
    let r = pts.iter().map(|p| p.distance(c)).fold(0.0, f64::max);
    if r > 0.0 {
        for p in pts.iter_mut() {
            *p = (*p - c) / r;
        }
    }
}

fn min_distance(pts: &[Vec3]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let d = p.distance(*q);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    (lo, hi)
}

/// Rejects configurations whose points crowd together; clusters satisfy slab
/// conditions cheaply and would otherwise dominate the objective.
fn well_spread(pts: &[Vec3], separation: f64) -> bool {
    let (lo, diam) = min_distance(pts);
    pts.iter().all(|p| p.is_finite()) && lo >= separation * diam / (pts.len() as f64).sqrt()
}

/// Number of pairs the annealer tries to make double normals.
fn target_pairs(space: Space, n: usize) -> usize {
    let all = n * (n - 1) / 2;
    let t = match space {
        Space::Plane => TheoremId::T1,
        Space::Sphere => TheoremId::T3,
        Space::Space3 => TheoremId::T2,
    };
    let b = bound_formula(t, n).value;
    (b.floor().to_integer().max(1) as usize).min(all)
}

/// Simulated annealing over point configurations with the default schedule.
pub fn random_search(space: Space, n: usize, budget: usize, seed: u64) -> Result<SearchState> {
    random_search_with(space, n, budget, seed, Schedule::default())
}

/// Simulated annealing towards configurations with many double-normal
/// pairs, with periodic polishing. Every visited state is checked against the
/// bound; a violation stops the run and is returned as a witness.
pub fn random_search_with(
    space: Space,
    n: usize,
    budget: usize,
    seed: u64,
    schedule: Schedule,
) -> Result<SearchState> {
    if n < 3 {
        return Err(Error::BadParameter(format!("search needs n >= 3, got {n}")));
    }
    if budget == 0 {
        return Err(Error::BadParameter("search budget must be at least 1".into()));
    }
    let tol = Tolerance::default();
    let eps = tol.boundary_eps;
    let sphere = space == Space::Sphere;
    let theorem = search_theorem(space, n);
    let bound = theorem.map(|t| bound_formula(t, n));
    let k = target_pairs(space, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut cur: Vec<Vec3> = Vec::with_capacity(n);
    while cur.len() < n {
        cur.clear();
        while cur.len() < n {
            cur.push(random_point(&mut rng, space));
        }
        normalize_frame(&mut cur, space);
        if !well_spread(&cur, schedule.separation) {
            cur.clear();
        }
    }
    let mut cur_e = energy(&cur, k);

    let mut state = SearchState {
        space,
        n,
        seed,
        budget,
        schedule,
        iterations: 0,
        theorem,
        bound,
        best_n: 0,
        best_points: Vec::new(),
        violation: None,
    };
    let exceeds = |count: usize| bound.is_some_and(|b| Ratio::from_integer(count as i64) > b.value);

    // confirms a candidate with the library path before recording it
    let consider = |pts: &[Vec3], it: usize, state: &mut SearchState| -> Result<bool> {
        let count = exact_count(pts, eps);
        if count <= state.best_n && !state.best_points.is_empty() && !exceeds(count) {
            return Ok(false);
        }
        let Ok(v) = PointSet::new(space, pts.to_vec(), tol) else {
            return Ok(false);
        };
        let confirmed = double_normal_graph(&v, DnMode::Weak)?.edge_count();
        if exceeds(confirmed) {
            state.violation = Some(Violation {
                iteration: it,
                observed: confirmed,
                points: pts.iter().map(|p| p.to_array()).collect(),
            });
            return Ok(true);
        }
        if confirmed > state.best_n || state.best_points.is_empty() {
            state.best_n = confirmed;
            state.best_points = v.points().iter().map(|p| p.to_array()).collect();
        }
        Ok(false)
    };
    if consider(&cur, 0, &mut state)? {
        return Ok(state);
    }

    let ratio = schedule.t_end / schedule.t0;
    for it in 1..=budget {
        state.iterations = it;
        let frac = it as f64 / budget as f64;
        let temp = schedule.t0 * ratio.powf(frac);
        let step = schedule.step_min + (schedule.step0 - schedule.step_min) * temp / schedule.t0;

        let i = rng.random_range(0..n);
        let old = cur[i];
        let noise = Vec3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            if space == Space::Plane { 0.0 } else { rng.sample::<f64, _>(StandardNormal) },
        );
        let kind: f64 = rng.random();
        let mut p = if kind < schedule.antipodal_moves {
            let j = rng.random_range(0..n);
            -cur[j] + noise * schedule.step_min
        } else if kind < schedule.antipodal_moves + schedule.radial_moves && space == Space::Plane {
            let r = cur.iter().map(|q| q.norm()).sum::<f64>() / n as f64;
            let len = old.norm();
            if len > 0.0 { old * (r / len) } else { old + noise * step }
        } else {
            old + noise * step
        };
        if sphere {
            p = p.normalized();
        }
        cur[i] = p;
        if !well_spread(&cur, schedule.separation) {
            cur[i] = old;
            continue;
        }
        let e = energy(&cur, k);
        let delta = cur_e - e;
        if delta >= 0.0 || rng.random::<f64>() < (delta / temp).exp() {
            cur_e = e;
            if consider(&cur, it, &mut state)? {
                return Ok(state);
            }
        } else {
            cur[i] = old;
        }

        if it % schedule.polish_every == 0 || it == budget {
            normalize_frame(&mut cur, space);
            let ranked = ranked_pairs(&cur);
            let near: Vec<(usize, usize)> =
                ranked.iter().take_while(|e| e.0 <= schedule.band).map(|e| e.1).collect();
            let top: Vec<(usize, usize)> = ranked.iter().take(k).map(|e| e.1).collect();
            for targets in [near, top] {
                let mut polished = polish(&cur, &targets, sphere);
                normalize_frame(&mut polished, space);
                if !well_spread(&polished, schedule.separation) {
                    continue;
                }
                if consider(&polished, it, &mut state)? {
                    return Ok(state);
                }
                let pe = energy(&polished, k);
                if pe < cur_e {
                    cur = polished;
                    cur_e = pe;
                }
            }
            cur_e = energy(&cur, k);
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = random_search(Space::Plane, 6, 600, 7).unwrap();
        let b = random_search(Space::Plane, 6, 600, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.violation.is_none());
        assert!(a.best_n <= 9);
    }

    #[test]
    fn triangle() {
        let s = random_search(Space::Plane, 3, 100, 1).unwrap();
        assert_eq!(s.best_n, 3);
    }

    #[test]
    fn clusters_are_rejected() {
        let pts = vec![Vec3::planar(0.0, 0.0), Vec3::planar(1e-3, 0.0), Vec3::planar(1.0, 0.0)];
        assert!(!well_spread(&pts, 0.5));
        assert!(well_spread(&[Vec3::planar(0.0, 0.0), Vec3::planar(1.0, 0.0), Vec3::planar(0.5, 0.8)], 0.5));
    }

    #[test]
    fn targets() {
        assert_eq!(target_pairs(Space::Plane, 8), 12);
        assert_eq!(target_pairs(Space::Sphere, 8), 28);
        assert_eq!(target_pairs(Space::Plane, 3), 3);
        assert_eq!(target_pairs(Space::Sphere, 4), 6);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_search(Space::Plane, 2, 10, 1).is_err());
        assert!(random_search(Space::Plane, 5, 0, 1).is_err());
    }

    #[test]
    fn polish_closes_small_gaps() {
        // a slightly perturbed square: polishing restores all six pairs
        let pts = vec![
            Vec3::planar(1.0, 0.0),
            Vec3::planar(0.0, 1.003),
            Vec3::planar(-1.0, 0.002),
            Vec3::planar(0.001, -1.0),
        ];
        let targets: Vec<(usize, usize)> = ranked_pairs(&pts).iter().map(|e| e.1).collect();
        let before = exact_count(&pts, 1e-9);
        let after = exact_count(&polish(&pts, &targets, false), 1e-9);
        assert!(after >= before);
        assert_eq!(after, 6);
    }
}
