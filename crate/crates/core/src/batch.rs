//! Randomized sweeps over many seeded instances.
//!
//! Every item gets its own seed derived from the base seed and its index,
//! so results do not depend on how the work is split across threads. With
//! the `parallel` feature the items run on the rayon pool; without it, or
//! with [`Execution::Sequential`], they run in order on the calling thread.

use crate::error::Error;
use crate::geom::{distance_multiset, multiset_gap, PlanePoint, RegularPolygonSpec, Tolerance};
use crate::oracle::{self, InstanceRng};
use crate::reconstruct::reconstruct_polygons;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is off.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `f(0), f(1), …, f(count - 1)` in index order.
pub fn run<T, F>(exec: Execution, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}

/// Per-item seed: the base seed mixed with the index.
pub fn derive_seed(base: u64, index: usize) -> u64 {
    InstanceRng::new(base ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)).next_u64()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationSummary {
    pub n: usize,
    pub trials: usize,
    pub worst_residual: f64,
    pub worst_trial: usize,
}

/// Checks the power-sum identity on random `(polygon, point, m)` triples.
pub fn certify_polygonal_identity(
    n: usize,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> CertificationSummary {
    let residuals = run(exec, trials, |i| {
        let mut rng = InstanceRng::new(derive_seed(seed, i));
        let r = rng.uniform(oracle::RADIUS_RANGE.0, oracle::RADIUS_RANGE.1);
        let poly =
            RegularPolygonSpec::new(n, rng.point(10.0), r, rng.angle()).expect("valid polygon");
        let m_point = rng.point(10.0);
        let m = rng.index(1, n - 1);
        oracle::power_sum_residual(&poly, m_point, m).expect("m in range")
    });
    let (worst_trial, worst_residual) = residuals.iter().enumerate().fold(
        (0, 0.0),
        |acc, (i, r)| if *r > acc.1 { (i, *r) } else { acc },
    );
    CertificationSummary {
        n,
        trials,
        worst_residual,
        worst_trial,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundTripCase {
    pub seed: u64,
    /// Largest multiset gap of either reconstructed polygon, relative to
    /// `max(1, largest radius)`.
    pub multiset_gap: f64,
    /// Largest relative error of the recovered circumradii.
    pub radius_error: f64,
    pub error: Option<Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundTripSummary {
    pub n: usize,
    pub cases: Vec<RoundTripCase>,
}

impl RoundTripSummary {
    pub fn worst_multiset_gap(&self) -> f64 {
        self.cases
            .iter()
            .map(|c| c.multiset_gap)
            .fold(0.0, f64::max)
    }

    pub fn worst_radius_error(&self) -> f64 {
        self.cases
            .iter()
            .map(|c| c.radius_error)
            .fold(0.0, f64::max)
    }

    pub fn errors(&self) -> impl Iterator<Item = &RoundTripCase> {
        self.cases.iter().filter(|c| c.error.is_some())
    }
}

fn relative_error(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

/// Polygons → distances → circumradii → placed polygons → distances.
pub fn round_trip(
    n: usize,
    count: usize,
    seed: u64,
    tol: Tolerance,
    exec: Execution,
) -> RoundTripSummary {
    let cases = run(exec, count, |i| {
        let case_seed = derive_seed(seed, i);
        let inst = oracle::random_instance(n, case_seed);
        let scale = inst.family.largest().max(1.0);
        match reconstruct_polygons(&inst.family, tol) {
            Ok(rec) => {
                let gap = [rec.first.polygon, rec.second.polygon]
                    .iter()
                    .map(|p| multiset_gap(&distance_multiset(p, inst.m_point), inst.family.radii()))
                    .fold(0.0, f64::max);
                let radius_error = relative_error(rec.radii.r1, inst.r1.max(inst.r2))
                    .max(relative_error(rec.radii.r2, inst.r1.min(inst.r2)));
                RoundTripCase {
                    seed: case_seed,
                    multiset_gap: gap / scale,
                    radius_error,
                    error: None,
                }
            }
            Err(e) => RoundTripCase {
                seed: case_seed,
                multiset_gap: f64::INFINITY,
                radius_error: f64::INFINITY,
                error: Some(e),
            },
        }
    });
    RoundTripSummary { n, cases }
}

/// Distance multisets of `count`
/// random polygons seen from the origin.
pub fn distance_sweep(n: usize, count: usize, seed: u64, exec: Execution) -> Vec<Vec<f64>> {
    run(exec, count, |i| {
        let mut rng = InstanceRng::new(derive_seed(seed, i));
        let poly = RegularPolygonSpec::new(n, rng.point(10.0), rng.uniform(0.1, 10.0), rng.angle())
            .expect("valid polygon");
        distance_multiset(&poly, PlanePoint::ORIGIN)
    })
}
