//! Brute-force checks that share no code path with the closed forms:
//! direct power sums over polygon vertices, a dense phase sweep and a
//! seeded instance generator.
//!
//! Random instances come from SplitMix64 (`state += 0x9E3779B97F4A7C15`
//! followed by the standard xor-shift-multiply finalizer), seeded with the
//! raw seed as initial state. A uniform real in `[0, 1)` is the top 53 bits
//! of one output times `2^-53`. The recurrence is simple enough to port, so
//! instances can be reproduced outside Rust.

use std::f64::consts::TAU;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::batch::{self, Execution};
use crate::error::{Error, Result};
use crate::geom::{distance_multiset, multiset_gap, PlanePoint, RegularPolygonSpec};
use crate::moments::CircleFamily;

/// Relative gap between `Σ d_i^(2m)` summed over the vertices and the
/// closed-form prediction from the circumradius `R` and the center
/// distance `L`.
pub fn power_sum_residual(poly: &RegularPolygonSpec, m_point: PlanePoint, m: usize) -> Result<f64> {
    let n = poly.n();
    if m < 1 || m >= n {
        return Err(Error::InvalidMomentOrder { m, max: n - 1 });
    }
    let direct: f64 = poly
        .vertices()
        .iter()
        .map(|v| {
            let dx = v.x - m_point.x;
            let dy = v.y - m_point.y;
            (dx * dx + dy * dy).powi(m as i32)
        })
        .sum();

    let r = poly.circumradius();
    let l = m_point.distance_to(poly.center());
    let pascal = pascal_row_table(m);
    let s = r * r + l * l;
    let p = r * l;
    let mut predicted = 0.0;
    for k in 0..=m / 2 {
        predicted +=
            pascal[m][2 * k] * pascal[2 * k][k] * p.powi(2 * k as i32) * s.powi((m - 2 * k) as i32);
    }
    predicted *= n as f64;

    let scale = direct.abs().max(predicted.abs());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((direct - predicted).abs() / scale)
}

/// Rows `0..=m` of Pascal's triangle.
fn pascal_row_table(m: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = vec![vec![1.0]];
    for i in 1..=m {
        let prev = &rows[i - 1];
        let mut row = vec![1.0; i + 1];
        for j in 1..i {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepResult {
    /// Relative angle at the polygon center, measured from the direction of
    /// `M`, reduced to `[0, 2π/n)`.
    pub phase: f64,
    pub residual: f64,
}

pub const DEFAULT_GRID: usize = 3600;
const REFINEMENT_STEPS: usize = 40;

fn sweep_residual(r: f64, l: f64, n: usize, target: &[f64], theta: f64) -> f64 {
    let mut d: Vec<f64> = (0..n)
        .map(|k| {
            let angle = theta + TAU * k as f64 / n as f64;
            (r * r + l * l - 2.0 * r * l * angle.cos()).max(0.0).sqrt()
        })
        .collect();
    d.sort_by(f64::total_cmp);
    multiset_gap(&d, target)
}

/// Minimize the multiset residual over the polygon phase: a uniform grid on
/// one period `[0, 2π/n)` followed by golden-section refinement around the
/// best cell.
pub fn angle_sweep(
    r: f64,
    l: f64,
    n: usize,
    target: &[f64],
    grid_size: usize,
    exec: Execution,
) -> Result<SweepResult> {
    if grid_size < 360 {
        return Err(Error::GridTooCoarse(grid_size));
    }
    let period = TAU / n as f64;
    let step = period / grid_size as f64;
    let residuals = batch::run(exec, grid_size, |i| {
        sweep_residual(r, l, n, target, i as f64 * step)
    });
    let (best_cell, best_value) =
        residuals
            .iter()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |acc, (i, v)| if *v < acc.1 { (i, *v) } else { acc },
            );

    let f = |theta: f64| sweep_residual(r, l, n, target, theta);
    let centre = best_cell as f64 * step;
    let (mut lo, mut hi) = (centre - step, centre + step);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..REFINEMENT_STEPS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let (mut phase, mut residual) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if best_value < residual {
        phase = centre;
        residual = best_value;
    }
    Ok(SweepResult {
        phase: phase.rem_euclid(period),
        residual,
    })
}

/// SplitMix64 with uniform-real helpers.
#[derive(Debug, Clone)]
pub struct InstanceRng(SplitMix64);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn angle(&mut self) -> f64 {
        self.uniform(0.0, TAU)
    }

    pub fn point(&mut self, half_width: f64) -> PlanePoint {
        let x = self.uniform(-half_width, half_width);
        let y = self.uniform(-half_width, half_width);
        PlanePoint::new(x, y)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn index(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.unit() * (hi - lo + 1) as f64) as usize
    }
}

pub const RADIUS_RANGE: (f64, f64) = (0.1, 10.0);
const POINT_HALF_WIDTH: f64 = 10.0;

/// Ground truth for round-trip tests: two polygons placed so that both
/// realize `family` from `m_point`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub first: RegularPolygonSpec,
    pub second: RegularPolygonSpec,
    pub m_point: PlanePoint,
    pub family: CircleFamily,
    pub r1: f64,
    pub r2: f64,
}

fn build_instance(n: usize, r1: f64, r2: f64, rng: &mut InstanceRng) -> RandomInstance {
    let m_point = rng.point(POINT_HALF_WIDTH);
    // first center at distance r2 from M, second at distance r1
    let o1 = PlanePoint::polar(m_point, r2, rng.angle());
    let o2 = PlanePoint::polar(m_point, r1, rng.angle());
    let relative = rng.angle();
    let sign = if rng.unit() < 0.5 { 1.0 } else { -1.0 };
    let first = RegularPolygonSpec::new(n, o1, r1, o1.angle_to(m_point) + relative)
        .expect("sampled polygon is valid");
    let second = RegularPolygonSpec::new(n, o2, r2, o2.angle_to(m_point) + sign * relative)
        .expect("sampled polygon is valid");
    let family = CircleFamily::new(m_point, distance_multiset(&first, m_point))
        .expect("distance multiset is sorted and non-negative");
    RandomInstance {
        first,
        second,
        m_point,
        family,
        r1,
        r2,
    }
}

/// Seeded instance with both circumradii in `[0.1, 10]`.
pub fn random_instance(n: usize, seed: u64) -> RandomInstance {
    let mut rng = InstanceRng::new(seed);
    let r1 = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    let r2 = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    build_instance(n, r1, r2, &mut rng)
}

/// Seeded instance whose second polygon is a point (`r2 = 0`).
pub fn random_point_polygon_instance(n: usize, seed: u64) -> RandomInstance {
    let mut rng = InstanceRng::new(seed);
    let r1 = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    let _ = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    build_instance(n, r1, 0.0, &mut rng)
}

/// Two independently rotated polygons whose auxiliary circles meet.
pub fn random_polygon_pair(n: usize, seed: u64) -> (RegularPolygonSpec, RegularPolygonSpec) {
    let mut rng = InstanceRng::new(seed);
    let r1 = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    let r2 = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    let o1 = rng.point(POINT_HALF_WIDTH);
    let separation = rng.uniform((r1 - r2).abs(), r1 + r2);
    let o2 = PlanePoint::polar(o1, separation, rng.angle());
    let first = RegularPolygonSpec::new(n, o1, r1, rng.angle()).expect("valid polygon");
    let second = RegularPolygonSpec::new(n, o2, r2, rng.angle()).expect("valid polygon");
    (first, second)
}

/// Two polygons built to share one vertex.
pub fn random_shared_vertex_pair(n: usize, seed: u64) -> (RegularPolygonSpec, RegularPolygonSpec) {
    let mut rng = InstanceRng::new(seed);
    let r1 = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    let r2 = rng.uniform(RADIUS_RANGE.0, RADIUS_RANGE.1);
    let first = RegularPolygonSpec::new(n, rng.point(POINT_HALF_WIDTH), r1, rng.angle())
        .expect("valid polygon");
    let shared = first.vertex(rng.index(0, n - 1));
    let o2 = PlanePoint::polar(shared, r2, rng.angle());
    let second = RegularPolygonSpec::new(n, o2, r2, o2.angle_to(shared)).expect("valid polygon");
    (first, second)
}
