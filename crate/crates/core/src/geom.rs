//! Plane primitives: points, regular polygons, Heron area, circle–circle
//! intersection and tolerant multiset comparison.

use std::f64::consts::TAU;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// Length comparison tolerance.
///
/// Two quantities `a`, `b` of magnitude `s` are equal when
/// `|a - b| <= absolute_floor + relative_eps * max(1, s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    relative_eps: f64,
    absolute_floor: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        relative_eps: 1e-9,
        absolute_floor: 1e-12,
    };

    pub fn new(relative_eps: f64, absolute_floor: f64) -> Result<Self> {
        let valid = relative_eps > 0.0 && relative_eps < 1e-3 && absolute_floor >= 0.0;
        if !valid || !absolute_floor.is_finite() {
            return Err(Error::InvalidTolerance {
                relative_eps,
                absolute_floor,
            });
        }
        Ok(Self {
            relative_eps,
            absolute_floor,
        })
    }

    /// Same floor, new relative epsilon.
    pub fn with_relative_eps(self, relative_eps: f64) -> Result<Self> {
        Self::new(relative_eps, self.absolute_floor)
    }

    pub fn relative_eps(&self) -> f64 {
        self.relative_eps
    }

    pub fn absolute_floor(&self) -> f64 {
        self.absolute_floor
    }

    /// Both components multiplied by `factor`. Not range checked: used for
    /// internal acceptance thresholds that are looser than the base.
    pub(crate) fn loosened(self, factor: f64) -> Self {
        Self {
            relative_eps: self.relative_eps * factor,
            absolute_floor: self.absolute_floor * factor,
        }
    }

    /// Admissible absolute gap for quantities of magnitude `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.absolute_floor + self.relative_eps * scale.abs().max(1.0)
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.bound(a.abs().max(b.abs()))
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// The point at `radius` from `center` in direction `angle`.
    pub fn polar(center: PlanePoint, radius: f64, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Self::new(center.x + radius * cos, center.y + radius * sin)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance_to(&self, other: PlanePoint) -> f64 {
        (*self - other).norm()
    }

    /// Direction of `other` seen from `self`.
    pub fn angle_to(&self, other: PlanePoint) -> f64 {
        let d = other - *self;
        d.y.atan2(d.x)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.x * factor, self.y * factor)
    }
}

impl Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, rhs: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, rhs: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// A regular n-gon given by center, circumradius and the angle of vertex 0.
///
/// A circumradius of zero is allowed and describes a point polygon, which
/// shows up in the degenerate circle families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularPolygonSpec {
    n: usize,
    center: PlanePoint,
    circumradius: f64,
    phase: f64,
}

impl RegularPolygonSpec {
    pub fn new(n: usize, center: PlanePoint, circumradius: f64, phase: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("n = {n}, need at least 3")));
        }
        if !center.is_finite() {
            return Err(Error::InvalidPolygon("center is not finite".into()));
        }
        if !(circumradius >= 0.0 && circumradius.is_finite()) {
            return Err(Error::InvalidPolygon(format!(
                "circumradius {circumradius} is not a finite non-negative length"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidPolygon("phase is not finite".into()));
        }
        Ok(Self {
            n,
            center,
            circumradius,
            phase: normalize_angle(phase),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn center(&self) -> PlanePoint {
        self.center
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn with_phase(&self, phase: f64) -> Self {
        Self {
            phase: normalize_angle(phase),
            ..*self
        }
    }

    pub fn translated(&self, offset: PlanePoint) -> Self {
        Self {
            center: self.center + offset,
            ..*self
        }
    }

    pub fn vertex(&self, k: usize) -> PlanePoint {
        let angle = self.phase + TAU * (k % self.n) as f64 / self.n as f64;
        PlanePoint::polar(self.center, self.circumradius, angle)
    }

    /// Vertices counterclockwise starting at angle `phase`.
    pub fn vertices(&self) -> Vec<PlanePoint> {
        (0..self.n).map(|k| self.vertex(k)).collect()
    }

    /// True when both polygons have the same vertex set within `tol`,
    /// regardless of labeling.
    pub fn same_vertex_set(&self, other: &RegularPolygonSpec, tol: Tolerance) -> bool {
        if self.n != other.n {
            return false;
        }
        let theirs = other.vertices();
        self.vertices().iter().all(|v| {
            theirs
                .iter()
                .any(|w| v.distance_to(*w) <= tol.bound(v.norm().max(w.norm())))
        })
    }
}

/// Sides sorted descending.
fn sorted_desc(a: f64, b: f64, c: f64) -> [f64; 3] {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// `16 Δ²` in the cancellation-free product form. Sides must be sorted
/// descending. Negative results mean the triangle inequality fails.
fn sixteen_area_squared(s: [f64; 3]) -> f64 {
    let [a, b, c] = s;
    (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
}

/// Triangle area from side lengths using the default tolerance.
pub fn heron_area(a: f64, b: f64, c: f64) -> Result<f64> {
    heron_area_with(a, b, c, Tolerance::DEFAULT)
}

/// Triangle area from side lengths.
///
/// Returns exactly 0 when the longest side equals the sum of the other two
/// within `tol`, and an error when it exceeds that sum beyond `tol`.
pub fn heron_area_with(a: f64, b: f64, c: f64, tol: Tolerance) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0 && c >= 0.0) || !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::TriangleInequalityViolated(a, b, c));
    }
    let s = sorted_desc(a, b, c);
    let excess = s[0] - (s[1] + s[2]);
    let slack = tol.bound(s[0]);
    if excess > slack {
        return Err(Error::TriangleInequalityViolated(a, b, c));
    }
    if excess >= -slack {
        return Ok(0.0);
    }
    Ok(sixteen_area_squared(s).max(0.0).sqrt() / 4.0)
}

/// Area without snapping near-degenerate triangles to zero. Used for angle
/// recovery where the snap would throw away the small but significant
/// height of a needle triangle. `None` when the inequality fails beyond
/// `tol`.
pub(crate) fn heron_area_unsnapped(a: f64, b: f64, c: f64, tol: Tolerance) -> Option<f64> {
    let s = sorted_desc(a, b, c);
    if s[0] - (s[1] + s[2]) > tol.bound(s[0]) {
        return None;
    }
    Some(sixteen_area_squared(s).max(0.0).sqrt() / 4.0)
}

/// Angle at the vertex joining sides `a` and `b`, opposite side `c`.
///
/// Law of cosines written as `atan2(4Δ, a² + b² − c²)`, which stays well
/// conditioned near 0 and π where `acos` does not.
pub(crate) fn included_angle(a: f64, b: f64, c: f64, tol: Tolerance) -> Option<f64> {
    let area = heron_area_unsnapped(a, b, c, tol)?;
    Some((4.0 * area).atan2(a * a + b * b - c * c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection {
    Disjoint,
    Tangent(PlanePoint),
    /// First point lies to the left of the first→second center axis.
    Crossing(PlanePoint, PlanePoint),
}

impl CircleIntersection {
    pub fn points(&self) -> Vec<PlanePoint> {
        match *self {
            CircleIntersection::Disjoint => Vec::new(),
            CircleIntersection::Tangent(p) => vec![p],
            CircleIntersection::Crossing(p, q) => vec![p, q],
        }
    }
}

/// Common points of two circles. Near-tangent pairs collapse to one point.
pub fn circle_circle_intersection(
    c1: PlanePoint,
    r1: f64,
    c2: PlanePoint,
    r2: f64,
    tol: Tolerance,
) -> Result<CircleIntersection> {
    let d = c1.distance_to(c2);
    let eps = tol.bound(r1.max(r2).max(d));

    if d <= eps {
        if (r1 - r2).abs() > eps {
            return Ok(CircleIntersection::Disjoint);
        }
        if r1.max(r2) <= eps {
            return Ok(CircleIntersection::Tangent(c1));
        }
        return Err(Error::CoincidentCircles);
    }

    let sum = r1 + r2;
    let diff = (r1 - r2).abs();
    if d > sum + eps || d < diff - eps {
        return Ok(CircleIntersection::Disjoint);
    }

    let axis = (c2 - c1).scale(1.0 / d);
    let normal = PlanePoint::new(-axis.y, axis.x);
    // signed distance from c1 to the radical line along the axis
    let along = ((d - r2) * (d + r2) + r1 * r1) / (2.0 * d);
    let foot = c1 + axis.scale(along);

    if (d - sum).abs() <= eps || (d - diff).abs() <= eps {
        let along = along.clamp(-r1, r1);
        return Ok(CircleIntersection::Tangent(c1 + axis.scale(along)));
    }

    let height = ((r1 - along) * (r1 + along)).max(0.0).sqrt();
    Ok(CircleIntersection::Crossing(
        foot + normal.scale(height),
        foot - normal.scale(height),
    ))
}

/// Distances from `point` to every vertex, sorted ascending.
pub fn distance_multiset(poly: &RegularPolygonSpec, point: PlanePoint) -> Vec<f64> {
    let mut d: Vec<f64> = poly
        .vertices()
        .iter()
        .map(|v| v.distance_to(point))
        .collect();
    d.sort_by(f64::total_cmp);
    d
}

/// Elementwise comparison of two ascending sequences.
pub fn multiset_close(a: &[f64], b: &[f64], tol: Tolerance) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol.bound(*x))
}

/// Largest elementwise gap of two equal-length ascending sequences,
/// `f64::INFINITY` when the lengths differ.
pub fn multiset_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_6, PI};

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn assert_point(p: PlanePoint, x: f64, y: f64) {
        assert!(
            (p.x - x).abs() < 1e-12 && (p.y - y).abs() < 1e-12,
            "{p:?} != ({x}, {y})"
        );
    }

    #[test]
    fn tolerance_rejects_out_of_range() {
        assert!(Tolerance::new(0.0, 0.0).is_err());
        assert!(Tolerance::new(1e-3, 0.0).is_err());
        assert!(Tolerance::new(1e-6, -1.0).is_err());
        assert!(Tolerance::new(1e-6, 0.0).is_ok());
    }

    #[test]
    fn polygon_validation() {
        assert!(RegularPolygonSpec::new(2, PlanePoint::ORIGIN, 1.0, 0.0).is_err());
        assert!(RegularPolygonSpec::new(3, PlanePoint::ORIGIN, -1.0, 0.0).is_err());
        assert!(RegularPolygonSpec::new(3, PlanePoint::new(f64::NAN, 0.0), 1.0, 0.0).is_err());
        let p = RegularPolygonSpec::new(3, PlanePoint::ORIGIN, 1.0, -PI / 2.0).unwrap();
        assert!((p.phase() - 1.5 * PI).abs() < 1e-15);
        let p = RegularPolygonSpec::new(3, PlanePoint::ORIGIN, 1.0, 7.0 * TAU).unwrap();
        assert!(p.phase() < 1e-12);
    }

    #[test]
    fn square_vertices() {
        let p = RegularPolygonSpec::new(4, PlanePoint::ORIGIN, 1.0, 0.0).unwrap();
        let v = p.vertices();
        assert_point(v[0], 1.0, 0.0);
        assert_point(v[1], 0.0, 1.0);
        assert_point(v[2], -1.0, 0.0);
        assert_point(v[3], 0.0, -1.0);
    }

    #[test]
    fn triangle_vertices() {
        let h = 3f64.sqrt() / 2.0;
        let p = RegularPolygonSpec::new(3, PlanePoint::ORIGIN, 1.0, 0.0).unwrap();
        let v = p.vertices();
        assert_point(v[0], 1.0, 0.0);
        assert_point(v[1], -0.5, h);
        assert_point(v[2], -0.5, -h);

        let p = RegularPolygonSpec::new(3, PlanePoint::new(2.0, 0.0), 1.0, PI).unwrap();
        let v = p.vertices();
        assert_point(v[0], 1.0, 0.0);
        assert_point(v[1], 2.5, -h);
        assert_point(v[2], 2.5, h);
    }

    #[test]
    fn heron_examples() {
        assert!((heron_area(3.0, 4.0, 5.0).unwrap() - 6.0).abs() < 1e-15);
        assert_eq!(heron_area(1.0, 1.0, 2.0).unwrap(), 0.0);

        let c = (5.0 - 2.0 * 3f64.sqrt()).sqrt();
        // independent route: 16Δ² = 2(a²b² + b²c² + c²a²) − a⁴ − b⁴ − c⁴
        let (a2, b2, c2) = (4.0, 1.0, c * c);
        let oracle =
            (2.0 * (a2 * b2 + b2 * c2 + c2 * a2) - a2 * a2 - b2 * b2 - c2 * c2).sqrt() / 4.0;
        assert!((oracle - 0.5).abs() < 1e-14);
        assert!((heron_area(2.0, 1.0, c).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn heron_rejects_violations() {
        assert!(matches!(
            heron_area(1.0, 1.0, 3.0),
            Err(Error::TriangleInequalityViolated(..))
        ));
        assert!(heron_area(-1.0, 1.0, 1.0).is_err());
        // within tolerance of equality counts as degenerate
        assert_eq!(heron_area(1.0, 1.0, 2.0 + 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn heron_needle_triangle_is_accurate() {
        // height 1e-4 over base 2: area 1e-4
        let s = (1.0f64 + 1e-8).sqrt();
        let area = heron_area(s, s, 2.0).unwrap();
        assert!((area - 1e-4).abs() < 1e-12, "{area}");
    }

    #[test]
    fn included_angle_matches_law_of_cosines() {
        let c = (5.0 - 2.0 * 3f64.sqrt()).sqrt();
        let angle = included_angle(2.0, 1.0, c, TOL).unwrap();
        assert!((angle - FRAC_PI_6).abs() < 1e-14);
        assert!((included_angle(2.0, 1.0, 3.0, TOL).unwrap() - PI).abs() < 1e-15);
        assert!(included_angle(2.0, 1.0, 1.0, TOL).unwrap().abs() < 1e-15);
        assert!(included_angle(2.0, 1.0, 3.5, TOL).is_none());
    }

    #[test]
    fn intersection_tangent() {
        let r = circle_circle_intersection(
            PlanePoint::ORIGIN,
            1.0,
            PlanePoint::new(2.0, 0.0),
            1.0,
            TOL,
        )
        .unwrap();
        match r {
            CircleIntersection::Tangent(p) => assert_point(p, 1.0, 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn intersection_internal_tangent() {
        let r = circle_circle_intersection(
            PlanePoint::ORIGIN,
            3.0,
            PlanePoint::new(1.0, 0.0),
            2.0,
            TOL,
        )
        .unwrap();
        match r {
            CircleIntersection::Tangent(p) => assert_point(p, 3.0, 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn intersection_crossing() {
        // x² + y² = 1 and (x − 2)² + y² = 4 subtract to 4x − 4 = −3
        let x = 0.25;
        let y = (1.0f64 - x * x).sqrt();
        assert!((y - 15f64.sqrt() / 4.0).abs() < 1e-15);
        let r = circle_circle_intersection(
            PlanePoint::ORIGIN,
            1.0,
            PlanePoint::new(2.0, 0.0),
            2.0,
            TOL,
        )
        .unwrap();
        match r {
            CircleIntersection::Crossing(p, q) => {
                assert_point(p, x, y);
                assert_point(q, x, -y);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn intersection_disjoint_and_nested() {
        let far = circle_circle_intersection(
            PlanePoint::ORIGIN,
            1.0,
            PlanePoint::new(5.0, 0.0),
            1.0,
            TOL,
        );
        assert_eq!(far.unwrap(), CircleIntersection::Disjoint);
        let nested = circle_circle_intersection(
            PlanePoint::ORIGIN,
            5.0,
            PlanePoint::new(1.0, 0.0),
            1.0,
            TOL,
        );
        assert_eq!(nested.unwrap(), CircleIntersection::Disjoint);
        let concentric =
            circle_circle_intersection(PlanePoint::ORIGIN, 2.0, PlanePoint::ORIGIN, 1.0, TOL);
        assert_eq!(concentric.unwrap(), CircleIntersection::Disjoint);
    }

    #[test]
    fn intersection_coincident() {
        let r = circle_circle_intersection(
            PlanePoint::new(1.0, 1.0),
            2.0,
            PlanePoint::new(1.0, 1.0),
            2.0,
            TOL,
        );
        assert_eq!(r, Err(Error::CoincidentCircles));
        let r = circle_circle_intersection(PlanePoint::ORIGIN, 0.0, PlanePoint::ORIGIN, 0.0, TOL);
        assert_eq!(r.unwrap(), CircleIntersection::Tangent(PlanePoint::ORIGIN));
    }

    #[test]
    fn square_distance_multiset() {
        let p = RegularPolygonSpec::new(4, PlanePoint::ORIGIN, 2.0, 0.0).unwrap();
        let m = PlanePoint::polar(PlanePoint::ORIGIN, 1.0, FRAC_PI_6);
        // law of cosines: d_k² = 4 + 1 − 4 cos(30° − 90° k)
        let mut oracle: Vec<f64> = (0..4)
            .map(|k| (5.0 - 4.0 * (FRAC_PI_6 - PI / 2.0 * k as f64).cos()).sqrt())
            .collect();
        oracle.sort_by(f64::total_cmp);
        let s3 = 3f64.sqrt();
        let expected = [
            (5.0 - 2.0 * s3).sqrt(),
            s3,
            7f64.sqrt(),
            (5.0 + 2.0 * s3).sqrt(),
        ];
        let got = distance_multiset(&p, m);
        for i in 0..4 {
            assert!((oracle[i] - expected[i]).abs() < 1e-14);
            assert!((got[i] - expected[i]).abs() < 1e-14);
        }
        assert!((got[0] - 1.23931).abs() < 1e-5);
        assert!((got[3] - 2.90931).abs() < 1e-5);
    }

    #[test]
    fn triangle_distance_multisets() {
        let p = RegularPolygonSpec::new(3, PlanePoint::ORIGIN, 1.0, 0.0).unwrap();
        let at_center = distance_multiset(&p, PlanePoint::ORIGIN);
        assert!(multiset_close(&at_center, &[1.0, 1.0, 1.0], TOL));
        let opposite = distance_multiset(&p, PlanePoint::new(-1.0, 0.0));
        assert!(multiset_close(&opposite, &[1.0, 1.0, 2.0], TOL));
    }

    #[test]
    fn multiset_examples() {
        assert!(multiset_close(&[1.0, 1.0, 2.0], &[1.0, 1.0, 2.0], TOL));
        assert!(!multiset_close(&[1.0, 1.0, 2.0], &[1.0, 2.0, 2.0], TOL));
        assert!(!multiset_close(&[1.0, 1.0], &[1.0, 1.0, 1.0], TOL));
        assert_eq!(multiset_gap(&[1.0], &[1.0, 2.0]), f64::INFINITY);
    }

    #[test]
    fn same_vertex_set_ignores_labels() {
        let p = RegularPolygonSpec::new(5, PlanePoint::new(1.0, 2.0), 3.0, 0.3).unwrap();
        let q = p.with_phase(0.3 + 2.0 * TAU / 5.0);
        assert!(p.same_vertex_set(&q, TOL));
        assert!(!p.same_vertex_set(&p.with_phase(0.4), TOL));
    }
}
