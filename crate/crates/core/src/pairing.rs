//! From two regular polygons to the concentric circles through their
//! vertices.
//!
//! A common center `M` must sit at distance `R2` from the first center and
//! `R1` from the second, so it lies on both auxiliary circles. Once there,
//! rotating the second polygon about its own center until one distance
//! matches makes the whole distance multisets agree.

use crate::error::{Error, Result};
use crate::geom::{
    circle_circle_intersection, distance_multiset, multiset_close, multiset_gap, PlanePoint,
    RegularPolygonSpec, Tolerance,
};
use crate::moments::CircleFamily;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryCircle {
    pub center: PlanePoint,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairingResult {
    pub m_point: PlanePoint,
    /// The second polygon rotated about its center.
    pub aligned_second: RegularPolygonSpec,
    pub circles: CircleFamily,
    /// Vertex of the first polygon used for alignment and the vertex of the
    /// aligned second polygon at the same distance from `m_point`.
    pub matched_vertex_pair: (usize, usize),
}

/// An alignment whose multisets did not agree. Should not happen; kept so
/// a tolerance mismatch is visible instead of silently dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationFailure {
    pub m_point: PlanePoint,
    pub aligned_second: RegularPolygonSpec,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairingOutcome {
    pub results: Vec<PairingResult>,
    pub failures: Vec<VerificationFailure>,
}

fn check_order(p1: &RegularPolygonSpec, p2: &RegularPolygonSpec) -> Result<()> {
    if p1.n() != p2.n() {
        return Err(Error::MismatchedOrder(p1.n(), p2.n()));
    }
    Ok(())
}

/// `(center1, R2)` and `(center2, R1)`.
pub fn auxiliary_circles(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
) -> Result<[AuxiliaryCircle; 2]> {
    check_order(p1, p2)?;
    Ok([
        AuxiliaryCircle {
            center: p1.center(),
            radius: p2.circumradius(),
        },
        AuxiliaryCircle {
            center: p2.center(),
            radius: p1.circumradius(),
        },
    ])
}

/// `|R1 − R2| <= |O1 O2| <= R1 + R2` within tolerance.
pub fn intersection_feasible(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    tol: Tolerance,
) -> Result<bool> {
    check_order(p1, p2)?;
    let (r1, r2) = (p1.circumradius(), p2.circumradius());
    let d = p1.center().distance_to(p2.center());
    let slack = tol.bound(r1.max(r2).max(d));
    Ok(d >= (r1 - r2).abs() - slack && d <= r1 + r2 + slack)
}

/// Intersection points of the auxiliary circles.
pub fn candidate_centers(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    tol: Tolerance,
) -> Result<Vec<PlanePoint>> {
    let [a, b] = auxiliary_circles(p1, p2)?;
    match circle_circle_intersection(a.center, a.radius, b.center, b.radius, tol) {
        Ok(hits) => Ok(hits.points()),
        Err(Error::CoincidentCircles) => Err(Error::CoincidentAuxiliaryCircles),
        Err(e) => Err(e),
    }
}

/// Angle at the second center between `M` and the vertex that must sit at
/// distance `d_star` from `M`: `cos α = (R1² + R2² − d*²) / (2 R1 R2)`.
/// `None` when `d_star` is outside `[|R1 − R2|, R1 + R2]`.
pub fn alignment_angle(r1: f64, r2: f64, d_star: f64, tol: Tolerance) -> Option<f64> {
    crate::geom::included_angle(r1, r2, d_star, tol)
}

/// Index of the vertex nearest to `point`; ties go to the lower index.
fn nearest_vertex(poly: &RegularPolygonSpec, point: PlanePoint) -> usize {
    let vertices = poly.vertices();
    (0..vertices.len())
        .min_by(|&i, &j| {
            vertices[i]
                .distance_to(point)
                .total_cmp(&vertices[j].distance_to(point))
        })
        .unwrap_or(0)
}

/// Rotations of `p2` about its center that put one of its vertices at the
/// same distance from `m_point` as vertex `ref_vertex` of `p1`.
///
/// The triangles `(O1, M, v)` and `(O2, M, v')` have the same side lengths
/// `R2, R1, d*`, so the rotation angle is the angle at `O1` between `M` and
/// `v`, taken with either sign. It is read off the coordinates rather than
/// through `acos`, which loses half the digits near 0 and π.
pub fn align_second_polygon(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    m_point: PlanePoint,
    ref_vertex: usize,
    tol: Tolerance,
) -> Result<Vec<RegularPolygonSpec>> {
    check_order(p1, p2)?;
    let (r1, r2) = (p1.circumradius(), p2.circumradius());
    let to_second = m_point.distance_to(p2.center());
    let gap = (to_second - r1).abs();
    if gap > tol.bound(r1.max(to_second)) {
        return Err(Error::NotACandidateCenter { gap });
    }
    if r1 <= tol.bound(0.0) || r2 <= tol.bound(0.0) {
        // a point polygon on either side: every rotation is equivalent
        return Ok(vec![*p2]);
    }

    let vertex = p1.vertex(ref_vertex);
    let alpha = {
        let a = p1.center().angle_to(vertex) - p1.center().angle_to(m_point);
        a.sin().atan2(a.cos())
    };
    let base = p2.center().angle_to(m_point);
    let plus = p2.with_phase(base + alpha);
    let minus = p2.with_phase(base - alpha);
    if plus.same_vertex_set(&minus, tol) {
        Ok(vec![plus])
    } else {
        Ok(vec![plus, minus])
    }
}

/// All configurations of concentric circles through one vertex of each
/// polygon, over both auxiliary-circle intersections and both rotation
/// signs. Empty when the auxiliary circles do not meet.
pub fn pair_polygons(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    tol: Tolerance,
) -> Result<PairingOutcome> {
    check_order(p1, p2)?;
    let mut outcome = PairingOutcome::default();
    for m_point in candidate_centers(p1, p2, tol)? {
        let ref_vertex = nearest_vertex(p1, m_point);
        let d_star = p1.vertex(ref_vertex).distance_to(m_point);
        let first = distance_multiset(p1, m_point);
        for aligned in align_second_polygon(p1, p2, m_point, ref_vertex, tol)? {
            let second = distance_multiset(&aligned, m_point);
            if !multiset_close(&first, &second, tol) {
                outcome.failures.push(VerificationFailure {
                    m_point,
                    aligned_second: aligned,
                    gap: multiset_gap(&first, &second),
                });
                continue;
            }
            let duplicate = outcome.results.iter().any(|r: &PairingResult| {
                r.m_point.distance_to(m_point) <= tol.bound(m_point.norm())
                    && r.aligned_second.same_vertex_set(&aligned, tol)
            });
            if duplicate {
                continue;
            }
            let matched = (0..aligned.n())
                .min_by(|&i, &j| {
                    let di = (aligned.vertex(i).distance_to(m_point) - d_star).abs();
                    let dj = (aligned.vertex(j).distance_to(m_point) - d_star).abs();
                    di.total_cmp(&dj)
                })
                .unwrap_or(0);
            outcome.results.push(PairingResult {
                m_point,
                aligned_second: aligned,
                circles: CircleFamily::new(m_point, first.clone())?,
                matched_vertex_pair: (ref_vertex, matched),
            });
        }
    }
    Ok(outcome)
}

/// Vertex indices `(i, j)` with `p1.vertex(i) == p2.vertex(j)` within `tol`.
pub fn shared_vertices(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    tol: Tolerance,
) -> Vec<(usize, usize)> {
    let theirs = p2.vertices();
    let mut shared = Vec::new();
    for (i, v) in p1.vertices().into_iter().enumerate() {
        for (j, w) in theirs.iter().enumerate() {
            if v.distance_to(*w) <= tol.bound(v.norm().max(w.norm())) {
                shared.push((i, j));
            }
        }
    }
    shared
}

/// Pairing for polygons known to share a vertex. The auxiliary circles
/// always meet in that case, so the result is never empty.
pub fn shared_vertex_pairing(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    tol: Tolerance,
) -> Result<PairingOutcome> {
    check_order(p1, p2)?;
    if shared_vertices(p1, p2, tol).is_empty() {
        return Err(Error::NoSharedVertex);
    }
    pair_polygons(p1, p2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn poly(n: usize, x: f64, y: f64, r: f64, phase: f64) -> RegularPolygonSpec {
        RegularPolygonSpec::new(n, PlanePoint::new(x, y), r, phase).unwrap()
    }

    #[test]
    fn auxiliary_examples() {
        let [a, b] =
            auxiliary_circles(&poly(3, 0.0, 0.0, 2.0, 0.0), &poly(3, 2.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!((a.center, a.radius), (PlanePoint::ORIGIN, 1.0));
        assert_eq!((b.center, b.radius), (PlanePoint::new(2.0, 0.0), 2.0));

        let p = poly(4, 1.0, 1.0, 3.0, 0.0);
        let [a, b] = auxiliary_circles(&p, &p).unwrap();
        assert_eq!(a, b);

        assert_eq!(
            auxiliary_circles(&poly(3, 0.0, 0.0, 1.0, 0.0), &poly(4, 0.0, 0.0, 1.0, 0.0)),
            Err(Error::MismatchedOrder(3, 4))
        );
    }

    #[test]
    fn feasibility_examples() {
        assert!(intersection_feasible(
            &poly(3, 0.0, 0.0, 2.0, 0.0),
            &poly(3, 2.0, 0.0, 1.0, 0.0),
            TOL
        )
        .unwrap());
        assert!(!intersection_feasible(
            &poly(3, 0.0, 0.0, 2.0, 0.0),
            &poly(3, 4.0, 0.0, 1.0, 0.0),
            TOL
        )
        .unwrap());
        assert!(intersection_feasible(
            &poly(3, 0.0, 0.0, 1.0, 0.0),
            &poly(3, 2.0, 0.0, 1.0, PI),
            TOL
        )
        .unwrap());
    }

    #[test]
    fn candidate_examples() {
        let c = candidate_centers(
            &poly(3, 0.0, 0.0, 2.0, 0.0),
            &poly(3, 2.0, 0.0, 1.0, 0.0),
            TOL,
        )
        .unwrap();
        assert_eq!(c.len(), 2);
        let y = 15f64.sqrt() / 4.0;
        assert!((c[0].x - 0.25).abs() < 1e-14 && (c[0].y - y).abs() < 1e-14);
        assert!((c[1].x - 0.25).abs() < 1e-14 && (c[1].y + y).abs() < 1e-14);

        let c = candidate_centers(
            &poly(3, 0.0, 0.0, 1.0, 0.0),
            &poly(3, 2.0, 0.0, 1.0, PI),
            TOL,
        )
        .unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].distance_to(PlanePoint::new(1.0, 0.0)) < 1e-14);

        let c = candidate_centers(
            &poly(3, 0.0, 0.0, 2.0, 0.0),
            &poly(3, 4.0, 0.0, 1.0, 0.0),
            TOL,
        )
        .unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn alignment_angle_examples() {
        let d = (5.0 - 2.0 * 3f64.sqrt()).sqrt();
        assert!((alignment_angle(2.0, 1.0, d, TOL).unwrap() - FRAC_PI_6).abs() < 1e-14);
        assert!((alignment_angle(2.0, 1.0, 3.0, TOL).unwrap() - PI).abs() < 1e-15);
        assert!(alignment_angle(2.0, 1.0, 1.0, TOL).unwrap().abs() < 1e-15);
    }

    #[test]
    fn alignment_matches_reference_distance() {
        let p1 = poly(5, 0.3, -0.2, 2.0, 0.4);
        let p2 = poly(5, 2.1, 0.9, 1.3, 2.0);
        for m in candidate_centers(&p1, &p2, TOL).unwrap() {
            for k in 0..5 {
                let d_star = p1.vertex(k).distance_to(m);
                let aligned = align_second_polygon(&p1, &p2, m, k, TOL).unwrap();
                assert_eq!(aligned.len(), 2);
                for a in aligned {
                    let hit = a
                        .vertices()
                        .iter()
                        .any(|v| (v.distance_to(m) - d_star).abs() < 1e-12);
                    assert!(hit);
                    assert_eq!(a.center(), p2.center());
                }
            }
        }
    }

    #[test]
    fn alignment_single_solution_at_extremes() {
        // M on the center line, reference vertex farthest from M
        let p1 = poly(3, 0.0, 0.0, 2.0, 0.0);
        let p2 = poly(3, 1.0, 0.0, 1.0, 0.7);
        let m = PlanePoint::new(-1.0, 0.0);
        let aligned = align_second_polygon(&p1, &p2, m, 0, TOL).unwrap();
        assert_eq!(aligned.len(), 1);
        assert!((aligned[0].vertex(0).distance_to(m) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn alignment_rejects_non_candidates() {
        let p1 = poly(3, 0.0, 0.0, 2.0, 0.0);
        let p2 = poly(3, 2.0, 0.0, 1.0, 0.0);
        assert!(matches!(
            align_second_polygon(&p1, &p2, PlanePoint::new(5.0, 5.0), 0, TOL),
            Err(Error::NotACandidateCenter { .. })
        ));
    }

    #[test]
    fn pairing_worked_triangles() {
        // M at relative angle 30° from the large triangle gives the worked family
        let p1 = poly(3, 0.0, 0.0, 2.0, FRAC_PI_6);
        let p2 = poly(3, 1.7, 1.1, 1.0, 0.25);
        let outcome = pair_polygons(&p1, &p2, TOL).unwrap();
        assert!(outcome.failures.is_empty());
        assert_eq!(outcome.results.len(), 4);
        for r in &outcome.results {
            assert!((r.m_point.distance_to(p1.center()) - 1.0).abs() < 1e-12);
            assert!((r.m_point.distance_to(p2.center()) - 2.0).abs() < 1e-12);
            let theirs = distance_multiset(&r.aligned_second, r.m_point);
            assert!(multiset_close(r.circles.radii(), &theirs, TOL));
        }

        let p1 = poly(3, 0.0, 0.0, 2.0, FRAC_PI_6);
        let p2 = poly(3, 1.0, -2.0, 1.0, 0.0);
        let outcome = pair_polygons(&p1, &p2, TOL).unwrap();
        let s3 = 3f64.sqrt();
        let worked = [
            (5.0 - 2.0 * s3).sqrt(),
            5f64.sqrt(),
            (5.0 + 2.0 * s3).sqrt(),
        ];
        assert!(outcome
            .results
            .iter()
            .any(|r| multiset_close(r.circles.radii(), &worked, TOL)));
    }

    #[test]
    fn identical_polygons_are_a_continuum() {
        let p = poly(4, 1.0, 2.0, 1.5, 0.3);
        assert_eq!(
            pair_polygons(&p, &p, TOL),
            Err(Error::CoincidentAuxiliaryCircles)
        );
    }

    #[test]
    fn far_polygons_have_no_pairing() {
        let outcome = pair_polygons(
            &poly(5, 0.0, 0.0, 1.0, 0.0),
            &poly(5, 9.0, 0.0, 1.0, 0.0),
            TOL,
        )
        .unwrap();
        assert!(outcome.results.is_empty());
    }

    #[test]
    fn shared_vertex_tangent_triangles() {
        let p1 = poly(3, 0.0, 0.0, 1.0, 0.0);
        let p2 = poly(3, 2.0, 0.0, 1.0, PI);
        let outcome = shared_vertex_pairing(&p1, &p2, TOL).unwrap();
        assert_eq!(outcome.results.len(), 1);
        let r = &outcome.results[0];
        assert!(r.m_point.distance_to(PlanePoint::new(1.0, 0.0)) < 1e-14);
        let s3 = 3f64.sqrt();
        assert!(multiset_close(r.circles.radii(), &[0.0, s3, s3], TOL));
    }

    #[test]
    fn shared_vertex_squares() {
        // vertex (0, 1) belongs to both squares
        let p1 = poly(4, 0.0, 0.0, 1.0, 0.0);
        let p2 = poly(4, 1.0, 1.0, 1.0, PI);
        assert!(!shared_vertices(&p1, &p2, TOL).is_empty());
        let outcome = shared_vertex_pairing(&p1, &p2, TOL).unwrap();
        assert!(outcome.failures.is_empty());
        let centers: Vec<PlanePoint> = outcome.results.iter().map(|r| r.m_point).collect();
        assert!(centers
            .iter()
            .any(|m| m.distance_to(PlanePoint::new(1.0, 0.0)) < 1e-12));
        assert!(centers
            .iter()
            .any(|m| m.distance_to(PlanePoint::new(0.0, 1.0)) < 1e-12));
    }

    #[test]
    fn no_shared_vertex() {
        let p1 = poly(4, 0.0, 0.0, 1.0, 0.0);
        let p2 = poly(4, 1.0, 1.0, 1.0, FRAC_PI_2 / 3.0);
        assert_eq!(
            shared_vertex_pairing(&p1, &p2, TOL),
            Err(Error::NoSharedVertex)
        );
    }
}
