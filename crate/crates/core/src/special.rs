//! Closed forms for three circles (equilateral triangles) and four circles
//! (squares).

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::geom::{heron_area_with, Tolerance};

fn require_sorted(radii: &[f64]) -> Result<()> {
    if radii.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
        return Err(Error::InvalidFamily(format!(
            "radii {radii:?} must be finite and non-negative"
        )));
    }
    if radii.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::UnsortedRadii);
    }
    Ok(())
}

/// Why a family of four circles carries no squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareRejection {
    /// `d1² + d4² != d2² + d3²`.
    SumCondition,
    /// The associated triangle `(d1, d4, √2·d2)` does not exist.
    AssociatedTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormPair {
    pub exists: bool,
    /// Only one polygon exists (the two circumradii coincide).
    pub degenerate: bool,
    pub r1: f64,
    pub r2: f64,
    pub rejection: Option<SquareRejection>,
}

impl ClosedFormPair {
    fn rejected(rejection: Option<SquareRejection>) -> Self {
        Self {
            exists: false,
            degenerate: false,
            r1: f64::NAN,
            r2: f64::NAN,
            rejection,
        }
    }
}

/// Three circles carry two equilateral triangles iff `d1, d2, d3` are the
/// sides of a triangle. With `Δ` its area,
/// `r1,2² = (d1² + d2² + d3² ± 4√3 Δ) / 6`.
pub fn triangle_feasibility(d1: f64, d2: f64, d3: f64, tol: Tolerance) -> Result<ClosedFormPair> {
    require_sorted(&[d1, d2, d3])?;
    let area = match heron_area_with(d1, d2, d3, tol) {
        Ok(a) => a,
        Err(Error::TriangleInequalityViolated(..)) => return Ok(ClosedFormPair::rejected(None)),
        Err(e) => return Err(e),
    };
    let degenerate = area == 0.0;
    let sum_sq = d1 * d1 + d2 * d2 + d3 * d3;
    let shift = 4.0 * 3f64.sqrt() * area;
    let r1_sq = (sum_sq + shift) / 6.0;
    let r2_sq = (sum_sq - shift) / 6.0;
    Ok(ClosedFormPair {
        exists: true,
        degenerate,
        r1: r1_sq.sqrt(),
        r2: clamp_square(r2_sq, r1_sq, tol).sqrt(),
        rejection: None,
    })
}

/// Tiny negative squares from rounding become 0.
fn clamp_square(value: f64, scale: f64, tol: Tolerance) -> f64 {
    if value < 0.0 && value >= -tol.bound(scale) {
        0.0
    } else {
        value
    }
}

fn check_distance(r1: f64, r2: f64, d1: f64, tol: Tolerance) -> Result<f64> {
    heron_area_with(r1, r2, d1, tol)
}

/// The other two triangle-family radii given the circumradii and `d1`.
pub fn triangle_circle_radii(r1: f64, r2: f64, d1: f64, tol: Tolerance) -> Result<(f64, f64)> {
    let area = check_distance(r1, r2, d1, tol)?;
    let base = 3.0 * (r1 * r1 + r2 * r2) - d1 * d1;
    let shift = 4.0 * 3f64.sqrt() * area;
    let scale = base.abs();
    let d2_sq = clamp_square((base - shift) / 2.0, scale, tol);
    let d3_sq = clamp_square((base + shift) / 2.0, scale, tol);
    Ok((d2_sq.max(0.0).sqrt(), d3_sq.max(0.0).sqrt()))
}

/// `8 Σd⁶ + (Σd²)³ − 6 Σd² Σd⁴` and the product
/// `(d1²+d2²−d3²−d4²)(d1²+d3²−d2²−d4²)(d1²+d4²−d2²−d3²)`. The first is
/// three times the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicResidual {
    pub moment_form: f64,
    pub factored: f64,
}

pub fn square_cubic_residual(d: [f64; 4]) -> CubicResidual {
    let sq = d.map(|x| x * x);
    let p1: f64 = sq.iter().sum();
    let p2: f64 = sq.iter().map(|s| s * s).sum();
    let p3: f64 = sq.iter().map(|s| s * s * s).sum();
    let [a, b, c, e] = sq;
    CubicResidual {
        moment_form: 8.0 * p3 + p1 * p1 * p1 - 6.0 * p1 * p2,
        factored: (a + b - c - e) * (a + c - b - e) * (a + e - b - c),
    }
}

/// The four associated triangles of a square family: two outer radii with
/// √2 times an inner one, or two inner radii with √2 times an outer one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociatedTriangleSet {
    pub sides: [[f64; 3]; 4],
    pub areas: [f64; 4],
    /// `3 (Σd²)² − 8 Σd⁴`, which equals `64 Δ²` for every triangle.
    pub moment_gap: f64,
}

impl AssociatedTriangleSet {
    /// Largest `|64 Δ² − moment_gap|` over the four triangles.
    pub fn identity_residual(&self) -> f64 {
        self.areas
            .iter()
            .map(|a| (64.0 * a * a - self.moment_gap).abs())
            .fold(0.0, f64::max)
    }

    pub fn area_spread(&self) -> f64 {
        let max = self.areas.iter().cloned().fold(f64::MIN, f64::max);
        let min = self.areas.iter().cloned().fold(f64::MAX, f64::min);
        max - min
    }
}

fn sum_condition_gap(d: [f64; 4]) -> f64 {
    (d[0] * d[0] + d[3] * d[3]) - (d[1] * d[1] + d[2] * d[2])
}

fn sum_condition_holds(d: [f64; 4], tol: Tolerance) -> bool {
    sum_condition_gap(d).abs() <= tol.bound(d[3] * d[3])
}

pub fn associated_triangles(d: [f64; 4], tol: Tolerance) -> Result<AssociatedTriangleSet> {
    require_sorted(&d)?;
    if !sum_condition_holds(d, tol) {
        return Err(Error::SumConditionViolated {
            gap: sum_condition_gap(d),
        });
    }
    let [d1, d2, d3, d4] = d;
    let sides = [
        [d1, d4, SQRT_2 * d2],
        [d1, d4, SQRT_2 * d3],
        [d2, d3, SQRT_2 * d4],
        [d2, d3, SQRT_2 * d1],
    ];
    let mut areas = [0.0; 4];
    for (area, s) in areas.iter_mut().zip(&sides) {
        *area = heron_area_with(s[0], s[1], s[2], tol)?;
    }
    let sq = d.map(|x| x * x);
    let p1: f64 = sq.iter().sum();
    let p2: f64 = sq.iter().map(|s| s * s).sum();
    Ok(AssociatedTriangleSet {
        sides,
        areas,
        moment_gap: 3.0 * p1 * p1 - 8.0 * p2,
    })
}

/// Four circles carry two squares iff the outer and inner radii have equal
/// square sums and the associated triangle `(d1, d4, √2·d2)` exists. Then
/// `r1,2² = (d1² + d4²) / 4 ± Δ`.
pub fn square_feasibility(d: [f64; 4], tol: Tolerance) -> Result<ClosedFormPair> {
    require_sorted(&d)?;
    if !sum_condition_holds(d, tol) {
        return Ok(ClosedFormPair::rejected(Some(
            SquareRejection::SumCondition,
        )));
    }
    let [d1, d2, _, d4] = d;
    let area = match heron_area_with(d1, d4, SQRT_2 * d2, tol) {
        Ok(a) => a,
        Err(Error::TriangleInequalityViolated(..)) => {
            return Ok(ClosedFormPair::rejected(Some(
                SquareRejection::AssociatedTriangle,
            )))
        }
        Err(e) => return Err(e),
    };
    let quarter = (d1 * d1 + d4 * d4) / 4.0;
    let r1_sq = quarter + area;
    Ok(ClosedFormPair {
        exists: true,
        degenerate: area == 0.0,
        r1: r1_sq.sqrt(),
        r2: clamp_square(quarter - area, r1_sq, tol).sqrt(),
        rejection: None,
    })
}

/// The other three square-family radii given the circumradii and `d1`.
/// Not sorted: `d2 <= d3` always, but `d4` may fall anywhere.
pub fn square_circle_radii(r1: f64, r2: f64, d1: f64, tol: Tolerance) -> Result<(f64, f64, f64)> {
    let area = check_distance(r1, r2, d1, tol)?;
    let sum_sq = r1 * r1 + r2 * r2;
    let d2_sq = clamp_square(sum_sq - 4.0 * area, sum_sq, tol);
    let d3_sq = sum_sq + 4.0 * area;
    let d4_sq = clamp_square(2.0 * sum_sq - d1 * d1, sum_sq, tol);
    Ok((d2_sq.max(0.0).sqrt(), d3_sq.sqrt(), d4_sq.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn s3() -> f64 {
        3f64.sqrt()
    }

    #[test]
    fn triangle_worked_family() {
        // 16Δ² = 2(Σ pairwise d²d²) − Σd⁴ = 2 · 63 − 99 = 27
        let (a, b, c) = (5.0 - 2.0 * s3(), 5.0, 5.0 + 2.0 * s3());
        let sixteen = 2.0 * (a * b + b * c + c * a) - a * a - b * b - c * c;
        assert!((sixteen - 27.0).abs() < 1e-12);

        let f = triangle_feasibility(a.sqrt(), b.sqrt(), c.sqrt(), TOL).unwrap();
        assert!(f.exists && !f.degenerate);
        assert!((f.r1 - 2.0).abs() < 1e-14 && (f.r2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn triangle_degenerate_and_missing() {
        let f = triangle_feasibility(1.0, 1.0, 2.0, TOL).unwrap();
        assert!(f.exists && f.degenerate);
        assert_eq!((f.r1, f.r2), (1.0, 1.0));
        assert!(!triangle_feasibility(1.0, 1.0, 3.0, TOL).unwrap().exists);
        assert_eq!(
            triangle_feasibility(2.0, 1.0, 3.0, TOL),
            Err(Error::UnsortedRadii)
        );
    }

    #[test]
    fn triangle_radii_examples() {
        let d1 = (5.0 - 2.0 * s3()).sqrt();
        let (d2, d3) = triangle_circle_radii(2.0, 1.0, d1, TOL).unwrap();
        assert!((d2 - 5f64.sqrt()).abs() < 1e-14);
        assert!((d3 - (5.0 + 2.0 * s3()).sqrt()).abs() < 1e-14);

        assert_eq!(
            triangle_circle_radii(1.0, 1.0, 2.0, TOL).unwrap(),
            (1.0, 1.0)
        );
        let (d2, d3) = triangle_circle_radii(1.7, 0.0, 1.7, TOL).unwrap();
        assert!((d2 - 1.7).abs() < 1e-14 && (d3 - 1.7).abs() < 1e-14);
        assert!(triangle_circle_radii(2.0, 1.0, 3.5, TOL).is_err());
    }

    #[test]
    fn square_worked_family() {
        let d = [
            (5.0 - 2.0 * s3()).sqrt(),
            s3(),
            7f64.sqrt(),
            (5.0 + 2.0 * s3()).sqrt(),
        ];
        let f = square_feasibility(d, TOL).unwrap();
        assert!(f.exists && !f.degenerate);
        assert!((f.r1 - 2.0).abs() < 1e-14 && (f.r2 - 1.0).abs() < 1e-14);

        let t = associated_triangles(d, TOL).unwrap();
        assert!((t.moment_gap - 144.0).abs() < 1e-11);
        for a in t.areas {
            assert!((a - 1.5).abs() < 1e-13, "{a}");
        }
        assert!(t.identity_residual() < 1e-11);
    }

    #[test]
    fn square_all_equal() {
        let f = square_feasibility([1.0; 4], TOL).unwrap();
        assert!(f.exists && !f.degenerate);
        assert!((f.r1 - 1.0).abs() < 1e-15);
        assert_eq!(f.r2, 0.0);
        let t = associated_triangles([1.0; 4], TOL).unwrap();
        for a in t.areas {
            assert!((a - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn square_rejections() {
        let f = square_feasibility([1.0, 2.0, 3.0, 4.0], TOL).unwrap();
        assert!(!f.exists);
        assert_eq!(f.rejection, Some(SquareRejection::SumCondition));
        // sums agree (1 + 49 = 1 + 49) but (1, 7, √2) is not a triangle
        let f = square_feasibility([1.0, 1.0, 7.0, 7.0], TOL).unwrap();
        assert!(!f.exists);
        assert_eq!(f.rejection, Some(SquareRejection::AssociatedTriangle));
        assert!(matches!(
            associated_triangles([1.0, 2.0, 3.0, 4.0], TOL),
            Err(Error::SumConditionViolated { .. })
        ));
        assert_eq!(
            square_feasibility([1.0, 3.0, 2.0, 4.0], TOL),
            Err(Error::UnsortedRadii)
        );
    }

    #[test]
    fn cubic_residual_examples() {
        let d = [
            (5.0 - 2.0 * s3()).sqrt(),
            s3(),
            7f64.sqrt(),
            (5.0 + 2.0 * s3()).sqrt(),
        ];
        let c = square_cubic_residual(d);
        assert!(c.moment_form.abs() < 1e-9 && c.factored.abs() < 1e-9);

        let c = square_cubic_residual([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(c.factored, 800.0);
        assert_eq!(c.moment_form, 2400.0);

        let c = square_cubic_residual([1.3; 4]);
        assert!(c.moment_form.abs() < 1e-12 && c.factored == 0.0);
    }

    #[test]
    fn square_radii_examples() {
        let d1 = (5.0 - 2.0 * s3()).sqrt();
        let (d2, d3, d4) = square_circle_radii(2.0, 1.0, d1, TOL).unwrap();
        assert!((d2 - s3()).abs() < 1e-14);
        assert!((d3 - 7f64.sqrt()).abs() < 1e-14);
        assert!((d4 - (5.0 + 2.0 * s3()).sqrt()).abs() < 1e-14);

        let (d2, d3, d4) = square_circle_radii(1.0, 1.0, 2.0, TOL).unwrap();
        assert!((d2 - SQRT_2).abs() < 1e-15 && (d3 - SQRT_2).abs() < 1e-15);
        assert_eq!(d4, 0.0);

        assert_eq!(
            square_circle_radii(0.8, 0.0, 0.8, TOL).unwrap(),
            (0.8, 0.8, 0.8)
        );
    }

    #[test]
    fn degenerate_square_family() {
        // equal circumradii give a collinear associated triangle
        let (d2, d3, d4) = square_circle_radii(1.0, 1.0, 0.6, TOL).unwrap();
        let mut d = [0.6, d2, d3, d4];
        d.sort_by(f64::total_cmp);
        let t = associated_triangles(d, TOL).unwrap();
        assert!(t.moment_gap.abs() < 1e-12);
        assert!(t.areas.iter().all(|a| *a < 1e-6), "{:?}", t.areas);
        let f = square_feasibility(d, TOL).unwrap();
        assert!(f.exists);
        assert!((f.r1 - 1.0).abs() < 1e-6 && (f.r2 - 1.0).abs() < 1e-6);
    }
}
