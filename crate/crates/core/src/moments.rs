//! Cyclic averages of circle radii and the algebra that decides whether a
//! family of concentric circles carries two regular polygons.
//!
//! For radii `d_1..d_n` the cyclic averages are `S(m) = (1/n) Σ d_i^(2m)`,
//! `m = 1..n-1`. A family admits polygons iff
//!
//! * `2/3 <= S(1)² / S(2) <= 1`, and
//! * every higher average is fixed by the first two:
//!   `S(m) = S(1)^m + Σ_k C(m,2k) C(2k,k) / 2^k · (S(2) − S(1)²)^k S(1)^(m−2k)`
//!   for `m = 3..n-1`.
//!
//! The circumradii then follow from `S(1) = r1² + r2²` and
//! `S(2) − S(1)² = 2 r1² r2²`.

use crate::error::{Error, Result};
use crate::geom::{PlanePoint, Tolerance};

/// Concentric circles: a common center and ascending radii.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFamily {
    center: PlanePoint,
    radii: Vec<f64>,
}

impl CircleFamily {
    pub fn new(center: PlanePoint, radii: Vec<f64>) -> Result<Self> {
        if radii.len() < 3 {
            return Err(Error::InvalidFamily(format!(
                "{} radii, need at least 3",
                radii.len()
            )));
        }
        if !center.is_finite() {
            return Err(Error::InvalidFamily("center is not finite".into()));
        }
        if let Some(bad) = radii.iter().find(|r| !(**r >= 0.0 && r.is_finite())) {
            return Err(Error::InvalidFamily(format!(
                "radius {bad} is not a finite non-negative length"
            )));
        }
        if radii.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedRadii);
        }
        Ok(Self { center, radii })
    }

    /// Sorts the radii first. The flag reports whether the order changed.
    pub fn from_unsorted(center: PlanePoint, mut radii: Vec<f64>) -> Result<(Self, bool)> {
        let reordered = radii.windows(2).any(|w| w[0] > w[1]);
        radii.sort_by(f64::total_cmp);
        Ok((Self::new(center, radii)?, reordered))
    }

    pub fn n(&self) -> usize {
        self.radii.len()
    }

    pub fn center(&self) -> PlanePoint {
        self.center
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn largest(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    pub fn translated(&self, offset: PlanePoint) -> Self {
        Self {
            center: self.center + offset,
            radii: self.radii.clone(),
        }
    }
}

/// `S(m)` for `m = 1..n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicAverages {
    n: usize,
    values: Vec<f64>,
}

impl CyclicAverages {
    pub fn from_family(family: &CircleFamily) -> Self {
        cyclic_averages(family)
    }

    /// Build from externally computed averages; `values[0]` is `S(1)`.
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        if n < 3 || values.len() != n - 1 {
            return Err(Error::InvalidFamily(format!(
                "{} averages for n = {n}, expected n − 1",
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S(m)`, the mean of the `2m`-th powers.
    pub fn get(&self, m: usize) -> f64 {
        self.values[m - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Neumaier compensated sum.
fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for t in terms {
        let next = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - next) + t;
        } else {
            carry += (t - next) + sum;
        }
        sum = next;
    }
    sum + carry
}

pub fn cyclic_averages(family: &CircleFamily) -> CyclicAverages {
    let n = family.n();
    let squares: Vec<f64> = family.radii().iter().map(|d| d * d).collect();
    let values = (1..n)
        .map(|m| compensated_sum(squares.iter().map(|s| s.powi(m as i32))) / n as f64)
        .collect();
    CyclicAverages { n, values }
}

fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `C(m, 2k) · C(2k, k)`, exact while it fits in 128 bits.
fn moment_coefficient(m: usize, k: usize) -> f64 {
    let (m, k) = (m as u32, k as u32);
    match binomial(m, 2 * k).checked_mul(binomial(2 * k, k)) {
        Some(c) => c as f64,
        None => binomial(m, 2 * k) as f64 * binomial(2 * k, k) as f64,
    }
}

/// `Σ d_i^(2m)` predicted for a polygon of circumradius `r1` seen from a
/// point at distance `r2` from its center (and, symmetrically, vice versa).
pub fn two_radius_power_sum(r1: f64, r2: f64, n: usize, m: usize) -> Result<f64> {
    if m < 1 || m + 1 > n {
        return Err(Error::InvalidMomentOrder {
            m,
            max: n.saturating_sub(1),
        });
    }
    let sum_sq = r1 * r1 + r2 * r2;
    let prod_sq = (r1 * r2) * (r1 * r2);
    let total = compensated_sum((0..=m / 2).map(|k| {
        moment_coefficient(m, k) * prod_sq.powi(k as i32) * sum_sq.powi((m - 2 * k) as i32)
    }));
    Ok(n as f64 * total)
}

/// Ratio `S(1)² / S(2)` and whether it lies in `[2/3, 1]`.
pub fn condition_one(av: &CyclicAverages, tol: Tolerance) -> (bool, f64) {
    let (s1, s2) = (av.get(1), av.get(2));
    let ratio = if s2 > 0.0 { s1 * s1 / s2 } else { 1.0 };
    let slack = tol.bound(1.0);
    let ok = ratio >= 2.0 / 3.0 - slack && ratio <= 1.0 + slack;
    (ok, ratio)
}

/// Predicted `S(m)` from `S(1)` and `S(2)`.
pub(crate) fn predicted_average(s1: f64, spread: f64, m: usize) -> f64 {
    compensated_sum((0..=m / 2).map(|k| {
        moment_coefficient(m, k) / 2f64.powi(k as i32)
            * spread.powi(k as i32)
            * s1.powi((m - 2 * k) as i32)
    }))
}

/// Relative residuals of the higher-moment identities, one per
/// `m = 3..n-1`. Empty (and ok) for triangles.
pub fn condition_two(av: &CyclicAverages, tol: Tolerance) -> (bool, Vec<f64>) {
    let (s1, s2) = (av.get(1), av.get(2));
    let mut spread = s2 - s1 * s1;
    if spread < 0.0 && spread >= -tol.bound(s1 * s1) {
        spread = 0.0;
    }
    let residuals: Vec<f64> = (3..av.n())
        .map(|m| {
            let actual = av.get(m);
            (actual - predicted_average(s1, spread, m)).abs() / actual.abs().max(1.0)
        })
        .collect();
    let limit = tol.bound(1.0);
    let ok = residuals.iter().all(|r| *r <= limit);
    (ok, residuals)
}

/// Circumradii recovered from a circle family, larger first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiiPair {
    pub r1: f64,
    pub r2: f64,
    /// Zero discriminant: the two polygons coincide in size and only one
    /// polygon exists.
    pub degenerate: bool,
}

/// `3 S(1)² − 2 S(2)`, which equals `(r1² − r2²)²`.
pub fn discriminant(av: &CyclicAverages) -> f64 {
    let s1 = av.get(1);
    3.0 * s1 * s1 - 2.0 * av.get(2)
}

/// The discriminant is `(r1² − r2²)²`, so a relative radius tolerance `ε`
/// maps to `ε²` here; below that, rounding in the averages dominates.
fn discriminant_slack(av: &CyclicAverages, tol: Tolerance) -> f64 {
    let s1 = av.get(1);
    let eps = tol.relative_eps();
    tol.absolute_floor() + (eps * eps).max(64.0 * f64::EPSILON) * 3.0 * s1 * s1
}

fn radii_from(av: &CyclicAverages, root: f64, degenerate: bool) -> RadiiPair {
    let s1 = av.get(1);
    let r1_sq = (s1 + root) / 2.0;
    let r2_sq = if degenerate {
        r1_sq
    } else if r1_sq > 0.0 {
        // r1² r2² = (S(2) − S(1)²) / 2 avoids cancelling S(1) against the root
        let product = ((av.get(2) - s1 * s1) / 2.0).max(0.0);
        (product / r1_sq).min(r1_sq)
    } else {
        0.0
    };
    RadiiPair {
        r1: r1_sq.max(0.0).sqrt(),
        r2: r2_sq.max(0.0).sqrt(),
        degenerate,
    }
}

pub fn recover_circumradii(av: &CyclicAverages, tol: Tolerance) -> Result<RadiiPair> {
    let disc = discriminant(av);
    let slack = discriminant_slack(av, tol);
    if disc < -slack {
        return Err(Error::InfeasibleMoments { discriminant: disc });
    }
    let degenerate = disc.abs() <= slack;
    let root = if degenerate { 0.0 } else { disc.sqrt() };
    Ok(radii_from(av, root, degenerate))
}

/// Like [`recover_circumradii`] but clamps any negative discriminant to 0.
/// Gives a best-effort pair for infeasible families.
pub fn recover_circumradii_clamped(av: &CyclicAverages, tol: Tolerance) -> RadiiPair {
    let disc = discriminant(av);
    let degenerate = disc <= discriminant_slack(av, tol);
    let root = if degenerate { 0.0 } else { disc.sqrt() };
    radii_from(av, root, degenerate)
}

/// Both feasibility conditions for a circle family.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub condition1_ok: bool,
    pub condition1_ratio: f64,
    pub condition2_ok: bool,
    /// One entry per `m = 3..n-1`.
    pub condition2_residuals: Vec<f64>,
    pub degenerate_single_polygon: bool,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.condition1_ok && self.condition2_ok
    }

    /// Moment order and value of the largest condition-two residual.
    pub fn worst_residual(&self) -> Option<(usize, f64)> {
        self.condition2_residuals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, r)| (i + 3, *r))
    }
}

pub fn feasibility(av: &CyclicAverages, tol: Tolerance) -> FeasibilityReport {
    let (condition1_ok, condition1_ratio) = condition_one(av, tol);
    let (condition2_ok, condition2_residuals) = condition_two(av, tol);
    let degenerate_single_polygon =
        condition1_ok && discriminant(av).abs() <= discriminant_slack(av, tol);
    FeasibilityReport {
        condition1_ok,
        condition1_ratio,
        condition2_ok,
        condition2_residuals,
        degenerate_single_polygon,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn family(radii: &[f64]) -> CircleFamily {
        CircleFamily::new(PlanePoint::ORIGIN, radii.to_vec()).unwrap()
    }

    fn worked_square() -> Vec<f64> {
        let s3 = 3f64.sqrt();
        vec![
            (5.0 - 2.0 * s3).sqrt(),
            s3,
            7f64.sqrt(),
            (5.0 + 2.0 * s3).sqrt(),
        ]
    }

    fn worked_triangle() -> Vec<f64> {
        let s3 = 3f64.sqrt();
        vec![
            (5.0 - 2.0 * s3).sqrt(),
            5f64.sqrt(),
            (5.0 + 2.0 * s3).sqrt(),
        ]
    }

    #[test]
    fn family_validation() {
        assert!(CircleFamily::new(PlanePoint::ORIGIN, vec![1.0, 2.0]).is_err());
        assert_eq!(
            CircleFamily::new(PlanePoint::ORIGIN, vec![2.0, 1.0, 3.0]),
            Err(Error::UnsortedRadii)
        );
        assert!(CircleFamily::new(PlanePoint::ORIGIN, vec![-1.0, 1.0, 3.0]).is_err());
        let (f, reordered) =
            CircleFamily::from_unsorted(PlanePoint::ORIGIN, vec![2.0, 1.0, 3.0]).unwrap();
        assert!(reordered);
        assert_eq!(f.radii(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(63, 31), 916312070471295267);
        assert_eq!(moment_coefficient(3, 1), 6.0);
        assert_eq!(moment_coefficient(4, 2), 6.0);
    }

    #[test]
    fn averages_examples() {
        let av = cyclic_averages(&family(&[1.0, 1.0, 2.0]));
        assert_eq!(av.values(), &[2.0, 6.0]);

        // (5 ∓ 2√3)³ sum to 2(125 + 180) = 610; 27 + 343 = 370; Σ = 980
        let av = cyclic_averages(&family(&worked_square()));
        assert!((av.get(1) - 5.0).abs() < 1e-14);
        assert!((av.get(2) - 33.0).abs() < 1e-13);
        assert!((av.get(3) - 245.0).abs() < 1e-12);

        let av = cyclic_averages(&family(&[1.0; 4]));
        assert_eq!(av.values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(two_radius_power_sum(2.0, 1.0, 4, 1).unwrap(), 20.0);
        assert_eq!(two_radius_power_sum(2.0, 1.0, 4, 3).unwrap(), 980.0);
        assert_eq!(
            two_radius_power_sum(1.5, 0.0, 5, 4).unwrap(),
            5.0 * 1.5f64.powi(8)
        );
        assert_eq!(
            two_radius_power_sum(1.0, 1.0, 4, 4),
            Err(Error::InvalidMomentOrder { m: 4, max: 3 })
        );
        assert!(two_radius_power_sum(1.0, 1.0, 4, 0).is_err());
    }

    #[test]
    fn condition_one_examples() {
        let (ok, ratio) = condition_one(&cyclic_averages(&family(&[1.0, 1.0, 2.0])), TOL);
        assert!(ok);
        assert!((ratio - 2.0 / 3.0).abs() < 1e-15);

        let (ok, ratio) = condition_one(&cyclic_averages(&family(&[1.0; 4])), TOL);
        assert!(ok);
        assert_eq!(ratio, 1.0);

        let (ok, ratio) = condition_one(&cyclic_averages(&family(&[1.0, 1.0, 10.0])), TOL);
        assert!(!ok);
        assert!((ratio - 34.0 * 34.0 / 3334.0).abs() < 1e-12);
        assert!((ratio - 0.3467).abs() < 1e-4);
    }

    #[test]
    fn condition_two_examples() {
        let (ok, res) = condition_two(&cyclic_averages(&family(&worked_square())), TOL);
        assert!(ok);
        assert_eq!(res.len(), 1);
        assert!(res[0] < 1e-14);

        let (ok, res) = condition_two(&cyclic_averages(&family(&[1.0, 1.0, 2.0])), TOL);
        assert!(ok && res.is_empty());

        // Σd⁶ = 1 + 64 + 729 + 4096 = 4890, so S = 7.5, 88.5, 1222.5;
        // predicted 421.875 + 3 · 32.25 · 7.5 = 1147.5
        let av = cyclic_averages(&family(&[1.0, 2.0, 3.0, 4.0]));
        assert_eq!(av.values(), &[7.5, 88.5, 1222.5]);
        let (ok, res) = condition_two(&av, TOL);
        assert!(!ok);
        assert!((res[0] - 75.0 / 1222.5).abs() < 1e-15);
    }

    #[test]
    fn recovery_examples() {
        // Σd² = 15, Σd⁴ = 99
        let pair = recover_circumradii(&cyclic_averages(&family(&worked_triangle())), TOL).unwrap();
        assert!((pair.r1 - 2.0).abs() < 1e-14 && (pair.r2 - 1.0).abs() < 1e-14);
        assert!(!pair.degenerate);

        let pair = recover_circumradii(&cyclic_averages(&family(&[1.0, 1.0, 2.0])), TOL).unwrap();
        assert_eq!((pair.r1, pair.r2, pair.degenerate), (1.0, 1.0, true));

        let pair = recover_circumradii(&cyclic_averages(&family(&[1.0; 4])), TOL).unwrap();
        assert_eq!((pair.r1, pair.r2, pair.degenerate), (1.0, 0.0, false));
    }

    #[test]
    fn recovery_rejects_negative_discriminant() {
        let av = cyclic_averages(&family(&[1.0, 2.0, 3.0, 4.0]));
        assert!(matches!(
            recover_circumradii(&av, TOL),
            Err(Error::InfeasibleMoments { discriminant }) if (discriminant + 8.25).abs() < 1e-12
        ));
        let clamped = recover_circumradii_clamped(&av, TOL);
        assert!(clamped.degenerate);
        assert!((clamped.r1 - 3.75f64.sqrt()).abs() < 1e-14);
        assert_eq!(clamped.r1, clamped.r2);
    }

    #[test]
    fn report_collects_both_conditions() {
        let report = feasibility(&cyclic_averages(&family(&[1.0, 2.0, 3.0, 4.0])), TOL);
        assert!(!report.feasible());
        assert!(!report.condition1_ok);
        assert_eq!(report.worst_residual().unwrap().0, 3);

        let report = feasibility(&cyclic_averages(&family(&[1.0, 1.0, 2.0])), TOL);
        assert!(report.feasible() && report.degenerate_single_polygon);
    }
}
