//! What each subcommand computes, as serializable records.

use concentric_gons::batch::Execution;
use concentric_gons::moments::{
    cyclic_averages, feasibility, recover_circumradii, recover_circumradii_clamped,
};
use concentric_gons::oracle::{angle_sweep, power_sum_residual, DEFAULT_GRID};
use concentric_gons::pairing::{auxiliary_circles, candidate_centers, pair_polygons};
use concentric_gons::reconstruct::{reconstruct_polygons, PlacedPolygon, Reconstruction};
use concentric_gons::special::{
    square_feasibility, triangle_feasibility, ClosedFormPair, SquareRejection,
};
use concentric_gons::{
    CircleFamily, Error, FeasibilityReport, PlanePoint, RadiiPair, RegularPolygonSpec, Tolerance,
};
use serde::Serialize;

use crate::document::{Point, PolygonRecord, FORMAT};

/// Largest power-sum residual accepted by `verify`.
pub const POWER_SUM_LIMIT: f64 = 1e-10;
/// Largest angle-sweep multiset residual accepted by `verify`, relative to
/// `max(1, largest radius)`.
pub const SWEEP_LIMIT: f64 = 1e-8;
/// Allowed disagreement between the sweep and the reconstruction residual.
pub const SWEEP_AGREEMENT: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct MomentResidual {
    pub m: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionOne {
    pub ok: bool,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionTwo {
    pub ok: bool,
    pub residuals: Vec<MomentResidual>,
    pub worst: Option<MomentResidual>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RadiiRecord {
    pub r1: f64,
    pub r2: f64,
    pub degenerate: bool,
    /// Best-effort values from a clamped discriminant; the family is
    /// infeasible.
    pub clamped: bool,
}

impl RadiiRecord {
    fn new(pair: RadiiPair, clamped: bool) -> Self {
        RadiiRecord {
            r1: pair.r1,
            r2: pair.r2,
            degenerate: pair.degenerate,
            clamped,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormRecord {
    pub shape: &'static str,
    pub exists: bool,
    pub degenerate: bool,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub rejection: Option<&'static str>,
}

impl ClosedFormRecord {
    fn new(shape: &'static str, pair: ClosedFormPair) -> Self {
        ClosedFormRecord {
            shape,
            exists: pair.exists,
            degenerate: pair.degenerate,
            r1: pair.exists.then_some(pair.r1),
            r2: pair.exists.then_some(pair.r2),
            rejection: match pair.rejection {
                Some(SquareRejection::SumCondition) => Some("sum_condition"),
                Some(SquareRejection::AssociatedTriangle) => Some("associated_triangle"),
                None if !pair.exists => Some("triangle_inequality"),
                None => None,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub format: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub center: Point,
    pub radii: Vec<f64>,
    pub feasible: bool,
    pub condition_one: ConditionOne,
    pub condition_two: ConditionTwo,
    pub circumradii: RadiiRecord,
    pub closed_form: Option<ClosedFormRecord>,
}

fn moment_residuals(report: &FeasibilityReport) -> Vec<MomentResidual> {
    report
        .condition2_residuals
        .iter()
        .enumerate()
        .map(|(i, r)| MomentResidual {
            m: i + 3,
            residual: *r,
        })
        .collect()
}

pub fn check(family: &CircleFamily, tol: Tolerance) -> CheckReport {
    let averages = cyclic_averages(family);
    let report = feasibility(&averages, tol);
    let circumradii = match recover_circumradii(&averages, tol) {
        Ok(pair) if report.feasible() => RadiiRecord::new(pair, false),
        _ => RadiiRecord::new(recover_circumradii_clamped(&averages, tol), true),
    };
    let d = family.radii();
    let closed_form = match d.len() {
        3 => triangle_feasibility(d[0], d[1], d[2], tol)
            .ok()
            .map(|p| ClosedFormRecord::new("triangle", p)),
        4 => square_feasibility([d[0], d[1], d[2], d[3]], tol)
            .ok()
            .map(|p| ClosedFormRecord::new("square", p)),
        _ => None,
    };
    CheckReport {
        format: FORMAT,
        command: "check",
        n: family.n(),
        center: family.center().into(),
        radii: d.to_vec(),
        feasible: report.feasible(),
        condition_one: ConditionOne {
            ok: report.condition1_ok,
            ratio: report.condition1_ratio,
        },
        condition_two: ConditionTwo {
            ok: report.condition2_ok,
            residuals: moment_residuals(&report),
            worst: report
                .worst_residual()
                .map(|(m, residual)| MomentResidual { m, residual }),
        },
        circumradii,
        closed_form,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlacedRecord {
    pub role: &'static str,
    #[serde(flatten)]
    pub polygon: PolygonRecord,
    pub point_polygon: bool,
    pub residual: f64,
}

impl PlacedRecord {
    fn new(role: &'static str, placed: &PlacedPolygon) -> Self {
        PlacedRecord {
            role,
            polygon: (&placed.polygon).into(),
            point_polygon: placed.point_polygon,
            residual: placed.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructReport {
    pub format: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub center: Point,
    pub radii: Vec<f64>,
    pub circumradii: RadiiRecord,
    pub polygons: [PlacedRecord; 2],
}

pub fn reconstruct(
    family: &CircleFamily,
    tol: Tolerance,
) -> Result<(ReconstructReport, Reconstruction), Error> {
    let rec = reconstruct_polygons(family, tol)?;
    let report = ReconstructReport {
        format: FORMAT,
        command: "reconstruct",
        n: family.n(),
        center: family.center().into(),
        radii: family.radii().to_vec(),
        circumradii: RadiiRecord::new(rec.radii, false),
        polygons: [
            PlacedRecord::new("first", &rec.first),
            PlacedRecord::new("second", &rec.second),
        ],
    };
    Ok((report, rec))
}

#[derive(Debug, Clone, Serialize)]
pub struct CircleRecord {
    pub center: Point,
    pub radius: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub m_point: Point,
    pub aligned_second: PolygonRecord,
    pub radii: Vec<f64>,
    pub matched_vertices: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub m_point: Point,
    pub aligned_second: PolygonRecord,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub format: &'static str,
    pub command: &'static str,
    pub first: PolygonRecord,
    pub second: PolygonRecord,
    pub auxiliary_circles: Vec<CircleRecord>,
    /// Every point of the auxiliary circles works; no results are listed.
    pub coincident: bool,
    pub results: Vec<PairRecord>,
    pub failures: Vec<FailureRecord>,
}

impl PairReport {
    pub fn is_empty(&self) -> bool {
        self.results.is_empty()
    }
}

/// Fails only on mismatched vertex counts.
pub fn pair(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    tol: Tolerance,
) -> Result<PairReport, Error> {
    let auxiliary = auxiliary_circles(p1, p2)?
        .iter()
        .map(|c| CircleRecord {
            center: c.center.into(),
            radius: c.radius,
        })
        .collect();
    let mut report = PairReport {
        format: FORMAT,
        command: "pair",
        first: p1.into(),
        second: p2.into(),
        auxiliary_circles: auxiliary,
        coincident: false,
        results: Vec::new(),
        failures: Vec::new(),
    };
    let outcome = match pair_polygons(p1, p2, tol) {
        Ok(o) => o,
        Err(Error::CoincidentAuxiliaryCircles) => {
            report.coincident = true;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.results = outcome
        .results
        .iter()
        .map(|r| PairRecord {
            m_point: r.m_point.into(),
            aligned_second: (&r.aligned_second).into(),
            radii: r.circles.radii().to_vec(),
            matched_vertices: [r.matched_vertex_pair.0, r.matched_vertex_pair.1],
        })
        .collect();
    report.failures = outcome
        .failures
        .iter()
        .map(|f| FailureRecord {
            m_point: f.m_point.into(),
            aligned_second: (&f.aligned_second).into(),
            gap: f.gap,
        })
        .collect();
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerSumCheck {
    pub polygon: &'static str,
    pub m_point: Point,
    pub m: usize,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentCheck {
    pub m: usize,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepCheck {
    pub polygon: &'static str,
    pub circumradius: f64,
    pub center_distance: f64,
    pub phase: f64,
    pub residual: f64,
    /// Residual of the phase found by reconstruction, when it succeeded.
    pub reconstruction_residual: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Limits {
    pub power_sum: f64,
    pub moment: f64,
    pub sweep: f64,
    pub sweep_agreement: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FirstFailure {
    pub section: &'static str,
    pub polygon: Option<&'static str>,
    pub m: Option<usize>,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub format: &'static str,
    pub command: &'static str,
    pub kind: &'static str,
    pub limits: Limits,
    pub power_sums: Vec<PowerSumCheck>,
    pub moments: Vec<MomentCheck>,
    pub sweeps: Vec<SweepCheck>,
    pub pass: bool,
    pub first_failure: Option<FirstFailure>,
}

impl VerifyReport {
    fn new(kind: &'static str, tol: Tolerance) -> Self {
        VerifyReport {
            format: FORMAT,
            command: "verify",
            kind,
            limits: Limits {
                power_sum: POWER_SUM_LIMIT,
                moment: tol.bound(1.0),
                sweep: SWEEP_LIMIT,
                sweep_agreement: SWEEP_AGREEMENT,
            },
            power_sums: Vec::new(),
            moments: Vec::new(),
            sweeps: Vec::new(),
            pass: true,
            first_failure: None,
        }
    }

    fn finish(mut self) -> Self {
        self.first_failure = self
            .moments
            .iter()
            .find(|c| !c.pass)
            .map(|c| FirstFailure {
                section: "moments",
                polygon: None,
                m: Some(c.m),
                residual: c.residual,
            })
            .or_else(|| {
                self.power_sums
                    .iter()
                    .find(|c| !c.pass)
                    .map(|c| FirstFailure {
                        section: "power_sums",
                        polygon: Some(c.polygon),
                        m: Some(c.m),
                        residual: c.residual,
                    })
            })
            .or_else(|| {
                self.sweeps.iter().find(|c| !c.pass).map(|c| FirstFailure {
                    section: "sweeps",
                    polygon: Some(c.polygon),
                    m: None,
                    residual: c.residual,
                })
            });
        self.pass = self.first_failure.is_none();
        self
    }
}

fn power_sums(
    out: &mut Vec<PowerSumCheck>,
    name: &'static str,
    poly: &RegularPolygonSpec,
    m_point: PlanePoint,
) {
    for m in 1..poly.n() {
        let residual = power_sum_residual(poly, m_point, m).expect("m in 1..n");
        out.push(PowerSumCheck {
            polygon: name,
            m_point: m_point.into(),
            m,
            residual,
            pass: residual <= POWER_SUM_LIMIT,
        });
    }
}

fn sweep(
    name: &'static str,
    r: f64,
    l: f64,
    family: &CircleFamily,
    reconstructed: Option<f64>,
    exec: Execution,
) -> SweepCheck {
    let found = angle_sweep(r, l, family.n(), family.radii(), DEFAULT_GRID, exec)
        .expect("default grid is fine enough");
    let scale = family.largest().max(1.0);
    let agrees =
        reconstructed.is_none_or(|rr| (found.residual - rr).abs() <= SWEEP_AGREEMENT * scale);
    SweepCheck {
        polygon: name,
        circumradius: r,
        center_distance: l,
        phase: found.phase,
        residual: found.residual,
        reconstruction_residual: reconstructed,
        pass: found.residual <= SWEEP_LIMIT * scale && agrees,
    }
}

/// Moment identities, then an angle sweep for each recovered circumradius,
/// cross-checked against the reconstruction when there is one.
pub fn verify_circles(family: &CircleFamily, tol: Tolerance, exec: Execution) -> VerifyReport {
    let mut out = VerifyReport::new("circles", tol);
    let averages = cyclic_averages(family);
    let report = feasibility(&averages, tol);
    let limit = tol.bound(1.0);
    out.moments = moment_residuals(&report)
        .into_iter()
        .map(|r| MomentCheck {
            m: r.m,
            residual: r.residual,
            pass: r.residual <= limit,
        })
        .collect();
    let radii = recover_circumradii_clamped(&averages, tol);
    let rec = reconstruct_polygons(family, tol).ok();
    out.sweeps = vec![
        sweep(
            "first",
            radii.r1,
            radii.r2,
            family,
            rec.as_ref().map(|r| r.first.residual),
            exec,
        ),
        sweep(
            "second",
            radii.r2,
            radii.r1,
            family,
            rec.as_ref().map(|r| r.second.residual),
            exec,
        ),
    ];
    out.finish()
}

/// Power sums of both polygons around every pairing center (around the
/// other polygon's center when there is none), then an angle sweep of the
/// second polygon against the first one's distances.
pub fn verify_pair(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    tol: Tolerance,
    exec: Execution,
) -> Result<VerifyReport, Error> {
    let mut out = VerifyReport::new("polygon_pair", tol);
    let centers = match candidate_centers(p1, p2, tol) {
        Ok(c) => c,
        Err(Error::CoincidentAuxiliaryCircles) => Vec::new(),
        Err(e) => return Err(e),
    };
    if centers.is_empty() {
        power_sums(&mut out.power_sums, "first", p1, p2.center());
        power_sums(&mut out.power_sums, "second", p2, p1.center());
    }
    for &m_point in &centers {
        power_sums(&mut out.power_sums, "first", p1, m_point);
        power_sums(&mut out.power_sums, "second", p2, m_point);
        let family = CircleFamily::new(
            m_point,
            concentric_gons::geom::distance_multiset(p1, m_point),
        )?;
        let l = m_point.distance_to(p2.center());
        out.sweeps
            .push(sweep("second", p2.circumradius(), l, &family, None, exec));
    }
    Ok(out.finish())
}
