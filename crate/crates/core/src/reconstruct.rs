//! From a family of concentric circles back to two concrete polygons.
//!
//! Placement convention: the family center is `M`, the first polygon
//! (circumradius `r1`) is centered at `M + (r2, 0)` and the second
//! (circumradius `r2`) at `M + (r1, 0)`. Only the phases are searched.

use crate::error::{Error, Result};
use crate::geom::{
    distance_multiset, heron_area_unsnapped, multiset_close, multiset_gap, PlanePoint,
    RegularPolygonSpec, Tolerance,
};
use crate::moments::{
    cyclic_averages, feasibility, recover_circumradii, CircleFamily, FeasibilityReport, RadiiPair,
};

/// Relative angles `θ` (measured at the polygon center from the direction
/// of `M`) that put a vertex at distance `d` from `M`, where `r` is the
/// circumradius and `l` the center-to-`M` distance:
/// `d² = r² + l² − 2 r l cos θ`.
///
/// One angle at the extremes `d = |r − l|` and `d = r + l`, none outside.
pub fn phase_candidates(r: f64, l: f64, d: f64, tol: Tolerance) -> Result<Vec<f64>> {
    if r <= 0.0 || l <= 0.0 {
        return Err(Error::DegenerateGeometry(format!(
            "circumradius {r} and center distance {l} must both be positive"
        )));
    }
    let Some(area) = heron_area_unsnapped(r, l, d, tol) else {
        return Ok(Vec::new());
    };
    let theta = (4.0 * area).atan2(r * r + l * l - d * d);
    let sagitta = r * theta.sin().abs();
    if sagitta <= tol.bound(r) {
        Ok(vec![theta])
    } else {
        Ok(vec![theta, -theta])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacedPolygon {
    pub polygon: RegularPolygonSpec,
    /// Circumradius zero: all vertices collapse onto the center.
    pub point_polygon: bool,
    /// Largest gap between the polygon's distance multiset and the radii.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub first: PlacedPolygon,
    pub second: PlacedPolygon,
    pub radii: RadiiPair,
    pub report: FeasibilityReport,
}

/// Largest elementwise gap between the polygon's distances from the family
/// center and the family radii.
pub fn verify_reconstruction(family: &CircleFamily, poly: &RegularPolygonSpec) -> f64 {
    multiset_gap(&distance_multiset(poly, family.center()), family.radii())
}

/// Find a phase for a polygon of circumradius `r` centered at `center`, at
/// distance `l` from the family center.
fn place(
    family: &CircleFamily,
    center: PlanePoint,
    r: f64,
    l: f64,
    which: usize,
    tol: Tolerance,
) -> Result<PlacedPolygon> {
    let n = family.n();
    let base = RegularPolygonSpec::new(n, center, r, 0.0)?;
    let zero = tol.bound(family.largest());
    if r <= zero {
        let polygon = RegularPolygonSpec::new(n, center, 0.0, 0.0)?;
        return Ok(PlacedPolygon {
            polygon,
            point_polygon: true,
            residual: verify_reconstruction(family, &polygon),
        });
    }
    let accept = tol.loosened(10.0);
    if l <= zero {
        // M is the polygon center: every phase gives the same distances
        return finish(family, base, accept, which);
    }

    let toward_m = center.angle_to(family.center());
    let mut best = f64::INFINITY;
    for &d in family.radii().iter().rev() {
        for theta in phase_candidates(r, l, d, tol)? {
            let candidate = base.with_phase(toward_m + theta);
            let residual = verify_reconstruction(family, &candidate);
            if multiset_close(
                &distance_multiset(&candidate, family.center()),
                family.radii(),
                accept,
            ) {
                return Ok(PlacedPolygon {
                    polygon: candidate,
                    point_polygon: false,
                    residual,
                });
            }
            best = best.min(residual);
        }
    }
    Err(Error::PhaseSearchFailed {
        polygon: which,
        best_residual: best,
    })
}

fn finish(
    family: &CircleFamily,
    polygon: RegularPolygonSpec,
    accept: Tolerance,
    which: usize,
) -> Result<PlacedPolygon> {
    let residual = verify_reconstruction(family, &polygon);
    if multiset_close(
        &distance_multiset(&polygon, family.center()),
        family.radii(),
        accept,
    ) {
        Ok(PlacedPolygon {
            polygon,
            point_polygon: false,
            residual,
        })
    } else {
        Err(Error::PhaseSearchFailed {
            polygon: which,
            best_residual: residual,
        })
    }
}

/// Two polygons realizing the family's radii, or the failing report.
pub fn reconstruct_polygons(family: &CircleFamily, tol: Tolerance) -> Result<Reconstruction> {
    let averages = cyclic_averages(family);
    let report = feasibility(&averages, tol);
    if !report.feasible() {
        return Err(Error::InfeasibleFamily(Box::new(report)));
    }
    let radii = match recover_circumradii(&averages, tol) {
        Ok(r) => r,
        Err(Error::InfeasibleMoments { .. }) => {
            return Err(Error::InfeasibleFamily(Box::new(report)))
        }
        Err(e) => return Err(e),
    };
    let m = family.center();
    let first = place(
        family,
        m + PlanePoint::new(radii.r2, 0.0),
        radii.r1,
        radii.r2,
        1,
        tol,
    )?;
    let second = place(
        family,
        m + PlanePoint::new(radii.r1, 0.0),
        radii.r2,
        radii.r1,
        2,
        tol,
    )?;
    Ok(Reconstruction {
        first,
        second,
        radii,
        report,
    })
}
