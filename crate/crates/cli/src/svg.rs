//! SVG 1.1 drawings: gray circles, first polygon solid, second dashed,
//! polygon centers as crosses, the common center as a filled dot.

use std::fmt::Write;

use concentric_gons::{PlanePoint, RegularPolygonSpec};

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub circles: Option<(PlanePoint, Vec<f64>)>,
    pub first: Option<RegularPolygonSpec>,
    pub second: Option<RegularPolygonSpec>,
    pub m_point: Option<PlanePoint>,
}

fn num(v: f64) -> String {
    // fixed precision keeps output stable and readable
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

impl Scene {
    /// Center and radius of a circle containing everything drawn.
    fn bounds(&self) -> (PlanePoint, f64) {
        let mut points: Vec<(PlanePoint, f64)> = Vec::new();
        if let Some((c, radii)) = &self.circles {
            points.push((*c, radii.iter().cloned().fold(0.0, f64::max)));
        }
        for p in [self.first, self.second].into_iter().flatten() {
            points.push((p.center(), p.circumradius()));
        }
        if let Some(m) = self.m_point {
            points.push((m, 0.0));
        }
        if points.is_empty() {
            return (PlanePoint::ORIGIN, 1.0);
        }
        let n = points.len() as f64;
        let centroid = points
            .iter()
            .fold(PlanePoint::ORIGIN, |acc, (p, _)| acc + p.scale(1.0 / n));
        let radius = points
            .iter()
            .map(|(p, r)| p.distance_to(centroid) + r)
            .fold(0.0, f64::max);
        (centroid, if radius > 0.0 { radius } else { 1.0 })
    }

    pub fn render(&self) -> String {
        let (c, r) = self.bounds();
        let half = r * 1.1;
        let unit = half / 200.0;
        let stroke = num(unit * 1.5);
        // SVG y grows downward; flip so the drawing matches the plane
        let (px, py) = (|p: PlanePoint| num(p.x), |p: PlanePoint| num(-p.y));

        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\"{} {} {} {}\">",
            num(c.x - half),
            num(-c.y - half),
            num(2.0 * half),
            num(2.0 * half)
        );
        if let Some((center, radii)) = &self.circles {
            let _ = writeln!(
                s,
                "  <g id=\"circles\" fill=\"none\" stroke=\"#999999\" stroke-width=\"{stroke}\">"
            );
            for radius in radii {
                let _ = writeln!(
                    s,
                    "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                    px(*center),
                    py(*center),
                    num(*radius)
                );
            }
            s.push_str("  </g>\n");
        }
        let styles = [
            ("first", "#1f4e99", String::new()),
            (
                "second",
                "#b03a2e",
                format!(
                    " stroke-dasharray=\"{} {}\"",
                    num(unit * 6.0),
                    num(unit * 4.0)
                ),
            ),
        ];
        for (poly, (id, colour, dash)) in [self.first, self.second].iter().zip(styles) {
            let Some(poly) = poly else { continue };
            let _ = writeln!(s, "  <g id=\"{id}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"{stroke}\"{dash}>");
            if poly.circumradius() > 0.0 {
                let pts: Vec<String> = poly
                    .vertices()
                    .into_iter()
                    .map(|v| format!("{},{}", px(v), py(v)))
                    .collect();
                let _ = writeln!(s, "    <polygon points=\"{}\"/>", pts.join(" "));
            }
            let o = poly.center();
            let arm = unit * 5.0;
            let _ = writeln!(
                s,
                "    <path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke-dasharray=\"none\"/>",
                num(o.x - arm),
                num(-o.y),
                num(o.x + arm),
                num(-o.y),
                num(o.x),
                num(-o.y - arm),
                num(o.x),
                num(-o.y + arm)
            );
            s.push_str("  </g>\n");
        }
        if let Some(m) = self.m_point {
            let _ = writeln!(
                s,
                "  <circle id=\"m\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#000000\"/>",
                px(m),
                py(m),
                num(unit * 3.0)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
