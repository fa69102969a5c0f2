//! Deterministic SVG 1.1 renderings of plane curves and patchworked curves.

use num::ToPrimitive;

use crate::curve::{CurveEdge, PlaneCurve};
use crate::patchwork::PatchworkResult;
use crate::rat::Rat;

const W: f64 = 600.0;
const H: f64 = 600.0;
const MARGIN: f64 = 40.0;

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn fmt(x: f64) -> String {
    format!("{x:.3}")
}

struct View {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl View {
    fn fit(points: &[(f64, f64)]) -> View {
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for &(x, y) in points {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        if !min_x.is_finite() {
            (min_x, max_x, min_y, max_y) = (-1.0, 1.0, -1.0, 1.0);
        }
        // Pad so ray stubs stay visible and degenerate boxes have extent.
        let span = ((max_x - min_x).max(max_y - min_y)).max(1.0);
        let pad = span * 0.5;
        min_x -= pad;
        max_x += pad;
        min_y -= pad;
        max_y += pad;
        let scale = ((W - 2.0 * MARGIN) / (max_x - min_x)).min((H - 2.0 * MARGIN) / (max_y - min_y));
        View { min_x, min_y, scale }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x) * self.scale,
            // SVG y grows downward.
            H - MARGIN - (y - self.min_y) * self.scale,
        )
    }
}

fn header(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
}

/// Render a plane tropical curve; rays are drawn as finite stubs leaving the
/// bounding box of the vertex set.
pub fn curve_svg(curve: &PlaneCurve) -> String {
    let pts: Vec<(f64, f64)> = curve.vertices.iter().map(|(x, y)| (f(x), f(y))).collect();
    let view = View::fit(&pts);
    let ray_len = 1.5 / view.scale * (W - 2.0 * MARGIN) / 2.0;
    let mut out = String::new();
    header(&mut out);
    for e in &curve.edges {
        let (p, q, weight) = match e {
            CurveEdge::Bounded { a, b, weight, .. } => (pts[*a], pts[*b], *weight),
            CurveEdge::Ray { v, dir, weight, .. } => {
                let (x, y) = pts[*v];
                let norm = ((dir.0 * dir.0 + dir.1 * dir.1) as f64).sqrt();
                (
                    (x, y),
                    (
                        x + dir.0 as f64 / norm * ray_len / view.scale,
                        y + dir.1 as f64 / norm * ray_len / view.scale,
                    ),
                    *weight,
                )
            }
        };
        let (x1, y1) = view.px(p.0, p.1);
        let (x2, y2) = view.px(q.0, q.1);
        let width = 1.0 + weight as f64;
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{}\"/>\n",
            fmt(x1), fmt(y1), fmt(x2), fmt(y2), fmt(width)
        ));
    }
    for &(x, y) in &pts {
        let (cx, cy) = view.px(x, y);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>\n",
            fmt(cx), fmt(cy)
        ));
    }
    out.push_str("</svg>\n");
    out
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Render a patchworked curve: one copy of the curve per quadrant, with the
/// strands of each connected component drawn in a shared colour in the
/// quadrant carrying their sign.
pub fn patchwork_svg(curve: &PlaneCurve, result: &PatchworkResult) -> String {
    let pts: Vec<(f64, f64)> = curve.vertices.iter().map(|(x, y)| (f(x), f(y))).collect();
    let view = View::fit(&pts);
    let ray_len = 1.5 / view.scale * (W - 2.0 * MARGIN) / 2.0;
    let half_w = W / 2.0;
    let half_h = H / 2.0;
    // Place each strand's arcs in the quadrant given by its sign, drawing the
    // underlying edges of the curve scaled into that quadrant.
    let quadrant_offset = |sign: (i8, i8)| -> (f64, f64, f64, f64) {
        let (sx, sy) = (sign.0 as f64, sign.1 as f64);
        // Scale into a half-size tile; reflect into the signed quadrant.
        (half_w, half_h, sx * 0.5, sy * 0.5)
    };
    let mut out = String::new();
    header(&mut out);
    out.push_str(&format!(
        "<line x1=\"0\" y1=\"{half_h}\" x2=\"{W}\" y2=\"{half_h}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n"
    ));
    out.push_str(&format!(
        "<line x1=\"{half_w}\" y1=\"0\" x2=\"{half_w}\" y2=\"{H}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n"
    ));
    for strand in &result.strands {
        let color = PALETTE[strand.component % PALETTE.len()];
        let (ox, oy, sx, sy) = quadrant_offset(strand.sign);
        let mut drawn: Vec<usize> = strand.arcs.iter().map(|&(n, _)| n / 4).collect();
        drawn.sort_unstable();
        drawn.dedup();
        for ei in drawn {
            let (p, q) = match &curve.edges[ei] {
                CurveEdge::Bounded { a, b, .. } => (pts[*a], pts[*b]),
                CurveEdge::Ray { v, dir, .. } => {
                    let (x, y) = pts[*v];
                    let norm = ((dir.0 * dir.0 + dir.1 * dir.1) as f64).sqrt();
                    (
                        (x, y),
                        (
                            x + dir.0 as f64 / norm * ray_len / view.scale,
                            y + dir.1 as f64 / norm * ray_len / view.scale,
                        ),
                    )
                }
            };
            let (x1, y1) = view.px(p.0, p.1);
            let (x2, y2) = view.px(q.0, q.1);
            // Map the full-canvas picture into the signed quadrant tile.
            let map = |x: f64, y: f64| (ox + (x - half_w).abs() * sx, oy - (half_h - y).abs() * sy);
            let (x1, y1) = map(x1, y1);
            let (x2, y2) = map(x2, y2);
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                fmt(x1), fmt(y1), fmt(x2), fmt(y2), color
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::tropical_curve;
    use crate::patchwork::{patchwork, TwistSet};
    use crate::poly2::parse_poly2;

    #[test]
    fn curve_svg_is_deterministic_and_well_formed() {
        let p = parse_poly2("0 + x + y").unwrap();
        let c = tropical_curve(&p).unwrap();
        let a = curve_svg(&c);
        let b = curve_svg(&c);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert!(a.contains("version=\"1.1\""));
    }

    #[test]
    fn patchwork_svg_well_formed() {
        let p = parse_poly2("0 + x + y").unwrap();
        let c = tropical_curve(&p).unwrap();
        let r = patchwork(&c, &TwistSet::empty()).unwrap();
        let s = patchwork_svg(&c, &r);
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    }
}
