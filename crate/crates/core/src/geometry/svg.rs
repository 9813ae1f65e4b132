use std::fmt::Write;

use super::polyline::ClosedPolyline;
use super::realize::realize_polyline;
use super::{recover_z_profile, ChordModel};
use crate::error::Result;
use crate::petal::LagrangianPetalDiagram;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Width and height of the image in pixels.
    pub size: f64,
    pub segments_per_lobe: usize,
    pub labels: bool,
    /// Decimal places for coordinates.
    pub precision: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            size: 480.0,
            segments_per_lobe: 48,
            labels: true,
            precision: 3,
        }
    }
}

fn num(x: f64, precision: usize) -> String {
    let s = format!("{x:.precision$}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

struct Frame {
    scale: f64,
    cx: f64,
    cy: f64,
    half: f64,
    precision: usize,
}

impl Frame {
    fn fit(points: &[[f64; 2]], opts: &RenderOptions) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for axis in 0..2 {
                lo[axis] = lo[axis].min(p[axis]);
                hi[axis] = hi[axis].max(p[axis]);
            }
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let half = opts.size / 2.0;
        Self {
            scale: 0.85 * opts.size / extent,
            cx: 0.5 * (lo[0] + hi[0]),
            cy: 0.5 * (lo[1] + hi[1]),
            half,
            precision: opts.precision,
        }
    }

    fn point(&self, p: [f64; 2]) -> String {
        let x = self.half + self.scale * (p[0] - self.cx);
        let y = self.half - self.scale * (p[1] - self.cy);
        format!("{},{}", num(x, self.precision), num(y, self.precision))
    }

    fn path(&self, points: &[[f64; 2]]) -> String {
        let mut d = String::new();
        for (idx, &p) in points.iter().enumerate() {
            d.push(if idx == 0 { 'M' } else { 'L' });
            d.push_str(&self.point(p));
        }
        d
    }
}

fn header(out: &mut String, size: f64, precision: usize) {
    let s = num(size, precision);
    writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">
<rect width="{s}" height="{s}" fill="white"/>"#
    )
    .unwrap();
}

/// Plain drawing of a closed polyline.
pub fn render_polyline_svg(poly: &ClosedPolyline, opts: &RenderOptions) -> String {
    let frame = Frame::fit(poly.vertices(), opts);
    let mut out = String::new();
    header(&mut out, opts.size, opts.precision);
    writeln!(
        out,
        r#"<path class="curve" d="{}Z" fill="none" stroke="black" stroke-width="1.5"/>"#,
        frame.path(poly.vertices())
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

/// Draws the realized diagram: one path per petal, the strands at the
/// center stacked by recovered height with white gaps under the upper ones,
/// and a marker on each twist crossing.
pub fn render_svg(diag: &LagrangianPetalDiagram, opts: &RenderOptions) -> Result<String> {
    let poly = realize_polyline(diag, opts.segments_per_lobe)?;
    let profile = recover_z_profile(&poly)?;
    let model = ChordModel::new(diag.n());
    let v = poly.vertices();
    let frame = Frame::fit(v, opts);

    let mut out = String::new();
    header(&mut out, opts.size, opts.precision);
    writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1.5">"#).unwrap();
    for mark in poly.lobe_marks() {
        writeln!(
            out,
            r#"<path class="petal" data-petal="{}" d="{}"/>"#,
            mark.petal,
            frame.path(&v[mark.start..=mark.end])
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    // Strand stubs through the center, lowest first.
    let reach = 0.25
        * poly
            .lobe_marks()
            .iter()
            .flat_map(|m| v[m.start..=m.end].iter())
            .map(|p| p[0].hypot(p[1]))
            .fold(0.0, f64::max);
    let mut strands: Vec<usize> = (1..=diag.n()).collect();
    strands.sort_by(|&a, &b| {
        profile.crossing_heights[a - 1]
            .total_cmp(&profile.crossing_heights[b - 1])
            .then(a.cmp(&b))
    });
    writeln!(out, r#"<g class="strands">"#).unwrap();
    for &s in &strands {
        let d = model.direction(s);
        let ends = [[-reach * d[0], -reach * d[1]], [reach * d[0], reach * d[1]]];
        let path = frame.path(&ends);
        writeln!(out, r#"<path d="{path}" stroke="white" stroke-width="6"/>"#).unwrap();
        writeln!(
            out,
            r#"<path class="strand" data-strand="{s}" d="{path}" stroke="black" stroke-width="1.5"/>"#
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    for mark in poly.lobe_marks() {
        if let Some((a, _)) = mark.twist {
            let (x, y) = frame
                .point(v[a])
                .split_once(',')
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .unwrap();
            writeln!(
                out,
                r#"<circle class="twist" data-petal="{}" cx="{x}" cy="{y}" r="3" fill="black"/>"#,
                mark.petal
            )
            .unwrap();
        }
    }

    if opts.labels {
        writeln!(
            out,
            r#"<g font-family="sans-serif" font-size="12" text-anchor="middle">"#
        )
        .unwrap();
        for s in 1..=diag.n() {
            let d = model.direction(s);
            let at = frame.point([1.2 * reach * d[0], 1.2 * reach * d[1]]);
            let (x, y) = at.split_once(',').unwrap();
            writeln!(out, r#"<text x="{x}" y="{y}">{s}</text>"#).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petal::{canonical_twists, validate_permutation};

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(num(-0.0001, 3), "0.000");
        assert_eq!(num(-1.5, 1), "-1.5");
    }

    #[test]
    fn deterministic_and_complete() {
        let diag = canonical_twists(&validate_permutation(&[1, 4, 2, 5, 3]).unwrap());
        let a = render_svg(&diag, &RenderOptions::default()).unwrap();
        let b = render_svg(&diag, &RenderOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches(r#"class="petal""#).count(), 5);
        assert_eq!(a.matches(r#"class="twist""#).count(), 2);
        assert!(!a.contains("NaN"));
    }
}
