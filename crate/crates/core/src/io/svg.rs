//! SVG 1.1 rendering. Presentation only: coordinates are rounded to a
//! fixed number of decimals after scaling into the viewport.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::drawing::Drawing;
use crate::geometry::Scalar;
use crate::plane_graph::PlaneGraph;
use crate::verify::Edge;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub vertex_radius: f64,
    pub labels: bool,
    /// Edges drawn with the `violation` class instead of `edge`.
    pub highlight: BTreeSet<Edge>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 800.0,
            height: 800.0,
            margin: 40.0,
            vertex_radius: 4.0,
            labels: true,
            highlight: BTreeSet::new(),
        }
    }
}

const STYLE: &str = ".edge{stroke:#333;stroke-width:1.5}\
.violation{stroke:#d62728;stroke-width:3}\
.vertex{fill:#1f77b4;stroke:#fff;stroke-width:1}\
.label{font:10px sans-serif;fill:#000}";

/// Renders the edges and vertices of `graph` at their drawn positions.
/// The bounding box is scaled uniformly to fit inside the margins and the
/// y axis is flipped so that larger y is higher on screen.
pub fn emit_svg<S: Scalar>(graph: &PlaneGraph, drawing: &Drawing<S>, options: &SvgOptions) -> String {
    let pts: Vec<_> = drawing
        .iter()
        .filter(|(v, _)| graph.contains_vertex(*v))
        .map(|(v, p)| (v, p.approx()))
        .collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (_, (x, y)) in &pts {
        lo_x = lo_x.min(*x);
        lo_y = lo_y.min(*y);
        hi_x = hi_x.max(*x);
        hi_y = hi_y.max(*y);
    }
    let inner_w = (options.width - 2.0 * options.margin).max(1.0);
    let inner_h = (options.height - 2.0 * options.margin).max(1.0);
    let scale = if pts.is_empty() || (hi_x - lo_x).max(hi_y - lo_y) <= 0.0 {
        1.0
    } else {
        (inner_w / (hi_x - lo_x).max(f64::MIN_POSITIVE)).min(inner_h / (hi_y - lo_y).max(f64::MIN_POSITIVE))
    };
    let (cx, cy) = if pts.is_empty() {
        (0.0, 0.0)
    } else {
        ((lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0)
    };
    let screen = |(x, y): (f64, f64)| {
        (
            options.width / 2.0 + (x - cx) * scale,
            options.height / 2.0 - (y - cy) * scale,
        )
    };
    let at = |v| pts.iter().find(|(u, _)| *u == v).map(|(_, p)| screen(*p));

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = options.width,
        h = options.height
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    for (u, v) in graph.edges() {
        let (Some((x1, y1)), Some((x2, y2))) = (at(u), at(v)) else {
            continue;
        };
        let class = if options.highlight.contains(&(u, v)) {
            "violation"
        } else {
            "edge"
        };
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }
    for &(v, p) in &pts {
        let (x, y) = screen(p);
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="{}"/>"#,
            options.vertex_radius
        );
        if options.labels {
            let _ = writeln!(
                out,
                r#"<text class="label" x="{:.3}" y="{:.3}">{v}</text>"#,
                x + options.vertex_radius + 1.0,
                y - options.vertex_radius - 1.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Kernel, Point};
    use crate::io::generate;
    use crate::layout::draw;
    use crate::reduce::Strategy;

    fn count(svg: &str, tag: &str) -> usize {
        svg.matches(&format!("<{tag} ")).count()
    }

    #[test]
    fn base_triangle_elements() {
        let tri = generate::triangle();
        let d = draw(&tri, Strategy::Main).unwrap();
        let svg = emit_svg(&tri, &d, &SvgOptions::default());
        assert_eq!(count(&svg, "circle"), 3);
        assert_eq!(count(&svg, "line"), 3);
        assert_eq!(svg, emit_svg(&tri, &d, &SvgOptions::default()));
    }

    #[test]
    fn octahedron_elements() {
        let oct = generate::octahedron();
        let d = draw(&oct, Strategy::Footnote).unwrap();
        let svg = emit_svg(&oct, &d, &SvgOptions::default());
        assert_eq!(count(&svg, "circle"), 6);
        assert_eq!(count(&svg, "line"), 12);
    }

    #[test]
    fn y_axis_is_flipped() {
        let tri = generate::triangle();
        let d = Drawing::from_points(
            Kernel::Exact,
            [(0, 0), (4, 0), (2, 3)].map(|(x, y)| Point::<f64>::from_ints(x, y)),
        );
        let svg = emit_svg(&tri, &d, &SvgOptions { labels: false, ..SvgOptions::default() });
        // Width limits the scale to 180, so the apex at y = 3 lands 270 above the base.
        assert!(svg.contains(r#"cx="400.000" cy="130.000""#), "{svg}");
        assert!(svg.contains(r#"cx="40.000" cy="670.000""#), "{svg}");
    }

    #[test]
    fn highlighted_edges_use_violation_class() {
        let tri = generate::triangle();
        let d = draw(&tri, Strategy::Main).unwrap();
        let options = SvgOptions {
            highlight: BTreeSet::from([(0, 1)]),
            ..SvgOptions::default()
        };
        let svg = emit_svg(&tri, &d, &options);
        assert_eq!(svg.matches(r#"class="violation""#).count(), 1);
    }
}
