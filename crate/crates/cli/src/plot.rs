//! SVG bar-code pictures.

use std::fmt::Write;
use std::path::Path;

use crate::document::{write_atomic, Bar, BarcodeDocument, End};
use crate::error::Result;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 48.0;
const ROW: f64 = 14.0;
const GAP: f64 = 22.0;
const R: f64 = 3.5;

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn of(bars: &[Bar]) -> Axis {
        let coords: Vec<f64> =
            bars.iter().flat_map(|b| [b.left.index.coord(), b.right.index.coord()]).flatten().collect();
        let lo = coords.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = coords.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if coords.is_empty() {
            Axis { lo: 0.0, hi: 1.0 }
        } else {
            Axis { lo: lo.floor(), hi: (hi + 1.0).ceil() }
        }
    }

    fn x(&self, c: f64) -> f64 {
        MARGIN + (c - self.lo) / (self.hi - self.lo) * (WIDTH - 2.0 * MARGIN)
    }
}

fn glyph(svg: &mut String, e: &End, x: f64, y: f64, leftward: bool) {
    match e.kind {
        "closed" => {
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{R}" fill="black"/>"#);
        }
        "open" => {
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{R}" fill="white" stroke="black"/>"#);
        }
        _ => {
            let d = if leftward { 7.0 } else { -7.0 };
            let _ = writeln!(
                svg,
                r#"<polygon points="{x:.2},{y:.2} {:.2},{:.2} {:.2},{:.2}" fill="black"/>"#,
                x + d,
                y - 4.0,
                x + d,
                y + 4.0
            );
        }
    }
}

/// Horizontal bars grouped by dimension, in document order.
pub fn render(doc: &BarcodeDocument) -> String {
    let axis = Axis::of(&doc.bars);
    let mut body = String::new();
    let mut y = MARGIN;
    let mut dim = None;
    for b in &doc.bars {
        if dim != Some((b.dim, b.side)) {
            y += GAP;
            let label = match b.side {
                Some(s) => format!("H{} {s}", b.dim),
                None => format!("H{}", b.dim),
            };
            let _ = writeln!(body, r#"<text x="4" y="{:.2}" font-size="11">{label}</text>"#, y - 6.0);
            dim = Some((b.dim, b.side));
        }
        let x0 = b.left.index.coord().map_or(MARGIN - 12.0, |c| axis.x(c));
        let x1 = b.right.index.coord().map_or(WIDTH - MARGIN + 12.0, |c| axis.x(c));
        let _ = writeln!(
            body,
            r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="black" stroke-width="2"/>"#
        );
        glyph(&mut body, &b.left, x0, y, true);
        glyph(&mut body, &b.right, x1, y, false);
        if b.mult > 1 {
            let _ =
                writeln!(body, r#"<text x="{:.2}" y="{:.2}" font-size="10">x{}</text>"#, x1 + 10.0, y + 3.0, b.mult);
        }
        y += ROW;
    }
    let height = y + MARGIN;
    let base = height - MARGIN / 2.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="gray"/>"#,
        WIDTH - MARGIN
    );
    let mut t = axis.lo;
    while t <= axis.hi {
        let x = axis.x(t);
        let _ = writeln!(svg, r#"<line x1="{x:.2}" y1="{base:.2}" x2="{x:.2}" y2="{:.2}" stroke="gray"/>"#, base + 4.0);
        let _ =
            writeln!(svg, r#"<text x="{x:.2}" y="{:.2}" font-size="10" text-anchor="middle">{t}</text>"#, base + 15.0);
        t += 1.0;
    }
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_plot(doc: &BarcodeDocument, path: &Path) -> Result<()> {
    write_atomic(path, &render(doc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::step_bars;
    use persistor_core::algebra::BarcodeInterval;

    #[test]
    fn empty_has_axis_only() {
        let svg = render(&BarcodeDocument::default());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<circle") && !svg.contains("<polygon"));
        assert!(svg.contains("<line"));
    }

    #[test]
    fn infinite_bar_has_arrow() {
        let doc = BarcodeDocument { bars: step_bars(&[BarcodeInterval::infinite(0, 0)], &[0.0]), ..Default::default() };
        let svg = render(&doc);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches(r#"fill="black"/>"#).count(), 2);
    }
}
