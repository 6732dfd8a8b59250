//! Arc diagrams: nodes on a line in the order 1 … n, −n … −1, every arc drawn
//! above the line with its label at the apex.

use std::fmt::Write;

use scd_core::partitions::LabelledPartition;

const SPACING: f64 = 48.0;
const MARGIN: f64 = 32.0;
const NODE_RADIUS: f64 = 4.0;
/// Arc height per unit of horizontal span.
const RISE: f64 = 0.45;
const FONT_SIZE: f64 = 13.0;

pub fn arc_diagram(lambda: &LabelledPartition) -> String {
    let family = lambda.family();
    let n = lambda.n();
    let size = lambda.size();
    let x_of = |pos: usize| MARGIN + (pos as f64 - 1.0) * SPACING;
    let widest = lambda
        .arcs()
        .iter()
        .map(|a| a.col() - a.row())
        .max()
        .unwrap_or(0) as f64;
    let top = MARGIN + FONT_SIZE;
    let baseline = top + widest * SPACING * RISE;
    let width = 2.0 * MARGIN + (size.max(1) as f64 - 1.0) * SPACING;
    let height = baseline + MARGIN + FONT_SIZE;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="{FONT_SIZE}">"#
    );
    let _ = writeln!(svg, "<title>{family}{n} {lambda}</title>");
    for a in lambda.arcs() {
        let (x1, x2) = (x_of(a.row()), x_of(a.col()));
        let rx = (x2 - x1) / 2.0;
        let ry = rx * 2.0 * RISE;
        let _ = writeln!(
            svg,
            r#"<path d="M {x1} {baseline} A {rx} {ry} 0 0 1 {x2} {baseline}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            x1 + rx,
            baseline - ry - 4.0,
            a.label
        );
    }
    for pos in 1..=size {
        let x = x_of(pos);
        let _ = writeln!(
            svg,
            r#"<circle cx="{x}" cy="{baseline}" r="{NODE_RADIUS}" fill="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            baseline + FONT_SIZE + 8.0,
            family.signed(n, pos)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
