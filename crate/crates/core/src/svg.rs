//! Minimal SVG overlay of frontiers in the (R0, R2) plane.

use std::fmt::Write;

use crate::polytope::RegionFrontier;

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/// Staircase-closed outline of a frontier: from the R2 axis, along the
/// frontier, down to the R0 axis.
fn outline(f: &RegionFrontier) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    if let (Some(first), Some(last)) = (f.points.first(), f.points.last()) {
        pts.push((0.0, first.r2));
        pts.extend(f.points.iter().map(|p| (p.r0, p.r2)));
        pts.push((last.r0, 0.0));
    }
    pts
}

fn nice_step(max: f64) -> f64 {
    let raw = max / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag)
}

/// Renders one polyline per named frontier with axes, ticks and a legend.
pub fn render(series: &[(&str, &RegionFrontier)]) -> String {
    let max = series
        .iter()
        .flat_map(|(_, f)| f.points.iter().flat_map(|p| [p.r0, p.r2]))
        .fold(0.0, f64::max);
    let max = if max > 0.0 { max * 1.05 } else { 1.0 };
    let step = nice_step(max);
    let sx = |x: f64| MARGIN + x / max * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - y / max * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let (x0, y0) = (sx(0.0), sy(0.0));
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.2},{:.2} L{x0:.2},{y0:.2} L{:.2},{y0:.2}" stroke="black" fill="none"/>"#,
        sy(max),
        sx(max)
    );
    let mut t = 0.0;
    while t <= max + 1e-12 {
        let (x, y) = (sx(t), sy(t));
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.3}</text>"#,
            y0 + 5.0,
            y0 + 20.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{t:.3}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
        t += step;
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">R0 (bits)</text>"#,
        W / 2.0,
        H - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.2}" text-anchor="middle" transform="rotate(-90 15 {:.2})">R2 (bits)</text>"#,
        H / 2.0,
        H / 2.0
    );
    for (k, (name, f)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let d = outline(f)
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| format!("{}{:.2},{:.2}", if i == 0 { 'M' } else { 'L' }, sx(x), sy(y)))
            .collect::<Vec<_>>()
            .join(" ");
        if !d.is_empty() {
            let _ = writeln!(s, r#"<path d="{d}" stroke="{color}" stroke-width="2" fill="none"/>"#);
        }
        let ly = MARGIN + 18.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{name}</text>"#,
            W - MARGIN - 120.0,
            W - MARGIN - 95.0,
            W - MARGIN - 90.0,
            ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}
