//! Text and SVG renderings of barcodes.

use std::fmt::Write as _;

use phcalc_core::{Barcode, Death, PersistencePair};

fn label(p: &PersistencePair) -> String {
    format!("[{},{})", p.birth, p.death)
}

/// Intervals repeated by multiplicity, in barcode order.
fn unit_bars(b: &Barcode) -> impl Iterator<Item = &PersistencePair> {
    b.pairs
        .iter()
        .flat_map(|p| std::iter::repeat_n(p, p.multiplicity))
}

/// One row per interval copy. Level `k` sits at column `2k`; a bar is `*` at
/// its birth, `-` along its body, and `o` at a finite death or `>` one step
/// past the last level `m`.
pub fn render_text(b: &Barcode, last_level: usize) -> String {
    let width = unit_bars(b).map(|p| label(p).len()).max().unwrap_or(0);
    let mut out = String::new();
    for p in unit_bars(b) {
        let start = 2 * p.birth;
        let (end, tip) = match p.death {
            Death::Finite(d) => (2 * d, 'o'),
            Death::Infinite => (2 * (last_level + 1), '>'),
        };
        let mut bar = " ".repeat(start);
        bar.push('*');
        bar.push_str(&"-".repeat(end - start - 1));
        bar.push(tip);
        let _ = writeln!(out, "{:<width$}  {bar}", label(p));
    }
    out
}

const CELL: f64 = 30.0;
const MARGIN: f64 = 40.0;

/// A grid with levels `K^0 … K^m` along the x axis and one horizontal bar per
/// interval copy: a filled dot at birth, an open dot at a finite death and an
/// arrow for intervals that never die.
pub fn render_svg(barcodes: &[Barcode], last_level: usize) -> String {
    let cols = last_level + 2;
    let panel_w = cols as f64 * CELL;
    let heights: Vec<usize> = barcodes
        .iter()
        .map(|b| b.total_multiplicity().max(1) + 1)
        .collect();
    let total_w = MARGIN + barcodes.len().max(1) as f64 * (panel_w + MARGIN);
    let total_h = MARGIN * 2.0 + *heights.iter().max().unwrap_or(&2) as f64 * CELL;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}" font-family="sans-serif" font-size="10">"#
    );
    svg.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="8" markerHeight="8" orient="auto">"#,
        r#"<path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#,
        "\n"
    ));

    for (panel, (b, &rows)) in barcodes.iter().zip(&heights).enumerate() {
        let x0 = MARGIN + panel as f64 * (panel_w + MARGIN);
        let y0 = total_h - MARGIN;
        let x = |level: f64| x0 + (level + 1.0) * CELL;
        let y = |row: usize| y0 - (row as f64 + 1.0) * CELL;
        let top = y0 - rows as f64 * CELL;

        let _ = writeln!(svg, r#"<g class="barcode" data-dimension="{}">"#, b.dimension);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="14">&#946;{}</text>"#,
            x0,
            top - 10.0,
            b.dimension
        );
        for c in 0..=cols {
            let gx = x0 + c as f64 * CELL;
            let _ = writeln!(
                svg,
                r##"<line x1="{gx}" y1="{top}" x2="{gx}" y2="{y0}" stroke="#e0e0e0" stroke-width="0.5"/>"##
            );
        }
        for r in 0..=rows {
            let gy = y0 - r as f64 * CELL;
            let _ = writeln!(
                svg,
                r##"<line x1="{x0}" y1="{gy}" x2="{}" y2="{gy}" stroke="#e0e0e0" stroke-width="0.5"/>"##,
                x0 + panel_w
            );
        }
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black" marker-end="url(#arrow)"/>"#,
            x0 + panel_w
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{top}" stroke="black" marker-end="url(#arrow)"/>"#
        );
        for k in 0..=last_level {
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" text-anchor="middle">K<tspan dy="-4" font-size="7">{k}</tspan></text>"#,
                x(k as f64),
                y0 + 14.0
            );
        }
        for (row, p) in unit_bars(b).enumerate() {
            let by = y(row);
            let bx = x(p.birth as f64);
            match p.death {
                Death::Finite(d) => {
                    let dx = x(d as f64);
                    let _ = writeln!(
                        svg,
                        r#"<line class="bar" x1="{bx}" y1="{by}" x2="{dx}" y2="{by}" stroke="black" stroke-width="1.5"/>"#
                    );
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{dx}" cy="{by}" r="3.5" fill="white" stroke="black"/>"#
                    );
                }
                Death::Infinite => {
                    let ex = x(last_level as f64 + 0.8);
                    let _ = writeln!(
                        svg,
                        r#"<line class="bar" x1="{bx}" y1="{by}" x2="{ex}" y2="{by}" stroke="black" stroke-width="1.5" marker-end="url(#arrow)"/>"#
                    );
                }
            }
            let _ = writeln!(
                svg,
                r#"<circle cx="{bx}" cy="{by}" r="3.5" fill="black"/>"#
            );
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}
