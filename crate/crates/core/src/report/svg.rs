//! Dependency-free SVG rendering for grids and curves.

use std::fmt::Write;

use crate::theory::GridResult;

const BLUE: (f64, f64, f64) = (33.0, 102.0, 172.0);
const WHITE: (f64, f64, f64) = (247.0, 247.0, 247.0);
const RED: (f64, f64, f64) = (178.0, 24.0, 43.0);
const MISSING: &str = "#808080";

/// Blue-white-red color for `value` on `[lo, hi]`, clamped at both ends.
/// `lo` maps to blue, the midpoint to white and `hi` to red.
pub fn diverging_color(value: f64, lo: f64, hi: f64) -> String {
    if !value.is_finite() {
        return MISSING.to_string();
    }
    let t = if hi > lo {
        ((value - lo) / (hi - lo)).clamp(0.0, 1.0)
    } else {
        0.5
    };
    let (a, b, u) = if t < 0.5 {
        (BLUE, WHITE, t * 2.0)
    } else {
        (WHITE, RED, (t - 0.5) * 2.0)
    };
    let mix = |p: f64, q: f64| (p + (q - p) * u).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(a.0, b.0),
        mix(a.1, b.1),
        mix(a.2, b.2)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Color range: the grid's stated range, else the finite data range.
fn color_range(grid: &GridResult) -> (f64, f64) {
    if let Some(r) = grid.value_range {
        return r;
    }
    let finite = grid.iter_cells().map(|c| c.2).filter(|v| v.is_finite());
    let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if lo.is_finite() {
        (lo, hi)
    } else {
        (0.0, 0.0)
    }
}

/// Heatmap with `axis2` across and `axis1` down, plus a color legend.
pub fn render_heatmap(grid: &GridResult) -> String {
    const CELL: f64 = 14.0;
    const LEFT: f64 = 60.0;
    const TOP: f64 = 40.0;
    let (lo, hi) = color_range(grid);
    let cols = grid.axis2.len() as f64;
    let rows = grid.axis1.len() as f64;
    let plot_w = cols * CELL;
    let plot_h = rows * CELL;
    let legend_x = LEFT + plot_w + 30.0;
    let width = legend_x + 90.0;
    let height = TOP + plot_h + 50.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" font-size="13" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(&grid.metric)
    );
    for (i, row) in grid.cells.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<rect class="cell" x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}"><title>{}={} {}={} value={v}</title></rect>"#,
                LEFT + j as f64 * CELL,
                TOP + i as f64 * CELL,
                diverging_color(v, lo, hi),
                escape(&grid.axis1_name),
                grid.axis1[i],
                escape(&grid.axis2_name),
                grid.axis2[j],
            );
        }
    }
    // Tick labels: every row, and about ten columns.
    for (i, a) in grid.axis1.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{a}</text>"#,
            LEFT - 4.0,
            TOP + (i as f64 + 0.7) * CELL
        );
    }
    let step = (grid.axis2.len() / 10).max(1);
    for (j, b) in grid.axis2.iter().enumerate().filter(|(j, _)| j % step == 0) {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{b}</text>"#,
            LEFT + (j as f64 + 0.5) * CELL,
            TOP + plot_h + 14.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        TOP + plot_h + 32.0,
        escape(&grid.axis2_name)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(&grid.axis1_name)
    );
    // Legend: a vertical ramp from hi (top) to lo (bottom).
    const STEPS: usize = 20;
    let ramp_h = plot_h.max(100.0);
    for k in 0..STEPS {
        let v = hi - (hi - lo) * (k as f64 + 0.5) / STEPS as f64;
        let _ = writeln!(
            s,
            r#"<rect class="legend" x="{legend_x}" y="{}" width="14" height="{}" fill="{}"/>"#,
            TOP + k as f64 * ramp_h / STEPS as f64,
            ramp_h / STEPS as f64,
            diverging_color(v, lo, hi)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">{hi:.3}</text>"#,
        legend_x + 18.0,
        TOP + 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">{lo:.3}</text>"#,
        legend_x + 18.0,
        TOP + ramp_h
    );
    s.push_str("</svg>\n");
    s
}

/// An empirical mean ± std band against a theoretical curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x: Vec<f64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub theory: Vec<f64>,
}

pub fn render_curves(series: &CurveSeries) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 50.0;

    let xs = &series.x;
    let x_lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let x_hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ys = series
        .mean
        .iter()
        .zip(&series.std)
        .flat_map(|(m, s)| [m - s, m + s])
        .chain(series.theory.iter().cloned())
        .filter(|v| v.is_finite());
    let (mut y_lo, mut y_hi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !(y_lo.is_finite() && y_hi > y_lo) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    let px = |x: f64| {
        LEFT + if x_hi > x_lo {
            (x - x_lo) / (x_hi - x_lo)
        } else {
            0.5
        } * (W - LEFT - RIGHT)
    };
    let py = |y: f64| TOP + (1.0 - (y - y_lo) / (y_hi - y_lo)) * (H - TOP - BOTTOM);
    let points = |ys: &[f64]| -> String {
        xs.iter()
            .zip(ys)
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" font-size="13" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(&series.title)
    );
    let upper: Vec<f64> = series
        .mean
        .iter()
        .zip(&series.std)
        .map(|(m, s)| m + s)
        .collect();
    let lower: Vec<f64> = series
        .mean
        .iter()
        .zip(&series.std)
        .map(|(m, s)| m - s)
        .collect();
    let mut band = points(&upper);
    let lower_rev: Vec<String> = xs
        .iter()
        .zip(&lower)
        .rev()
        .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    band.push(' ');
    band.push_str(&lower_rev.join(" "));
    let _ = writeln!(
        s,
        r##"<polygon class="band" points="{band}" fill="#b2182b" fill-opacity="0.2" stroke="none"/>"##
    );
    let _ = writeln!(
        s,
        r##"<polyline class="theory" points="{}" fill="none" stroke="#222222" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        points(&series.theory)
    );
    let _ = writeln!(
        s,
        r##"<polyline class="empirical" points="{}" fill="none" stroke="#b2182b" stroke-width="1.5"/>"##,
        points(&series.mean)
    );
    // Axes with end labels.
    let (x0, y0, x1, y1) = (LEFT, H - BOTTOM, W - RIGHT, TOP);
    let _ = writeln!(
        s,
        r##"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#000"/>"##
    );
    let _ = writeln!(
        s,
        r##"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#000"/>"##
    );
    let _ = writeln!(
        s,
        r#"<text x="{x0}" y="{}" text-anchor="middle">{x_lo}</text>"#,
        y0 + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{x1}" y="{}" text-anchor="middle">{x_hi}</text>"#,
        y0 + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{y_lo:.3}</text>"#,
        x0 - 4.0,
        y0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{y_hi:.3}</text>"#,
        x0 - 4.0,
        y1 + 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        H - 12.0,
        escape(&series.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{m}" text-anchor="middle" transform="rotate(-90 16 {m})">{}</text>"#,
        escape(&series.y_label),
        m = (y0 + y1) / 2.0
    );
    // Legend.
    let lx = W - RIGHT - 150.0;
    let _ = writeln!(
        s,
        r##"<line x1="{lx}" y1="{TOP}" x2="{}" y2="{TOP}" stroke="#222222" stroke-dasharray="6 4"/>"##,
        lx + 24.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">theory</text>"#,
        lx + 30.0,
        TOP + 4.0
    );
    let _ = writeln!(
        s,
        r##"<line x1="{lx}" y1="{}" x2="{}" y2="{}" stroke="#b2182b"/>"##,
        TOP + 16.0,
        lx + 24.0,
        TOP + 16.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">empirical mean ± std</text>"#,
        lx + 30.0,
        TOP + 20.0
    );
    s.push_str("</svg>\n");
    s
}
