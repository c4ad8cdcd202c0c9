//! Minimal native SVG output: a line plot and a heatmap. Cosmetic only;
//! the CSV files carry the data of record.

const W: f64 = 720.0;
const H: f64 = 480.0;
const MARGIN: f64 = 56.0;

fn axis_frame(title: &str, xlabel: &str, ylabel: &str) -> String {
    format!(
        r##"<rect x="{m}" y="{m}" width="{iw}" height="{ih}" fill="none" stroke="#444"/>
<text x="{cx}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{title}</text>
<text x="{cx}" y="{by}" text-anchor="middle" font-family="sans-serif" font-size="12">{xlabel}</text>
<text x="16" y="{cy}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {cy})">{ylabel}</text>
"##,
        m = MARGIN,
        iw = W - 2.0 * MARGIN,
        ih = H - 2.0 * MARGIN,
        cx = W / 2.0,
        by = H - 16.0,
        cy = H / 2.0,
    )
}

/// Polyline plot of (x, y) samples.
pub fn line_plot(points: &[(f64, f64)], title: &str, xlabel: &str, ylabel: &str) -> String {
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() || x1 <= x0 {
        x0 = 0.0;
        x1 = 1.0;
    }
    if !y0.is_finite() || y1 <= y0 {
        y0 -= 0.5;
        y1 = y0 + 1.0;
    }
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);
    let path: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">
<rect width="{W}" height="{H}" fill="white"/>
{frame}<polyline points="{pts}" fill="none" stroke="#1f6fb2" stroke-width="1.2"/>
<text x="{m}" y="{ylowpos}" font-family="sans-serif" font-size="10">{y0:.4}</text>
<text x="{m}" y="{m2}" font-family="sans-serif" font-size="10">{y1:.4}</text>
<text x="{m}" y="{xlabpos}" font-family="sans-serif" font-size="10">{x0:.4}</text>
<text x="{xr}" y="{xlabpos}" text-anchor="end" font-family="sans-serif" font-size="10">{x1:.4}</text>
</svg>
"##,
        frame = axis_frame(title, xlabel, ylabel),
        pts = path.join(" "),
        m = MARGIN,
        m2 = MARGIN - 6.0,
        ylowpos = H - MARGIN + 12.0,
        xlabpos = H - MARGIN + 24.0,
        xr = W - MARGIN,
    )
}

fn color(t: f64) -> String {
    // dark blue -> yellow
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 * t) as u8;
    let g = (32.0 + 200.0 * t) as u8;
    let b = (96.0 + 96.0 * (1.0 - t)) as u8;
    format!("rgb({r},{g},{b})")
}

/// Heatmap of `values[yi][xi]` over grid axes.
pub fn heatmap(
    xs: &[f64],
    ys: &[f64],
    values: &[Vec<f64>],
    title: &str,
    xlabel: &str,
    ylabel: &str,
) -> String {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for row in values {
        for &v in row {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() || hi <= lo {
        lo = 0.0;
        hi = 1.0;
    }
    let nx = xs.len().max(1) as f64;
    let ny = ys.len().max(1) as f64;
    let cw = (W - 2.0 * MARGIN) / nx;
    let ch = (H - 2.0 * MARGIN) / ny;
    let mut cells = String::new();
    for (yi, row) in values.iter().enumerate() {
        for (xi, &v) in row.iter().enumerate() {
            let x = MARGIN + xi as f64 * cw;
            let y = H - MARGIN - (yi as f64 + 1.0) * ch;
            cells.push_str(&format!(
                r##"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{c}"/>"##,
                w = cw + 0.3,
                h = ch + 0.3,
                c = color((v - lo) / (hi - lo)),
            ));
            cells.push('\n');
        }
    }
    format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">
<rect width="{W}" height="{H}" fill="white"/>
{cells}{frame}</svg>
"##,
        frame = axis_frame(title, xlabel, ylabel),
    )
}
