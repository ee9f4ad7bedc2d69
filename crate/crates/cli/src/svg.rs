//! Minimal self-contained SVG plots. CSV is the data contract; these are
//! viewing conveniences: polyline charts with axes and a heat map with the
//! light cone overlaid as a dashed line.

use std::fmt::Write as _;

const W: f64 = 760.0;
const H: f64 = 520.0;
const ML: f64 = 70.0;
const MR: f64 = 20.0;
const MT: f64 = 40.0;
const MB: f64 = 55.0;

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![lo];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(mag * 10.0);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-12 * span {
        out.push(t);
        t += step;
    }
    out
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let mut xlo = f64::INFINITY;
    let mut xhi = f64::NEG_INFINITY;
    let mut ylo = f64::INFINITY;
    let mut yhi = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            xlo = xlo.min(x);
            xhi = xhi.max(x);
            ylo = ylo.min(y);
            yhi = yhi.max(y);
        }
    }
    if ylo > 0.0 && ylo < 0.2 * yhi {
        ylo = 0.0;
    }
    let pad = 0.04 * (yhi - ylo).max(1e-300);
    let (ylo, yhi) = (ylo - pad, yhi + pad);
    let px = |x: f64| ML + (x - xlo) / (xhi - xlo) * (W - ML - MR);
    let py = |y: f64| H - MB - (y - ylo) / (yhi - ylo) * (H - MT - MB);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
        W / 2.0,
        title
    );
    for t in ticks(xlo, xhi) {
        let x = px(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#ddd\"/>",
            MT,
            H - MB
        );
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            H - MB + 16.0,
            tick_label(t)
        );
    }
    for t in ticks(ylo, yhi) {
        let y = py(t);
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>",
            ML,
            W - MR
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            ML - 6.0,
            y + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        s,
        "<rect x=\"{ML}\" y=\"{MT}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"black\"/>",
        W - ML - MR,
        H - MT - MB
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        (ML + W - MR) / 2.0,
        H - 12.0,
        x_label
    );
    let _ = writeln!(
        s,
        "<text x=\"18\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>",
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0,
        y_label
    );
    for (si, ser) in series.iter().enumerate() {
        let dash = if ser.dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        let mut pts = String::new();
        for &(x, y) in &ser.points {
            let _ = write!(pts, "{:.2},{:.2} ", px(x), py(y));
        }
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"{} />",
            pts.trim_end(),
            ser.color,
            dash
        );
        let ly = MT + 18.0 + 18.0 * si as f64;
        let _ = writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{}\" stroke-width=\"2\"{}/>",
            W - MR - 150.0,
            W - MR - 120.0,
            ser.color,
            dash
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            W - MR - 112.0,
            ly + 4.0,
            ser.label
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Five-stop colormap (dark blue -> yellow) for max-normalized weights.
fn color(v: f64) -> String {
    let stops = [
        (0.0, (13u8, 8u8, 135u8)),
        (0.25, (126, 3, 168)),
        (0.5, (204, 71, 120)),
        (0.75, (248, 149, 64)),
        (1.0, (240, 249, 33)),
    ];
    let v = v.clamp(0.0, 1.0);
    for w in stops.windows(2) {
        let (a, ca) = w[0];
        let (b, cb) = w[1];
        if v <= b {
            let t = (v - a) / (b - a);
            let mix = |x: u8, y: u8| (x as f64 + t * (y as f64 - x as f64)).round() as u8;
            return format!("#{:02x}{:02x}{:02x}", mix(ca.0, cb.0), mix(ca.1, cb.1), mix(ca.2, cb.2));
        }
    }
    "#f0f921".to_string()
}

/// Heat map of `weight[ik][iw]` (max-normalized, clamped at `clamp_quantile`
/// of the maximum so the diverging near-cone cells do not wash out the map)
/// with the light cone as a dashed white line.
pub fn heatmap(
    title: &str,
    k_grid: &[f64],
    omega_grid: &[f64],
    weight: &[Vec<f64>],
    max_cells: usize,
) -> String {
    let kstep = (k_grid.len() + max_cells - 1) / max_cells;
    let wstep = (omega_grid.len() + max_cells - 1) / max_cells;
    let kidx: Vec<usize> = (0..k_grid.len()).step_by(kstep.max(1)).collect();
    let widx: Vec<usize> = (0..omega_grid.len()).step_by(wstep.max(1)).collect();
    let kmax = *k_grid.last().unwrap();
    let wmax = *omega_grid.last().unwrap();
    let vmax = weight
        .iter()
        .flat_map(|r| r.iter())
        .cloned()
        .fold(0.0f64, f64::max)
        .max(1e-300);

    let px = |k: f64| ML + k / kmax * (W - ML - MR);
    let py = |w: f64| H - MB - w / wmax * (H - MT - MB);
    let cw = (W - ML - MR) / kidx.len() as f64;
    let ch = (H - MT - MB) / widx.len() as f64;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
        W / 2.0,
        title
    );
    for (ci, &ik) in kidx.iter().enumerate() {
        for &iw in &widx {
            // Aggregate the block by its maximum so thin ridges survive.
            let mut v = 0.0f64;
            for di in 0..kstep {
                for dj in 0..wstep {
                    if ik + di < weight.len() && iw + dj < weight[0].len() {
                        v = v.max(weight[ik + di][iw + dj]);
                    }
                }
            }
            let x = ML + ci as f64 * cw;
            let y = py(omega_grid[iw]) - ch;
            let _ = writeln!(
                s,
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
                cw + 0.5,
                ch + 0.5,
                color((v / vmax).sqrt())
            );
        }
    }
    // Light cone omega = k.
    let kend = kmax.min(wmax);
    let _ = writeln!(
        s,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"white\" stroke-width=\"1.5\" stroke-dasharray=\"7 5\"/>",
        px(0.0),
        py(0.0),
        px(kend),
        py(kend)
    );
    for t in ticks(0.0, kmax) {
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            px(t),
            H - MB + 16.0,
            tick_label(t)
        );
    }
    for t in ticks(0.0, wmax) {
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            ML - 6.0,
            py(t) + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        s,
        "<rect x=\"{ML}\" y=\"{MT}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"black\"/>",
        W - ML - MR,
        H - MT - MB
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">ck/(sqrt(eps_s) w0)</text>",
        (ML + W - MR) / 2.0,
        H - 12.0
    );
    let _ = writeln!(
        s,
        "<text x=\"18\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">W/w0</text>",
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0
    );
    s.push_str("</svg>\n");
    s
}
