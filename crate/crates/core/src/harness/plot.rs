//! Hand-rolled SVG log-log plots; no plotting dependencies, and the
//! output bytes are a pure function of the input.

use crate::error::{Error, Result};
use crate::harness::report::{DiagnosticTable, JumpReport};

pub struct PlotSeries {
    pub label: String,
    /// (scale, value) pairs; values are clamped to the plot floor
    /// before the log is taken so zero entries keep their markers.
    pub points: Vec<(f64, f64)>,
}

const FLOOR: f64 = 1e-18;
const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Residual distance to the final ladder value, per evaluation point.
pub fn series_from_report(report: &JumpReport) -> Vec<PlotSeries> {
    report
        .points
        .iter()
        .map(|p| {
            let last = &p.pv.value;
            let points = p
                .pv
                .trace
                .iter()
                .map(|(scale, v)| {
                    let dist = v
                        .iter()
                        .zip(last)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    (*scale, dist)
                })
                .collect();
            PlotSeries {
                label: format!("point {}", p.point_id),
                points,
            }
        })
        .collect()
}

/// S_δ and S̃_δ columns per evaluation point.
pub fn series_from_diagnostics(table: &DiagnosticTable) -> Vec<PlotSeries> {
    let mut ids: Vec<usize> = table.rows.iter().map(|r| r.point_id).collect();
    ids.sort_unstable();
    ids.dedup();
    let mut out = Vec::new();
    for id in ids {
        let rows: Vec<_> = table.rows.iter().filter(|r| r.point_id == id).collect();
        out.push(PlotSeries {
            label: format!("S point {id}"),
            points: rows.iter().map(|r| (r.delta, r.s_sum)).collect(),
        });
        out.push(PlotSeries {
            label: format!("S~ point {id}"),
            points: rows.iter().map(|r| (r.delta, r.s_diff)).collect(),
        });
    }
    out
}

pub fn render_loglog(title: &str, x_label: &str, y_label: &str, series: &[PlotSeries]) -> Result<String> {
    let all: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter())
        .filter(|(x, _)| *x > 0.0)
        .map(|(x, y)| (*x, y.max(FLOOR)))
        .collect();
    if all.is_empty() {
        return Err(Error::NoData("nothing to plot".into()));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (x, y) in &all {
        x0 = x0.min(x.log10());
        x1 = x1.max(x.log10());
        y0 = y0.min(y.log10());
        y1 = y1.max(y.log10());
    }
    if x1 - x0 < 1e-9 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 < 1e-9 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let map_x = |x: f64| MARGIN + (x.log10() - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let map_y = |y: f64| HEIGHT - MARGIN - (y.log10() - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b:.1}\" x2=\"{r:.1}\" y2=\"{b:.1}\" stroke=\"black\"/>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    ));
    svg.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b:.1}\" stroke=\"black\"/>\n",
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN
    ));
    // Decade ticks.
    for d in (x0.floor() as i64)..=(x1.ceil() as i64) {
        let x = 10f64.powi(d as i32);
        if x.log10() < x0 - 1e-9 || x.log10() > x1 + 1e-9 {
            continue;
        }
        let px = map_x(x);
        svg.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{b:.1}\" x2=\"{px:.2}\" y2=\"{t:.1}\" stroke=\"#dddddd\"/>\n",
            b = HEIGHT - MARGIN,
            t = MARGIN
        ));
        svg.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{y:.1}\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">1e{d}</text>\n",
            y = HEIGHT - MARGIN + 18.0
        ));
    }
    for d in (y0.floor() as i64)..=(y1.ceil() as i64) {
        let y = 10f64.powi(d as i32);
        if y.log10() < y0 - 1e-9 || y.log10() > y1 + 1e-9 {
            continue;
        }
        let py = map_y(y);
        svg.push_str(&format!(
            "<line x1=\"{l}\" y1=\"{py:.2}\" x2=\"{r:.1}\" y2=\"{py:.2}\" stroke=\"#dddddd\"/>\n",
            l = MARGIN,
            r = WIDTH - MARGIN
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{py:.2}\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e{d}</text>\n",
            x = MARGIN - 6.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">{}</text>\n",
        WIDTH / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    ));

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = s
            .points
            .iter()
            .filter(|(x, _)| *x > 0.0)
            .map(|(x, y)| (map_x(*x), map_y(y.max(FLOOR))))
            .collect();
        if pts.is_empty() {
            continue;
        }
        let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            path.join(" ")
        ));
        for (x, y) in &pts {
            svg.push_str(&format!(
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{color}\"/>\n"
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"11\" fill=\"{color}\">{}</text>\n",
            WIDTH - MARGIN + 4.0,
            MARGIN + 14.0 * i as f64,
            escape(&s.label)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
