//! Minimal SVG emission for risk-vs-size plots: log-log medians per
//! estimator with first/third-quartile boxes. No external renderer; the
//! summary CSVs remain the real output contract.

use std::fmt::Write;

use crate::risk::RiskSummary;
use crate::tree::Model;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 150.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

pub(crate) fn render_risk_plot(model: Model, alpha: f64, rows: &[&RiskSummary]) -> String {
    let xs: Vec<f64> = rows.iter().map(|s| (s.n as f64).log10()).collect();
    let lows: Vec<f64> = rows.iter().map(|s| s.q1.max(1e-12).log10()).collect();
    let highs: Vec<f64> = rows.iter().map(|s| s.q3.max(1e-12).log10()).collect();
    let (x_min, x_max) = bounds(&xs);
    let (y_min, y_max) = bounds(&lows.iter().chain(&highs).copied().collect::<Vec<_>>());
    let x_span = (x_max - x_min).max(1e-9);
    let y_span = (y_max - y_min).max(1e-9);
    let sx = |v: f64| MARGIN_L + (v - x_min) / x_span * (WIDTH - MARGIN_L - MARGIN_R);
    let sy = |v: f64| HEIGHT - MARGIN_B - (v - y_min) / y_span * (HEIGHT - MARGIN_T - MARGIN_B);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"20\" font-size=\"14\">risk R_alpha vs n (log-log), model={model}, alpha={alpha}</text>",
        MARGIN_L
    );
    // axes
    let _ = writeln!(
        svg,
        "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\
         <line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"black\"/>",
        l = MARGIN_L,
        r = WIDTH - MARGIN_R,
        t = MARGIN_T,
        b = HEIGHT - MARGIN_B
    );

    // x ticks at the distinct sizes
    let mut sizes: Vec<usize> = rows.iter().map(|s| s.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for &n in &sizes {
        let x = sx((n as f64).log10());
        let _ = writeln!(
            svg,
            "<line x1=\"{x}\" y1=\"{b}\" x2=\"{x}\" y2=\"{b2}\" stroke=\"black\"/>\
             <text x=\"{x}\" y=\"{ty}\" text-anchor=\"middle\">{n}</text>",
            b = HEIGHT - MARGIN_B,
            b2 = HEIGHT - MARGIN_B + 5.0,
            ty = HEIGHT - MARGIN_B + 20.0
        );
    }
    // y ticks at whole decades
    let mut dec = y_min.floor() as i64;
    while (dec as f64) <= y_max.ceil() {
        let v = dec as f64;
        if v >= y_min - 0.2 && v <= y_max + 0.2 {
            let y = sy(v);
            let _ = writeln!(
                svg,
                "<line x1=\"{l1}\" y1=\"{y}\" x2=\"{l}\" y2=\"{y}\" stroke=\"black\"/>\
                 <text x=\"{tx}\" y=\"{ty}\" text-anchor=\"end\">1e{dec}</text>",
                l1 = MARGIN_L - 5.0,
                l = MARGIN_L,
                tx = MARGIN_L - 8.0,
                ty = y + 4.0
            );
        }
        dec += 1;
    }

    // one series per estimator, in first-appearance order
    let mut estimators = Vec::new();
    for s in rows {
        if !estimators.contains(&s.estimator) {
            estimators.push(s.estimator);
        }
    }
    for (ei, est) in estimators.iter().enumerate() {
        let color = PALETTE[ei % PALETTE.len()];
        let mut series: Vec<&&RiskSummary> =
            rows.iter().filter(|s| s.estimator == *est).collect();
        series.sort_by_key(|s| s.n);
        let points: Vec<String> = series
            .iter()
            .map(|s| format!("{:.2},{:.2}", sx((s.n as f64).log10()), sy(s.median.max(1e-12).log10())))
            .collect();
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.join(" ")
        );
        for s in &series {
            let x = sx((s.n as f64).log10());
            let y1 = sy(s.q3.max(1e-12).log10());
            let y3 = sy(s.q1.max(1e-12).log10());
            let ym = sy(s.median.max(1e-12).log10());
            let _ = writeln!(
                svg,
                "<rect x=\"{rx:.2}\" y=\"{y1:.2}\" width=\"8\" height=\"{h:.2}\" \
                 fill=\"{color}\" fill-opacity=\"0.25\" stroke=\"{color}\"/>\
                 <line x1=\"{rx:.2}\" y1=\"{ym:.2}\" x2=\"{rx2:.2}\" y2=\"{ym:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
                rx = x - 4.0,
                rx2 = x + 4.0,
                h = (y3 - y1).max(0.5)
            );
        }
        let ly = MARGIN_T + 16.0 * ei as f64;
        let _ = writeln!(
            svg,
            "<rect x=\"{lx}\" y=\"{ry:.2}\" width=\"10\" height=\"10\" fill=\"{color}\"/>\
             <text x=\"{tx}\" y=\"{ty:.2}\">{est}</text>",
            lx = WIDTH - MARGIN_R + 10.0,
            ry = ly - 9.0,
            tx = WIDTH - MARGIN_R + 26.0,
            ty = ly
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min.is_finite() && max.is_finite() {
        (min, max)
    } else {
        (0.0, 1.0)
    }
}
