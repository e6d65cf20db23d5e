//! Convergence plots: one line per journal of its ratio against k.

use std::fmt::Write as _;

use pwr_core::PwrTrace;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 220.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PlotError {
    #[error("a convergence plot needs at least two orders, trace has {0}")]
    TooFewOrders(usize),
    #[error("every ratio in the trace is a zero-division sentinel")]
    OnlySentinels,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn ticks(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..=count)
        .map(|i| lo + (hi - lo) * i as f64 / count as f64)
        .collect()
}

/// Renders `r_i(k)` for `k = 1..=k_max`. Sentinel entries are left out of
/// the lines and of the y range. Output depends only on the trace.
pub fn render_convergence_svg(trace: &PwrTrace) -> Result<String, PlotError> {
    let k_max = trace.k_max();
    if k_max < 2 {
        return Err(PlotError::TooFewOrders(k_max));
    }
    let series: Vec<Vec<(usize, f64)>> = (0..trace.n())
        .map(|i| {
            (1..=k_max)
                .filter(|&k| !trace.is_sentinel(k, i))
                .map(|k| (k, trace.ratio_at(k)[i]))
                .collect()
        })
        .collect();
    let values = series.iter().flatten().map(|p| p.1);
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return Err(PlotError::OnlySentinels);
    }
    let pad = if hi > lo {
        (hi - lo) * 0.05
    } else {
        lo.abs().max(1.0) * 0.1
    };
    let (y0, y1) = (lo - pad, hi + pad);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x = |k: f64| LEFT + (k - 1.0) / (k_max as f64 - 1.0) * plot_w;
    let y = |v: f64| TOP + (y1 - v) / (y1 - y0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    let (bx, by) = (LEFT + plot_w, TOP + plot_h);
    let _ = writeln!(
        s,
        r#"<g stroke="black" fill="none"><line x1="{LEFT}" y1="{by}" x2="{bx}" y2="{by}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{by}"/></g>"#
    );

    let step = k_max.div_ceil(20);
    let _ = writeln!(s, r#"<g text-anchor="middle">"#);
    for k in (1..=k_max).step_by(step) {
        let px = x(k as f64);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{by}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}">{k}</text>"#,
            by + 4.0,
            by + 17.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}">k</text></g>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );

    let _ = writeln!(s, r#"<g text-anchor="end">"#);
    for v in ticks(y0, y1, 5) {
        let py = y(v);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}">{v:.2}</text>"#,
            LEFT - 4.0,
            LEFT - 7.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" transform="rotate(-90 14 {:.2})" text-anchor="middle">PWR</text></g>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, points) in series.iter().enumerate() {
        if points.is_empty() {
            continue;
        }
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = points
            .iter()
            .map(|&(k, v)| format!("{:.2},{:.2}", x(k as f64), y(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
            coords.join(" "),
            escape(&trace.labels[i])
        );
    }

    let lx = LEFT + plot_w + 16.0;
    let _ = writeln!(s, r#"<g class="legend">"#);
    for (i, label) in trace.labels.iter().enumerate() {
        let ly = TOP + 8.0 + 16.0 * i as f64;
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 18.0,
            lx + 24.0,
            ly + 4.0,
            escape(label)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}
