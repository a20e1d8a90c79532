//! Static line plots on a fixed 800x600 canvas.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const MAX_POINTS: usize = 1000;
const TICKS: usize = 5;

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub xs: &'a [f64],
    pub ys: &'a [f64],
}

pub struct LinePlot<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub series: Vec<Series<'a>>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let lo = if lo >= 0.0 { 0.0 } else { lo };
    if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
        return (lo, lo + 1.0);
    }
    (lo, hi + 0.05 * (hi - lo))
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

impl LinePlot<'_> {
    pub fn render(&self) -> String {
        let (x0, x1) = range(self.series.iter().flat_map(|s| s.xs.iter().copied()));
        let (y0, y1) = range(self.series.iter().flat_map(|s| s.ys.iter().copied()));
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let py = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

        let mut o = String::new();
        o.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            o,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">"
        );
        let _ = writeln!(o, "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
        let _ = writeln!(
            o,
            "<text x=\"{}\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">{}</text>",
            WIDTH / 2.0,
            escape(self.title)
        );

        // Axes and ticks.
        let _ = writeln!(
            o,
            "<g stroke=\"black\" stroke-width=\"1\"><line x1=\"{LEFT}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\"/><line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{b:.2}\"/></g>",
            b = TOP + ph,
            r = LEFT + pw
        );
        for k in 0..=TICKS {
            let f = k as f64 / TICKS as f64;
            let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
            let (x, y) = (px(xv), py(yv));
            let _ = writeln!(
                o,
                "<line x1=\"{x:.2}\" y1=\"{b:.2}\" x2=\"{x:.2}\" y2=\"{t:.2}\" stroke=\"black\"/><text x=\"{x:.2}\" y=\"{l:.2}\" text-anchor=\"middle\">{}</text>",
                tick_label(xv),
                b = TOP + ph,
                t = TOP + ph + 5.0,
                l = TOP + ph + 20.0
            );
            let _ = writeln!(
                o,
                "<line x1=\"{a:.2}\" y1=\"{y:.2}\" x2=\"{LEFT}\" y2=\"{y:.2}\" stroke=\"black\"/><text x=\"{l:.2}\" y=\"{ty:.2}\" text-anchor=\"end\">{}</text>",
                tick_label(yv),
                a = LEFT - 5.0,
                l = LEFT - 8.0,
                ty = y + 4.0
            );
        }
        let _ = writeln!(
            o,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            LEFT + pw / 2.0,
            HEIGHT - 15.0,
            escape(self.x_label)
        );
        let _ = writeln!(
            o,
            "<text x=\"20\" y=\"{c:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {c:.2})\">{}</text>",
            escape(self.y_label),
            c = TOP + ph / 2.0
        );

        for (n, s) in self.series.iter().enumerate() {
            let stride = s.xs.len().div_ceil(MAX_POINTS).max(1);
            let mut points = String::new();
            let last = s.xs.len().saturating_sub(1);
            for k in (0..s.xs.len()).filter(|k| k % stride == 0 || *k == last) {
                let _ = write!(points, "{:.2},{:.2} ", px(s.xs[k]), py(s.ys[k]));
            }
            let _ = writeln!(
                o,
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"><title>{}</title></polyline>",
                escape(s.color),
                points.trim_end(),
                escape(s.label)
            );
            let ly = TOP + 15.0 + 20.0 * n as f64;
            let lx = LEFT + pw - 170.0;
            let _ = writeln!(
                o,
                "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{}\" stroke-width=\"2\"/><text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
                lx + 25.0,
                escape(s.color),
                lx + 32.0,
                ly + 4.0,
                escape(s.label)
            );
        }
        o.push_str("</svg>\n");
        o
    }
}
