//! Minimal standalone SVG: line charts and banded contour maps.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn fmt(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit<'a>(points: impl Iterator<Item = &'a (f64, f64)>) -> Self {
        let mut f = Frame {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
        };
        for &(x, y) in points.filter(|p| p.0.is_finite() && p.1.is_finite()) {
            f.x0 = f.x0.min(x);
            f.x1 = f.x1.max(x);
            f.y0 = f.y0.min(y);
            f.y1 = f.y1.max(y);
        }
        if !f.x0.is_finite() {
            return Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 };
        }
        if f.x1 == f.x0 {
            f.x1 = f.x0 + 1.0;
        }
        if f.y1 == f.y0 {
            f.y1 = f.y0 + 1.0;
        }
        f
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn open(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<path d="M{l} {t} L{l} {b} L{r} {b}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let s = k as f64 / 4.0;
        let xv = f.x0 + s * (f.x1 - f.x0);
        let yv = f.y0 + s * (f.y1 - f.y0);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            fmt(f.px(xv)),
            b + 16.0,
            fmt(xv)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            l - 6.0,
            fmt(f.py(yv) + 4.0),
            fmt(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    );
}

/// One or more `(x, y)` series on shared axes.
#[derive(Debug, Clone, Default)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<(String, Vec<(f64, f64)>)>,
}

impl LineChart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
        }
    }

    pub fn with_series(mut self, name: &str, points: Vec<(f64, f64)>) -> Self {
        self.series.push((name.into(), points));
        self
    }

    pub fn render(&self) -> String {
        let frame = Frame::fit(self.series.iter().flat_map(|s| s.1.iter()));
        let mut out = String::new();
        open(&mut out, &self.title);
        axes(&mut out, &frame, &self.x_label, &self.y_label);
        for (k, (name, pts)) in self.series.iter().enumerate() {
            let colour = PALETTE[k % PALETTE.len()];
            let mut d = String::new();
            let mut pen_down = false;
            for &(x, y) in pts {
                if !(x.is_finite() && y.is_finite()) {
                    pen_down = false;
                    continue;
                }
                let _ = write!(d, "{}{} {} ", if pen_down { "L" } else { "M" }, fmt(frame.px(x)), fmt(frame.py(y)));
                pen_down = true;
            }
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
                d.trim_end()
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" fill="{colour}">{}</text>"#,
                WIDTH - MARGIN - 120.0,
                MARGIN + 14.0 * (k as f64 + 1.0),
                escape(name)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// A field on a rectangular grid drawn as filled cells coloured by band.
///
/// `values[j * xs.len() + i]` belongs to `(xs[i], ys[j])`.
#[derive(Debug, Clone)]
pub struct ContourMap {
    pub title: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
    pub bands: usize,
}

impl ContourMap {
    pub fn render(&self) -> String {
        let (nx, ny) = (self.xs.len(), self.ys.len());
        assert_eq!(self.values.len(), nx * ny, "values must cover the grid");
        let corners = [
            (self.xs.first().copied().unwrap_or(0.0), self.ys.first().copied().unwrap_or(0.0)),
            (self.xs.last().copied().unwrap_or(1.0), self.ys.last().copied().unwrap_or(1.0)),
        ];
        let frame = Frame::fit(corners.iter());
        let finite = self.values.iter().copied().filter(|v| v.is_finite());
        let lo = finite.clone().fold(f64::INFINITY, f64::min);
        let hi = finite.fold(f64::NEG_INFINITY, f64::max);
        let bands = self.bands.max(2);
        let band = |v: f64| -> Option<usize> {
            if !v.is_finite() {
                return None;
            }
            if hi <= lo {
                return Some(0);
            }
            Some((((v - lo) / (hi - lo)) * bands as f64).floor().min((bands - 1) as f64) as usize)
        };
        let mut out = String::new();
        open(&mut out, &self.title);
        let half = |v: &[f64], i: usize| -> (f64, f64) {
            let left = if i == 0 { v[0] } else { 0.5 * (v[i - 1] + v[i]) };
            let right = if i + 1 == v.len() { v[i] } else { 0.5 * (v[i] + v[i + 1]) };
            (left, right)
        };
        for j in 0..ny {
            let (ya, yb) = half(&self.ys, j);
            for i in 0..nx {
                let Some(b) = band(self.values[j * nx + i]) else {
                    continue;
                };
                let (xa, xb) = half(&self.xs, i);
                // light to dark blue
                let s = b as f64 / (bands - 1) as f64;
                let (r, g, bl) = (
                    (235.0 - 215.0 * s) as u8,
                    (240.0 - 160.0 * s) as u8,
                    (255.0 - 95.0 * s) as u8,
                );
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="rgb({r},{g},{bl})"/>"#,
                    fmt(frame.px(xa)),
                    fmt(frame.py(yb)),
                    fmt(frame.px(xb) - frame.px(xa)),
                    fmt(frame.py(ya) - frame.py(yb)),
                );
            }
        }
        axes(&mut out, &frame, "x", "y");
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{} bands, u in [{}, {}]</text>"#,
            MARGIN,
            MARGIN - 8.0,
            bands,
            fmt(lo),
            fmt(hi)
        );
        out.push_str("</svg>\n");
        out
    }
}
