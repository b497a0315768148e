//! Minimal SVG line plots of sweep CSV columns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use anyhow::{bail, Context, Result};

use crate::args::PlotArgs;
use crate::EXIT_OK;

const W: f64 = 720.0;
const H: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// Points of each series, sorted by x. Rows with an empty x or y are skipped.
pub type Series = BTreeMap<String, Vec<(f64, f64)>>;

pub fn read_series(text: &str, x: &str, y: &str, series: Option<&str>) -> Result<Series> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    let col = |name: &str| {
        header.iter().position(|h| h == name).with_context(|| {
            let names: Vec<&str> = header.iter().collect();
            format!("no column '{name}'; available: {}", names.join(", "))
        })
    };
    let (xi, yi) = (col(x)?, col(y)?);
    let si = series.map(col).transpose()?;
    let mut out = Series::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let (xs, ys) = (&rec[xi], &rec[yi]);
        if xs.is_empty() || ys.is_empty() {
            continue;
        }
        let parse = |s: &str| s.parse::<f64>().with_context(|| format!("row {}: '{s}' is not a number", i + 2));
        let key = match si {
            Some(s) => rec[s].to_string(),
            None => y.to_string(),
        };
        out.entry(key).or_default().push((parse(xs)?, parse(ys)?));
    }
    for pts in out.values_mut() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    }
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Linear or log₁₀ axis mapping onto `[lo_px, hi_px]`.
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo == hi {
            lo -= 0.5;
            hi += 0.5;
        }
        Axis { lo, hi, log }
    }

    fn frac(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    /// About six round tick values, in data units.
    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.ceil() as i32, self.hi.floor() as i32);
            if a < b {
                let step = ((b - a) / 6 + 1).max(1);
                return (a..=b).step_by(step as usize).map(|e| 10f64.powi(e)).collect();
            }
            // under two decades: round values on the linear scale
            return linear_ticks(10f64.powf(self.lo), 10f64.powf(self.hi));
        }
        linear_ticks(self.lo, self.hi)
    }
}

fn linear_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.0e}")
    } else if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{}", (v * 1000.0).round() / 1000.0)
    }
}

pub fn render(series: &Series, a: &PlotArgs) -> Result<String> {
    for (name, pts) in series {
        for &(x, y) in pts {
            if (a.logx && x <= 0.0) || (a.logy && y <= 0.0) {
                bail!("log scale requires positive values (series {name}: {x}, {y})");
            }
        }
    }
    let title = a.title.clone().unwrap_or_else(|| format!("{} vs {}", a.y, a.x));
    let (pw, ph) = (W - LEFT - RIGHT, H - TOP - BOTTOM);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#)?;
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#)?;
    writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, LEFT + pw / 2.0, escape(&title))?;
    writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#)?;
    let xlab = if a.logx { format!("{} (log)", a.x) } else { a.x.clone() };
    let ylab = if a.logy { format!("{} (log)", a.y) } else { a.y.clone() };
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, H - 15.0, escape(&xlab))?;
    writeln!(
        s,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        TOP + ph / 2.0,
        escape(&ylab)
    )?;

    let all = || series.values().flatten();
    if all().next().is_none() {
        writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" fill="gray">no data</text>"#, LEFT + pw / 2.0, TOP + ph / 2.0)?;
        s.push_str("</svg>\n");
        return Ok(s);
    }
    let xa = Axis::new(all().map(|p| p.0), a.logx);
    let ya = Axis::new(all().map(|p| p.1), a.logy);
    let px = |x: f64| LEFT + xa.frac(x) * pw;
    let py = |y: f64| TOP + ph - ya.frac(y) * ph;

    for t in xa.ticks() {
        let x = px(t);
        writeln!(s, r#"<line x1="{x:.2}" y1="{0}" x2="{x:.2}" y2="{1}" stroke="black"/>"#, TOP + ph, TOP + ph + 5.0)?;
        writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#, TOP + ph + 19.0, label(t))?;
    }
    for t in ya.ticks() {
        let y = py(t);
        writeln!(s, r#"<line x1="{0}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 5.0)?;
        writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, y + 4.0, label(t))?;
    }
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, points.join(" "))?;
        for &(x, y) in pts {
            writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, px(x), py(y))?;
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = W - RIGHT + 15.0;
        writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0)?;
        writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(name))?;
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn run(a: PlotArgs, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let series = read_series(&text, &a.x, &a.y, a.series.as_deref())?;
    let svg = render(&series, &a)?;
    match &a.out {
        Some(p) => fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(EXIT_OK)
}
