//! Minimal self-contained SVG line charts for the experiment CSVs.
//!
//! Two chart families: total infected versus budget fraction (one chart per
//! mixing value, from `aggregate.csv`) and the averaged infection time
//! series (from `evolution.csv`). Pure string construction — identical
//! input CSVs yield identical SVG bytes.

use std::fmt::Write as _;

use anyhow::{anyhow, Context, Result};

pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

const WIDTH: f64 = 820.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 190.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 58.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn fmt_num(v: f64) -> String {
    // Fixed 4-decimal formatting with trailing zeros trimmed: deterministic
    // and compact for both fractions (0.04) and counts (2835.7).
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

impl Chart {
    pub fn to_svg(&self) -> String {
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let xs = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.0));
        let ys = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.1));
        let (x_min, x_max) = bounds(xs);
        let (_, y_max) = bounds(ys);
        let y_min = 0.0; // counts and fractions both read best from zero
        let y_max = if y_max <= y_min { y_min + 1.0 } else { y_max };
        let x_max = if x_max <= x_min { x_min + 1.0 } else { x_max };
        let sx = move |v: f64| MARGIN_LEFT + (v - x_min) / (x_max - x_min) * plot_w;
        let sy = move |v: f64| MARGIN_TOP + plot_h - (v - y_min) / (y_max - y_min) * plot_h;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
             font-family=\"sans-serif\" font-size=\"13\">"
        );
        let _ = writeln!(
            svg,
            "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
            MARGIN_LEFT + plot_w / 2.0,
            escape(&self.title)
        );

        // Axes, ticks, and grid lines.
        for i in 0..=5 {
            let t = i as f64 / 5.0;
            let xv = x_min + t * (x_max - x_min);
            let yv = y_min + t * (y_max - y_min);
            let x = sx(xv);
            let y = sy(yv);
            let _ = writeln!(
                svg,
                "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#dddddd\"/>",
                MARGIN_TOP,
                MARGIN_TOP + plot_h
            );
            let _ = writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#dddddd\"/>",
                MARGIN_LEFT,
                MARGIN_LEFT + plot_w
            );
            let _ = writeln!(
                svg,
                "<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                MARGIN_TOP + plot_h + 20.0,
                fmt_num(xv)
            );
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
                MARGIN_LEFT - 8.0,
                y + 4.0,
                fmt_num(yv)
            );
        }
        let _ = writeln!(
            svg,
            "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
             fill=\"none\" stroke=\"#333333\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            "<text x=\"20\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {})\">{}</text>",
            MARGIN_TOP + plot_h / 2.0,
            MARGIN_TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        // Series polylines and the legend.
        for (idx, series) in self.series.iter().enumerate() {
            let color = PALETTE[idx % PALETTE.len()];
            let mut points = String::new();
            for &(x, y) in &series.points {
                let _ = write!(points, "{},{} ", fmt_num(sx(x)), fmt_num(sy(y)));
            }
            let _ = writeln!(
                svg,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
                points.trim_end()
            );
            let ly = MARGIN_TOP + 14.0 + idx as f64 * 20.0;
            let lx = MARGIN_LEFT + plot_w + 14.0;
            let _ = writeln!(
                svg,
                "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>",
                lx + 22.0
            );
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\">{}</text>",
                lx + 28.0,
                ly + 4.0,
                escape(&series.name)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Columns pulled out of `aggregate.csv` for charting.
pub struct AggregateRecord {
    pub strategy: String,
    pub mu: f64,
    pub f: f64,
    pub total_infected_mean: f64,
}

pub fn parse_aggregate_csv(text: &str) -> Result<Vec<AggregateRecord>> {
    let mut rows = Vec::new();
    let mut lines = text.lines();
    let header = lines.next().context("aggregate.csv is empty")?;
    let cols: Vec<&str> = header.split(',').collect();
    let idx = |name: &str| {
        cols.iter()
            .position(|c| *c == name)
            .ok_or_else(|| anyhow!("aggregate.csv missing column '{name}'"))
    };
    let (c_strategy, c_mu, c_f, c_total) = (
        idx("strategy")?,
        idx("mu")?,
        idx("f")?,
        idx("total_infected_mean")?,
    );
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let field = |i: usize| -> Result<&str> {
            fields
                .get(i)
                .copied()
                .ok_or_else(|| anyhow!("aggregate.csv row {}: too few columns", n + 2))
        };
        rows.push(AggregateRecord {
            strategy: field(c_strategy)?.to_string(),
            mu: field(c_mu)?.parse().context("mu column")?,
            f: field(c_f)?.parse().context("f column")?,
            total_infected_mean: field(c_total)?
                .parse()
                .context("total_infected_mean column")?,
        });
    }
    Ok(rows)
}

/// Rows of `evolution.csv`.
pub struct SeriesRecord {
    pub strategy: String,
    pub round: f64,
    pub infected_mean: f64,
}

pub fn parse_series_csv(text: &str) -> Result<Vec<SeriesRecord>> {
    let mut rows = Vec::new();
    let mut lines = text.lines();
    let header = lines.next().context("evolution.csv is empty")?;
    if header != "strategy,round,infected_mean" {
        return Err(anyhow!("evolution.csv has unexpected header '{header}'"));
    }
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut it = line.split(',');
        let mut next = || {
            it.next()
                .ok_or_else(|| anyhow!("evolution.csv row {}: too few columns", n + 2))
        };
        rows.push(SeriesRecord {
            strategy: next()?.to_string(),
            round: next()?.parse().context("round column")?,
            infected_mean: next()?.parse().context("infected_mean column")?,
        });
    }
    Ok(rows)
}

/// One chart per distinct μ: total infected (mean over replicates) against
/// the budget fraction, one line per strategy.
pub fn sweep_charts(records: &[AggregateRecord]) -> Vec<(f64, Chart)> {
    let mut mus: Vec<f64> = records.iter().map(|r| r.mu).collect();
    mus.sort_by(f64::total_cmp);
    mus.dedup();
    let mut charts = Vec::new();
    for &mu in &mus {
        let mut names: Vec<&str> = records
            .iter()
            .filter(|r| r.mu == mu)
            .map(|r| r.strategy.as_str())
            .collect();
        let mut seen = std::collections::HashSet::new();
        names.retain(|n| seen.insert(*n)); // first-appearance order = CSV order
        let series = names
            .iter()
            .map(|name| {
                let mut points: Vec<(f64, f64)> = records
                    .iter()
                    .filter(|r| r.mu == mu && r.strategy == *name)
                    .map(|r| (r.f, r.total_infected_mean))
                    .collect();
                points.sort_by(|a, b| a.0.total_cmp(&b.0));
                Series {
                    name: name.to_string(),
                    points,
                }
            })
            .collect();
        charts.push((
            mu,
            Chart {
                title: format!("Total infected vs immunized fraction (mu={})", fmt_num(mu)),
                x_label: "immunized fraction f".to_string(),
                y_label: "mean total infected".to_string(),
                series,
            },
        ));
    }
    charts
}

/// The averaged infection time series, one line per strategy.
pub fn evolution_chart(records: &[SeriesRecord]) -> Chart {
    let mut names: Vec<&str> = records.iter().map(|r| r.strategy.as_str()).collect();
    let mut seen = std::collections::HashSet::new();
    names.retain(|n| seen.insert(*n));
    let series = names
        .iter()
        .map(|name| Series {
            name: name.to_string(),
            points: records
                .iter()
                .filter(|r| r.strategy == *name)
                .map(|r| (r.round, r.infected_mean))
                .collect(),
        })
        .collect();
    Chart {
        title: "Time evolution of infection".to_string(),
        x_label: "round".to_string(),
        y_label: "mean infected".to_string(),
        series,
    }
}
