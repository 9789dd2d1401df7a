//! CSV and SVG output for experiment results.
//!
//! * `regret_vs_horizon.csv`: `policy,horizon,mean_final_regret,stderr,runs`
//! * `cumulative_T<T>.csv`: `policy,t,mean_cum_regret,stderr,runs`
//!
//! Rows are sorted by policy name, then by the numeric column. Reals are
//! written in plain decimal rounded to 10 significant digits, lines end in
//! `\n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::{AggregateCurve, CurvePoint, ExperimentResults};

pub const HORIZON_CSV: &str = "regret_vs_horizon.csv";
const HORIZON_HEADER: &str = "policy,horizon,mean_final_regret,stderr,runs";
const CUMULATIVE_HEADER: &str = "policy,t,mean_cum_regret,stderr,runs";

pub fn cumulative_csv_name(horizon: u64) -> String {
    format!("cumulative_T{horizon}.csv")
}

/// Rounds to 10 significant digits and prints without an exponent.
pub fn format_decimal(value: f64) -> String {
    if value == 0.0 || !value.is_finite() {
        return if value.is_finite() {
            "0".into()
        } else {
            value.to_string()
        };
    }
    let sci = format!("{value:.9e}");
    let exponent: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let rounded: f64 = sci.parse().unwrap();
    let decimals = (9 - exponent).max(0) as usize;
    let mut s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    s
}

/// One named series of (x, y) points, for charting.
struct Series<'a> {
    name: &'a str,
    points: Vec<(f64, f64)>,
}

/// Writes all CSVs (and SVG charts when `svg` is set) into `out_dir`,
/// creating it if needed. Returns the paths written.
pub fn emit(results: &ExperimentResults, out_dir: &Path, svg: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();

    // Policy name -> horizon -> curve, so iteration follows the row order.
    let mut by_policy: BTreeMap<&str, BTreeMap<u64, &AggregateCurve>> = BTreeMap::new();
    for (key, curve) in results {
        by_policy
            .entry(key.policy.name())
            .or_default()
            .insert(key.horizon, curve);
    }

    let mut csv = format!("{HORIZON_HEADER}\n");
    let mut horizon_series = Vec::new();
    for (&policy, curves) in &by_policy {
        let mut points = Vec::new();
        for (&horizon, curve) in curves {
            let fin = curve.final_point();
            push_row(&mut csv, policy, horizon, fin, curve.runs);
            points.push((horizon as f64, fin.mean));
        }
        horizon_series.push(Series {
            name: policy,
            points,
        });
    }
    written.push(write_file(out_dir, HORIZON_CSV, &csv)?);
    if svg {
        let chart = line_chart(
            "Regret vs horizon",
            "horizon T",
            "mean cumulative regret R(T)",
            &horizon_series,
        );
        written.push(write_file(out_dir, "regret_vs_horizon.svg", &chart)?);
    }

    let horizons: std::collections::BTreeSet<u64> = results.keys().map(|k| k.horizon).collect();
    for horizon in horizons {
        let mut csv = format!("{CUMULATIVE_HEADER}\n");
        let mut series = Vec::new();
        for (&policy, curves) in &by_policy {
            let Some(curve) = curves.get(&horizon) else {
                continue;
            };
            for &pt in &curve.points {
                push_row(&mut csv, policy, pt.t, pt, curve.runs);
            }
            series.push(Series {
                name: policy,
                points: curve.points.iter().map(|p| (p.t as f64, p.mean)).collect(),
            });
        }
        let name = cumulative_csv_name(horizon);
        written.push(write_file(out_dir, &name, &csv)?);
        if svg {
            let title = format!("Cumulative regret, T = {horizon}");
            let chart = line_chart(&title, "slot t", "mean cumulative regret R(t)", &series);
            written.push(write_file(out_dir, &name.replace(".csv", ".svg"), &chart)?);
        }
    }
    Ok(written)
}

fn push_row(csv: &mut String, policy: &str, key: u64, pt: CurvePoint, runs: u32) {
    let _ = writeln!(
        csv,
        "{policy},{key},{},{},{runs}",
        format_decimal(pt.mean),
        format_decimal(pt.stderr)
    );
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    const W: f64 = 720.0;
    const H: f64 = 460.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 150.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 60.0;
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x_max, mut y_max) = (0.0f64, 0.0f64);
    for &(x, y) in all {
        x_max = x_max.max(x);
        y_max = y_max.max(y);
    }
    if x_max <= 0.0 {
        x_max = 1.0;
    }
    if y_max <= 0.0 {
        y_max = 1.0;
    }
    let plot_w = W - LEFT - RIGHT;
    let plot_h = H - TOP - BOTTOM;
    let sx = |x: f64| LEFT + x / x_max * plot_w;
    let sy = |y: f64| TOP + plot_h - y / y_max * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    // Axes.
    let _ = writeln!(
        s,
        r#"<path d="M{LEFT},{TOP} V{} H{}" fill="none" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w
    );
    for i in 0..=5 {
        let frac = i as f64 / 5.0;
        let (x, y) = (frac * x_max, frac * y_max);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(x),
            TOP + plot_h + 18.0,
            tick_label(x)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            sy(y) + 4.0,
            tick_label(y)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        H - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18,{:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
        TOP + plot_h / 2.0,
        escape(y_label)
    );
    for (i, series) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = series
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            path.join(" ")
        );
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = LEFT + plot_w + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 25.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + 32.0,
            ly + 4.0,
            escape(series.name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn tick_label(v: f64) -> String {
    if v >= 1000.0 {
        format!("{v:.0}")
    } else {
        format_decimal(format!("{v:.3}").parse().unwrap())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
