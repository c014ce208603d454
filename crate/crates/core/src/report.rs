//! Tabular and graphical output: per-graph CSV rows, per-pair parameter rows,
//! and self-contained SVG scatter plots.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{dichotomy_classify, ExpansionParams};
use crate::scalar::Scalar;

/// Column order of [`ReportRow`] files.
pub const REPORT_HEADER: [&str; 11] = [
    "graph_id",
    "n",
    "m",
    "k",
    "c_hat",
    "estimated_exponent",
    "mean_c_rel",
    "mean_predicted_exponent_thm",
    "mean_predicted_exponent_exp",
    "mean_delta_rho",
    "band",
];

/// Column order of one [`ExpansionParams`] row.
pub const PARAMS_HEADER: [&str; 23] = [
    "alpha",
    "b",
    "b_plus",
    "d",
    "cheap_s",
    "cheap_t",
    "expan_s",
    "expan_t",
    "overlap",
    "d_alpha",
    "S1",
    "S2",
    "T1",
    "T2",
    "rho",
    "rho_max",
    "delta_rho",
    "c_rel",
    "covered",
    "eps",
    "predicted_exponent_thm",
    "predicted_exponent_exp",
    "classification",
];

/// Estimated-exponent band of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Band {
    Sublinear,
    Middle,
    Linear,
}

impl Band {
    /// `x > hi` is linear, `x < lo` is sublinear, anything else is middle.
    pub fn of(x: f64, [lo, hi]: [f64; 2]) -> Band {
        if x > hi {
            Band::Linear
        } else if x < lo {
            Band::Sublinear
        } else {
            Band::Middle
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Band::Sublinear => "sublinear",
            Band::Middle => "middle",
            Band::Linear => "linear",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub c_hat: f64,
    pub estimated_exponent: f64,
    pub mean_c_rel: Option<f64>,
    pub mean_predicted_exponent_thm: Option<f64>,
    pub mean_predicted_exponent_exp: Option<f64>,
    pub mean_delta_rho: Option<f64>,
    pub band: Band,
}

impl ReportRow {
    pub fn record(&self) -> Vec<String> {
        vec![
            self.graph_id.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.k.to_string(),
            fmt_g(self.c_hat),
            fmt_g(self.estimated_exponent),
            fmt_opt(self.mean_c_rel),
            fmt_opt(self.mean_predicted_exponent_thm),
            fmt_opt(self.mean_predicted_exponent_exp),
            fmt_opt(self.mean_delta_rho),
            self.band.as_str().to_string(),
        ]
    }
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation outside `[1e-4, 1e12)`.
pub fn fmt_g(x: f64) -> String {
    const P: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // Rounding to P digits decides the exponent (9.9999999999996 -> 10).
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_g).unwrap_or_default()
}

fn fmt_scalar<F: Scalar>(x: F) -> String {
    fmt_g(x.to_f64().unwrap_or(f64::NAN))
}

/// One row in [`PARAMS_HEADER`] order.
pub fn params_record<F: Scalar>(p: &ExpansionParams<F>) -> Vec<String> {
    let opt = |x: Option<F>| x.map(fmt_scalar).unwrap_or_default();
    vec![
        fmt_scalar(p.alpha),
        fmt_scalar(p.b),
        fmt_scalar(p.b_plus),
        p.d.to_string(),
        p.cheap_s.to_string(),
        p.cheap_t.to_string(),
        p.expan_s.to_string(),
        p.expan_t.to_string(),
        p.overlap.to_string(),
        p.d_alpha.to_string(),
        p.s1.to_string(),
        p.s2.to_string(),
        p.t1.to_string(),
        p.t2.to_string(),
        fmt_scalar(p.rho),
        fmt_scalar(p.rho_max),
        fmt_scalar(p.delta_rho),
        opt(p.c_rel),
        p.covered.to_string(),
        opt(p.eps),
        opt(p.predicted_exponent_thm),
        opt(p.predicted_exponent_exp),
        dichotomy_classify(p).to_string(),
    ]
}

/// CSV writer with LF line endings.
pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// Writes header and rows sorted by `graph_id`.
pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter("no report rows to write".into()));
    }
    let mut sorted: Vec<&ReportRow> = rows.iter().collect();
    sorted.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
    let mut w = csv_writer(out);
    w.write_record(REPORT_HEADER)?;
    for row in sorted {
        w.write_record(row.record())?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}

pub fn emit_csv(rows: &[ReportRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ReportRow>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::Reader::from_reader(file);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != REPORT_HEADER {
        return Err(Error::Parse { path: path.to_path_buf(), line: 1, reason: "unexpected report header".into() });
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Axes and decorations of a scatter plot.
#[derive(Debug, Clone)]
pub struct Axes {
    pub title: Option<String>,
    pub x_label: String,
    pub y_label: String,
    /// Fixed `(min, max)`; fitted to the data when `None`.
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    /// Draw `y = x`.
    pub reference_line: bool,
    /// Vertical markers at these x positions (e.g. the exponent bands).
    pub band_lines: Vec<f64>,
    /// Draw `y = 0`.
    pub zero_line: bool,
    pub width: u32,
    pub height: u32,
}

impl Default for Axes {
    fn default() -> Self {
        Axes {
            title: None,
            x_label: "x".into(),
            y_label: "y".into(),
            x_range: None,
            y_range: None,
            reference_line: false,
            band_lines: Vec::new(),
            zero_line: false,
            width: 640,
            height: 480,
        }
    }
}

impl Axes {
    /// Predicted against estimated exponent, with `y = x` and band markers.
    pub fn exponent_plot(bands: [f64; 2]) -> Self {
        Axes {
            title: Some("Predicted vs. estimated exponent".into()),
            x_label: "estimated exponent".into(),
            y_label: "predicted exponent".into(),
            reference_line: true,
            band_lines: bands.to_vec(),
            ..Axes::default()
        }
    }

    /// `δ_ρ` against estimated exponent, with a zero line and band markers.
    pub fn delta_rho_plot(bands: [f64; 2]) -> Self {
        Axes {
            title: Some("delta_rho vs. estimated exponent".into()),
            x_label: "estimated exponent".into(),
            y_label: "delta_rho".into(),
            zero_line: true,
            band_lines: bands.to_vec(),
            ..Axes::default()
        }
    }
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

fn fit_range(values: impl Iterator<Item = f64>, fixed: Option<(f64, f64)>, name: &str) -> Result<(f64, f64)> {
    if let Some((lo, hi)) = fixed {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter(format!("{name} range must satisfy min < max, got ({lo}, {hi})")));
        }
        return Ok((lo, hi));
    }
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo == hi {
        return Ok((lo - 0.5, hi + 0.5));
    }
    let pad = 0.05 * (hi - lo);
    Ok((lo - pad, hi + pad))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders a scatter plot as an SVG document.
pub fn scatter_svg(points: &[(f64, f64)], axes: &Axes) -> Result<String> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("scatter plot needs at least one point".into()));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::InvalidParameter("scatter plot points must be finite".into()));
    }
    if (axes.width as f64) <= MARGIN_LEFT + MARGIN_RIGHT + 10.0 || (axes.height as f64) <= MARGIN_TOP + MARGIN_BOTTOM + 10.0 {
        return Err(Error::InvalidParameter(format!("plot size {}x{} is too small", axes.width, axes.height)));
    }
    let mut x_extra: Vec<f64> = points.iter().map(|p| p.0).collect();
    x_extra.extend(axes.band_lines.iter().copied().filter(|v| v.is_finite()));
    let (x0, x1) = fit_range(x_extra.into_iter(), axes.x_range, "x")?;
    let mut y_vals: Vec<f64> = points.iter().map(|p| p.1).collect();
    if axes.zero_line {
        y_vals.push(0.0);
    }
    let (y0, y1) = fit_range(y_vals.into_iter(), axes.y_range, "y")?;

    let w = axes.width as f64;
    let h = axes.height as f64;
    let pw = w - MARGIN_LEFT - MARGIN_RIGHT;
    let ph = h - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">"#,
        axes.width, axes.height, axes.width, axes.height
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
    );

    let mut ticks = String::new();
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let (px, py) = (sx(xv), sy(yv));
        let _ = write!(ticks, "M{px:.2},{:.2}v5 ", MARGIN_TOP + ph);
        let _ = write!(ticks, "M{MARGIN_LEFT},{py:.2}h-5 ");
        let _ = writeln!(svg, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, MARGIN_TOP + ph + 18.0, tick_label(xv));
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, MARGIN_LEFT - 8.0, py + 4.0, tick_label(yv));
    }
    let _ = writeln!(svg, r#"<path d="{}" stroke="black"/>"#, ticks.trim_end());

    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + pw / 2.0,
        h - 12.0,
        escape(&axes.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        MARGIN_TOP + ph / 2.0,
        MARGIN_TOP + ph / 2.0,
        escape(&axes.y_label)
    );
    if let Some(title) = &axes.title {
        let _ = writeln!(svg, r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#, w / 2.0, escape(title));
    }

    if axes.reference_line {
        let lo = x0.max(y0);
        let hi = x1.min(y1);
        if lo < hi {
            let _ = writeln!(
                svg,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
                sx(lo),
                sy(lo),
                sx(hi),
                sy(hi)
            );
        }
    }
    for &bx in &axes.band_lines {
        if bx.is_finite() && bx >= x0 && bx <= x1 {
            let _ = writeln!(
                svg,
                r#"<line x1="{:.2}" y1="{MARGIN_TOP}" x2="{:.2}" y2="{:.2}" stroke="steelblue" stroke-dasharray="2 2"/>"#,
                sx(bx),
                sx(bx),
                MARGIN_TOP + ph
            );
        }
    }
    if axes.zero_line && y0 <= 0.0 && 0.0 <= y1 {
        let _ = writeln!(
            svg,
            r#"<line x1="{MARGIN_LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="firebrick"/>"#,
            sy(0.0),
            MARGIN_LEFT + pw,
            sy(0.0)
        );
    }
    for &(x, y) in points {
        let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black" fill-opacity="0.6"/>"#, sx(x), sy(y));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn tick_label(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    fmt_g(if r == 0.0 { 0.0 } else { r })
}

pub fn emit_scatter_svg(points: &[(f64, f64)], axes: &Axes, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let svg = scatter_svg(points, axes)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, x: f64) -> ReportRow {
        ReportRow {
            graph_id: id.into(),
            n: 10,
            m: 12,
            k: 5,
            c_hat: 7.25,
            estimated_exponent: x,
            mean_c_rel: Some(0.5),
            mean_predicted_exponent_thm: None,
            mean_predicted_exponent_exp: Some(1.0 / 3.0),
            mean_delta_rho: Some(-0.125),
            band: Band::of(x, [0.8, 0.85]),
        }
    }

    #[test]
    fn g_format_matches_c() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(0.5), "0.5");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_g(123456.789), "123456.789");
        assert_eq!(fmt_g(1e-5), "1e-05");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_g(1.5e12), "1.5e+12");
        assert_eq!(fmt_g(999999999999.0), "999999999999");
        assert_eq!(fmt_g(-2.5), "-2.5");
        assert_eq!(fmt_g(9.99999999999996), "10");
    }

    #[test]
    fn bands_partition() {
        assert_eq!(Band::of(0.9, [0.8, 0.85]), Band::Linear);
        assert_eq!(Band::of(0.85, [0.8, 0.85]), Band::Middle);
        assert_eq!(Band::of(0.8, [0.8, 0.85]), Band::Middle);
        assert_eq!(Band::of(0.79, [0.8, 0.85]), Band::Sublinear);
    }

    #[test]
    fn csv_one_row_two_lines() {
        let mut buf = Vec::new();
        write_csv(&[row("g", 0.7)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().nth(1).unwrap(), "g,10,12,5,7.25,0.7,0.5,,0.333333333333,-0.125,sublinear");
    }

    #[test]
    fn csv_sorted_and_deterministic() {
        let rows = [row("b", 0.9), row("a", 0.82)];
        let mut one = Vec::new();
        let mut two = Vec::new();
        write_csv(&rows, &mut one).unwrap();
        write_csv(&rows, &mut two).unwrap();
        assert_eq!(one, two);
        let text = String::from_utf8(one).unwrap();
        let ids: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(ids, ["a", "b"]);
    }

    #[test]
    fn csv_rejects_empty() {
        assert!(write_csv(&[], Vec::new()).is_err());
    }

    #[test]
    fn csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let rows = vec![row("a", 0.82), row("b", 0.9)];
        emit_csv(&rows, &path).unwrap();
        let back = read_csv(&path).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].mean_predicted_exponent_thm, None);
        assert_eq!(back[1].band, Band::Linear);
        assert!((back[0].mean_predicted_exponent_exp.unwrap() - 1.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn svg_two_points_with_reference() {
        let axes = Axes { reference_line: true, ..Axes::default() };
        let svg = scatter_svg(&[(0.5, 0.6), (0.9, 0.95)], &axes).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn svg_single_point_and_decorations() {
        let svg = scatter_svg(&[(0.7, 0.1)], &Axes::delta_rho_plot([0.8, 0.85])).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        // two band markers and the zero line
        assert_eq!(svg.matches("<line").count(), 3);
    }

    #[test]
    fn svg_rejects_bad_axes() {
        let bad = Axes { x_range: Some((1.0, 1.0)), ..Axes::default() };
        assert!(scatter_svg(&[(1.0, 1.0)], &bad).is_err());
        let tiny = Axes { width: 50, ..Axes::default() };
        assert!(scatter_svg(&[(1.0, 1.0)], &tiny).is_err());
        assert!(scatter_svg(&[], &Axes::default()).is_err());
        assert!(scatter_svg(&[(f64::NAN, 0.0)], &Axes::default()).is_err());
    }
}
