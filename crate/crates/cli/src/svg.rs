//! Two-panel SVG chart: prices on top, mini-max curves below. Up curves
//! are drawn solid, down curves dashed.

use std::fmt::Write as _;

use minimax_core::{Direction, MiniMaxSeries, PriceSeries};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgCanvas {
    pub width: u32,
    pub height: u32,
}

impl Default for SvgCanvas {
    fn default() -> Self {
        Self {
            width: 900,
            height: 560,
        }
    }
}

const MARGIN: f64 = 30.0;
const GAP: f64 = 20.0;

pub fn emit_svg(
    series: &PriceSeries,
    u: Option<&MiniMaxSeries>,
    d: Option<&MiniMaxSeries>,
    canvas: SvgCanvas,
) -> Result<String> {
    if canvas.width == 0 || canvas.height == 0 {
        return Err(CliError::Config(
            "SVG canvas must have a non-zero size".into(),
        ));
    }
    let curves: Vec<&MiniMaxSeries> = u.into_iter().chain(d).collect();
    if curves.is_empty() {
        return Err(CliError::Usage("nothing to plot".into()));
    }
    if curves.iter().any(|c| c.len() != series.len()) {
        return Err(CliError::Usage(
            "curve length differs from the price series".into(),
        ));
    }

    let (w, h) = (canvas.width as f64, canvas.height as f64);
    let plot_w = (w - 2.0 * MARGIN).max(1.0);
    let panel_h = ((h - 2.0 * MARGIN - GAP) / 2.0).max(1.0);
    let top = Panel {
        x0: MARGIN,
        y0: MARGIN,
        w: plot_w,
        h: panel_h,
    };
    let bottom = Panel {
        x0: MARGIN,
        y0: MARGIN + panel_h + GAP,
        w: plot_w,
        h: panel_h,
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        canvas.width, canvas.height, canvas.width, canvas.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for p in [&top, &bottom] {
        let _ = writeln!(
            out,
            r##"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#bbbbbb"/>"##,
            p.x0, p.y0, p.w, p.h
        );
    }

    let (lo, hi) = bounds(series.values().iter().copied());
    out.push_str(&polyline(
        series.values(),
        &top,
        lo,
        hi,
        "price",
        "#1f3b73",
        None,
    ));

    let (lo, hi) = bounds(curves.iter().flat_map(|c| c.weights().iter().copied()));
    for c in &curves {
        let (id, dash) = match c.direction() {
            Direction::Up => ("u", None),
            Direction::Down => ("d", Some("6 4")),
        };
        out.push_str(&polyline(c.weights(), &bottom, lo, hi, id, "#000000", dash));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

struct Panel {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

fn polyline(
    values: &[f64],
    panel: &Panel,
    lo: f64,
    hi: f64,
    id: &str,
    colour: &str,
    dash: Option<&str>,
) -> String {
    let n = values.len();
    let span = hi - lo;
    let mut points = String::new();
    for (i, &v) in values.iter().enumerate() {
        let x = panel.x0 + panel.w * i as f64 / (n.max(2) - 1) as f64;
        // Flat data sits on the panel's midline.
        let frac = if span > 0.0 { (v - lo) / span } else { 0.5 };
        let y = panel.y0 + panel.h * (1.0 - frac);
        if i > 0 {
            points.push(' ');
        }
        let _ = write!(points, "{x:.3},{y:.3}");
    }
    let dash = dash
        .map(|d| format!(r#" stroke-dasharray="{d}""#))
        .unwrap_or_default();
    format!(
        r#"<polyline id="{id}" fill="none" stroke="{colour}" stroke-width="1.5"{dash} points="{points}"/>"#
    ) + "\n"
}
