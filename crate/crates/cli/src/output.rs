//! CSV and JSON emitters.

use std::io::Write;

use minimax_core::signals::{CrossingEvent, CrossingSign, ExtremumPoint, SpindleInterval};
use minimax_core::{MiniMaxSeries, PriceSeries, RollingResult};
use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Output settings; `precision` is the number of decimals for weights.
#[derive(Debug, Clone, Copy)]
pub struct OutputSpec {
    pub format: Format,
    pub precision: usize,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fixed-point rendering used for every emitted weight.
pub fn fixed(x: f64, precision: usize) -> String {
    format!("{x:.precision$}")
}

/// `x` rounded the way [`fixed`] prints it, for JSON arrays.
fn rounded(x: f64, precision: usize) -> f64 {
    fixed(x, precision).parse().unwrap_or(x)
}

fn rounded_all(w: &[f64], precision: usize) -> Vec<f64> {
    w.iter().map(|&x| rounded(x, precision)).collect()
}

/// One row per sample: `index,timestamp?,price,u?,d?`.
pub fn write_compute_csv(
    out: &mut dyn Write,
    series: &PriceSeries,
    labels: Option<&[String]>,
    u: Option<&MiniMaxSeries>,
    d: Option<&MiniMaxSeries>,
    precision: usize,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["index"];
    if labels.is_some() {
        header.push("timestamp");
    }
    header.push("price");
    if u.is_some() {
        header.push("u");
    }
    if d.is_some() {
        header.push("d");
    }
    w.write_record(&header)?;
    for (i, &p) in series.values().iter().enumerate() {
        let mut row = vec![i.to_string()];
        if let Some(l) = labels {
            row.push(l[i].clone());
        }
        row.push(p.to_string());
        for c in [u, d].into_iter().flatten() {
            row.push(fixed(c.weights()[i], precision));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ComputeDoc<'a> {
    version: &'a str,
    command: &'a str,
    m: usize,
    direction: &'a str,
    precision: usize,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<&'a [String]>,
    price: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<Vec<f64>>,
}

#[allow(clippy::too_many_arguments)]
pub fn write_compute_json(
    out: &mut dyn Write,
    series: &PriceSeries,
    labels: Option<&[String]>,
    u: Option<&MiniMaxSeries>,
    d: Option<&MiniMaxSeries>,
    m: usize,
    direction: &str,
    precision: usize,
) -> Result<()> {
    let doc = ComputeDoc {
        version: VERSION,
        command: "compute",
        m,
        direction,
        precision,
        n: series.len(),
        timestamp: labels,
        price: series.values(),
        u: u.map(|c| rounded_all(c.weights(), precision)),
        d: d.map(|c| rounded_all(c.weights(), precision)),
    };
    serde_json::to_writer(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

/// Exploded rows: `window,start,end,index,price,u?,d?`, where `index` is the
/// position in the input series.
pub fn write_roll_csv(
    out: &mut dyn Write,
    series: &PriceSeries,
    up: Option<&RollingResult>,
    down: Option<&RollingResult>,
    precision: usize,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["window", "start", "end", "index", "price"];
    if up.is_some() {
        header.push("u");
    }
    if down.is_some() {
        header.push("d");
    }
    w.write_record(&header)?;
    let reference = up.or(down).expect("at least one direction");
    for (k, win) in reference.windows.iter().enumerate() {
        for offset in 0..win.minimax.len() {
            let i = win.start + offset;
            let mut row = vec![
                k.to_string(),
                win.start.to_string(),
                win.end.to_string(),
                i.to_string(),
                series.values()[i].to_string(),
            ];
            for r in [up, down].into_iter().flatten() {
                row.push(fixed(r.windows[k].minimax.weights()[offset], precision));
            }
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct RollWindowDoc {
    start: usize,
    end: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct RollDoc<'a> {
    version: &'a str,
    command: &'a str,
    m: usize,
    direction: &'a str,
    window: usize,
    hop: usize,
    precision: usize,
    windows: Vec<RollWindowDoc>,
}

pub struct RollMeta<'a> {
    pub m: usize,
    pub direction: &'a str,
    pub window: usize,
    pub hop: usize,
    pub precision: usize,
}

pub fn write_roll_json(
    out: &mut dyn Write,
    up: Option<&RollingResult>,
    down: Option<&RollingResult>,
    meta: &RollMeta<'_>,
) -> Result<()> {
    let reference = up.or(down).expect("at least one direction");
    let pick = |r: Option<&RollingResult>, k: usize| {
        r.map(|r| rounded_all(r.windows[k].minimax.weights(), meta.precision))
    };
    let windows = reference
        .windows
        .iter()
        .enumerate()
        .map(|(k, w)| RollWindowDoc {
            start: w.start,
            end: w.end,
            u: pick(up, k),
            d: pick(down, k),
        })
        .collect();
    let doc = RollDoc {
        version: VERSION,
        command: "roll",
        m: meta.m,
        direction: meta.direction,
        window: meta.window,
        hop: meta.hop,
        precision: meta.precision,
        windows,
    };
    serde_json::to_writer(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

/// A signal record with a `kind` discriminator.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SignalRecord {
    Resistance {
        index: f64,
        sign: CrossingSign,
    },
    Support {
        index: f64,
        sign: CrossingSign,
    },
    Spindle {
        start: usize,
        end: usize,
        crossings: usize,
        score: f64,
    },
    Peak {
        index: usize,
        weight: f64,
        prominence: f64,
    },
    Trough {
        index: usize,
        weight: f64,
        prominence: f64,
    },
}

impl SignalRecord {
    /// Crossing shifted by `offset` samples back into input coordinates.
    pub fn crossing(e: &CrossingEvent, offset: usize) -> Self {
        use minimax_core::signals::CrossingKind;
        let index = e.index + offset as f64;
        match e.kind {
            CrossingKind::Resistance => SignalRecord::Resistance {
                index,
                sign: e.sign,
            },
            CrossingKind::Support => SignalRecord::Support {
                index,
                sign: e.sign,
            },
        }
    }

    pub fn spindle(s: &SpindleInterval) -> Self {
        SignalRecord::Spindle {
            start: s.start_index,
            end: s.end_index,
            crossings: s.crossings,
            score: s.score,
        }
    }

    pub fn extremum(p: &ExtremumPoint) -> Self {
        use minimax_core::signals::ExtremumKind;
        match p.kind {
            ExtremumKind::Peak => SignalRecord::Peak {
                index: p.index,
                weight: p.weight,
                prominence: p.prominence,
            },
            ExtremumKind::Trough => SignalRecord::Trough {
                index: p.index,
                weight: p.weight,
                prominence: p.prominence,
            },
        }
    }

    fn sort_key(&self) -> f64 {
        match *self {
            SignalRecord::Resistance { index, .. } | SignalRecord::Support { index, .. } => index,
            SignalRecord::Spindle { start, .. } => start as f64,
            SignalRecord::Peak { index, .. } | SignalRecord::Trough { index, .. } => index as f64,
        }
    }

    fn rounded(&self, precision: usize) -> Self {
        let r = |x: f64| rounded(x, precision);
        match self.clone() {
            SignalRecord::Resistance { index, sign } => SignalRecord::Resistance {
                index: r(index),
                sign,
            },
            SignalRecord::Support { index, sign } => SignalRecord::Support {
                index: r(index),
                sign,
            },
            SignalRecord::Spindle {
                start,
                end,
                crossings,
                score,
            } => SignalRecord::Spindle {
                start,
                end,
                crossings,
                score: r(score),
            },
            SignalRecord::Peak {
                index,
                weight,
                prominence,
            } => SignalRecord::Peak {
                index,
                weight: r(weight),
                prominence: r(prominence),
            },
            SignalRecord::Trough {
                index,
                weight,
                prominence,
            } => SignalRecord::Trough {
                index,
                weight: r(weight),
                prominence: r(prominence),
            },
        }
    }
}

/// Stable ordering by position; ties keep insertion order.
pub fn sort_records(records: &mut [SignalRecord]) {
    records.sort_by(|a, b| a.sort_key().total_cmp(&b.sort_key()));
}

fn sign_name(s: CrossingSign) -> &'static str {
    match s {
        CrossingSign::UpThrough => "up_through",
        CrossingSign::DownThrough => "down_through",
    }
}

/// Columns: `kind,index,start,end,sign,value`; unused cells stay empty.
pub fn write_signals_csv(
    out: &mut dyn Write,
    records: &[SignalRecord],
    precision: usize,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kind", "index", "start", "end", "sign", "value"])?;
    let f = |x: f64| fixed(x, precision);
    for r in records {
        let row: [String; 6] = match *r {
            SignalRecord::Resistance { index, sign } => [
                "resistance".into(),
                f(index),
                String::new(),
                String::new(),
                sign_name(sign).into(),
                String::new(),
            ],
            SignalRecord::Support { index, sign } => [
                "support".into(),
                f(index),
                String::new(),
                String::new(),
                sign_name(sign).into(),
                String::new(),
            ],
            SignalRecord::Spindle {
                start, end, score, ..
            } => [
                "spindle".into(),
                String::new(),
                start.to_string(),
                end.to_string(),
                String::new(),
                f(score),
            ],
            SignalRecord::Peak { index, weight, .. } => [
                "peak".into(),
                index.to_string(),
                String::new(),
                String::new(),
                String::new(),
                f(weight),
            ],
            SignalRecord::Trough { index, weight, .. } => [
                "trough".into(),
                index.to_string(),
                String::new(),
                String::new(),
                String::new(),
                f(weight),
            ],
        };
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SignalsDoc<'a> {
    version: &'a str,
    command: &'a str,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    ma_period: Option<usize>,
    precision: usize,
    events: Vec<SignalRecord>,
}

pub fn write_signals_json(
    out: &mut dyn Write,
    records: &[SignalRecord],
    m: usize,
    ma_period: Option<usize>,
    precision: usize,
) -> Result<()> {
    let doc = SignalsDoc {
        version: VERSION,
        command: "signals",
        m,
        ma_period,
        precision,
        events: records.iter().map(|r| r.rounded(precision)).collect(),
    };
    serde_json::to_writer(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}
