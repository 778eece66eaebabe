//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper around a plain function so the logic can
//! be tested natively.

use minimax_core::signals::{
    detect_spindle, support_resistance_pipeline, CrossingKind, CrossingSign, SpindleConfig,
};
use minimax_core::synthetic;
use minimax_core::{minimax, Direction, IndicatorParams, PriceSeries};
use wasm_bindgen::prelude::*;

fn series(prices: &[f64]) -> Result<PriceSeries, String> {
    PriceSeries::new(prices.to_vec()).map_err(|e| e.to_string())
}

fn direction(name: &str) -> Result<Direction, String> {
    match name {
        "up" => Ok(Direction::Up),
        "down" => Ok(Direction::Down),
        other => Err(format!("unknown direction {other:?}")),
    }
}

pub fn curve(prices: &[f64], m: usize, dir: &str) -> Result<Vec<f64>, String> {
    let params = IndicatorParams::new(m, direction(dir)?).map_err(|e| e.to_string())?;
    Ok(minimax(&series(prices)?, &params).into_weights())
}

/// Spindle intervals flattened as `[start, end, start, end, ...]`.
pub fn spindle_bounds(
    prices: &[f64],
    m: usize,
    band: f64,
    min_len: usize,
    min_crossings: usize,
) -> Result<Vec<u32>, String> {
    let s = series(prices)?;
    let up = IndicatorParams::up(m).map_err(|e| e.to_string())?;
    let down = IndicatorParams::down(m).map_err(|e| e.to_string())?;
    let cfg = SpindleConfig {
        band,
        min_len,
        min_crossings,
    };
    let found =
        detect_spindle(&minimax(&s, &up), &minimax(&s, &down), &cfg).map_err(|e| e.to_string())?;
    Ok(found
        .iter()
        .flat_map(|iv| [iv.start_index as u32, iv.end_index as u32])
        .collect())
}

/// Crossings flattened as `[position, kind, sign, ...]` in input
/// coordinates; kind is 1 for resistance and −1 for support, sign is 1 for
/// an upward crossing.
pub fn crossing_triples(prices: &[f64], m: usize, ma_period: usize) -> Result<Vec<f64>, String> {
    let events =
        support_resistance_pipeline(&series(prices)?, m, ma_period).map_err(|e| e.to_string())?;
    let offset = (ma_period - 1) as f64;
    Ok(events
        .iter()
        .flat_map(|e| {
            let kind = match e.kind {
                CrossingKind::Resistance => 1.0,
                CrossingKind::Support => -1.0,
            };
            let sign = match e.sign {
                CrossingSign::UpThrough => 1.0,
                CrossingSign::DownThrough => -1.0,
            };
            [e.index + offset, kind, sign]
        })
        .collect())
}

pub fn synthetic_series(kind: &str, seed: u32) -> Result<Vec<f64>, String> {
    let fx = match kind {
        "peaks" => synthetic::noisy_multi_peak(seed as u64),
        "head-and-shoulders" => synthetic::head_and_shoulders(),
        "ramp-decay" => synthetic::ramp_then_decay(seed as u64),
        other => return Err(format!("unknown series {other:?}")),
    };
    Ok(fx.series.into_values())
}

#[wasm_bindgen(js_name = minimax)]
pub fn minimax_js(prices: &[f64], m: usize, direction: &str) -> Result<Vec<f64>, JsError> {
    curve(prices, m, direction).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spindles(
    prices: &[f64],
    m: usize,
    band: f64,
    min_len: usize,
    min_crossings: usize,
) -> Result<Vec<u32>, JsError> {
    spindle_bounds(prices, m, band, min_len, min_crossings).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn crossings(prices: &[f64], m: usize, ma_period: usize) -> Result<Vec<f64>, JsError> {
    crossing_triples(prices, m, ma_period).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn synthetic(kind: &str, seed: u32) -> Result<Vec<f64>, JsError> {
    synthetic_series(kind, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_round_trip() {
        let u = curve(&[1.0, 2.0, 4.0], 1, "up").unwrap();
        assert!((u[1] - 0.5).abs() < 1e-12);
        assert!(curve(&[1.0, 2.0], 0, "up").is_err());
        assert!(curve(&[1.0, 2.0], 1, "left").is_err());
        assert!(curve(&[1.0, -2.0], 1, "down").is_err());
    }

    #[test]
    fn spindles_on_pattern() {
        let hs = synthetic_series("head-and-shoulders", 0).unwrap();
        let b = spindle_bounds(&hs, 5, 0.5, 10, 3).unwrap();
        assert!(!b.is_empty() && b.len().is_multiple_of(2));
    }

    #[test]
    fn crossings_flat_triples() {
        let p = synthetic_series("ramp-decay", 1).unwrap();
        let c = crossing_triples(&p, 5, 10).unwrap();
        assert_eq!(c.len() % 3, 0);
        assert!(c.chunks(3).any(|t| t[1] == 1.0));
        assert!(crossing_triples(&p, 5, 1000).is_err());
    }

    #[test]
    fn unknown_series() {
        assert!(synthetic_series("sine", 0).is_err());
        assert_eq!(synthetic_series("peaks", 3).unwrap().len(), 320);
    }
}
