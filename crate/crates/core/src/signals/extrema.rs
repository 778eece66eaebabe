use serde::Serialize;

use crate::error::{Error, Result};
use crate::indicator::MiniMaxSeries;
use crate::series::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Peak,
    Trough,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremumPoint {
    pub index: usize,
    pub kind: ExtremumKind,
    pub weight: f64,
    pub prominence: f64,
}

/// Strict interior local maxima of the weights whose prominence reaches
/// `min_prominence`.
///
/// Prominence is the height above the higher of the two flanking minima,
/// where each flank extends until a strictly higher sample or the series
/// edge. Up mini-maxes yield peaks and Down mini-maxes yield troughs of the
/// underlying price.
pub fn extract_extrema(mm: &MiniMaxSeries, min_prominence: f64) -> Result<Vec<ExtremumPoint>> {
    if !(0.0..=1.0).contains(&min_prominence) {
        return Err(Error::Usage(format!(
            "prominence must be in [0, 1], got {min_prominence}"
        )));
    }
    let kind = match mm.direction() {
        Direction::Up => ExtremumKind::Peak,
        Direction::Down => ExtremumKind::Trough,
    };
    let w = mm.weights();
    let mut out = Vec::new();
    for i in 1..w.len().saturating_sub(1) {
        if !(w[i - 1] < w[i] && w[i] > w[i + 1]) {
            continue;
        }
        let prominence = w[i] - flank_min(w, i, true).max(flank_min(w, i, false));
        if prominence >= min_prominence {
            out.push(ExtremumPoint {
                index: i,
                kind,
                weight: w[i],
                prominence,
            });
        }
    }
    Ok(out)
}

fn flank_min(w: &[f64], peak: usize, left: bool) -> f64 {
    let height = w[peak];
    let mut lowest = height;
    let mut scan = |j: usize| -> bool {
        if w[j] > height {
            return false;
        }
        lowest = lowest.min(w[j]);
        true
    };
    if left {
        for j in (0..peak).rev() {
            if !scan(j) {
                break;
            }
        }
    } else {
        for j in peak + 1..w.len() {
            if !scan(j) {
                break;
            }
        }
    }
    lowest
}
