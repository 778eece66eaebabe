use serde::Serialize;

use super::sign_changes;
use crate::error::{Error, Result};
use crate::indicator::MiniMaxSeries;
use crate::series::Direction;

/// Thresholds for [`detect_spindle`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpindleConfig {
    /// Maximum `|u − d|`, in units of the uniform weight `1/n`.
    pub band: f64,
    /// Minimum interval length in samples.
    pub min_len: usize,
    /// Minimum number of sign changes of `u − d` inside the interval.
    pub min_crossings: usize,
}

impl SpindleConfig {
    /// Defaults for smoothing window `m`: band 0.5, length `2m`, 3 crossings.
    pub fn for_window(m: usize) -> Self {
        Self {
            band: 0.5,
            min_len: (2 * m).max(2),
            min_crossings: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpindleInterval {
    /// Inclusive 0-based bounds.
    pub start_index: usize,
    pub end_index: usize,
    pub crossings: usize,
    /// Crossings per available gap, `crossings / (len − 1)`.
    pub score: f64,
}

/// Stretches where the up and down mini-maxes braid tightly.
///
/// Candidate intervals are the maximal runs with `|u − d| <= band / n`;
/// a run is reported when it is at least `min_len` long and `u − d`
/// changes sign at least `min_crossings` times inside it.
pub fn detect_spindle(
    u: &MiniMaxSeries,
    d: &MiniMaxSeries,
    cfg: &SpindleConfig,
) -> Result<Vec<SpindleInterval>> {
    if u.direction() != Direction::Up || d.direction() != Direction::Down {
        return Err(Error::Usage(
            "spindle detection needs an up and a down mini-max".into(),
        ));
    }
    if u.len() != d.len() {
        return Err(Error::Usage(format!(
            "mini-max lengths differ: {} vs {}",
            u.len(),
            d.len()
        )));
    }
    if cfg.band.is_nan() || cfg.band < 0.0 || cfg.min_len < 2 {
        return Err(Error::Usage(
            "spindle band must be >= 0 and min_len >= 2".into(),
        ));
    }
    let n = u.len();
    let limit = cfg.band / n as f64;
    let diffs: Vec<f64> = u
        .weights()
        .iter()
        .zip(d.weights())
        .map(|(a, b)| a - b)
        .collect();

    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if diffs[i].abs() > limit {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && diffs[i].abs() <= limit {
            i += 1;
        }
        let run = &diffs[start..i];
        if run.len() < cfg.min_len {
            continue;
        }
        let crossings = sign_changes(run).len();
        if crossings >= cfg.min_crossings && crossings > 0 {
            out.push(SpindleInterval {
                start_index: start,
                end_index: i - 1,
                crossings,
                score: (crossings as f64 / (run.len() - 1) as f64).min(1.0),
            });
        }
    }
    Ok(out)
}
