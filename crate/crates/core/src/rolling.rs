//! Batch evaluation of the mini-max over sliding windows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indicator::{minimax, MiniMaxSeries};
use crate::series::{IndicatorParams, PriceSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RollingConfig {
    window_n: usize,
    hop: usize,
    params: IndicatorParams,
}

impl RollingConfig {
    pub fn new(window_n: usize, hop: usize, params: IndicatorParams) -> Result<Self> {
        if window_n < 2 {
            return Err(Error::Usage(format!(
                "window must hold at least 2 samples, got {window_n}"
            )));
        }
        if hop == 0 {
            return Err(Error::Usage("hop must be at least 1".into()));
        }
        Ok(Self {
            window_n,
            hop,
            params,
        })
    }

    pub fn window_n(&self) -> usize {
        self.window_n
    }

    pub fn hop(&self) -> usize {
        self.hop
    }

    pub fn params(&self) -> &IndicatorParams {
        &self.params
    }

    /// Number of windows that fit in a series of `len` samples.
    pub fn window_count(&self, len: usize) -> usize {
        if len < self.window_n {
            0
        } else {
            (len - self.window_n) / self.hop + 1
        }
    }
}

/// One evaluated window. `start` and `end` are inclusive 0-based sample
/// positions; `end` is the sample the window is stamped with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RollingWindow {
    pub start: usize,
    pub end: usize,
    pub minimax: MiniMaxSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RollingResult {
    pub windows: Vec<RollingWindow>,
}

pub fn rolling_minimax(s: &PriceSeries, cfg: &RollingConfig) -> Result<RollingResult> {
    if s.len() < cfg.window_n {
        return Err(Error::Usage(format!(
            "series of {} samples is shorter than the window of {}",
            s.len(),
            cfg.window_n
        )));
    }
    let starts: Vec<usize> = (0..cfg.window_count(s.len()))
        .map(|w| w * cfg.hop)
        .collect();
    let eval = |start: usize| -> Result<RollingWindow> {
        let slice = s.slice(start, cfg.window_n)?;
        Ok(RollingWindow {
            start,
            end: start + cfg.window_n - 1,
            minimax: minimax(&slice, &cfg.params),
        })
    };

    #[cfg(feature = "parallel")]
    let windows = {
        use rayon::prelude::*;
        starts
            .into_par_iter()
            .map(eval)
            .collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let windows = starts.into_iter().map(eval).collect::<Result<Vec<_>>>()?;

    Ok(RollingResult { windows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_window_equals_core() {
        let s = PriceSeries::new(vec![3.0, 1.0, 4.0, 1.0, 5.0]).unwrap();
        let p = IndicatorParams::up(2).unwrap();
        let r = rolling_minimax(&s, &RollingConfig::new(5, 1, p).unwrap()).unwrap();
        assert_eq!(r.windows.len(), 1);
        assert_eq!(r.windows[0].minimax, minimax(&s, &p));
        assert_eq!((r.windows[0].start, r.windows[0].end), (0, 4));
    }

    #[test]
    fn hop_two_on_small_fixture() {
        let s = PriceSeries::new(vec![1.0, 2.0, 4.0, 2.0, 1.0]).unwrap();
        let cfg = RollingConfig::new(3, 2, IndicatorParams::up(1).unwrap()).unwrap();
        let r = rolling_minimax(&s, &cfg).unwrap();
        assert_eq!(
            r.windows.iter().map(|w| w.start).collect::<Vec<_>>(),
            [0, 2]
        );
        let e = (4.0f64 / 3.0).exp();
        let expected = [1.0 / (2.0 * (1.0 + e)), 0.5, e / (2.0 * (1.0 + e))];
        for (g, w) in r.windows[0].minimax.weights().iter().zip(expected) {
            assert!((g - w).abs() < 1e-12);
        }
        // [4, 2, 1] is the mirror image of [1, 2, 4].
        let mirrored: Vec<f64> = expected.iter().rev().copied().collect();
        for (g, w) in r.windows[1].minimax.weights().iter().zip(mirrored) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_windows_share_profile() {
        let s = PriceSeries::new(vec![2.0; 10]).unwrap();
        let cfg = RollingConfig::new(4, 3, IndicatorParams::down(2).unwrap()).unwrap();
        let r = rolling_minimax(&s, &cfg).unwrap();
        assert_eq!(r.windows.len(), 3);
        for w in &r.windows {
            for (g, e) in w.minimax.weights().iter().zip([1.0, 3.0, 3.0, 1.0]) {
                assert!((g - e / 8.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn window_count_and_errors() {
        let p = IndicatorParams::up(1).unwrap();
        let cfg = RollingConfig::new(4, 5, p).unwrap();
        assert_eq!(cfg.window_count(10), 2);
        assert_eq!(cfg.window_count(3), 0);
        assert!(RollingConfig::new(1, 1, p).is_err());
        assert!(RollingConfig::new(3, 0, p).is_err());
        let s = PriceSeries::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(rolling_minimax(&s, &cfg).is_err());
    }
}
