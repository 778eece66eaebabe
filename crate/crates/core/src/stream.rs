//! Incremental mini-max over the most recent `window_n` prices.
//!
//! When the window slides by one sample only the tunneling sums of the
//! first `m` positions (they lost a backward neighbour) and of the last
//! `m + 1` positions (they gained a forward neighbour, or are new) change.
//! Those are recomputed, together with the log-ratio steps that touch
//! them. Everything else is reused as-is. Normalization still runs over
//! the whole window on every [`StreamState::query`].

use std::collections::VecDeque;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::indicator::{
    log_step, tunneling_weights_in, LogWeightSeries, MiniMaxSeries, TunnelingWeights,
};
use crate::series::{validate_price, IndicatorParams};

#[derive(Debug, Clone)]
pub struct StreamState {
    window_n: usize,
    params: IndicatorParams,
    prices: VecDeque<f64>,
    weights: VecDeque<TunnelingWeights>,
    /// `steps[j]` is the log ratio between buffered positions `j` and `j + 1`.
    steps: VecDeque<f64>,
    pushed: u64,
    last_recomputed: usize,
}

impl StreamState {
    pub fn new(window_n: usize, params: IndicatorParams) -> Result<Self> {
        if window_n < 2 {
            return Err(Error::Usage(format!(
                "window must hold at least 2 samples, got {window_n}"
            )));
        }
        Ok(Self {
            window_n,
            params,
            prices: VecDeque::with_capacity(window_n),
            weights: VecDeque::with_capacity(window_n),
            steps: VecDeque::with_capacity(window_n),
            pushed: 0,
            last_recomputed: 0,
        })
    }

    pub fn window_n(&self) -> usize {
        self.window_n
    }

    pub fn params(&self) -> &IndicatorParams {
        &self.params
    }

    pub fn is_ready(&self) -> bool {
        self.prices.len() == self.window_n
    }

    /// Total number of accepted prices.
    pub fn pushed(&self) -> u64 {
        self.pushed
    }

    /// How many tunneling-weight pairs the last push recomputed.
    pub fn last_recomputed(&self) -> usize {
        self.last_recomputed
    }

    pub fn buffer(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.prices.iter().copied()
    }

    pub fn push(&mut self, price: f64) -> Result<()> {
        validate_price(self.pushed as usize, price)?;
        let m = self.params.m();

        let evicted = self.prices.len() == self.window_n;
        if evicted {
            self.prices.pop_front();
            self.weights.pop_front();
            self.steps.pop_front();
        }
        self.prices.push_back(price);
        self.weights.push_back(TunnelingWeights::default());
        if self.prices.len() > 1 {
            self.steps.push_back(0.0);
        }
        let len = self.prices.len();

        let head = if evicted { 0..m.min(len) } else { 0..0 };
        let tail = len.saturating_sub(m + 1)..len;
        let dirty = merge(head, tail);

        self.last_recomputed = 0;
        for r in &dirty {
            for i in r.clone() {
                self.weights[i] = tunneling_weights_in(&self.prices, len, i, &self.params);
                self.last_recomputed += 1;
            }
        }
        // A step depends on the weights at both of its ends.
        for r in &dirty {
            let from = r.start.saturating_sub(1);
            let to = r.end.min(len - 1);
            for j in from..to {
                self.steps[j] = log_step(self.weights[j], self.weights[j + 1]);
            }
        }
        self.pushed += 1;
        Ok(())
    }

    pub fn query(&self) -> Result<MiniMaxSeries> {
        if !self.is_ready() {
            return Err(Error::NotReady {
                have: self.prices.len(),
                need: self.window_n,
            });
        }
        let log_weights = LogWeightSeries::from_steps(self.steps.iter().copied());
        Ok(MiniMaxSeries::from_log_weights(&log_weights, &self.params))
    }
}

/// Union of two ranges as at most two disjoint ranges, in order.
fn merge(a: Range<usize>, b: Range<usize>) -> Vec<Range<usize>> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => vec![],
        (true, false) => vec![b],
        (false, true) => vec![a],
        (false, false) if a.end >= b.start => {
            let joined = a.start.min(b.start)..a.end.max(b.end);
            vec![joined]
        }
        (false, false) => vec![a, b],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::minimax;
    use crate::series::PriceSeries;

    #[test]
    fn warm_up_boundary() {
        let mut st = StreamState::new(3, IndicatorParams::up(1).unwrap()).unwrap();
        st.push(1.0).unwrap();
        st.push(2.0).unwrap();
        assert_eq!(st.query(), Err(Error::NotReady { have: 2, need: 3 }));
        st.push(4.0).unwrap();
        let e = (4.0f64 / 3.0).exp();
        let expected = [1.0 / (2.0 * (1.0 + e)), 0.5, e / (2.0 * (1.0 + e))];
        for (g, w) in st.query().unwrap().weights().iter().zip(expected) {
            assert!((g - w).abs() < 1e-12);
        }
        st.push(2.0).unwrap();
        assert!(st.is_ready());
        assert_eq!(st.buffer().collect::<Vec<_>>(), [2.0, 4.0, 2.0]);
    }

    #[test]
    fn constant_stream_profile() {
        let mut st = StreamState::new(5, IndicatorParams::down(3).unwrap()).unwrap();
        for _ in 0..12 {
            st.push(8.0).unwrap();
        }
        for (g, e) in st
            .query()
            .unwrap()
            .weights()
            .iter()
            .zip([1.0, 4.0, 6.0, 4.0, 1.0])
        {
            assert!((g - e / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_price_without_mutating() {
        let mut st = StreamState::new(2, IndicatorParams::up(1).unwrap()).unwrap();
        st.push(1.0).unwrap();
        assert!(st.push(0.0).is_err());
        assert!(st.push(-2.0).is_err());
        assert_eq!(st.pushed(), 1);
        assert!(StreamState::new(1, IndicatorParams::up(1).unwrap()).is_err());
    }

    #[test]
    fn matches_batch_when_m_exceeds_window() {
        let p = IndicatorParams::up(10).unwrap();
        let mut st = StreamState::new(4, p).unwrap();
        let prices = [1.0, 5.0, 2.0, 8.0, 3.0, 3.0, 9.0, 1.5];
        for (i, &x) in prices.iter().enumerate() {
            st.push(x).unwrap();
            assert!(st.last_recomputed() <= 2 * p.m() + 2);
            if i >= 3 {
                let batch = minimax(&PriceSeries::new(prices[i - 3..=i].to_vec()).unwrap(), &p);
                assert_eq!(st.query().unwrap(), batch);
            }
        }
    }

    #[test]
    fn merge_ranges() {
        assert_eq!(merge(0..3, 7..10), vec![0..3, 7..10]);
        assert_eq!(merge(0..5, 4..6), vec![0..6]);
        assert_eq!(merge(0..0, 4..6), vec![4..6]);
    }
}
