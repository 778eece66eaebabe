//! The mini-max transform.
//!
//! Each sample `i` gets a pair of tunneling weights built from up to `m`
//! neighbours on either side,
//!
//! ```text
//! Q(i → i+1) = Σ_{k=1..m} exp[ σ · 2(S[i+k] − S[i]) / (S[i+k] + S[i]) ]
//! Q(i → i−1) = Σ_{k=1..m} exp[ σ · 2(S[i−k] − S[i]) / (S[i−k] + S[i]) ]
//! ```
//!
//! with `σ = +1` for [`Direction::Up`] and `σ = −1` for [`Direction::Down`].
//! Terms whose neighbour falls outside the series are dropped. The weights
//! are turned into transition probabilities of a nearest-neighbour Markov
//! chain, and the stationary-like weights follow the detailed-balance
//! recurrence `u[i] = u[i−1] · P(i−1 → i) / P(i → i−1)` with `u[0] = 1`.
//!
//! The recurrence is carried in the log domain and normalized with
//! log-sum-exp, so long trending series do not overflow.

use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{validate_price, Direction, IndicatorParams, PriceSeries};

/// `2(a − b)/(a + b)`, always inside `(−2, 2)` for positive inputs.
pub fn relative_difference(a: f64, b: f64) -> Result<f64> {
    validate_price(0, a)?;
    validate_price(1, b)?;
    Ok(rel_diff(a, b))
}

#[inline]
fn rel_diff(a: f64, b: f64) -> f64 {
    2.0 * (a - b) / (a + b)
}

/// Forward and backward tunneling weights at one sample.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct TunnelingWeights {
    pub q_next: f64,
    pub q_prev: f64,
}

/// Probabilities of stepping forward or backward from one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionProbabilities {
    pub p_next: f64,
    pub p_prev: f64,
}

/// Tunneling weights at position `i` (0-based) of `s`.
pub fn tunneling_weights(
    s: &PriceSeries,
    i: usize,
    params: &IndicatorParams,
) -> Result<TunnelingWeights> {
    if i >= s.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: s.len(),
        });
    }
    Ok(tunneling_weights_in(s.values(), s.len(), i, params))
}

/// Shared kernel for the batch and streaming paths. The summation order
/// (k = 1..m) is fixed so both paths produce identical bits.
pub(crate) fn tunneling_weights_in<P>(
    prices: &P,
    len: usize,
    i: usize,
    params: &IndicatorParams,
) -> TunnelingWeights
where
    P: Index<usize, Output = f64> + ?Sized,
{
    let sign = params.direction().sign();
    let centre = prices[i];
    let forward = params.m().min(len - 1 - i);
    let backward = params.m().min(i);

    let mut q_next = 0.0;
    for k in 1..=forward {
        q_next += (sign * rel_diff(prices[i + k], centre)).exp();
    }
    let mut q_prev = 0.0;
    for k in 1..=backward {
        q_prev += (sign * rel_diff(prices[i - k], centre)).exp();
    }
    TunnelingWeights { q_next, q_prev }
}

pub fn transition_probabilities(w: TunnelingWeights) -> Result<TransitionProbabilities> {
    let total = w.q_next + w.q_prev;
    if total.is_nan() || total <= 0.0 {
        return Err(Error::Degenerate);
    }
    Ok(TransitionProbabilities {
        p_next: w.q_next / total,
        p_prev: w.q_prev / total,
    })
}

/// `ln P(i−1 → i) − ln P(i → i−1)` from the tunneling weights of two
/// adjacent samples.
pub(crate) fn log_step(left: TunnelingWeights, right: TunnelingWeights) -> f64 {
    // Inside a series of length >= 2 both probabilities are strictly
    // positive: left always has a forward neighbour, right a backward one.
    let left = transition_probabilities(left).expect("left sample has a forward neighbour");
    let right = transition_probabilities(right).expect("right sample has a backward neighbour");
    debug_assert!(left.p_next > 0.0 && right.p_prev > 0.0);
    left.p_next.ln() - right.p_prev.ln()
}

/// Unnormalized recurrent weights held as logarithms; the first entry is 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogWeightSeries {
    log_weights: Vec<f64>,
}

impl LogWeightSeries {
    /// Running sum of the per-step log ratios, starting from 0.
    pub(crate) fn from_steps<I: IntoIterator<Item = f64>>(steps: I) -> Self {
        let steps = steps.into_iter();
        let mut log_weights = Vec::with_capacity(steps.size_hint().0 + 1);
        let mut acc = 0.0;
        log_weights.push(acc);
        for step in steps {
            acc += step;
            log_weights.push(acc);
        }
        Self { log_weights }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn len(&self) -> usize {
        self.log_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_weights.is_empty()
    }
}

pub fn accumulate_log_weights(s: &PriceSeries, params: &IndicatorParams) -> LogWeightSeries {
    let n = s.len();
    let weights: Vec<TunnelingWeights> = (0..n)
        .map(|i| tunneling_weights_in(s.values(), n, i, params))
        .collect();
    let log_weights = LogWeightSeries::from_steps(weights.windows(2).map(|w| log_step(w[0], w[1])));
    debug_assert!(log_weights.as_slice().iter().all(|v| v.is_finite()));
    log_weights
}

/// Normalized mini-max weights; they sum to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MiniMaxSeries {
    weights: Vec<f64>,
    direction: Direction,
    m: usize,
}

impl MiniMaxSeries {
    /// Log-sum-exp normalization of `log_weights`.
    pub fn from_log_weights(log_weights: &LogWeightSeries, params: &IndicatorParams) -> Self {
        let lw = log_weights.as_slice();
        let peak = lw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut weights: Vec<f64> = lw.iter().map(|&v| (v - peak).exp()).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Self {
            weights,
            direction: params.direction(),
            m: params.m(),
        }
    }

    /// Wraps precomputed weights. Used by the reference oracle and by
    /// callers that deserialize weights; no normalization is applied.
    pub fn from_weights(weights: Vec<f64>, params: &IndicatorParams) -> Self {
        Self {
            weights,
            direction: params.direction(),
            m: params.m(),
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }
}

/// The moving mini-max `u(S)` (Up) or `d(S)` (Down) of a price window.
pub fn minimax(s: &PriceSeries, params: &IndicatorParams) -> MiniMaxSeries {
    MiniMaxSeries::from_log_weights(&accumulate_log_weights(s, params), params)
}
