//! Linear-domain oracle for [`crate::minimax`].
//!
//! A literal transcription of the formulas: explicit neighbour sums, direct
//! products of probability ratios and a plain sum for normalization. It
//! shares no code with the log-domain path and is only meant for checking
//! it on short series, where the products stay representable.

use crate::error::{Error, Result};
use crate::indicator::MiniMaxSeries;
use crate::series::{Direction, IndicatorParams, PriceSeries};

pub fn reference_minimax(s: &PriceSeries, params: &IndicatorParams) -> Result<MiniMaxSeries> {
    let prices = s.values();
    let n = prices.len();
    let m = params.m() as isize;
    let sign = match params.direction() {
        Direction::Up => 1.0,
        Direction::Down => -1.0,
    };

    let q = |i: isize, step: isize| -> f64 {
        (1..=m)
            .map(|k| i + step * k)
            .filter(|&j| j >= 0 && j < n as isize)
            .map(|j| {
                let (a, b) = (prices[j as usize], prices[i as usize]);
                (sign * 2.0 * (a - b) / (a + b)).exp()
            })
            .sum()
    };
    let p_next = |i: isize| {
        let (f, b) = (q(i, 1), q(i, -1));
        f / (f + b)
    };
    let p_prev = |i: isize| {
        let (f, b) = (q(i, 1), q(i, -1));
        b / (f + b)
    };

    let mut u = vec![1.0f64; n];
    for i in 1..n {
        u[i] = u[i - 1] * p_next(i as isize - 1) / p_prev(i as isize);
        if !u[i].is_finite() || u[i] == 0.0 || u[i] < f64::MIN_POSITIVE {
            return Err(Error::OracleRange(i));
        }
    }
    let total: f64 = u.iter().sum();
    if !total.is_finite() {
        return Err(Error::OracleRange(n - 1));
    }
    Ok(MiniMaxSeries::from_weights(
        u.into_iter().map(|v| v / total).collect(),
        params,
    ))
}
