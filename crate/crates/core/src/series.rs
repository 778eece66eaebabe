use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered, strictly positive price samples with optional time points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriceSeries {
    values: Vec<f64>,
    timestamps: Option<Vec<f64>>,
}

impl PriceSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        validate_prices(&values)?;
        Ok(Self {
            values,
            timestamps: None,
        })
    }

    /// Builds a series with time points, which must match `values` in length
    /// and be non-decreasing.
    pub fn with_timestamps(values: Vec<f64>, timestamps: Vec<f64>) -> Result<Self> {
        validate_prices(&values)?;
        if timestamps.len() != values.len() {
            return Err(Error::Timestamps(format!(
                "{} timestamps for {} prices",
                timestamps.len(),
                values.len()
            )));
        }
        if let Some(i) = timestamps
            .windows(2)
            .position(|w| w[0].is_nan() || w[1].is_nan() || w[1] < w[0])
        {
            return Err(Error::Timestamps(format!(
                "not sorted at position {}",
                i + 1
            )));
        }
        Ok(Self {
            values,
            timestamps: Some(timestamps),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a valid series holds at least two samples.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Contiguous sub-series `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        let end = start
            .checked_add(len)
            .filter(|&e| e <= self.values.len())
            .ok_or(Error::IndexOutOfRange {
                index: start.saturating_add(len).saturating_sub(1),
                len: self.values.len(),
            })?;
        if len < 2 {
            return Err(Error::TooShort(len));
        }
        Ok(Self {
            values: self.values[start..end].to_vec(),
            timestamps: self.timestamps.as_ref().map(|t| t[start..end].to_vec()),
        })
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl TryFrom<Vec<f64>> for PriceSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl TryFrom<&[f64]> for PriceSeries {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }
}

pub(crate) fn validate_price(index: usize, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositivePrice { index, value })
    }
}

fn validate_prices(values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::TooShort(values.len()));
    }
    values
        .iter()
        .enumerate()
        .try_for_each(|(i, &v)| validate_price(i, v))
}

/// Which extremes the mini-max emphasizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Emphasizes local maxima, `u(S)`.
    Up,
    /// Emphasizes local minima, `d(S)`; all exponents change sign.
    Down,
}

impl Direction {
    pub(crate) fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

/// Smoothing window width and direction.
///
/// `m` may exceed the series length; out-of-range neighbours are dropped
/// from the tunneling sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndicatorParams {
    m: usize,
    direction: Direction,
}

impl IndicatorParams {
    pub fn new(m: usize, direction: Direction) -> Result<Self> {
        if m == 0 {
            return Err(Error::Usage("smoothing window m must be at least 1".into()));
        }
        Ok(Self { m, direction })
    }

    pub fn up(m: usize) -> Result<Self> {
        Self::new(m, Direction::Up)
    }

    pub fn down(m: usize) -> Result<Self> {
        Self::new(m, Direction::Down)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn with_direction(self, direction: Direction) -> Self {
        Self { direction, ..self }
    }
}
