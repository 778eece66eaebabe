//! Deterministic synthetic price series used by the tests, the CLI
//! examples and the browser demo.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::series::PriceSeries;

/// A generated series plus the positions it was built around.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub series: PriceSeries,
    /// Injected peak positions (0-based).
    pub marks: Vec<usize>,
    /// Inclusive range covering the constructed pattern.
    pub span: (usize, usize),
}

/// A bump added on top of a flat base price.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub centre: usize,
    pub height: f64,
    pub width: f64,
}

/// `base` plus Gaussian bumps, with multiplicative Gaussian noise of
/// relative size `noise`.
pub fn noisy_bumps(n: usize, base: f64, bumps: &[Bump], noise: f64, seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, noise.max(0.0)).expect("finite noise level");
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let shape: f64 = bumps
                .iter()
                .map(|b| {
                    let z = (i as f64 - b.centre as f64) / b.width;
                    b.height * (-0.5 * z * z).exp()
                })
                .sum();
            let jitter = if noise > 0.0 {
                normal.sample(&mut rng)
            } else {
                0.0
            };
            ((base + shape) * (1.0 + jitter)).max(base * 1e-3)
        })
        .collect();
    let marks: Vec<usize> = bumps.iter().map(|b| b.centre).collect();
    let span = (
        marks.iter().copied().min().unwrap_or(0),
        marks.iter().copied().max().unwrap_or(n.saturating_sub(1)),
    );
    Fixture {
        series: PriceSeries::new(values).expect("bumps over a positive base stay positive"),
        marks,
        span,
    }
}

/// Noisy series with five peaks of different heights, in the spirit of a
/// few hundred samples of a real quote.
pub fn noisy_multi_peak(seed: u64) -> Fixture {
    let bumps = [
        Bump {
            centre: 40,
            height: 6.0,
            width: 7.0,
        },
        Bump {
            centre: 100,
            height: 14.0,
            width: 9.0,
        },
        Bump {
            centre: 160,
            height: 9.0,
            width: 8.0,
        },
        Bump {
            centre: 220,
            height: 18.0,
            width: 10.0,
        },
        Bump {
            centre: 275,
            height: 11.0,
            width: 8.0,
        },
    ];
    noisy_bumps(320, 100.0, &bumps, 0.004, seed)
}

/// Piecewise-linear series through `(position, price)` knots.
pub fn piecewise_linear(knots: &[(usize, f64)]) -> Vec<f64> {
    let mut out = Vec::new();
    for pair in knots.windows(2) {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        for x in x0..x1 {
            let t = (x - x0) as f64 / (x1 - x0) as f64;
            out.push(y0 + t * (y1 - y0));
        }
    }
    if let Some(&(_, y)) = knots.last() {
        out.push(y);
    }
    out
}

/// Flat market, then left shoulder, head and right shoulder on a common
/// neckline, then flat again. `marks` holds the three tops.
pub fn head_and_shoulders() -> Fixture {
    let knots = [
        (0, 100.0),
        (30, 100.0),
        (40, 104.0),
        (50, 100.5),
        (62, 108.0),
        (74, 100.5),
        (84, 104.0),
        (94, 100.0),
        (124, 100.0),
    ];
    Fixture {
        series: PriceSeries::new(piecewise_linear(&knots)).expect("positive knots"),
        marks: vec![40, 62, 84],
        span: (30, 94),
    }
}

/// Linear ramp from `start` by `step` per sample.
pub fn ramp(n: usize, start: f64, step: f64) -> PriceSeries {
    PriceSeries::new((0..n).map(|i| start + step * i as f64).collect())
        .expect("ramp must stay positive")
}

/// Rise to a single top at `peak`, then decay, with light noise.
pub fn ramp_then_decay(seed: u64) -> Fixture {
    let knots = [(0, 100.0), (60, 130.0), (120, 104.0)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 0.002).expect("finite");
    let values = piecewise_linear(&knots)
        .into_iter()
        .map(|v| v * (1.0 + normal.sample(&mut rng)))
        .collect();
    Fixture {
        series: PriceSeries::new(values).expect("positive"),
        marks: vec![60],
        span: (0, 120),
    }
}
