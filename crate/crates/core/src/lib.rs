//! Moving mini-max: a normalized, nonlinear transform of a positive price
//! series that concentrates weight on local maxima (up) or minima (down)
//! and smooths out short-term noise along the way.
//!
//! ```
//! use minimax_core::{minimax, IndicatorParams, PriceSeries};
//!
//! let prices = PriceSeries::new(vec![1.0, 2.0, 4.0]).unwrap();
//! let u = minimax(&prices, &IndicatorParams::up(1).unwrap());
//! assert!((u.weights()[1] - 0.5).abs() < 1e-12);
//! ```

pub mod error;
pub mod indicator;
pub mod reference;
pub mod rolling;
pub mod series;
pub mod signals;
pub mod stream;
pub mod synthetic;

pub use error::{Error, Result};
pub use indicator::{
    accumulate_log_weights, minimax, relative_difference, transition_probabilities,
    tunneling_weights, LogWeightSeries, MiniMaxSeries, TransitionProbabilities, TunnelingWeights,
};
pub use reference::reference_minimax;
pub use rolling::{rolling_minimax, RollingConfig, RollingResult, RollingWindow};
pub use series::{Direction, IndicatorParams, PriceSeries};
pub use stream::StreamState;
