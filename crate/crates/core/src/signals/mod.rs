//! Support/resistance crossings and spindle detection built on the
//! mini-max.
//!
//! All positions reported here are 0-based sample positions.

mod crossings;
mod extrema;
mod pipeline;
mod sma;
mod spindle;

pub use crossings::{detect_crossings, CrossingEvent, CrossingKind, CrossingSign};
pub use extrema::{extract_extrema, ExtremumKind, ExtremumPoint};
pub use pipeline::support_resistance_pipeline;
pub use sma::simple_moving_average;
pub use spindle::{detect_spindle, SpindleConfig, SpindleInterval};

use crossings::CrossingSign as Sign;

/// Sign changes of `diffs`, as (fractional position, direction) pairs.
///
/// Between two nonzero samples of opposite sign the position is linearly
/// interpolated. When the change passes through a run of exact zeros it is
/// pinned to the first zero. Zero runs that return to the same sign are
/// touches, not crossings.
pub(crate) fn sign_changes(diffs: &[f64]) -> Vec<(f64, Sign)> {
    let mut out = Vec::new();
    // (index, value) of the most recent nonzero sample
    let mut last: Option<(usize, f64)> = None;
    for (i, &d) in diffs.iter().enumerate() {
        if d == 0.0 {
            continue;
        }
        if let Some((j, prev)) = last {
            if (prev < 0.0) != (d < 0.0) {
                let pos = if j + 1 == i {
                    j as f64 + prev / (prev - d)
                } else {
                    (j + 1) as f64
                };
                let sign = if d > 0.0 {
                    Sign::UpThrough
                } else {
                    Sign::DownThrough
                };
                out.push((pos, sign));
            }
        }
        last = Some((i, d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolated_change() {
        assert_eq!(
            sign_changes(&[-0.1, 0.1, 0.1]),
            vec![(0.5, Sign::UpThrough)]
        );
    }

    #[test]
    fn zero_pins_to_earlier_sample() {
        assert_eq!(
            sign_changes(&[0.2, 0.0, -0.2]),
            vec![(1.0, Sign::DownThrough)]
        );
        assert_eq!(
            sign_changes(&[0.2, 0.0, 0.0, -0.2]),
            vec![(1.0, Sign::DownThrough)]
        );
    }

    #[test]
    fn touches_and_leading_zeros_ignored() {
        assert!(sign_changes(&[0.2, 0.0, 0.3]).is_empty());
        assert!(sign_changes(&[0.0, 0.0, 0.3, 0.1]).is_empty());
        assert!(sign_changes(&[0.0; 4]).is_empty());
    }
}
