use serde::Serialize;

use super::sign_changes;
use crate::error::{Error, Result};
use crate::indicator::MiniMaxSeries;
use crate::series::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    /// From a pair of Up mini-maxes.
    Resistance,
    /// From a pair of Down mini-maxes.
    Support,
}

impl CrossingKind {
    pub fn direction(self) -> Direction {
        match self {
            CrossingKind::Resistance => Direction::Up,
            CrossingKind::Support => Direction::Down,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingSign {
    /// `a − b` went from negative to positive.
    UpThrough,
    DownThrough,
}

impl CrossingSign {
    pub fn flipped(self) -> Self {
        match self {
            CrossingSign::UpThrough => CrossingSign::DownThrough,
            CrossingSign::DownThrough => CrossingSign::UpThrough,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingEvent {
    /// Fractional 0-based sample position.
    pub index: f64,
    pub kind: CrossingKind,
    pub sign: CrossingSign,
}

/// Crossing points of two mini-max curves of the same direction.
pub fn detect_crossings(
    a: &MiniMaxSeries,
    b: &MiniMaxSeries,
    kind: CrossingKind,
) -> Result<Vec<CrossingEvent>> {
    if a.len() != b.len() {
        return Err(Error::Usage(format!(
            "mini-max lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.direction() != b.direction() {
        return Err(Error::Usage("mini-max directions differ".into()));
    }
    if a.direction() != kind.direction() {
        return Err(Error::Usage(format!(
            "{kind:?} crossings need {} mini-maxes, got {}",
            kind.direction(),
            a.direction()
        )));
    }
    let diffs: Vec<f64> = a
        .weights()
        .iter()
        .zip(b.weights())
        .map(|(x, y)| x - y)
        .collect();
    Ok(sign_changes(&diffs)
        .into_iter()
        .map(|(index, sign)| CrossingEvent { index, kind, sign })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::IndicatorParams;

    fn mm(w: &[f64], dir: Direction) -> MiniMaxSeries {
        MiniMaxSeries::from_weights(w.to_vec(), &IndicatorParams::new(1, dir).unwrap())
    }

    #[test]
    fn identical_curves_never_cross() {
        let a = mm(&[0.2, 0.3, 0.5], Direction::Up);
        assert!(detect_crossings(&a, &a, CrossingKind::Resistance)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn interpolated_up_through() {
        let a = mm(&[0.3, 0.4, 0.3], Direction::Up);
        let b = mm(&[0.4, 0.3, 0.2], Direction::Up);
        let ev = detect_crossings(&a, &b, CrossingKind::Resistance).unwrap();
        assert_eq!(ev.len(), 1);
        assert!((ev[0].index - 0.5).abs() < 1e-12);
        assert_eq!(ev[0].sign, CrossingSign::UpThrough);
    }

    #[test]
    fn exact_zero_down_through() {
        let a = mm(&[0.5, 0.25, 0.25], Direction::Down);
        let b = mm(&[0.25, 0.25, 0.5], Direction::Down);
        let ev = detect_crossings(&a, &b, CrossingKind::Support).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].index, 1.0);
        assert_eq!(ev[0].sign, CrossingSign::DownThrough);
        assert_eq!(ev[0].kind, CrossingKind::Support);
    }

    #[test]
    fn mismatches_are_usage_errors() {
        let up = mm(&[0.5, 0.5], Direction::Up);
        let down = mm(&[0.5, 0.5], Direction::Down);
        let short = mm(&[1.0], Direction::Up);
        assert!(detect_crossings(&up, &down, CrossingKind::Resistance).is_err());
        assert!(detect_crossings(&up, &short, CrossingKind::Resistance).is_err());
        assert!(detect_crossings(&up, &up, CrossingKind::Support).is_err());
    }
}
