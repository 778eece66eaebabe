use super::crossings::{detect_crossings, CrossingEvent, CrossingKind};
use super::sma::simple_moving_average;
use crate::error::{Error, Result};
use crate::indicator::minimax;
use crate::series::{IndicatorParams, PriceSeries};

/// Resistance and support crossings between the mini-maxes of a price
/// series and of its simple moving average.
///
/// The price is trimmed to its trailing part so both curves cover the same
/// samples. Event positions are relative to the start of the trimmed
/// range, i.e. offset by `ma_period − 1` from the input series.
pub fn support_resistance_pipeline(
    s: &PriceSeries,
    m: usize,
    ma_period: usize,
) -> Result<Vec<CrossingEvent>> {
    if ma_period == 0 || s.len() < ma_period + 1 {
        return Err(Error::Usage(format!(
            "series of {} samples is too short for a moving average of period {ma_period}",
            s.len()
        )));
    }
    let average = simple_moving_average(s, ma_period)?;
    let price = s.slice(ma_period - 1, average.len())?;

    let mut events = Vec::new();
    for kind in [CrossingKind::Resistance, CrossingKind::Support] {
        let params = IndicatorParams::new(m, kind.direction())?;
        events.extend(detect_crossings(
            &minimax(&price, &params),
            &minimax(&average, &params),
            kind,
        )?);
    }
    events.sort_by(|a, b| a.index.total_cmp(&b.index));
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_identity_average_yield_nothing() {
        let s = PriceSeries::new(vec![3.0; 20]).unwrap();
        assert!(support_resistance_pipeline(&s, 3, 5).unwrap().is_empty());
        let s = PriceSeries::new((0..20).map(|i| 1.0 + (i as f64).sin().abs()).collect()).unwrap();
        assert!(support_resistance_pipeline(&s, 3, 1).unwrap().is_empty());
    }

    #[test]
    fn too_short() {
        let s = PriceSeries::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(support_resistance_pipeline(&s, 2, 3).is_err());
        assert!(support_resistance_pipeline(&s, 0, 2).is_err());
        assert!(support_resistance_pipeline(&s, 2, 0).is_err());
    }
}
