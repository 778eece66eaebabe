use crate::error::{Error, Result};
use crate::series::PriceSeries;

/// Trailing simple moving average; entry `j` averages `s[j..j + period]`.
///
/// The output is `period − 1` samples shorter than the input and must still
/// hold at least two samples.
pub fn simple_moving_average(s: &PriceSeries, period: usize) -> Result<PriceSeries> {
    if period == 0 || period > s.len() {
        return Err(Error::Usage(format!(
            "moving-average period {period} must be in 1..={}",
            s.len()
        )));
    }
    let values = s.values();
    let mut out = Vec::with_capacity(values.len() - period + 1);
    // Each window is summed afresh: no drift from a running total.
    for w in values.windows(period) {
        out.push(w.iter().sum::<f64>() / period as f64);
    }
    PriceSeries::new(out)
}
