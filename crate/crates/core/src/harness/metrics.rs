use crate::error::{Error, Result};

/// Default exclusion threshold on `|actual|`.
pub const MRABD_DEFAULT_THRESHOLD: f64 = 1e-9;

/// Mean relative absolute deviation `mean(|pred - actual| / |actual|)`.
///
/// Only pairs with `|actual| > threshold` contribute, where the threshold is
/// `min_actual` when given (e.g. `Some(1.0)` scores fatigue only where `f > 1`)
/// and [`MRABD_DEFAULT_THRESHOLD`] otherwise.
pub fn mrabd(predicted: &[f64], actual: &[f64], min_actual: Option<f64>) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: actual.len(),
        });
    }
    let threshold = min_actual.unwrap_or(MRABD_DEFAULT_THRESHOLD);
    let (sum, n) = predicted
        .iter()
        .zip(actual)
        .filter(|(_, a)| a.abs() > threshold)
        .fold((0.0, 0usize), |(sum, n), (p, a)| {
            (sum + (p - a).abs() / a.abs(), n + 1)
        });
    if n == 0 {
        return Err(Error::EmptySelection { threshold });
    }
    Ok(sum / n as f64)
}
