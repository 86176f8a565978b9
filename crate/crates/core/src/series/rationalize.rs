use super::HilbertSeries;
use crate::error::{Error, Result};

/// Finds the reduced rational form `N(t)/(1-t)^a` of a sampled Hilbert
/// function.
///
/// `a` is the least exponent for which the first `h.len()` coefficients of
/// `(1-t)^a Σ h(n) t^n` end in at least `guard_window` zeros; the coefficients
/// before that run form the numerator.
pub fn rationalize(h: &[u64], guard_window: usize) -> Result<HilbertSeries> {
    let len = h.len();
    let guard = guard_window.max(1);
    if len <= guard {
        return Err(Error::NotStabilized(format!(
            "{len} samples cannot certify a guard window of {guard}"
        )));
    }
    let mut coeffs: Vec<i128> = h.iter().map(|&v| v as i128).collect();
    for a in 0..=(len - guard) {
        if a > 0 {
            // multiply by (1-t), truncated to the sample length
            for i in (1..len).rev() {
                coeffs[i] = coeffs[i]
                    .checked_sub(coeffs[i - 1])
                    .ok_or(Error::Overflow("rationalize"))?;
            }
        }
        let trailing = coeffs.iter().rev().take_while(|&&c| c == 0).count();
        if trailing >= guard {
            let numerator = coeffs[..len - trailing]
                .iter()
                .map(|&c| i64::try_from(c).map_err(|_| Error::Overflow("rationalize")))
                .collect::<Result<Vec<i64>>>()?;
            return Ok(HilbertSeries::from_numerator(numerator, a));
        }
    }
    Err(Error::NotStabilized(format!(
        "no denominator power up to {} leaves {guard} trailing zeros in {len} samples",
        len - guard
    )))
}
