//! Power-series Bessel functions `J₀` and `J₁` of real argument.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest argument accepted; beyond it the series loses too many digits to
/// cancellation.
pub const SERIES_WINDOW: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Stop once `|next term| < tolerance · (|partial sum| + 1)`.
    pub tolerance: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-16,
            max_terms: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult<T> {
    pub value: T,
    pub terms_used: usize,
    /// Magnitude of the first omitted term; bounds the error once the tail
    /// alternates with decreasing terms.
    pub truncation_bound: T,
}

/// Sums `Σ_k first · Π_{i<k} ratio(i)` with the stopping rule of `opts`.
pub(crate) fn alternating_series<T: Real>(
    first: T,
    mut ratio: impl FnMut(usize) -> T,
    opts: &SeriesOptions,
) -> SeriesResult<T> {
    let tol = T::lit(opts.tolerance);
    let mut sum = T::zero();
    let mut term = first;
    let mut k = 0;
    while k < opts.max_terms.max(1) {
        sum = sum + term;
        term = term * ratio(k);
        k += 1;
        if term.abs() < tol * (sum.abs() + T::one()) {
            break;
        }
    }
    SeriesResult {
        value: sum,
        terms_used: k,
        truncation_bound: term.abs(),
    }
}

fn check_arg<T: Real>(s: T) -> Result<()> {
    if s.is_nan() || s < T::zero() {
        return Err(Error::domain(format!("Bessel argument must be >= 0, got {s:?}")));
    }
    if s > T::lit(SERIES_WINDOW) {
        return Err(Error::OutOfRange {
            arg: format!("{s:?}"),
            limit: SERIES_WINDOW,
        });
    }
    Ok(())
}

pub fn bessel_j0_with<T: Real>(s: T, opts: &SeriesOptions) -> Result<SeriesResult<T>> {
    check_arg(s)?;
    let quarter_sq = s * s / T::lit(4.0);
    Ok(alternating_series(
        T::one(),
        |k| {
            let k1 = T::lit((k + 1) as f64);
            -quarter_sq / (k1 * k1)
        },
        opts,
    ))
}

pub fn bessel_j1_with<T: Real>(s: T, opts: &SeriesOptions) -> Result<SeriesResult<T>> {
    check_arg(s)?;
    let quarter_sq = s * s / T::lit(4.0);
    Ok(alternating_series(
        s / T::lit(2.0),
        |k| {
            let k1 = T::lit((k + 1) as f64);
            let k2 = T::lit((k + 2) as f64);
            -quarter_sq / (k1 * k2)
        },
        opts,
    ))
}

/// `J₀(s) = Σ (−1)^k (s/2)^{2k} / (k!)²`.
pub fn bessel_j0<T: Real>(s: T) -> Result<SeriesResult<T>> {
    bessel_j0_with(s, &SeriesOptions::default())
}

/// `J₁(s) = Σ (−1)^k (s/2)^{2k+1} / ((k+1)! k!)`.
pub fn bessel_j1<T: Real>(s: T) -> Result<SeriesResult<T>> {
    bessel_j1_with(s, &SeriesOptions::default())
}
