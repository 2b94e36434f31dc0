//! Bracketing and bisection.

use crate::error::{Error, Result};

/// Absolute tolerance on the root location.
pub const ROOT_TOL: f64 = 1e-12;

/// Bisects `f` on `[a, b]`, which must bracket a sign change.
///
/// Stops once the bracket is narrower than `tol` (or cannot shrink in
/// floating point) and returns its midpoint. An exact zero at either end
/// is returned as is.
pub fn bisect<F: FnMut(f64) -> Result<f64>>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo:e}, {f_hi:e}"
        )));
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Steps right from `lo` with doubling steps until `f` takes the sign
/// `want_positive`, giving up beyond `limit`. Returns the last point
/// without that sign and the first point with it.
pub fn bracket_right<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    step: f64,
    limit: f64,
    want_positive: bool,
) -> Result<(f64, f64)> {
    let mut a = lo;
    let mut h = step;
    loop {
        let b = (a + h).min(limit);
        let fb = f(b)?;
        if fb != 0.0 && (fb > 0.0) == want_positive || fb == 0.0 {
            return Ok((a, b));
        }
        if b >= limit {
            return Err(Error::Bracket(format!("no sign change found in [{lo}, {limit}]")));
        }
        a = b;
        h *= 2.0;
    }
}
