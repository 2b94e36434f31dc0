//! Adaptive Gauss–Kronrod quadrature.
//!
//! Global subdivision with a 21-point Kronrod rule (10-point Gauss
//! embedded), plus a wrapper for integrands with inverse square-root
//! blow-up at a known endpoint: writing `rho = e ± u²` turns
//! `(rho - e)^{-1/2}` behaviour into a bounded integrand in `u`.

use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default relative tolerance for the special integrals.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

static REL_TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// Process-wide relative tolerance used by the special integrals.
pub fn default_rel_tol() -> f64 {
    let bits = REL_TOL_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_REL_TOL
    } else {
        f64::from_bits(bits)
    }
}

/// Overrides [`default_rel_tol`]. Values outside `(0, 1e-3]` are rejected.
pub fn set_default_rel_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidInput(format!(
            "quadrature tolerance must lie in (0, 1e-3], got {tol}"
        )));
    }
    REL_TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const MAX_INTERVALS: usize = 4000;
const INITIAL_PANELS: usize = 4;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    if !res_k.is_finite() {
        return Err(Error::Numeric(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value, err })
}

/// One fixed 21-point Kronrod panel, no error control. For analytic
/// integrands on short intervals.
pub(crate) fn kronrod21_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = WGK[10] * f(center);
    for j in 0..10 {
        let x = half * XGK[j];
        acc += WGK[j] * (f(center - x) + f(center + x));
    }
    acc * half
}

/// Integrates `f` over `[a, b]` to the relative tolerance `rel_tol`
/// (with an absolute floor `abs_tol`).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, rel_tol, abs_tol).map(|v| -v);
    }
    // Start from a few panels: a single 21-point panel can agree with its
    // embedded Gauss rule by accident and stop far too early.
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let width = (b - a) / INITIAL_PANELS as f64;
    for k in 0..INITIAL_PANELS {
        let lo = a + k as f64 * width;
        let hi = if k + 1 == INITIAL_PANELS { b } else { lo + width };
        let panel = kronrod21(&f, lo, hi)?;
        total += panel.value;
        total_err += panel.err;
        heap.push(panel);
    }
    let target = |total: f64| abs_tol.max(rel_tol * total.abs());
    while total_err > target(total) {
        if heap.len() >= MAX_INTERVALS {
            break;
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in floating point.
            heap.push(worst);
            break;
        }
        let left = kronrod21(&f, worst.a, mid)?;
        let right = kronrod21(&f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    let (sum, err) = heap
        .iter()
        .fold((0.0, 0.0), |(s, e), p| (s + p.value, e + p.err));
    let slack = 1e4 * target(sum);
    if err > slack.max(1e3 * f64::EPSILON * sum.abs()) {
        return Err(Error::Numeric(format!(
            "quadrature on [{a}, {b}] stalled at error {err:e} (value {sum:e})"
        )));
    }
    Ok(sum)
}

/// Integrates `f` over `[a, b]` where `f` may blow up like an inverse
/// square root at `left_sing <= a` and/or at `right_sing >= b`.
///
/// The interval is split between the two singular points; each half is
/// integrated in the variable `u` with `rho = e ± u²`. The integrand
/// receives `rho` and the exact offset `u²` from the singular point it is
/// being integrated against (`+∞` when there is none), so that it can
/// switch to an asymptotic form where `rho` itself has rounded onto `e`.
pub fn integrate_sqrt_endpoints<F: Fn(f64, f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    left_sing: Option<f64>,
    right_sing: Option<f64>,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64> {
    if b < a {
        return integrate_sqrt_endpoints(f, b, a, left_sing, right_sing, rel_tol, abs_tol)
            .map(|v| -v);
    }
    if a == b {
        return Ok(0.0);
    }
    let split = match (left_sing, right_sing) {
        (Some(l), Some(r)) => (0.5 * (l + r)).clamp(a, b),
        (Some(_), None) => b,
        (None, Some(_)) => a,
        (None, None) => return integrate(|x| f(x, f64::INFINITY), a, b, rel_tol, abs_tol),
    };
    let mut total = 0.0;
    if let Some(l) = left_sing {
        if split > a {
            let ua = (a - l).max(0.0).sqrt();
            let ub = (split - l).max(0.0).sqrt();
            total += integrate(|u| 2.0 * u * f(l + u * u, u * u), ua, ub, rel_tol, abs_tol)?;
        }
    }
    if let Some(r) = right_sing {
        if split < b {
            let ua = (r - split).max(0.0).sqrt();
            let ub = (r - b).max(0.0).sqrt();
            // rho = r - u², d rho = -2u du; the orientation flip absorbs the sign.
            total += integrate(|u| 2.0 * u * f(r - u * u, u * u), ub, ua, rel_tol, abs_tol)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-14, 1e-14).unwrap();
        assert!((v - 0.0).abs() < 1e-13);
        let v = integrate(|x| x.powi(8), -1.0, 1.0, 1e-14, 0.0).unwrap();
        assert!((v - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let a = integrate(f64::exp, 0.0, 1.0, 1e-13, 0.0).unwrap();
        let b = integrate(f64::exp, 1.0, 0.0, 1e-13, 0.0).unwrap();
        assert_eq!(a, -b);
        assert!((a - (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn inverse_sqrt_both_ends() {
        // ∫_0^1 dx / sqrt(x(1-x)) = π
        let f = |x: f64, _: f64| 1.0 / (x * (1.0 - x)).sqrt();
        let v = integrate_sqrt_endpoints(f, 0.0, 1.0, Some(0.0), Some(1.0), 1e-13, 0.0).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-12, "{v}");
    }

    #[test]
    fn partial_interval_near_singularity() {
        // ∫_0^0.99 dx / sqrt(1-x) = 2 (1 - sqrt(0.01)) = 1.8
        let f = |_: f64, off: f64| 1.0 / off.sqrt();
        let v = integrate_sqrt_endpoints(f, 0.0, 0.99, None, Some(1.0), 1e-13, 0.0).unwrap();
        assert!((v - 1.8).abs() < 1e-12, "{v}");
    }

    #[test]
    fn non_finite_limits_rejected() {
        assert!(integrate(|x| x, 0.0, f64::INFINITY, 1e-10, 0.0).is_err());
    }

    #[test]
    fn tolerance_override_validation() {
        assert!(set_default_rel_tol(0.0).is_err());
        assert!(set_default_rel_tol(0.5).is_err());
    }
}
