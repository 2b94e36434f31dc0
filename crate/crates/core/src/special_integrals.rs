//! The integrals `I_{n,r}`, `J_{n,r,ε}` and `J_{n,1}`.
//!
//! `I_{n,r}(ρ) = ∫_0^ρ sinh^{n-1} / cosh^{r-1}` drives the rotational
//! profiles; `J_{n,r,ε}(ρ) = ∫_ε^ρ cosh^{n-1} / sinh^{r-1}` the
//! translation ones. For `r = 1` the lower limit of `J` is 0.

use serde::{Deserialize, Serialize};

use crate::curvature_algebra::closed_form_coefficients;
use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{default_rel_tol, integrate};

/// Order and dimension data shared by the integral family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralSpec {
    pub n: u32,
    pub r: u32,
    /// Lower limit of `J`; `None` stands for 0 and is only valid for `r = 1`.
    pub epsilon: Option<f64>,
}

impl IntegralSpec {
    pub fn new(n: u32, r: u32, epsilon: Option<f64>) -> Result<Self> {
        check_orders(n, r)?;
        match epsilon {
            Some(e) if !(e.is_finite() && e >= 0.0) => {
                return Err(Error::InvalidInput(format!("epsilon must be >= 0, got {e}")))
            }
            Some(e) if r > 1 && e <= 0.0 => {
                return Err(Error::InvalidInput(
                    "J diverges at 0 for r > 1: epsilon must be positive".into(),
                ))
            }
            None if r > 1 => {
                return Err(Error::InvalidInput(
                    "J diverges at 0 for r > 1: epsilon must be given".into(),
                ))
            }
            _ => {}
        }
        Ok(Self { n, r, epsilon })
    }

    pub fn i(&self, rho: f64) -> Result<f64> {
        i_quad(self.n, self.r, rho)
    }

    pub fn j(&self, rho: f64) -> Result<f64> {
        j_quad(self.n, self.r, self.epsilon.unwrap_or(0.0), rho)
    }
}

pub(crate) fn check_orders(n: u32, r: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("dimension n must be >= 2, got {n}")));
    }
    if r == 0 || r > n {
        return Err(Error::InvalidInput(format!(
            "order r must satisfy 1 <= r <= n = {n}, got {r}"
        )));
    }
    Ok(())
}

/// Integrand of `I_{n,r}`.
#[inline]
pub fn i_integrand(n: u32, r: u32, tau: f64) -> f64 {
    tau.sinh().powi(n as i32 - 1) / tau.cosh().powi(r as i32 - 1)
}

/// Integrand of `J_{n,r,ε}`.
#[inline]
pub fn j_integrand(n: u32, r: u32, tau: f64) -> f64 {
    tau.cosh().powi(n as i32 - 1) / tau.sinh().powi(r as i32 - 1)
}

/// `I_{n,r}(ρ)` by adaptive quadrature.
pub fn i_quad(n: u32, r: u32, rho: f64) -> Result<f64> {
    check_orders(n, r)?;
    ensure_finite("rho", rho)?;
    if rho < 0.0 {
        return Err(Error::OutOfDomain { what: "rho", value: rho, lo: 0.0, hi: f64::INFINITY });
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    integrate(|t| i_integrand(n, r, t), 0.0, rho, default_rel_tol(), 0.0)
}

/// `I_{r+1,r}(x)` from the closed formulas obtained by unrolling the
/// integration-by-parts recurrence down to `I_{2,1}` or `I_{3,2}`.
pub fn i_closed(r: u32, x: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidInput("order r must be >= 1".into()));
    }
    ensure_finite("x", x)?;
    if x < 0.0 {
        return Err(Error::OutOfDomain { what: "x", value: x, lo: 0.0, hi: f64::INFINITY });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let base_21 = |x: f64| 2.0 * (0.5 * x).sinh().powi(2);
    let base_32 = |x: f64| x.sinh() - x.sinh().atan();
    match r {
        1 => return Ok(base_21(x)),
        2 => return Ok(base_32(x)),
        _ => {}
    }
    let (terms, ratio) = closed_form_coefficients(r);
    let t = x.tanh();
    let s = x.sinh();
    let odd = r % 2 == 1;
    let lowest = if odd { 1 } else { 2 };
    if x <= 1.0 {
        // Σ_j c_j t^{r-2j}, Horner in t² from the highest power down.
        let t2 = t * t;
        let poly = terms.iter().fold(0.0, |acc, c| acc * t2 + c);
        let sum = poly * t.powi(lowest);
        let base = if odd { base_21(x) } else { base_32(x) };
        return Ok(-s * sum + ratio * base);
    }
    // For larger x the bracket K - Σ c_j t^{k_j} cancels; rewrite it as
    // 1 + Σ c_j (1 - t^{k_j}) with 1 - t computed from exp(-2x).
    let e = (-2.0 * x).exp();
    let one_minus_t = 2.0 * e / (1.0 + e);
    let mut bracket = 1.0;
    for (j, c) in terms.iter().enumerate() {
        let k = r as i32 - 2 * (j as i32 + 1);
        let geometric: f64 = (0..k).map(|i| t.powi(i)).sum();
        bracket += c * one_minus_t * geometric;
    }
    if odd {
        // K (coth x - 1) = 2K e^{-2x} / (1 - e^{-2x})
        bracket += ratio * 2.0 * e / (1.0 - e);
        Ok(s * bracket - ratio)
    } else {
        Ok(s * bracket - ratio * s.atan())
    }
}

/// `sinh(x) - I_{r+1,r}(x)`, evaluated without cancellation. Bounded in
/// `x`; its limit at infinity is the cap on `d` at critical curvature
/// when `n = r + 1`.
pub fn i_closed_excess(r: u32, x: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidInput("order r must be >= 1".into()));
    }
    ensure_finite("x", x)?;
    if x < 0.0 {
        return Err(Error::OutOfDomain { what: "x", value: x, lo: 0.0, hi: f64::INFINITY });
    }
    let t = x.tanh();
    // sinh x · (1 - tanh x) = tanh x · e^{-x}
    let s_one_minus_t = t * (-x).exp();
    let tail = |terms: &[f64]| -> f64 {
        let mut acc = 0.0;
        for (j, c) in terms.iter().enumerate() {
            let k = r as i32 - 2 * (j as i32 + 1);
            let geometric: f64 = (0..k).map(|i| t.powi(i)).sum();
            acc += c * geometric;
        }
        acc * s_one_minus_t
    };
    match r {
        // sinh - cosh + 1
        1 => Ok(-(-x).exp_m1()),
        2 => Ok(x.sinh().atan()),
        _ => {
            let (terms, ratio) = closed_form_coefficients(r);
            if r.is_multiple_of(2) {
                Ok(ratio * x.sinh().atan() - tail(&terms))
            } else {
                // sinh x (coth x - 1) = e^{-x}
                Ok(ratio * (1.0 - (-x).exp()) - tail(&terms))
            }
        }
    }
}

/// `J_{n,r,ε}(ρ)`; for `r = 1` this is `J_{n,1}(ρ)` and `epsilon` is
/// ignored (the integral starts at 0).
pub fn j_quad(n: u32, r: u32, epsilon: f64, rho: f64) -> Result<f64> {
    check_orders(n, r)?;
    ensure_finite("epsilon", epsilon)?;
    ensure_finite("rho", rho)?;
    let tol = default_rel_tol();
    if r == 1 {
        if rho < 0.0 {
            return Err(Error::OutOfDomain { what: "rho", value: rho, lo: 0.0, hi: f64::INFINITY });
        }
        return integrate(|t| t.cosh().powi(n as i32 - 1), 0.0, rho, tol, 0.0);
    }
    if epsilon <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "J diverges at 0 for r > 1: epsilon must be positive, got {epsilon}"
        )));
    }
    if rho < epsilon {
        return Err(Error::OutOfDomain { what: "rho", value: rho, lo: epsilon, hi: f64::INFINITY });
    }
    if rho == epsilon {
        return Ok(0.0);
    }
    // The integrand behaves like τ^{1-r} near 0: integrate in log τ up to 1.
    let knee = rho.min(1.0).max(epsilon);
    let mut total = 0.0;
    if knee > epsilon {
        total += integrate(
            |s| {
                let tau = s.exp();
                tau * j_integrand(n, r, tau)
            },
            epsilon.ln(),
            knee.ln(),
            tol,
            0.0,
        )?;
    }
    if rho > knee {
        total += integrate(|t| j_integrand(n, r, t), knee, rho, tol, 0.0)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn i_zero_interval() {
        assert_eq!(i_quad(4, 2, 0.0).unwrap(), 0.0);
        for r in 1..=6 {
            assert_eq!(i_closed(r, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn i_base_cases() {
        let c = 1f64.cosh() - 1.0;
        assert!(rel(i_quad(2, 1, 1.0).unwrap(), c) < 1e-13);
        assert!(rel(i_closed(1, 1.0).unwrap(), c) < 1e-15);
        assert!((c - 0.543_080_634_815_243_8).abs() < 1e-15);
        let v = 1f64.sinh() - 1f64.sinh().atan();
        assert!(rel(i_quad(3, 2, 1.0).unwrap(), v) < 1e-13);
        assert!((v - 0.309_431_710_404_142_75).abs() < 1e-15);
    }

    #[test]
    fn i_two_two_is_log_cosh() {
        for x in [0.3, 1.0, 2.5] {
            assert!(rel(i_quad(2, 2, x).unwrap(), x.cosh().ln()) < 1e-13);
        }
    }

    #[test]
    fn closed_matches_quadrature_past_switch() {
        for r in 1..=8 {
            for x in [0.05, 0.7, 1.0, 1.000001, 3.0, 8.0, 25.0] {
                let q = i_quad(r + 1, r, x).unwrap();
                let c = i_closed(r, x).unwrap();
                assert!((q - c).abs() <= 1e-10 * (1.0 + c.abs()), "r={r} x={x}: {q} vs {c}");
            }
        }
    }

    #[test]
    fn excess_is_sinh_minus_closed_form() {
        for r in 1..=7 {
            for x in [0.01f64, 0.5, 1.0, 2.0, 4.0] {
                let direct = x.sinh() - i_quad(r + 1, r, x).unwrap();
                let e = i_closed_excess(r, x).unwrap();
                assert!((direct - e).abs() < 1e-10 * (1.0 + x.sinh()), "r={r} x={x}");
            }
        }
        // limits: (r-1)!!/(r-2)!! times π/2 (r even) or 1 (r odd)
        let pi2 = std::f64::consts::FRAC_PI_2;
        assert!((i_closed_excess(1, 60.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((i_closed_excess(2, 60.0).unwrap() - pi2).abs() < 1e-15);
        assert!((i_closed_excess(3, 60.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((i_closed_excess(4, 60.0).unwrap() - 1.5 * pi2).abs() < 1e-14);
        assert!((i_closed_excess(5, 60.0).unwrap() - 8.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn i_rejects_bad_input() {
        assert!(i_quad(3, 2, -1.0).is_err());
        assert!(i_quad(3, 2, f64::NAN).is_err());
        assert!(i_quad(3, 4, 1.0).is_err());
        assert!(i_quad(1, 1, 1.0).is_err());
    }

    #[test]
    fn j_examples() {
        assert_eq!(j_quad(3, 2, 0.4, 0.4).unwrap(), 0.0);
        assert!(rel(j_quad(2, 1, 0.0, 1.0).unwrap(), 1f64.sinh()) < 1e-13);
        let a = j_quad(3, 2, 0.5, 2.0).unwrap();
        let b = j_quad(3, 2, 1.0, 2.0).unwrap();
        assert!(a > b && b > 0.0);
        // r = n = 2: ∫ coth = ln sinh
        let v = j_quad(2, 2, 1e-6, 0.5).unwrap();
        assert!(rel(v, 0.5f64.sinh().ln() - 1e-6f64.sinh().ln()) < 1e-12);
    }

    #[test]
    fn j_errors() {
        assert!(j_quad(3, 2, 0.0, 1.0).is_err());
        assert!(j_quad(3, 2, 0.5, 0.2).is_err());
        assert!(j_quad(3, 2, -0.5, 0.2).is_err());
        assert!(IntegralSpec::new(3, 2, None).is_err());
        assert!(IntegralSpec::new(3, 1, None).is_ok());
    }

    #[test]
    fn i_shape_laws() {
        for &(n, r) in &[(2, 1), (3, 1), (3, 2), (3, 3), (4, 2), (5, 3)] {
            // increasing and convex on a grid
            let h = 0.05;
            let vals: Vec<f64> = (0..60).map(|k| i_quad(n, r, k as f64 * h).unwrap()).collect();
            for w in vals.windows(3) {
                assert!(w[1] > w[0] || w[0] == 0.0 && w[1] > 0.0);
                assert!(w[2] - 2.0 * w[1] + w[0] > -1e-14);
            }
            // small-ρ law n I ~ ρ^n
            for rho in [1e-3, 1e-4] {
                let ratio = n as f64 * i_quad(n, r, rho).unwrap() / rho.powi(n as i32);
                assert!((ratio - 1.0).abs() < 1e-2, "{n},{r}: {ratio}");
            }
            // large-ρ laws
            let big = 10.0;
            if n > r {
                let ratio = (n - r) as f64 * i_quad(n, r, big).unwrap() / big.sinh().powi((n - r) as i32);
                assert!((ratio - 1.0).abs() < 1e-3, "{n},{r}: {ratio}");
            }
        }
        // n = r: I / ρ -> 1, with an O(1/ρ) offset
        let ratio = i_quad(3, 3, 200.0).unwrap() / 200.0;
        assert!((ratio - 1.0).abs() < 1e-2);
    }
}
