//! Hyperbolic limaçons in the hyperboloid model of `H²`.
//!
//! The defining circle has centre `C = (0, 0, 1)` and radius `c`; the base
//! point is `A = (sinh a, 0, cosh a)`. `L(θ)` reflects `A` across the
//! geodesic tangent to the circle at angle `θ`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Deficits below 1 of an `arccosh` argument smaller than this are rounding.
const ACOSH_SLACK: f64 = 1e-14;
const GRID: usize = 2048;
const THETA_TOL: f64 = 1e-10;

/// A point of `R^{2,1}` with `q = dx² + dy² - dz²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MinkowskiPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// The hyperboloid point at distance `t` from `(0, 0, 1)` in direction `φ`.
    pub fn polar(t: f64, phi: f64) -> Self {
        Self::new(t.sinh() * phi.cos(), t.sinh() * phi.sin(), t.cosh())
    }

    pub fn on_hyperboloid(&self, tol: f64) -> bool {
        self.z > 0.0 && (q_form(self, self) + 1.0).abs() <= tol
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

pub fn q_form(u: &MinkowskiPoint, v: &MinkowskiPoint) -> f64 {
    u.x * v.x + u.y * v.y - u.z * v.z
}

fn acosh_checked(x: f64) -> Result<f64> {
    if x >= 1.0 {
        Ok(x.acosh())
    } else if x >= 1.0 - ACOSH_SLACK {
        Ok(0.0)
    } else {
        Err(Error::Numeric(format!("arccosh argument {x} below 1")))
    }
}

/// Hyperbolic distance `arccosh(-q(u, v))`.
pub fn distance_acosh(u: &MinkowskiPoint, v: &MinkowskiPoint) -> Result<f64> {
    acosh_checked(-q_form(u, v))
}

/// Hyperbolic distance via `q(u - v, u - v) = 4 sinh²(d/2)`, which keeps
/// full relative accuracy for nearby points.
pub fn distance(u: &MinkowskiPoint, v: &MinkowskiPoint) -> f64 {
    let w = u.sub(v);
    2.0 * (0.5 * q_form(&w, &w).max(0.0).sqrt()).asinh()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimaconSpec {
    pub a: f64,
    pub c: f64,
}

impl LimaconSpec {
    /// Two-loop limaçons only: `a > c > 0`.
    pub fn new(a: f64, c: f64) -> Result<Self> {
        ensure_finite("a", a)?;
        ensure_finite("c", c)?;
        if !(c > 0.0 && a > c) {
            return Err(Error::Inadmissible(format!("need a > c > 0, got a = {a}, c = {c}")));
        }
        Ok(Self { a, c })
    }

    pub fn base_point(&self) -> MinkowskiPoint {
        MinkowskiPoint::polar(self.a, 0.0)
    }

    pub fn centre(&self) -> MinkowskiPoint {
        MinkowskiPoint::new(0.0, 0.0, 1.0)
    }

    /// The point of the circle nearest to `A`.
    pub fn nearest_point(&self) -> MinkowskiPoint {
        MinkowskiPoint::polar(self.c, 0.0)
    }

    /// `(a - c, ℓ(a, c), a + 2c)`: the radius about `X` separating the
    /// loops, the inner-loop radius about `X`, the outer radius about `C`.
    pub fn radii(&self) -> Result<(f64, f64, f64)> {
        Ok((self.a - self.c, ell(self.a, self.c)?, self.a + 2.0 * self.c))
    }
}

/// `L(θ) = A - 2 q(A, ν) ν` with `ν(θ) = (cosh c cos θ, cosh c sin θ, sinh c)`
/// the unit normal of the tangent geodesic.
pub fn limacon_point(spec: &LimaconSpec, theta: f64) -> MinkowskiPoint {
    let (ch, sh) = (spec.c.cosh(), spec.c.sinh());
    let nu = MinkowskiPoint::new(ch * theta.cos(), ch * theta.sin(), sh);
    let a = spec.base_point();
    let k = 2.0 * q_form(&a, &nu);
    MinkowskiPoint::new(a.x - k * nu.x, a.y - k * nu.y, a.z - k * nu.z)
}

/// `ℓ(a, c) = arccosh(cosh(a-c) - sinh(c) sinh²(a-c) / (2 sinh a))`.
pub fn ell(a: f64, c: f64) -> Result<f64> {
    ensure_finite("a", a)?;
    ensure_finite("c", c)?;
    if !(c >= 0.0 && a > c) {
        return Err(Error::Inadmissible(format!("need a > c >= 0, got a = {a}, c = {c}")));
    }
    if c == 0.0 {
        return Ok(a);
    }
    let s = (a - c).sinh();
    acosh_checked((a - c).cosh() - c.sinh() / (2.0 * a.sinh()) * s * s)
}

/// `cos θ₀ = sinh(a+c) / (2 sinh a cosh c)` at the interior critical point.
pub fn critical_cos(spec: &LimaconSpec) -> f64 {
    (spec.a + spec.c).sinh() / (2.0 * spec.a.sinh() * spec.c.cosh())
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

fn grid_extremum<F: Fn(f64) -> f64>(f: F, sign: f64) -> (f64, f64) {
    let h = std::f64::consts::PI / GRID as f64;
    let g = |t: f64| sign * f(t);
    let best = (0..=GRID)
        .min_by(|&i, &j| g(i as f64 * h).total_cmp(&g(j as f64 * h)))
        .unwrap_or(0);
    let lo = (best as f64 - 1.0).max(0.0) * h;
    let hi = ((best + 1) as f64 * h).min(std::f64::consts::PI);
    let t = golden_min(g, lo, hi, THETA_TOL);
    (t, f(t))
}

/// `min_θ d(X, L(θ))` over `[0, π]`: dense grid, then golden section.
/// Independent of the closed form [`ell`].
pub fn limacon_min_distance(spec: &LimaconSpec) -> (f64, f64) {
    let x = spec.nearest_point();
    grid_extremum(|t| distance(&x, &limacon_point(spec, t)), 1.0)
}

/// `max_θ d(C, L(θ))`.
pub fn limacon_max_centre_distance(spec: &LimaconSpec) -> (f64, f64) {
    let c = spec.centre();
    grid_extremum(|t| distance(&c, &limacon_point(spec, t)), -1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub samples: usize,
    pub increasing_in_a: bool,
    pub decreasing_in_c: bool,
    pub bounded: bool,
    /// `(a, c)` points where some check failed.
    pub violations: Vec<(f64, f64)>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.increasing_in_a && self.decreasing_in_c && self.bounded
    }
}

/// Forward differences of `ℓ` in `a` and `c` at each grid point, plus
/// `0 < ℓ < a - c`. Steps keep `a > c` on the shifted points.
pub fn ell_monotonicity_check(grid: &[(f64, f64)]) -> Result<MonotonicityReport> {
    let mut rep = MonotonicityReport {
        samples: grid.len(),
        increasing_in_a: true,
        decreasing_in_c: true,
        bounded: true,
        violations: Vec::new(),
    };
    for &(a, c) in grid {
        LimaconSpec::new(a, c)?;
        let l = ell(a, c)?;
        let h = 1e-3 * (a - c);
        let inc = ell(a + h, c)? > l;
        let dec = ell(a, c + h)? < l;
        let bnd = l > 0.0 && l < a - c;
        rep.increasing_in_a &= inc;
        rep.decreasing_in_c &= dec;
        rep.bounded &= bnd;
        if !(inc && dec && bnd) {
            rep.violations.push((a, c));
        }
    }
    Ok(rep)
}

/// The `(a, c)` grid `c ∈ {0.1, 0.5, 1}`, `a - c ∈ {0.1, 0.2, …, 3}`.
pub fn standard_grid() -> Vec<(f64, f64)> {
    let mut g = Vec::new();
    for c in [0.1, 0.5, 1.0] {
        for k in 1..=30 {
            g.push((c + 0.1 * k as f64, c));
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn q_examples() {
        let o = MinkowskiPoint::new(0.0, 0.0, 1.0);
        let a = MinkowskiPoint::polar(1.3, 0.0);
        assert_eq!(q_form(&o, &o), -1.0);
        assert!((q_form(&o, &a) + 1.3f64.cosh()).abs() < 1e-15);
        assert!((distance_acosh(&o, &a).unwrap() - 1.3).abs() < 1e-14);
        assert!((distance(&o, &a) - 1.3).abs() < 1e-14);
    }

    #[test]
    fn distance_forms_agree() {
        let u = MinkowskiPoint::polar(0.7, 0.3);
        let v = MinkowskiPoint::polar(1.9, 2.0);
        assert!((distance(&u, &v) - distance_acosh(&u, &v).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn points_stay_on_hyperboloid() {
        let s = LimaconSpec::new(1.7, 0.4).unwrap();
        for k in 0..=64 {
            let p = limacon_point(&s, 2.0 * PI * k as f64 / 64.0);
            assert!((q_form(&p, &p) + 1.0).abs() < 1e-12 * p.z * p.z);
            assert!(p.z > 0.0);
        }
    }

    #[test]
    fn axis_points() {
        for (a, c) in [(1.0, 0.5), (2.0, 0.1), (4.0, 1.0)] {
            let s = LimaconSpec::new(a, c).unwrap();
            let x = s.nearest_point();
            assert!((distance(&x, &limacon_point(&s, 0.0)) - (a - c)).abs() < 1e-10);
            assert!((distance(&x, &limacon_point(&s, PI)) - (a + 3.0 * c)).abs() < 1e-10);
        }
    }

    #[test]
    fn ell_values() {
        assert_eq!(ell(2.0, 0.0).unwrap(), 2.0);
        assert!((ell(1.0, 0.5).unwrap() - 0.365184498501659).abs() < 1e-14);
        assert!(ell(0.5, 0.5).is_err());
        assert!(ell(1.0, -0.1).is_err());
        for x in [0.1, 1.0, 5.0] {
            assert!(ell(4.0 * x, 2.0 * x).unwrap() > x);
        }
    }

    #[test]
    fn closed_form_matches_minimum() {
        for (a, c) in standard_grid() {
            let s = LimaconSpec::new(a, c).unwrap();
            let (t0, d) = limacon_min_distance(&s);
            let l = ell(a, c).unwrap();
            assert!((d - l).abs() <= 1e-8, "({a},{c}): {d} vs {l}");
            assert!((t0.cos() - critical_cos(&s)).abs() <= 1e-6, "({a},{c})");
        }
    }

    #[test]
    fn small_circle_limit() {
        let s = LimaconSpec::new(1.0, 1e-9).unwrap();
        assert!((limacon_min_distance(&s).1 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn outer_bound() {
        for (a, c) in standard_grid() {
            let s = LimaconSpec::new(a, c).unwrap();
            assert!(limacon_max_centre_distance(&s).1 <= a + 2.0 * c + 1e-8);
        }
    }

    #[test]
    fn monotone_on_grid() {
        assert!(ell(2.0, 0.5).unwrap() < ell(2.5, 0.5).unwrap());
        assert!(ell(2.0, 0.5).unwrap() > ell(2.0, 0.8).unwrap());
        let rep = ell_monotonicity_check(&standard_grid()).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(ell_monotonicity_check(&[(0.5, 1.0)]).is_err());
    }
}
