use serde::{Deserialize, Serialize};

use super::{profile_domain, EndpointFlag, ProfileDomain, ProfileParams};
use crate::curvature_algebra::signed_root;
use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{integrate_sqrt_endpoints, kronrod21_fixed};
use crate::special_integrals::{i_integrand, i_quad};

/// Relative tolerance for integrating `λ̇`.
pub const LAMBDA_REL_TOL: f64 = 1e-10;
const LAMBDA_ABS_TOL: f64 = 1e-14;

/// How far past `ρ₋` unbounded profiles are tabulated by default.
pub const DEFAULT_UNBOUNDED_SPAN: f64 = 4.0;

const TABLE_STEP: f64 = 1.0 / 32.0;

/// `I_{n,r}` on a uniform knot grid, completed by one Kronrod panel
/// from the nearest knot below. The integrand is analytic in a strip
/// of half-width π/2 around the real axis, so a 21-point panel of
/// width 1/32 is exact to rounding.
#[derive(Debug, Clone)]
struct ITable {
    n: u32,
    r: u32,
    knots: Vec<f64>,
}

impl ITable {
    fn new(n: u32, r: u32, end: f64) -> Self {
        let count = (end / TABLE_STEP).ceil().max(1.0) as usize + 1;
        let mut knots = Vec::with_capacity(count + 1);
        knots.push(0.0);
        for k in 0..count {
            let a = k as f64 * TABLE_STEP;
            let v = kronrod21_fixed(|t| i_integrand(n, r, t), a, a + TABLE_STEP);
            knots.push(knots[k] + v);
        }
        Self { n, r, knots }
    }

    fn eval(&self, rho: f64) -> f64 {
        let k = (rho / TABLE_STEP).floor() as usize;
        if k + 1 >= self.knots.len() {
            return i_quad(self.n, self.r, rho).unwrap_or(f64::NAN);
        }
        let a = k as f64 * TABLE_STEP;
        if rho == a {
            return self.knots[k];
        }
        self.knots[k] + kronrod21_fixed(|t| i_integrand(self.n, self.r, t), a, rho)
    }
}

/// One evaluated point of a rotational profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    #[serde(with = "crate::float_serde")]
    pub rho: f64,
    #[serde(with = "crate::float_serde")]
    pub lambda: f64,
    #[serde(with = "crate::float_serde")]
    pub lambda_dot: f64,
    #[serde(with = "crate::float_serde")]
    pub lambda_ddot: f64,
    #[serde(with = "crate::float_serde")]
    pub k_tan: f64,
    #[serde(with = "crate::float_serde")]
    pub k_n: f64,
    /// Analytic first-integral residual.
    #[serde(with = "crate::float_serde")]
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualMode {
    Analytic,
    /// `λ̇` from a central difference of `λ` with the given half-step.
    FiniteDifference { step: f64 },
}

/// `λ̇ / sqrt(1 + λ̇²)`, with the infinite slopes mapped to `±1`.
pub(crate) fn unit_slope(lambda_dot: f64) -> f64 {
    if lambda_dot.is_infinite() {
        lambda_dot.signum()
    } else {
        lambda_dot / lambda_dot.hypot(1.0)
    }
}

/// A rotational profile with its domain resolved and `I_{n,r}` tabulated.
#[derive(Debug, Clone)]
pub struct Profile {
    params: ProfileParams,
    domain: ProfileDomain,
    table: ITable,
    extent: f64,
    /// `|σ'|` at the ends where `σ = ±1`.
    left_slope: Option<f64>,
    right_slope: Option<f64>,
}

impl Profile {
    pub fn new(params: ProfileParams) -> Result<Self> {
        let domain = profile_domain(&params)?;
        let extent = domain.rho_plus.unwrap_or(domain.rho_minus + DEFAULT_UNBOUNDED_SPAN);
        Ok(Self::build(params, domain, extent))
    }

    /// As [`Profile::new`], tabulating unbounded profiles up to `extent`.
    pub fn with_extent(params: ProfileParams, extent: f64) -> Result<Self> {
        ensure_finite("extent", extent)?;
        let domain = profile_domain(&params)?;
        let extent = match domain.rho_plus {
            Some(p) => p,
            None if extent > domain.rho_minus => extent,
            None => {
                return Err(Error::OutOfDomain {
                    what: "extent",
                    value: extent,
                    lo: domain.rho_minus,
                    hi: f64::INFINITY,
                })
            }
        };
        Ok(Self::build(params, domain, extent))
    }

    fn build(params: ProfileParams, domain: ProfileDomain, extent: f64) -> Self {
        let table = ITable::new(params.n, params.r, extent + TABLE_STEP);
        let mut p = Self { params, domain, table, extent, left_slope: None, right_slope: None };
        if domain.left_vertical() {
            p.left_slope = Some(p.sigma_prime(domain.rho_minus).abs());
        }
        if let (Some(rp), true) = (domain.rho_plus, domain.right_vertical()) {
            p.right_slope = Some(p.sigma_prime(rp).abs());
        }
        p
    }

    pub fn params(&self) -> &ProfileParams {
        &self.params
    }

    pub fn domain(&self) -> &ProfileDomain {
        &self.domain
    }

    /// Right end of the sampled range: `ρ₊`, or the tabulation extent.
    pub fn extent(&self) -> f64 {
        self.extent
    }

    fn check(&self, rho: f64) -> Result<()> {
        ensure_finite("rho", rho)?;
        if !self.domain.contains(rho) {
            return Err(Error::OutOfDomain {
                what: "rho",
                value: rho,
                lo: self.domain.rho_minus,
                hi: self.domain.rho_plus.unwrap_or(f64::INFINITY),
            });
        }
        Ok(())
    }

    fn nh(&self) -> f64 {
        self.params.n as f64 * self.params.h
    }

    fn odd(&self) -> bool {
        self.params.r % 2 == 1
    }

    /// `g = (nH·I + d) / sinh^{n-r}`, clamped to the range where `σ` is
    /// defined so that rounding at the endpoints cannot leave it.
    pub fn g(&self, rho: f64) -> f64 {
        let p = &self.params;
        let rhs = self.nh() * self.table.eval(rho) + p.d;
        let g = if p.n == p.r {
            rhs
        } else if rho == 0.0 {
            // only reached with d = 0: g ~ H ρ^r
            0.0
        } else {
            rhs / p.lhs_weight(rho)
        };
        let lo = if self.odd() { -1.0 } else { 0.0 };
        g.clamp(lo, 1.0)
    }

    /// `σ = λ̇ / sqrt(1 + λ̇²)`.
    pub fn sigma(&self, rho: f64) -> f64 {
        signed_root(self.g(rho), self.params.r).unwrap_or(f64::NAN)
    }

    /// `σ' = g' / (r σ^{r-1})` with `g' = nH tanh^{r-1} - (n-r) coth · g`.
    /// Infinite where `σ = 0` and `r > 1`.
    pub fn sigma_prime(&self, rho: f64) -> f64 {
        let p = &self.params;
        let r = p.r as i32;
        if rho == 0.0 && p.d == 0.0 {
            return p.h.powf(1.0 / p.r as f64);
        }
        let g = self.g(rho);
        let mut gp = self.nh() * rho.tanh().powi(r - 1);
        if p.n > p.r {
            gp -= (p.n - p.r) as f64 * g / rho.tanh();
        }
        let sigma = signed_root(g, p.r).unwrap_or(f64::NAN);
        if r == 1 {
            return gp;
        }
        if sigma == 0.0 {
            return f64::INFINITY.copysign(gp);
        }
        gp / (p.r as f64 * sigma.powi(r - 1))
    }

    fn lambda_dot_raw(&self, rho: f64) -> f64 {
        let s = self.sigma(rho);
        s / ((1.0 - s) * (1.0 + s)).sqrt()
    }

    /// `λ̇` for quadrature: `offset` is the distance to the singular end
    /// the integrator is working against. Once `1 - σ²` is lost to
    /// rounding it is replaced by its first-order model `2|σ'| offset`.
    fn lambda_dot_near(&self, rho: f64, offset: f64, slope: Option<f64>) -> f64 {
        let s = self.sigma(rho);
        let w = (1.0 - s) * (1.0 + s);
        match slope {
            Some(k) if w < 1e-9 && offset.is_finite() => s.signum() / (2.0 * k * offset).sqrt(),
            _ => s / w.sqrt(),
        }
    }

    pub fn lambda_dot(&self, rho: f64) -> Result<f64> {
        self.check(rho)?;
        Ok(self.lambda_dot_raw(rho))
    }

    pub fn lambda_ddot(&self, rho: f64) -> Result<f64> {
        self.check(rho)?;
        let sp = self.sigma_prime(rho);
        let at_critical = self.domain.rho_zero == Some(rho)
            || (self.domain.left == EndpointFlag::Cusp && rho == self.domain.rho_minus);
        if self.params.r > 1 && (at_critical || sp.is_infinite()) {
            return Err(Error::Singular {
                rho,
                reason: "second derivative blows up where the profile is horizontal",
            });
        }
        let s = self.sigma(rho);
        Ok(sp / ((1.0 - s) * (1.0 + s)).powf(1.5))
    }

    /// `(k_tan, k_n) = (coth(ρ)·σ, σ')`, with the finite limits at a
    /// regular origin and at vertical ends.
    pub fn principal_curvatures(&self, rho: f64) -> Result<(f64, f64)> {
        self.check(rho)?;
        if rho == 0.0 {
            return match self.domain.left {
                EndpointFlag::RegularOrigin => {
                    let k = self.params.h.powf(1.0 / self.params.r as f64);
                    Ok((k, k))
                }
                _ => Err(Error::Singular { rho, reason: "conical point on the axis" }),
            };
        }
        let s = self.sigma(rho);
        let kn = self.sigma_prime(rho);
        if !kn.is_finite() {
            return Err(Error::Singular { rho, reason: "normal curvature blows up" });
        }
        Ok((s / rho.tanh(), kn))
    }

    /// A vertical end where `σ'` vanishes: `1 - σ²` then decays at least
    /// quadratically and `∫λ̇` diverges. Happens for `n = r >= 3` odd at
    /// `d = -1`.
    pub fn height_diverges(&self) -> bool {
        self.domain.left_vertical() && self.left_slope == Some(0.0)
    }

    fn sing_points(&self) -> (Option<f64>, Option<f64>) {
        let left = match self.domain.left {
            EndpointFlag::VerticalTangent | EndpointFlag::Cusp => Some(self.domain.rho_minus),
            _ => None,
        };
        (left, self.domain.rho_plus)
    }

    /// `∫_a^b λ̇` for `ρ₋ <= a <= b <= ρ₊`, split at `ρ₀`.
    fn integrate_lambda_dot(&self, a: f64, b: f64) -> Result<f64> {
        if self.height_diverges() && a == self.domain.rho_minus && b > a {
            return Err(Error::Singular {
                rho: a,
                reason: "profile is asymptotic to the axis, height diverges",
            });
        }
        let (ls, rs) = self.sing_points();
        let mut cuts = vec![a];
        if let Some(r0) = self.domain.rho_zero {
            if r0 > a && r0 < b {
                cuts.push(r0);
            }
        }
        cuts.push(b);
        let mid = match (ls, rs) {
            (Some(l), Some(r)) => 0.5 * (l + r),
            _ => f64::NAN,
        };
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let f = |rho: f64, off: f64| {
                // which end the integrator is working against
                let slope = match (ls, rs) {
                    (Some(_), Some(_)) if rho < mid => self.left_slope,
                    (Some(_), None) => self.left_slope,
                    _ => self.right_slope,
                };
                self.lambda_dot_near(rho, off, slope)
            };
            total += integrate_sqrt_endpoints(
                f,
                w[0],
                w[1],
                ls,
                rs,
                LAMBDA_REL_TOL,
                LAMBDA_ABS_TOL,
            )?;
        }
        Ok(total)
    }

    /// `λ(ρ) = ∫_{ρ₋}^ρ λ̇`.
    pub fn lambda(&self, rho: f64) -> Result<f64> {
        self.check(rho)?;
        self.integrate_lambda_dot(self.domain.rho_minus, rho)
    }

    /// `λ(ρ₊)`; `None` for unbounded profiles.
    pub fn lambda_plus(&self) -> Result<Option<f64>> {
        self.domain.rho_plus.map(|rp| self.lambda(rp)).transpose()
    }

    pub fn first_integral_residual(&self, rho: f64, mode: ResidualMode) -> Result<f64> {
        self.check(rho)?;
        let ld = match mode {
            ResidualMode::Analytic => self.lambda_dot_raw(rho),
            ResidualMode::FiniteDifference { step } => self.lambda_dot_fd(rho, step)?,
        };
        Ok(self.residual_for(rho, ld))
    }

    fn residual_for(&self, rho: f64, lambda_dot: f64) -> f64 {
        let p = &self.params;
        let lhs = p.lhs_weight(rho) * unit_slope(lambda_dot).powi(p.r as i32);
        let rhs = self.nh() * self.table.eval(rho) + p.d;
        (lhs - rhs).abs()
    }

    /// Central difference `(λ(ρ+h) - λ(ρ-h)) / 2h`, with the difference of
    /// the two quadratures taken as one integral over `[ρ-h, ρ+h]`.
    pub fn lambda_dot_fd(&self, rho: f64, step: f64) -> Result<f64> {
        self.check(rho)?;
        if !(step > 0.0) {
            return Err(Error::InvalidInput(format!("step must be positive, got {step}")));
        }
        let a = rho - step;
        let b = rho + step;
        self.check(a)?;
        self.check(b)?;
        Ok(self.integrate_lambda_dot(a, b)? / (2.0 * step))
    }

    /// Sample points in `[ρ₋, end]`, clustered quadratically towards
    /// vertical-tangent ends.
    pub fn sample_points(&self, samples: usize, end: f64) -> Vec<f64> {
        let a = self.domain.rho_minus;
        let w = end - a;
        let right_v = self.domain.right_vertical() && Some(end) == self.domain.rho_plus;
        let left_v = self.domain.left_vertical();
        if samples == 1 {
            return vec![a];
        }
        (0..samples)
            .map(|i| {
                let s = i as f64 / (samples - 1) as f64;
                let t = match (left_v, right_v) {
                    (true, true) => 0.5 * (1.0 - (std::f64::consts::PI * s).cos()),
                    (true, false) => s * s,
                    (false, true) => 1.0 - (1.0 - s) * (1.0 - s),
                    (false, false) => s,
                };
                if i + 1 == samples {
                    end
                } else {
                    a + w * t
                }
            })
            .collect()
    }

    /// Samples `[ρ₋, extent]` with `λ` accumulated segment by segment.
    pub fn sample(&self, samples: usize) -> Result<Vec<ProfileSample>> {
        self.sample_until(samples, self.extent)
    }

    pub fn sample_until(&self, samples: usize, end: f64) -> Result<Vec<ProfileSample>> {
        if samples < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 samples, got {samples}")));
        }
        self.check(end)?;
        self.sample_at(&self.sample_points(samples, end))
    }

    /// Samples at increasing points starting anywhere in the domain, with
    /// `λ` accumulated from `ρ₋`.
    pub fn sample_at(&self, points: &[f64]) -> Result<Vec<ProfileSample>> {
        let mut out = Vec::with_capacity(points.len());
        let mut prev = self.domain.rho_minus;
        let mut lambda = 0.0;
        for &rho in points {
            self.check(rho)?;
            if rho < prev {
                return Err(Error::InvalidInput(format!(
                    "sample points must increase: {rho} after {prev}"
                )));
            }
            lambda += self.integrate_lambda_dot(prev, rho)?;
            prev = rho;
            out.push(self.raw_sample(rho, lambda));
        }
        Ok(out)
    }

    /// Sample with the raw formulas: infinite or NaN entries mark the
    /// singular points instead of raising.
    fn raw_sample(&self, rho: f64, lambda: f64) -> ProfileSample {
        let s = self.sigma(rho);
        let w = (1.0 - s) * (1.0 + s);
        let lambda_dot = s / w.sqrt();
        let sp = self.sigma_prime(rho);
        let (k_tan, k_n) = match self.principal_curvatures(rho) {
            Ok(k) => k,
            Err(_) => (s / rho.tanh(), sp),
        };
        ProfileSample {
            rho,
            lambda,
            lambda_dot,
            lambda_ddot: sp / w.powf(1.5),
            k_tan,
            k_n,
            residual: self.residual_for(rho, lambda_dot),
        }
    }
}

pub fn lambda_dot(params: &ProfileParams, rho: f64) -> Result<f64> {
    Profile::new(*params)?.lambda_dot(rho)
}

pub fn lambda_ddot(params: &ProfileParams, rho: f64) -> Result<f64> {
    Profile::new(*params)?.lambda_ddot(rho)
}

pub fn lambda_eval(params: &ProfileParams, rho: f64) -> Result<f64> {
    profile_for(params, rho)?.lambda(rho)
}

pub fn principal_curvatures(params: &ProfileParams, rho: f64) -> Result<(f64, f64)> {
    Profile::new(*params)?.principal_curvatures(rho)
}

pub fn first_integral_residual(params: &ProfileParams, rho: f64, mode: ResidualMode) -> Result<f64> {
    profile_for(params, rho)?.first_integral_residual(rho, mode)
}

pub fn sample_profile(params: &ProfileParams, samples: usize) -> Result<Vec<ProfileSample>> {
    Profile::new(*params)?.sample(samples)
}

fn profile_for(params: &ProfileParams, rho: f64) -> Result<Profile> {
    let p = Profile::new(*params)?;
    if p.domain.rho_plus.is_none() && rho.is_finite() && rho > p.extent {
        return Profile::with_extent(*params, rho + 1.0);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature_algebra::{mean_curvature_r, CurvatureVector};
    use crate::quadrature::integrate;

    /// `∫_a^b λ̇` by plain adaptive quadrature, no endpoint transform.
    fn lambda_plain(profile: &Profile, a: f64, b: f64) -> Result<f64> {
        integrate(|x| profile.lambda_dot_raw(x), a, b, 1e-12, 0.0)
    }

    fn profile(n: u32, r: u32, h: f64, d: f64) -> Profile {
        Profile::new(ProfileParams::new(n, r, h, d).unwrap()).unwrap()
    }

    fn recomputed_h(p: &Profile, rho: f64, ld: f64) -> f64 {
        let n = p.params.n as usize;
        let ldd = p.lambda_ddot(rho).unwrap();
        let kt = unit_slope(ld) / rho.tanh();
        let kn = ldd / (1.0 + ld * ld).powf(1.5);
        let k = CurvatureVector::profile(n, kt, kn).unwrap();
        mean_curvature_r(&k, p.params.r as usize).unwrap()
    }

    #[test]
    fn table_matches_adaptive_quadrature() {
        let t = ITable::new(4, 2, 3.0);
        for rho in [0.0, 1e-3, 0.3, 1.0, 2.71, 3.0] {
            let q = i_quad(4, 2, rho).unwrap();
            assert!((t.eval(rho) - q).abs() <= 1e-14 * (1.0 + q), "{rho}");
        }
    }

    #[test]
    fn lambda_vanishes_at_left_end() {
        let p = profile(3, 2, 0.9, 0.05);
        assert_eq!(p.lambda(p.domain.rho_minus).unwrap(), 0.0);
    }

    #[test]
    fn n2_r1_sphere_height() {
        // H = 1 in H^2 × R: the profile is a graph of half a sphere;
        // compare the transformed quadrature with a plain one stopped short.
        let p = profile(2, 1, 1.0, 0.0);
        let rp = p.domain.rho_plus.unwrap();
        let full = p.lambda(rp).unwrap();
        assert!(full > 0.0);
        let cut = rp - 1e-6;
        let plain = lambda_plain(&p, 0.0, cut).unwrap();
        let near = p.lambda(cut).unwrap();
        assert!((plain - near).abs() < 1e-9, "{plain} {near}");
        // tail ∫_{ρ₊-δ}^{ρ₊} ≈ sqrt(2δ/σ'(ρ₊))
        let tail = (2.0 * 1e-6 / p.right_slope.unwrap()).sqrt();
        assert!((full - near - tail).abs() < 1e-8);
    }

    #[test]
    fn lambda_dot_at_origin_n_equals_r() {
        let p = profile(2, 2, 1.0, 0.25);
        let v = p.lambda_dot(0.0).unwrap();
        assert!((v - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lambda_ddot_at_small_rho() {
        for (n, r) in [(3, 1), (3, 2), (3, 3)] {
            let p = profile(n, r, 1.0, 0.0);
            let v = p.lambda_ddot(1e-3).unwrap();
            assert!((v - 1.0).abs() < 1e-3, "{n},{r}: {v}");
        }
        let p = profile(4, 2, 2.0, 0.0);
        assert!((p.lambda_ddot(1e-3).unwrap() - 2f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn odd_negative_d_sign_pattern() {
        let p = profile(3, 1, 1.0, -0.1);
        let r0 = p.domain.rho_zero.unwrap();
        assert!(p.lambda_dot(r0).unwrap().abs() < 1e-10);
        let l0 = p.lambda(r0).unwrap();
        assert!(l0 < 0.0);
        let mid = 0.5 * (p.domain.rho_minus + r0);
        assert!(p.lambda(mid).unwrap() < 0.0);
        assert!(p.lambda_dot(0.5 * (r0 + p.domain.rho_plus.unwrap())).unwrap() > 0.0);
        assert!(profile(4, 3, 0.5, -0.1).lambda_ddot(profile(4, 3, 0.5, -0.1).domain.rho_zero.unwrap()).is_err());
    }

    #[test]
    fn curvature_oracle_and_residuals() {
        for (n, r, h, d) in [
            (3, 2, 0.9, 0.05),
            (3, 2, 0.9, -0.05),
            (4, 3, 0.5, -0.1),
            (3, 1, 0.5, 0.1),
            (3, 3, 1.0, -0.5),
            (2, 2, 1.0, 0.5),
        ] {
            let p = profile(n, r, h, d);
            let a = p.domain.rho_minus;
            let b = p.extent;
            for k in 0..20 {
                let rho = a + (b - a) * (k as f64 + 0.5) / 20.0;
                let ld = p.lambda_dot(rho).unwrap();
                let res = p.first_integral_residual(rho, ResidualMode::Analytic).unwrap();
                assert!(res <= 1e-10, "{n},{r},{h},{d} at {rho}: {res}");
                let hr = recomputed_h(&p, rho, ld);
                assert!((hr - h).abs() <= 1e-8, "{n},{r},{h},{d} at {rho}: {hr}");
            }
        }
    }

    #[test]
    fn finite_difference_residual() {
        let p = profile(3, 2, 1.0, 0.0);
        let res = p.first_integral_residual(0.5, ResidualMode::FiniteDifference { step: 1e-4 }).unwrap();
        assert!(res <= 1e-6, "{res}");
    }

    #[test]
    fn limits_at_rho_plus() {
        for (n, r) in [(3, 1), (3, 2), (3, 3), (5, 3)] {
            let p = profile(n, r, 1.0, 0.0);
            let rp = p.domain.rho_plus.unwrap();
            let (kt, kn) = p.principal_curvatures(rp).unwrap();
            assert!((kt - 1.0 / rp.tanh()).abs() < 1e-12);
            // curvature oracle at the end point itself
            let k = CurvatureVector::profile(n as usize, kt, kn).unwrap();
            assert!((mean_curvature_r(&k, r as usize).unwrap() - 1.0).abs() < 1e-10);
            // and continuity from the interior
            let (_, kn_in) = p.principal_curvatures(rp - 1e-7).unwrap();
            assert!((kn - kn_in).abs() < 1e-5);
        }
    }

    #[test]
    fn singular_points_are_reported() {
        let p = profile(3, 2, 0.9, -0.05);
        assert!(matches!(
            p.principal_curvatures(p.domain.rho_minus),
            Err(Error::Singular { .. })
        ));
        let p = profile(3, 3, 1.0, 0.5);
        assert!(matches!(p.principal_curvatures(0.0), Err(Error::Singular { .. })));
        let p = profile(3, 2, 0.9, 0.0);
        assert!(p.lambda(p.domain.rho_plus.unwrap() + 0.1).is_err());
        assert!(p.lambda_dot(-0.1).is_err());
    }

    #[test]
    fn samples_are_cumulative() {
        let p = profile(3, 2, 0.9, 0.05);
        let s = p.sample(40).unwrap();
        assert_eq!(s.len(), 40);
        assert_eq!(s[0].rho, p.domain.rho_minus);
        assert_eq!(s[39].rho, p.domain.rho_plus.unwrap());
        let direct = p.lambda(s[25].rho).unwrap();
        assert!((s[25].lambda - direct).abs() < 1e-10, "{} {}", s[25].lambda, direct);
        assert!(s[0].lambda_dot > 1e4 && s[39].lambda_dot > 1e4);
    }
}
