//! Rotational profiles `λ_{H,d}` in `H^n × R`.
//!
//! A rotation hypersurface with constant `H_r = H` is generated by the
//! graph `t = λ(ρ)` over the radial distance `ρ`, subject to the first
//! integral
//!
//! ```text
//! sinh^{n-r}(ρ) · (λ̇ / sqrt(1 + λ̇²))^r = nH · I_{n,r}(ρ) + d.
//! ```
//!
//! Everything here is phrased through `σ = λ̇ / sqrt(1 + λ̇²)`, the sine of
//! the slope angle: `σ` is the signed `r`-th root of
//! `g = (nH·I + d) / sinh^{n-r}`, the tangential curvature is `coth(ρ)·σ`
//! and the normal one is `σ'`.

mod classify;
mod eval;

pub use classify::{
    classify, ClassificationRecord, Combination, Multiplicity, Regularity, Shape, SingularPart,
    TableRow, Topology,
};
pub use eval::{
    first_integral_residual, lambda_ddot, lambda_dot, lambda_eval, principal_curvatures,
    sample_profile, Profile, ProfileSample, ResidualMode,
};

use serde::{Deserialize, Serialize};

use num_traits::ToPrimitive;

use crate::curvature_algebra::double_factorial_ratio;
use crate::error::{ensure_finite, Error, Result};
use crate::roots::{bisect, bracket_right, ROOT_TOL};
use crate::special_integrals::{check_orders, i_closed_excess, i_quad};

/// Width of the band around `(n - r)/n` inside which the regime is taken
/// from the caller instead of from the comparison.
pub const REGIME_BAND: f64 = 1e-12;

/// Values of `d` closer than this to a `τ`-cap are rejected.
pub const NEAR_CAP: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileParams {
    pub n: u32,
    pub r: u32,
    #[serde(rename = "H")]
    pub h: f64,
    pub d: f64,
    /// Consulted only when `H` is within [`REGIME_BAND`] of critical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime_hint: Option<Regime>,
}

impl ProfileParams {
    /// Checks orders and `H > 0`; the cap on `d` is checked by
    /// [`ProfileParams::check_admissible`].
    pub fn new(n: u32, r: u32, h: f64, d: f64) -> Result<Self> {
        check_orders(n, r)?;
        ensure_finite("H", h)?;
        ensure_finite("d", d)?;
        if h <= 0.0 {
            return Err(Error::Inadmissible(format!("H must be positive, got {h}")));
        }
        Ok(Self { n, r, h, d, regime_hint: None })
    }

    pub fn with_regime(mut self, regime: Regime) -> Self {
        self.regime_hint = Some(regime);
        self
    }

    pub fn regime(&self) -> Regime {
        regime_of(self.n, self.r, self.h, self.regime_hint)
    }

    pub fn check_admissible(&self) -> Result<DrRange> {
        let range = admissible_dr_range_with(self.n, self.r, self.h, self.regime_hint)?;
        range.check(self.d)?;
        Ok(range)
    }

    /// `nH · I_{n,r}(ρ) + d`, by adaptive quadrature.
    pub fn rhs(&self, rho: f64) -> Result<f64> {
        Ok(self.n as f64 * self.h * i_quad(self.n, self.r, rho)? + self.d)
    }

    /// `sinh^{n-r}(ρ)`, identically 1 when `n = r`.
    pub fn lhs_weight(&self, rho: f64) -> f64 {
        rho.sinh().powi((self.n - self.r) as i32)
    }
}

/// `(n - r)/n`.
pub fn critical_curvature(n: u32, r: u32) -> f64 {
    (n - r.min(n)) as f64 / n as f64
}

pub(crate) fn regime_of(n: u32, r: u32, h: f64, hint: Option<Regime>) -> Regime {
    if n == r {
        return Regime::Supercritical;
    }
    let c = critical_curvature(n, r);
    if (h - c).abs() <= REGIME_BAND {
        hint.unwrap_or(Regime::Critical)
    } else if h < c {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    }
}

/// Where the upper bound on `d` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CapSource {
    /// Subcritical, or critical with `n > r + 1`: every real `d` works.
    Unbounded,
    /// Critical with `n = r + 1`: the limit of `sinh - I_{r+1,r}` at infinity.
    CriticalLimit,
    /// Supercritical: the maximum of `sinh^{n-r} - nH·I` at `tanh^r τ = (n-r)/(nH)`.
    Tau { tau: f64 },
    /// `n = r`: `d < 1`.
    UnitBound,
}

/// Admissible `d`: the open ray `(-∞, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrRange {
    /// `+∞` when there is no cap.
    pub upper: f64,
    pub source: CapSource,
}

impl DrRange {
    pub fn contains(&self, d: f64) -> bool {
        self.check(d).is_ok()
    }

    pub fn check(&self, d: f64) -> Result<()> {
        if d >= self.upper {
            return Err(Error::Inadmissible(format!(
                "d = {d} is not below the cap {}{}",
                self.upper,
                match self.source {
                    CapSource::Tau { tau } => format!(" attained at tau = {tau}"),
                    _ => String::new(),
                }
            )));
        }
        if let CapSource::Tau { .. } = self.source {
            if d > self.upper - NEAR_CAP {
                return Err(Error::Inadmissible(format!(
                    "d = {d} is within {NEAR_CAP:e} of the cap {}",
                    self.upper
                )));
            }
        }
        Ok(())
    }
}

/// The maximal admissible interval of `d` for `(n, r, H)`.
pub fn admissible_dr_range(n: u32, r: u32, h: f64) -> Result<DrRange> {
    admissible_dr_range_with(n, r, h, None)
}

pub fn admissible_dr_range_with(n: u32, r: u32, h: f64, hint: Option<Regime>) -> Result<DrRange> {
    let p = ProfileParams::new(n, r, h, 0.0)?;
    if n == r {
        return Ok(DrRange { upper: 1.0, source: CapSource::UnitBound });
    }
    match regime_of(n, r, h, hint) {
        Regime::Subcritical => Ok(DrRange { upper: f64::INFINITY, source: CapSource::Unbounded }),
        Regime::Critical if n > r + 1 => {
            Ok(DrRange { upper: f64::INFINITY, source: CapSource::Unbounded })
        }
        Regime::Critical => Ok(DrRange { upper: critical_cap(r), source: CapSource::CriticalLimit }),
        Regime::Supercritical => {
            let tau = tau_point(n, r, h);
            let upper = p.lhs_weight(tau) - (n as f64 * h) * i_quad(n, r, tau)?;
            Ok(DrRange { upper, source: CapSource::Tau { tau } })
        }
    }
}

/// `lim (sinh - I_{r+1,r})`: `(r-1)!!/(r-2)!!` times `π/2` for `r` even,
/// times 1 for `r` odd, and 1 for `r = 1`.
pub fn critical_cap(r: u32) -> f64 {
    if r == 1 {
        return 1.0;
    }
    let ratio = double_factorial_ratio(r).to_f64().unwrap_or(f64::NAN);
    if r.is_multiple_of(2) {
        ratio * std::f64::consts::FRAC_PI_2
    } else {
        ratio
    }
}

/// The maximiser of `sinh^{n-r} - nH·I` in the supercritical case:
/// `tanh^r τ = (n-r)/(nH)`.
pub fn tau_point(n: u32, r: u32, h: f64) -> f64 {
    let x = (n - r) as f64 / (n as f64 * h);
    x.powf(1.0 / r as f64).min(1.0).atanh()
}

/// Behaviour of the profile at an end of its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointFlag {
    HorizontalTangent,
    VerticalTangent,
    /// `λ̇ = 0` with `k_n → ∞`: cusps after reflection.
    Cusp,
    /// The profile meets the axis with nonzero slope.
    Cone,
    /// Smooth crossing of the axis (`d = 0`).
    RegularOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileDomain {
    pub rho_minus: f64,
    /// `None` for profiles defined on `[ρ₋, ∞)`.
    pub rho_plus: Option<f64>,
    pub rho_zero: Option<f64>,
    pub left: EndpointFlag,
    pub right: Option<EndpointFlag>,
}

impl ProfileDomain {
    pub fn contains(&self, rho: f64) -> bool {
        rho >= self.rho_minus && self.rho_plus.map_or(rho.is_finite(), |p| rho <= p)
    }

    pub fn left_vertical(&self) -> bool {
        self.left == EndpointFlag::VerticalTangent
    }

    pub fn right_vertical(&self) -> bool {
        self.right == Some(EndpointFlag::VerticalTangent)
    }
}

/// Largest `ρ` at which `sinh^{n-1}` stays comfortably finite.
fn rho_ceiling(n: u32) -> f64 {
    (600.0 / (n.max(2) - 1) as f64).min(300.0)
}

/// Root of `f` to the right of `lo`, where `f(lo)` has the opposite sign
/// of `want_positive`.
fn root_right<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    ceiling: f64,
    want_positive: bool,
) -> Result<f64> {
    let step = lo.max(0.125);
    let (a, b) = bracket_right(&mut f, lo, step, ceiling, want_positive)?;
    bisect(f, a, b, ROOT_TOL)
}

/// Domain of `λ_{H,d}`, its distinguished points and endpoint behaviour.
pub fn profile_domain(params: &ProfileParams) -> Result<ProfileDomain> {
    params.check_admissible()?;
    if params.n == params.r {
        domain_equal_orders(params)
    } else {
        domain_general(params)
    }
}

fn domain_general(p: &ProfileParams) -> Result<ProfileDomain> {
    let (n, r, d) = (p.n, p.r, p.d);
    let regime = p.regime();
    let ceiling = rho_ceiling(n);
    let odd = r % 2 == 1;
    // f = S - F; for n = r + 1 at critical curvature use the cancellation-free excess.
    let critical_pair = regime == Regime::Critical && n == r + 1;
    let f = |rho: f64| -> Result<f64> {
        if critical_pair {
            Ok(i_closed_excess(r, rho)? - d)
        } else {
            Ok(p.lhs_weight(rho) - p.rhs(rho)?)
        }
    };
    let rhs = |rho: f64| p.rhs(rho);

    let (rho_minus, left, rho_zero) = if d == 0.0 {
        (0.0, EndpointFlag::RegularOrigin, None)
    } else if d > 0.0 {
        // f(0) = -d < 0; first root of f.
        let rm = if regime == Regime::Supercritical {
            bisect(f, 0.0, tau_point(n, r, p.h), ROOT_TOL)?
        } else {
            root_right(f, 0.0, ceiling, true)?
        };
        (rm, EndpointFlag::VerticalTangent, None)
    } else if !odd {
        (root_right(rhs, 0.0, ceiling, true)?, EndpointFlag::Cusp, None)
    } else {
        let rm = root_right(|x| Ok(p.lhs_weight(x) + p.rhs(x)?), 0.0, ceiling, true)?;
        let r0 = root_right(rhs, rm, ceiling, true)?;
        (rm, EndpointFlag::VerticalTangent, Some(r0))
    };

    let rho_plus = if regime == Regime::Supercritical {
        let tau = tau_point(n, r, p.h);
        // f > 0 on (ρ₋, max(τ, ρ₀)] and eventually negative.
        let start = if d > 0.0 { tau } else { tau.max(rho_zero.unwrap_or(rho_minus)) };
        Some(root_right(f, start, ceiling, false)?)
    } else {
        None
    };
    Ok(ProfileDomain {
        rho_minus,
        rho_plus,
        rho_zero,
        left,
        right: rho_plus.map(|_| EndpointFlag::VerticalTangent),
    })
}

fn domain_equal_orders(p: &ProfileParams) -> Result<ProfileDomain> {
    let ceiling = rho_ceiling(p.n);
    let d = p.d;
    let odd = p.r % 2 == 1;
    let level = |c: f64| move |x: f64| Ok(p.rhs(x)? - c);
    let (rho_minus, left) = if d == 0.0 {
        (0.0, EndpointFlag::RegularOrigin)
    } else if odd && d == -1.0 {
        (0.0, EndpointFlag::VerticalTangent)
    } else if d > 0.0 || (odd && d > -1.0) {
        (0.0, EndpointFlag::Cone)
    } else if odd {
        (root_right(level(-1.0), 0.0, ceiling, true)?, EndpointFlag::VerticalTangent)
    } else {
        (root_right(level(0.0), 0.0, ceiling, true)?, EndpointFlag::Cusp)
    };
    let rho_zero = if odd && d < 0.0 {
        Some(root_right(level(0.0), rho_minus, ceiling, true)?)
    } else {
        None
    };
    let start = rho_zero.unwrap_or(rho_minus);
    let rho_plus = root_right(level(1.0), start, ceiling, true)?;
    Ok(ProfileDomain {
        rho_minus,
        rho_plus: Some(rho_plus),
        rho_zero,
        left,
        right: Some(EndpointFlag::VerticalTangent),
    })
}
