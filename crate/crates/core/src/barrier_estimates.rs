//! Radii and heights of the comparison hypersurfaces: the `H`-sphere, the
//! horizontal cylinder pieces, the thin annuli and peaked-sphere pieces
//! near the axis, and the limaçon bound on the inner radius.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::limacon::ell;
use crate::quadrature::{default_rel_tol, integrate};
use crate::rot_profile::{critical_curvature, profile_domain, Profile, ProfileParams, Regime};
use crate::special_integrals::check_orders;
use crate::trans_profile::{trans_domain, TranslationParams};

/// `ε = 2^{-k}` is tried down to this value.
pub const EPSILON_FLOOR: f64 = 1e-12;

const RHO_STAR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierReport {
    #[serde(rename = "R_S")]
    pub r_s: f64,
    /// `None` for `r = 1`, where the cylinder needs no `ε`.
    #[serde(rename = "R_C")]
    pub r_c: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub h_star: f64,
    pub rho_star: f64,
    pub rho_minus: f64,
}

/// `ρ₊` of `λ_{H,0}`.
pub fn sphere_radius(n: u32, r: u32, h: f64) -> Result<f64> {
    let p = ProfileParams::new(n, r, h, 0.0)?;
    profile_domain(&p)?.rho_plus.ok_or_else(|| {
        Error::Inadmissible(format!(
            "no compact sphere for H = {h} <= (n-r)/n = {}",
            critical_curvature(n, r)
        ))
    })
}

fn check_barrier_range(n: u32, r: u32, h: f64) -> Result<()> {
    check_orders(n, r)?;
    if r < 2 {
        return Err(Error::Inadmissible("the epsilon search needs r >= 2".into()));
    }
    ensure_finite("H", h)?;
    if h <= critical_curvature(n, r) {
        return Err(Error::Inadmissible(format!(
            "H = {h} must exceed (n-r)/n = {}",
            critical_curvature(n, r)
        )));
    }
    Ok(())
}

/// The largest `ε = 2^{-k}`, `k >= 0`, with `R_C = ρ₊^ε - ε < R_S`.
/// Returns `(ε, R_C)`.
pub fn find_epsilon(n: u32, r: u32, h: f64) -> Result<(f64, f64)> {
    check_barrier_range(n, r, h)?;
    let r_s = sphere_radius(n, r, h)?;
    let mut eps = 1.0f64;
    while eps >= EPSILON_FLOOR {
        let rp = trans_domain(&TranslationParams::new(n, r, h, eps)?)?;
        let r_c = rp - eps;
        if r_c < r_s {
            return Ok((eps, r_c));
        }
        eps *= 0.5;
    }
    Err(Error::Numeric(format!(
        "no epsilon >= {EPSILON_FLOOR} gives a cylinder narrower than R_S = {r_s}"
    )))
}

/// `δ = R_S - R_C` at the `ε` of [`find_epsilon`].
pub fn delta_bound(n: u32, r: u32, h: f64) -> Result<f64> {
    let (_, r_c) = find_epsilon(n, r, h)?;
    Ok(sphere_radius(n, r, h)? - r_c)
}

/// Curvature at which the annulus pieces are taken: `(n-r)/n` for
/// `n > r`; for `n = r` the caller's `H`.
fn annulus_params(n: u32, r: u32, h: f64, d: f64) -> Result<ProfileParams> {
    if n > r {
        Ok(ProfileParams::new(n, r, critical_curvature(n, r), d)?.with_regime(Regime::Critical))
    } else {
        ProfileParams::new(n, r, h, d)
    }
}

fn check_small_d(n: u32, r: u32, d: f64) -> Result<()> {
    check_orders(n, r)?;
    ensure_finite("d", d)?;
    if d <= 0.0 {
        return Err(Error::Inadmissible(format!("h* needs d > 0, got {d}")));
    }
    Ok(())
}

/// `ρ₋`: the zero of the critical annulus for `n > r`, and `d^{2/n}` for `n = r`.
pub fn annulus_rho_minus(n: u32, r: u32, d: f64) -> Result<f64> {
    check_small_d(n, r, d)?;
    if n == r {
        if d >= 1.0 {
            return Err(Error::Inadmissible(format!("n = r needs d < 1, got {d}")));
        }
        return Ok(d.powf(2.0 / n as f64));
    }
    let p = annulus_params(n, r, 1.0, d)?;
    p.check_admissible()?;
    Ok(profile_domain(&p)?.rho_minus)
}

/// `h*`: for `n > r` the integral of `(((n-r) I + d) / sinh^{n-r})^{1/r}`
/// over `[ρ₋, 2ρ₋]`; for `n = r` exactly `d^{3/n}`.
pub fn h_star(n: u32, r: u32, d: f64) -> Result<f64> {
    let rm = annulus_rho_minus(n, r, d)?;
    if n == r {
        return Ok(d.powf(3.0 / n as f64));
    }
    let prof = Profile::with_extent(annulus_params(n, r, 1.0, d)?, 2.0 * rm)?;
    integrate(|x| prof.sigma(x), rm, 2.0 * rm, default_rel_tol().max(1e-13), 0.0)
}

/// `ρ*`: where the `d = 0` profile at curvature `H` reaches height `h*`.
///
/// For `n > r` and `H = (n-r)/n` the profile is an entire graph and the
/// bracket grows until it passes `h*`; otherwise it is `[0, R_S]`.
pub fn rho_star(n: u32, r: u32, h: f64, h_star: f64) -> Result<f64> {
    ensure_finite("h_star", h_star)?;
    if h_star < 0.0 {
        return Err(Error::InvalidInput(format!("h* must be non-negative, got {h_star}")));
    }
    if h_star == 0.0 {
        return Ok(0.0);
    }
    let mut params = ProfileParams::new(n, r, h, 0.0)?;
    if n > r && (h - critical_curvature(n, r)).abs() <= crate::rot_profile::REGIME_BAND {
        params = params.with_regime(Regime::Critical);
    }
    params.check_admissible()?;
    let dom = profile_domain(&params)?;
    let (prof, hi) = match dom.rho_plus {
        Some(rp) => {
            let prof = Profile::new(params)?;
            let top = prof.lambda(rp)?;
            if h_star >= top {
                return Err(Error::Inadmissible(format!(
                    "h* = {h_star} is not below the sphere half-height {top}"
                )));
            }
            (prof, rp)
        }
        None => {
            let mut x = 1.0;
            loop {
                let prof = Profile::with_extent(params, x)?;
                if prof.lambda(x)? > h_star {
                    break (prof, x);
                }
                x *= 2.0;
                if x > 64.0 {
                    return Err(Error::Numeric(format!("could not bracket h* = {h_star}")));
                }
            }
        }
    };
    let tol = RHO_STAR_TOL * h_star.min(1.0);
    let (mut lo, mut hi) = (0.0, hi);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let v = prof.lambda(mid)? - h_star;
        if v.abs() <= tol {
            return Ok(mid);
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Lower bound `ℓ(r_ext, r_ext - r_int)` on the inner radius; equals
/// `r_ext` when the two radii coincide.
pub fn r_min_bound(r_ext: f64, r_int: f64) -> Result<f64> {
    ensure_finite("r_ext", r_ext)?;
    ensure_finite("r_int", r_int)?;
    if !(r_int > 0.0 && r_int <= r_ext) {
        return Err(Error::Inadmissible(format!(
            "need 0 < r_int <= r_ext, got r_int = {r_int}, r_ext = {r_ext}"
        )));
    }
    ell(r_ext, r_ext - r_int)
}

/// All estimates at `(n, r, H)` and annulus parameter `d`. For `n > r`
/// the annulus and `ρ*` use `H = (n-r)/n`, for `n = r` the given `H`.
pub fn barrier_report(n: u32, r: u32, h: f64, d: f64) -> Result<BarrierReport> {
    let r_s = sphere_radius(n, r, h)?;
    let (epsilon, r_c, delta) = if r >= 2 {
        let (e, rc) = find_epsilon(n, r, h)?;
        (Some(e), Some(rc), Some(r_s - rc))
    } else {
        (None, None, None)
    };
    let hs = h_star(n, r, d)?;
    let h_sphere = if n > r { critical_curvature(n, r) } else { h };
    Ok(BarrierReport {
        r_s,
        r_c,
        epsilon,
        delta,
        h_star: hs,
        rho_star: rho_star(n, r, h_sphere, hs)?,
        rho_minus: annulus_rho_minus(n, r, d)?,
    })
}
