//! Translation profiles `μ_{H,ε}` with zero integration constant.
//!
//! With `G = nH·J_{n,r,ε} / cosh^{n-r}` and `σ = G^{1/r}`, the first
//! integral reads `σ = μ̇ / sqrt(1 + μ̇²)`. The graph lives on `[ε, ρ₊^ε]`,
//! starts horizontal and ends vertical.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{integrate_sqrt_endpoints, kronrod21_fixed};
use crate::roots::{bisect, bracket_right, ROOT_TOL};
use crate::rot_profile::critical_curvature;
use crate::special_integrals::{check_orders, j_integrand, j_quad};

const MU_REL_TOL: f64 = 1e-10;
const MU_ABS_TOL: f64 = 1e-15;
const TABLE_STEP: f64 = 1.0 / 32.0;
const ROOT_CEILING: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TranslationParams {
    pub n: u32,
    pub r: u32,
    #[serde(rename = "H")]
    pub h: f64,
    /// Lower end of the graph. Ignored for `r = 1`, where it is 0.
    #[serde(default)]
    pub epsilon: f64,
}

impl TranslationParams {
    pub fn new(n: u32, r: u32, h: f64, epsilon: f64) -> Result<Self> {
        check_orders(n, r)?;
        ensure_finite("H", h)?;
        ensure_finite("epsilon", epsilon)?;
        let crit = critical_curvature(n, r);
        if h <= crit {
            return Err(Error::Inadmissible(format!(
                "translation profiles need H > (n-r)/n = {crit}, got {h}"
            )));
        }
        if epsilon < 0.0 || (r > 1 && epsilon == 0.0) {
            return Err(Error::Inadmissible(format!(
                "epsilon must be positive for r > 1 (non-negative for r = 1), got {epsilon}"
            )));
        }
        Ok(Self { n, r, h, epsilon })
    }

    /// The lower limit actually used: `ε`, or 0 when `r = 1`.
    pub fn lower(&self) -> f64 {
        if self.r == 1 {
            0.0
        } else {
            self.epsilon
        }
    }

    fn nh(&self) -> f64 {
        self.n as f64 * self.h
    }

    /// `f_ε(ρ) = cosh^{n-r}(ρ) - nH·J(ρ)`, by adaptive quadrature.
    pub fn f_eps(&self, rho: f64) -> Result<f64> {
        let j = j_quad(self.n, self.r, self.lower(), rho)?;
        Ok(rho.cosh().powi((self.n - self.r) as i32) - self.nh() * j)
    }
}

/// `ρ₊^ε`, the unique zero of `f_ε` to the right of the lower limit.
pub fn trans_domain(params: &TranslationParams) -> Result<f64> {
    let lo = params.lower();
    let step = if lo > 0.0 { 0.25 * lo } else { TABLE_STEP };
    let f = |rho: f64| params.f_eps(rho);
    let (a, b) = bracket_right(f, lo, step, ROOT_CEILING, false)?;
    // The root may sit within a few ulps of a tiny ε; scale the tolerance.
    bisect(f, a, b, ROOT_TOL * b.clamp(f64::MIN_POSITIVE, 1.0))
}

/// `J` on a knot grid: uniform in `ln τ` below 1 when `r > 1` (the
/// integrand grows like `τ^{1-r}` at 0), uniform in `τ` above.
#[derive(Debug, Clone)]
struct JTable {
    n: u32,
    r: u32,
    lower: f64,
    /// Upper end of the logarithmic part; equals `lower` when absent.
    knee: f64,
    log_knots: Vec<f64>,
    lin_knots: Vec<f64>,
}

impl JTable {
    fn new(n: u32, r: u32, lower: f64, end: f64) -> Self {
        let knee = if r > 1 { end.min(1.0).max(lower) } else { lower };
        let mut log_knots = vec![0.0];
        if knee > lower {
            let s0 = lower.ln();
            let count = ((knee.ln() - s0) / TABLE_STEP).ceil() as usize;
            for k in 0..count {
                let a = s0 + k as f64 * TABLE_STEP;
                let b = (a + TABLE_STEP).min(knee.ln());
                let v = kronrod21_fixed(|s| log_integrand(n, r, s), a, b);
                log_knots.push(log_knots[k] + v);
            }
        }
        let base = *log_knots.last().unwrap_or(&0.0);
        let mut lin_knots = vec![base];
        let count = ((end - knee) / TABLE_STEP).ceil().max(0.0) as usize + 1;
        for k in 0..count {
            let a = knee + k as f64 * TABLE_STEP;
            let v = kronrod21_fixed(|t| j_integrand(n, r, t), a, a + TABLE_STEP);
            lin_knots.push(lin_knots[k] + v);
        }
        Self { n, r, lower, knee, log_knots, lin_knots }
    }

    fn eval(&self, rho: f64) -> f64 {
        if rho <= self.lower {
            return 0.0;
        }
        if rho < self.knee {
            let s0 = self.lower.ln();
            let s = rho.ln();
            let k = (((s - s0) / TABLE_STEP).floor() as usize).min(self.log_knots.len() - 1);
            let a = s0 + k as f64 * TABLE_STEP;
            return self.log_knots[k] + kronrod21_fixed(|s| log_integrand(self.n, self.r, s), a, s);
        }
        let k = ((rho - self.knee) / TABLE_STEP).floor() as usize;
        if k + 1 >= self.lin_knots.len() {
            return j_quad(self.n, self.r, self.lower, rho).unwrap_or(f64::NAN);
        }
        let a = self.knee + k as f64 * TABLE_STEP;
        self.lin_knots[k] + kronrod21_fixed(|t| j_integrand(self.n, self.r, t), a, rho)
    }
}

fn log_integrand(n: u32, r: u32, s: f64) -> f64 {
    let tau = s.exp();
    tau * j_integrand(n, r, tau)
}

/// One evaluated point of a translation profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TranslationSample {
    #[serde(with = "crate::float_serde")]
    pub rho: f64,
    #[serde(with = "crate::float_serde")]
    pub mu: f64,
    #[serde(with = "crate::float_serde")]
    pub mu_dot: f64,
    #[serde(with = "crate::float_serde")]
    pub mu_ddot: f64,
    #[serde(with = "crate::float_serde")]
    pub k_tan: f64,
    #[serde(with = "crate::float_serde")]
    pub k_n: f64,
}

/// A translation profile with `ρ₊^ε` resolved and `J` tabulated.
#[derive(Debug, Clone)]
pub struct TranslationProfile {
    params: TranslationParams,
    rho_plus: f64,
    table: JTable,
    /// `σ'(ρ₊^ε)`.
    end_slope: f64,
}

impl TranslationProfile {
    pub fn new(params: TranslationParams) -> Result<Self> {
        let rho_plus = trans_domain(&params)?;
        let table = JTable::new(params.n, params.r, params.lower(), rho_plus + TABLE_STEP);
        let mut p = Self { params, rho_plus, table, end_slope: 0.0 };
        p.end_slope = p.sigma_prime(rho_plus);
        Ok(p)
    }

    pub fn params(&self) -> &TranslationParams {
        &self.params
    }

    pub fn rho_plus(&self) -> f64 {
        self.rho_plus
    }

    /// `R_C = ρ₊^ε - ε`.
    pub fn cylinder_radius(&self) -> f64 {
        self.rho_plus - self.params.lower()
    }

    fn check(&self, rho: f64) -> Result<()> {
        ensure_finite("rho", rho)?;
        let lo = self.params.lower();
        if rho < lo || rho > self.rho_plus {
            return Err(Error::OutOfDomain { what: "rho", value: rho, lo, hi: self.rho_plus });
        }
        Ok(())
    }

    fn weight(&self, rho: f64) -> f64 {
        rho.cosh().powi((self.params.n - self.params.r) as i32)
    }

    /// `G = nH·J / cosh^{n-r}`, pinned to 1 at `ρ₊^ε` and clamped to `[0, 1]`.
    pub fn g(&self, rho: f64) -> f64 {
        if rho >= self.rho_plus {
            return 1.0;
        }
        (self.params.nh() * self.table.eval(rho) / self.weight(rho)).clamp(0.0, 1.0)
    }

    pub fn sigma(&self, rho: f64) -> f64 {
        let g = self.g(rho);
        match self.params.r {
            1 => g,
            2 => g.sqrt(),
            r => g.powf(1.0 / r as f64),
        }
    }

    /// `σ' = G' / (r σ^{r-1})` with `G' = nH coth^{r-1} - (n-r) tanh·G`.
    pub fn sigma_prime(&self, rho: f64) -> f64 {
        let p = &self.params;
        let g = self.g(rho);
        let mut gp = p.nh() / rho.tanh().powi(p.r as i32 - 1);
        if p.n > p.r {
            gp -= (p.n - p.r) as f64 * rho.tanh() * g;
        }
        if p.r == 1 {
            return gp;
        }
        let s = self.sigma(rho);
        if s == 0.0 {
            return f64::INFINITY;
        }
        gp / (p.r as f64 * s.powi(p.r as i32 - 1))
    }

    fn mu_dot_near(&self, rho: f64, offset: f64) -> f64 {
        let s = self.sigma(rho);
        let w = (1.0 - s) * (1.0 + s);
        if w < 1e-9 && offset.is_finite() && rho > 0.5 * (self.params.lower() + self.rho_plus) {
            return 1.0 / (2.0 * self.end_slope * offset).sqrt();
        }
        s / w.sqrt()
    }

    /// `μ̇ = σ / sqrt(1 - σ²)`; `+∞` at `ρ₊^ε`.
    pub fn mu_dot(&self, rho: f64) -> Result<f64> {
        self.check(rho)?;
        if rho == self.rho_plus {
            return Ok(f64::INFINITY);
        }
        let s = self.sigma(rho);
        Ok(s / ((1.0 - s) * (1.0 + s)).sqrt())
    }

    /// `μ̈ = σ' / (1 - σ²)^{3/2}`; `+∞` at `ρ₊^ε`, and at `ε` when `r > 1`.
    pub fn mu_ddot(&self, rho: f64) -> Result<f64> {
        self.check(rho)?;
        if rho == self.rho_plus {
            return Ok(f64::INFINITY);
        }
        let s = self.sigma(rho);
        Ok(self.sigma_prime(rho) / ((1.0 - s) * (1.0 + s)).powf(1.5))
    }

    /// `∫_a^b μ̇` for `a, b` in the domain.
    pub fn mu_between(&self, a: f64, b: f64) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        let left = (self.params.r > 1).then_some(self.params.lower());
        integrate_sqrt_endpoints(
            |rho, off| self.mu_dot_near(rho, off),
            a,
            b,
            left,
            Some(self.rho_plus),
            MU_REL_TOL,
            MU_ABS_TOL,
        )
    }

    /// `μ(ρ) = ∫_ε^ρ μ̇`.
    pub fn mu(&self, rho: f64) -> Result<f64> {
        self.mu_between(self.params.lower(), rho)
    }

    /// `(k_tan, k_n) = (tanh(ρ)·σ, σ')`.
    pub fn principal_curvatures(&self, rho: f64) -> Result<(f64, f64)> {
        self.check(rho)?;
        Ok((rho.tanh() * self.sigma(rho), self.sigma_prime(rho)))
    }

    /// `2 μ(ρ₊^ε)`, the height of the graph and its mirror image.
    pub fn cylinder_height(&self) -> Result<f64> {
        Ok(2.0 * self.mu(self.rho_plus)?)
    }

    /// `samples` points on `[ε, ρ₊^ε]`, clustered quadratically towards
    /// the vertical end, with `μ` accumulated segment by segment.
    pub fn sample(&self, samples: usize) -> Result<Vec<TranslationSample>> {
        if samples < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 samples, got {samples}")));
        }
        let lo = self.params.lower();
        let w = self.rho_plus - lo;
        let mut out = Vec::with_capacity(samples);
        let mut mu = 0.0;
        let mut prev = lo;
        for i in 0..samples {
            let s = i as f64 / (samples - 1) as f64;
            let rho = if i + 1 == samples {
                self.rho_plus
            } else {
                lo + w * (1.0 - (1.0 - s) * (1.0 - s))
            };
            mu += self.mu_between(prev, rho)?;
            prev = rho;
            let (k_tan, k_n) = self.principal_curvatures(rho)?;
            out.push(TranslationSample {
                rho,
                mu,
                mu_dot: self.mu_dot(rho)?,
                mu_ddot: self.mu_ddot(rho)?,
                k_tan,
                k_n,
            });
        }
        Ok(out)
    }
}

pub fn mu_eval(params: &TranslationParams, rho: f64) -> Result<f64> {
    TranslationProfile::new(*params)?.mu(rho)
}

pub fn mu_dot(params: &TranslationParams, rho: f64) -> Result<f64> {
    TranslationProfile::new(*params)?.mu_dot(rho)
}

pub fn mu_ddot(params: &TranslationParams, rho: f64) -> Result<f64> {
    TranslationProfile::new(*params)?.mu_ddot(rho)
}

pub fn cylinder_height(params: &TranslationParams) -> Result<f64> {
    TranslationProfile::new(*params)?.cylinder_height()
}
