//! Exact and floating-point primitives on principal curvatures.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Principal curvatures `k_1, …, k_n` of a hypersurface at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureVector(Vec<f64>);

impl CurvatureVector {
    pub fn new(k: Vec<f64>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidInput("curvature vector must be non-empty".into()));
        }
        if let Some(x) = k.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite principal curvature {x}")));
        }
        Ok(Self(k))
    }

    /// Vector with `k_tan` repeated `n - 1` times followed by `k_normal`,
    /// the curvature pattern of rotation and translation hypersurfaces.
    pub fn profile(n: usize, k_tan: f64, k_normal: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut k = vec![k_tan; n - 1];
        k.push(k_normal);
        Self::new(k)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `m!!`, with `0!! = 1!! = 1`.
pub fn double_factorial(m: u32) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = m;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// `e_r(k)`, the sum of all products of `r` distinct entries.
///
/// One pass of the recurrence `e_j <- e_j + k_i e_{j-1}`, O(n r).
pub fn elementary_symmetric(k: &CurvatureVector, r: usize) -> Result<f64> {
    let n = k.dim();
    if r > n {
        return Err(Error::InvalidInput(format!("order r = {r} exceeds dimension n = {n}")));
    }
    let mut e = vec![0.0; r + 1];
    e[0] = 1.0;
    for (i, &ki) in k.as_slice().iter().enumerate() {
        for j in (1..=r.min(i + 1)).rev() {
            e[j] += ki * e[j - 1];
        }
    }
    Ok(e[r])
}

/// Binomial coefficient as a float; exact for the small arguments used here.
pub fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The normalised `r`-th mean curvature `e_r(k) / C(n, r)`.
pub fn mean_curvature_r(k: &CurvatureVector, r: usize) -> Result<f64> {
    let n = k.dim();
    if r == 0 || r > n {
        return Err(Error::InvalidInput(format!(
            "order r = {r} must satisfy 1 <= r <= n = {n}"
        )));
    }
    Ok(elementary_symmetric(k, r)? / binomial(n, r))
}

/// Real `r`-th root keeping the sign of `x` for odd `r`.
pub fn signed_root(x: f64, r: u32) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidInput("root order must be positive".into()));
    }
    if x.is_nan() {
        return Err(Error::InvalidInput("root of NaN".into()));
    }
    if r.is_multiple_of(2) && x < 0.0 {
        return Err(Error::OutOfDomain {
            what: "even root argument",
            value: x,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let mag = match r {
        1 => x.abs(),
        2 => x.abs().sqrt(),
        3 => x.abs().cbrt(),
        _ => x.abs().powf(1.0 / r as f64),
    };
    Ok(mag.copysign(x))
}

fn rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(n.clone().into())
}

/// `(r-1)!! / (r-2)!!` as an exact rational, `r >= 2`.
pub fn double_factorial_ratio(r: u32) -> BigRational {
    assert!(r >= 2, "ratio defined for r >= 2");
    rational(&double_factorial(r - 1)) / rational(&double_factorial(r - 2))
}

/// The summands after the leading `1` in the truncated telescoping sum
///
/// `1/(r-2) + (r-1)/((r-2)(r-4)) + (r-1)(r-3)/((r-2)(r-4)(r-6)) + …`,
///
/// kept while the last denominator factor stays positive. Term `j`
/// (1-based) multiplies `tanh^{r-2j}` in the closed form of `I_{r+1,r}`.
pub fn telescoping_terms(r: u32) -> Vec<BigRational> {
    let mut terms = Vec::new();
    if r < 3 {
        return terms;
    }
    let mut num = BigRational::one();
    let mut den = BigRational::one();
    let mut j = 1u32;
    while 2 * j < r {
        den *= BigRational::from_integer((r - 2 * j).into());
        terms.push(&num / &den);
        num *= BigRational::from_integer((r + 1 - 2 * j).into());
        j += 1;
    }
    terms
}

/// Checks `(r-1)!!/(r-2)!! = 1 + Σ telescoping_terms(r)` exactly.
pub fn factorial_identity_check(r: u32) -> Result<bool> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("identity requires r >= 2, got {r}")));
    }
    let lhs = double_factorial_ratio(r);
    let rhs = telescoping_terms(r)
        .into_iter()
        .fold(BigRational::one(), |acc, t| acc + t);
    Ok(lhs == rhs)
}

/// Float coefficients of the closed form of `I_{r+1,r}`: the telescoping
/// terms and the ratio `(r-1)!!/(r-2)!!`.
pub(crate) fn closed_form_coefficients(r: u32) -> (Vec<f64>, f64) {
    let terms = telescoping_terms(r)
        .iter()
        .map(|t| t.to_f64().unwrap_or(f64::NAN))
        .collect();
    let ratio = if r >= 2 {
        double_factorial_ratio(r).to_f64().unwrap_or(f64::NAN)
    } else {
        1.0
    };
    (terms, ratio)
}
