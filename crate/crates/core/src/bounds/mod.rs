//! Evaluators for the universal eigenvalue inequalities and solvers that
//! turn them into upper bounds for `Λ_{k+1}` given `Λ_1 … Λ_k`.
//!
//! Throughout, `g_i = x - Λ_i` is the gap between a candidate `x` for
//! `Λ_{k+1}` and the `i`-th eigenvalue.

mod delta;
mod euclidean;
mod prior;
mod root;
mod sphere;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::spectrum::Spectrum;

pub use delta::{delta_objective, optimize_delta, DeltaSequence};
pub use euclidean::{
    chain_bounds, eval_cor11, eval_eq112, eval_thm11, eval_thm11_optimized, next_bound_cor11, next_bound_cor11_single_exact,
    next_bound_sharp, remark_constant_delta, ChainMethod,
};
pub use prior::eval_l2_priors;
pub use root::{BISECTION_REL_TOL, MAX_DOUBLINGS, SCAN_POINTS};
pub use sphere::{eval_thm12, next_bound_sphere, sphere_delta_weights};

/// Relative tolerance of the satisfaction test.
pub const SATISFACTION_TOL: f64 = 1e-9;

/// Which inequality a [`BoundReport`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Euclidean inequality with a non-increasing weight sequence.
    Thm11,
    /// Euclidean inequality with the weights collapsed to the optimal constant.
    Eq112,
    /// Quadratic Yang-type inequality.
    Cor11,
    /// Spherical inequality with a non-increasing weight sequence.
    Thm12,
    /// `Σ g² ≤ 4(n+2)/n² Σ g Λ` (second order only).
    Prior16,
    /// `Σ g² ≤ 4(n+4/3)/n² Σ g Λ` (second order only).
    Prior18,
    /// Spherical second-order inequality with a scalar weight.
    Prior19,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Thm11 => "thm11",
            Method::Eq112 => "eq112",
            Method::Cor11 => "cor11",
            Method::Thm12 => "thm12",
            Method::Prior16 => "prior16",
            Method::Prior18 => "prior18",
            Method::Prior19 => "prior19",
        }
    }
}

/// One inequality `lhs ≤ rhs` evaluated at a candidate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub method: Method,
    pub k: usize,
    pub candidate: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_value: Option<f64>,
}

impl BoundReport {
    pub fn new(method: Method, k: usize, candidate: f64, lhs: f64, rhs: f64) -> Self {
        let residual = lhs - rhs;
        BoundReport {
            method,
            k,
            candidate,
            lhs,
            rhs,
            residual,
            satisfied: is_satisfied(lhs, rhs),
            bound_value: None,
        }
    }

    pub fn with_bound(mut self, value: f64) -> Self {
        self.bound_value = Some(value);
        self
    }

    /// `1e-9 · max(1, |lhs|, |rhs|)`.
    pub fn tolerance(&self) -> f64 {
        tolerance(self.lhs, self.rhs)
    }
}

pub fn tolerance(lhs: f64, rhs: f64) -> f64 {
    SATISFACTION_TOL * 1f64.max(lhs.abs()).max(rhs.abs())
}

/// `lhs - rhs ≤ 1e-9 · max(1, |lhs|, |rhs|)`; equality counts as satisfied.
pub fn is_satisfied(lhs: f64, rhs: f64) -> bool {
    lhs - rhs <= tolerance(lhs, rhs)
}

/// `K(n, l) = 2l² + (n - 14/3) l + 8/3 - n`, exactly.
pub fn euclidean_coefficient(n: u32, l: u32) -> Result<BigRational> {
    check_nl(n, l)?;
    let n = BigInt::from(n);
    let l = BigInt::from(l);
    let three = BigInt::from(3);
    // 3K = 6l² + (3n - 14) l + 8 - 3n
    let numer = BigInt::from(6) * &l * &l + (&three * &n - BigInt::from(14)) * &l
        + BigInt::from(8)
        - &three * &n;
    let k = BigRational::new(numer, three);
    if !k.is_positive() {
        return Err(Error::InternalConsistency(format!("K(n, l) = {k} is not positive")));
    }
    Ok(k)
}

pub fn euclidean_coefficient_f64(n: u32, l: u32) -> Result<f64> {
    Ok(euclidean_coefficient(n, l)?.to_f64().unwrap_or(f64::NAN))
}

fn check_nl(n: u32, l: u32) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!("dimension n must be >= 2, got {n}")));
    }
    if l < 2 {
        return Err(invalid(format!("order l must be >= 2, got {l}")));
    }
    Ok(())
}

/// Validates `1 ≤ k ≤ K` and `candidate ≥ Λ_k`; returns the gaps `x - Λ_i`.
fn gaps(spectrum: &Spectrum, k: usize, candidate: f64) -> Result<Vec<f64>> {
    check_nl(spectrum.n(), spectrum.l())?;
    check_k(spectrum, k)?;
    let values = &spectrum.values()[..k];
    if !candidate.is_finite() {
        return Err(invalid(format!("candidate {candidate} is not finite")));
    }
    if candidate < values[k - 1] {
        return Err(Error::Ordering(format!(
            "candidate {candidate} is below Λ_{k} = {}",
            values[k - 1]
        )));
    }
    Ok(values.iter().map(|v| candidate - v).collect())
}

fn check_k(spectrum: &Spectrum, k: usize) -> Result<()> {
    if k == 0 || k > spectrum.len() {
        return Err(invalid(format!(
            "k must be in 1..={}, got {k}",
            spectrum.len()
        )));
    }
    Ok(())
}
