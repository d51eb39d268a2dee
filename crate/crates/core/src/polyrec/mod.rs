//! Exact recursive polynomial families `Φ_q`, `F_q`, `G_q` and the scalar
//! quantities built from them for the spherical inequality.
//!
//! All three families share the three-term recurrence
//! `P_q = (2t - 2) P_{q-1} - (t^2 + 2t - n(n-2)) P_{q-2}`
//! and differ only in their seeds. Arithmetic is arbitrary-precision, so the
//! geometric coefficient growth never wraps.

mod polynomial;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use polynomial::Polynomial;

use crate::error::{invalid, Error, Result};

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!("dimension n must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_l(l: u32) -> Result<()> {
    if l < 2 {
        return Err(invalid(format!("order l must be >= 2, got {l}")));
    }
    Ok(())
}

/// One step of the shared recurrence.
fn recur(prev: &Polynomial, prevprev: &Polynomial, n: u32) -> Polynomial {
    let n = i64::from(n);
    let lin = Polynomial::from_i64(&[-2, 2]);
    let quad = Polynomial::from_i64(&[-n * (n - 2), 2, 1]);
    &(&lin * prev) - &(&quad * prevprev)
}

/// Runs the recurrence from seeds `(P_0, P_1)` up to `P_q`.
fn run_recurrence(seed0: Polynomial, seed1: Polynomial, q: u32, n: u32) -> Polynomial {
    if q == 0 {
        return seed0;
    }
    let (mut older, mut newer) = (seed0, seed1);
    for _ in 1..q {
        let next = recur(&newer, &older, n);
        older = std::mem::replace(&mut newer, next);
    }
    newer
}

/// `Φ_q` for dimension `n`: `Φ_1 = t - 1`, `Φ_2 = t^2 - (n+5) t - (n-2)`.
pub fn phi_polynomial(q: u32, n: u32) -> Result<Polynomial> {
    if q < 1 {
        return Err(invalid(format!("q must be >= 1, got {q}")));
    }
    check_n(n)?;
    let ni = i64::from(n);
    let phi1 = Polynomial::from_i64(&[-1, 1]);
    if q == 1 {
        return Ok(phi1);
    }
    let phi2 = Polynomial::from_i64(&[-(ni - 2), -(ni + 5), 1]);
    Ok(run_recurrence(phi1, phi2, q - 1, n))
}

/// `(F_q, G_q)` for dimension `n`, seeded by `F_0 = G_0 = 1`,
/// `F_1 = t - (n+2)`, `G_1 = 3t + n - 2`.
pub fn fg_polynomials(q: u32, n: u32) -> Result<(Polynomial, Polynomial)> {
    check_n(n)?;
    let ni = i64::from(n);
    let f = run_recurrence(
        Polynomial::constant(1),
        Polynomial::from_i64(&[-(ni + 2), 1]),
        q,
        n,
    );
    let g = run_recurrence(
        Polynomial::constant(1),
        Polynomial::from_i64(&[ni - 2, 3]),
        q,
        n,
    );
    Ok((f, g))
}

/// Coefficients `a_1 … a_{l-2}` read off `Φ_{l-1}` and their positive parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ACoefficients {
    pub l: u32,
    pub n: u32,
    #[serde(serialize_with = "ser_bigints")]
    pub a: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints", rename = "a_plus")]
    pub a_plus: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// Reads `a_j = (-1)^{l-1-j} [t^j] Φ_{l-1}` for `j = 1 … l-2`.
///
/// `Φ_{l-1}` is checked to be monic of degree `l-1` with constant term
/// `-(n-2)^{l-2}`; a mismatch is reported as an internal-consistency error.
pub fn extract_a_coefficients(l: u32, n: u32) -> Result<ACoefficients> {
    check_l(l)?;
    check_n(n)?;
    let phi = phi_polynomial(l - 1, n)?;
    let deg = (l - 1) as usize;
    if phi.degree() != deg || !phi.is_monic() {
        return Err(Error::InternalConsistency(format!(
            "Φ_{} for n={n} is not monic of degree {deg}: {phi}",
            l - 1
        )));
    }
    let expected_const = -BigInt::from(n - 2).pow(l - 2);
    if phi.coeff(0) != expected_const {
        return Err(Error::InternalConsistency(format!(
            "Φ_{} for n={n} has constant term {} instead of {expected_const}",
            l - 1,
            phi.coeff(0)
        )));
    }
    let a: Vec<BigInt> = (1..deg)
        .map(|j| {
            let c = phi.coeff(j);
            if (deg - j).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .collect();
    let a_plus = a
        .iter()
        .map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() })
        .collect();
    Ok(ACoefficients { l, n, a, a_plus })
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// `λ^{j/d}` for positive `λ`, evaluated as `exp((j/d) ln λ)` except for the
/// exponents 0, 1/2 and 1, which are taken exactly.
pub(crate) fn root_power(lambda: f64, j: u32, d: u32) -> f64 {
    if j == 0 {
        1.0
    } else if j == d {
        lambda
    } else if 2 * j == d {
        lambda.sqrt()
    } else {
        (f64::from(j) / f64::from(d) * lambda.ln()).exp()
    }
}

impl ACoefficients {
    /// `(-1)^l (n-2)^{l-2}`, with `0^0 = 1`.
    pub fn signed_constant(&self) -> f64 {
        let c = big_to_f64(&BigInt::from(self.n - 2).pow(self.l - 2));
        if self.l.is_multiple_of(2) {
            c
        } else {
            -c
        }
    }

    /// `H(λ) = (-1)^l (n-2)^{l-2} + Σ_j a_j^+ λ^{j/(l-1)}`.
    pub fn h_term(&self, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(invalid(format!("lambda must be positive, got {lambda}")));
        }
        let sum: f64 = self
            .a_plus
            .iter()
            .enumerate()
            .map(|(idx, ap)| big_to_f64(ap) * root_power(lambda, idx as u32 + 1, self.l - 1))
            .sum();
        Ok(self.signed_constant() + sum)
    }

    /// `S(λ) = λ (1 - 1/(λ^{1/(l-1)} - (n-2))) + H(λ)`.
    ///
    /// Requires `λ^{1/(l-1)} > n-2`.
    pub fn s_term(&self, lambda: f64) -> Result<f64> {
        let root = admissible_root(self.l, self.n, lambda, 1)?;
        let h = self.h_term(lambda)?;
        Ok(lambda * (1.0 - 1.0 / (root - f64::from(self.n - 2))) + h)
    }
}

/// Returns `λ^{1/(l-1)}` after checking it exceeds `n-2`.
pub(crate) fn admissible_root(l: u32, n: u32, lambda: f64, index: usize) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(invalid(format!("lambda must be positive, got {lambda}")));
    }
    let root = root_power(lambda, 1, l - 1);
    if root <= f64::from(n - 2) {
        return Err(Error::DomainViolation {
            index,
            root,
            threshold: n - 2,
        });
    }
    Ok(root)
}

pub fn h_term(l: u32, n: u32, lambda: f64) -> Result<f64> {
    extract_a_coefficients(l, n)?.h_term(lambda)
}

pub fn s_term(l: u32, n: u32, lambda: f64) -> Result<f64> {
    extract_a_coefficients(l, n)?.s_term(lambda)
}
