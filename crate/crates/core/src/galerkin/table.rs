use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::Basis1D;
use crate::error::{invalid, Result};
use crate::polyrec::Polynomial;

/// Exact values `M[r][s][a][b] = ∫₀¹ b_a^{(r)} b_b^{(s)} dx` for
/// `r, s ≤ max_order`.
///
/// All entries share the denominator `lcm(1, …, P+1)` where `P` is the
/// largest product degree, so they are stored as integer numerators over a
/// single common denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTable {
    max_order: usize,
    m: usize,
    denom: BigInt,
    numer: Vec<BigInt>,
}

fn lcm_up_to(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// Numerator of `∫₀¹ p q` over the common denominator, `weights[d] = L/(d+1)`.
fn integral_numer(p: &Polynomial, q: &Polynomial, weights: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, pi) in p.coeffs().iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        let mut inner = BigInt::zero();
        for (j, qj) in q.coeffs().iter().enumerate() {
            inner += qj * &weights[i + j];
        }
        acc += pi * inner;
    }
    acc
}

pub fn derivative_integral_table(basis: &Basis1D, max_order: usize) -> Result<DerivativeTable> {
    if max_order > basis.l() as usize {
        return Err(invalid(format!(
            "derivative order {max_order} exceeds the clamping order l = {}",
            basis.l()
        )));
    }
    let m = basis.len();
    let orders = max_order + 1;
    let derivs: Vec<Vec<Polynomial>> = (0..orders)
        .map(|r| basis.functions().iter().map(|f| f.nth_derivative(r)).collect())
        .collect();

    let top = 2 * basis.max_degree();
    let denom = lcm_up_to(top + 1);
    let weights: Vec<BigInt> = (0..=top).map(|d| &denom / BigInt::from(d + 1)).collect();

    // Flattened (order, function) index; only the upper triangle is computed.
    let flat = orders * m;
    let pairs: Vec<(usize, usize)> = (0..flat)
        .flat_map(|u| (u..flat).map(move |v| (u, v)))
        .collect();
    let values: Vec<BigInt> = pairs
        .par_iter()
        .map(|&(u, v)| {
            let (r, a) = (u / m, u % m);
            let (s, b) = (v / m, v % m);
            integral_numer(&derivs[r][a], &derivs[s][b], &weights)
        })
        .collect();

    let mut numer = vec![BigInt::zero(); flat * flat];
    let idx = |r: usize, s: usize, a: usize, b: usize| ((r * orders + s) * m + a) * m + b;
    for (&(u, v), val) in pairs.iter().zip(values) {
        let (r, a) = (u / m, u % m);
        let (s, b) = (v / m, v % m);
        numer[idx(s, r, b, a)] = val.clone();
        numer[idx(r, s, a, b)] = val;
    }
    Ok(DerivativeTable {
        max_order,
        m,
        denom,
        numer,
    })
}

impl DerivativeTable {
    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    fn index(&self, r: usize, s: usize, a: usize, b: usize) -> usize {
        assert!(r <= self.max_order && s <= self.max_order && a < self.m && b < self.m);
        ((r * (self.max_order + 1) + s) * self.m + a) * self.m + b
    }

    /// Exact reduced value of `∫₀¹ b_a^{(r)} b_b^{(s)}`.
    pub fn get(&self, r: usize, s: usize, a: usize, b: usize) -> BigRational {
        BigRational::new(self.numer[self.index(r, s, a, b)].clone(), self.denom.clone())
    }

    pub fn numer(&self, r: usize, s: usize, a: usize, b: usize) -> &BigInt {
        &self.numer[self.index(r, s, a, b)]
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }
}
