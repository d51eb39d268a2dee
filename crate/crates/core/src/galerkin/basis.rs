use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::polyrec::Polynomial;

/// Largest number of 1D basis functions accepted.
pub const MAX_FUNCTIONS: usize = 24;

/// Above this many functions the Gram matrices become poorly conditioned.
pub const CONDITIONING_WARN_ABOVE: usize = 16;

/// Clamped basis `b_a(x) = x^l (1-x)^l P_a(2x-1)` on `[0, 1]`, where `P_a` is
/// the Legendre polynomial of degree `a`.
///
/// Every `b_a` has integer coefficients, so the basis is stored exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis1D {
    l: u32,
    functions: Vec<Polynomial>,
    /// Legendre degree of each stored function; identity unless permuted.
    legendre_degree: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisInfo {
    pub l: u32,
    pub m: usize,
    pub max_degree: usize,
    pub conditioning_warning: bool,
}

/// Shifted Legendre polynomial `P_a(2x - 1)`.
pub fn shifted_legendre(a: usize) -> Polynomial {
    let coeffs = (0..=a)
        .map(|k| {
            let c = binomial(BigInt::from(a), BigInt::from(k))
                * binomial(BigInt::from(a + k), BigInt::from(k));
            if (a + k).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

/// `x^l (1-x)^l`.
pub fn boundary_factor(l: u32) -> Polynomial {
    let one_minus_x = Polynomial::from_i64(&[1, -1]);
    let mut p = Polynomial::monomial(l as usize);
    for _ in 0..l {
        p = &p * &one_minus_x;
    }
    p
}

pub fn build_basis_1d(l: u32, m: usize) -> Result<Basis1D> {
    if l < 2 {
        return Err(invalid(format!("order l must be >= 2, got {l}")));
    }
    if !(1..=MAX_FUNCTIONS).contains(&m) {
        return Err(invalid(format!(
            "basis size m must be in 1..={MAX_FUNCTIONS}, got {m}"
        )));
    }
    let factor = boundary_factor(l);
    let functions = (0..m).map(|a| &factor * &shifted_legendre(a)).collect();
    Ok(Basis1D {
        l,
        functions,
        legendre_degree: (0..m).collect(),
    })
}

impl Basis1D {
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[Polynomial] {
        &self.functions
    }

    pub fn legendre_degrees(&self) -> &[usize] {
        &self.legendre_degree
    }

    pub fn max_degree(&self) -> usize {
        self.functions.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    /// The same functions in the order `perm` (`new[i] = old[perm[i]]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Basis1D> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.len()).collect::<Vec<_>>() {
            return Err(invalid("not a permutation of the basis indices"));
        }
        Ok(Basis1D {
            l: self.l,
            functions: perm.iter().map(|&p| self.functions[p].clone()).collect(),
            legendre_degree: perm.iter().map(|&p| self.legendre_degree[p]).collect(),
        })
    }

    pub fn info(&self) -> BasisInfo {
        BasisInfo {
            l: self.l,
            m: self.len(),
            max_degree: self.max_degree(),
            conditioning_warning: self.len() > CONDITIONING_WARN_ABOVE,
        }
    }
}
