use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored densely in ascending powers. Trailing zeros are
/// always trimmed, so a nonzero polynomial has a nonzero leading coefficient
/// and the zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(p, c)| c * BigInt::from(p))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Substitutes `t -> alpha * t + beta`.
    pub fn compose_affine(&self, alpha: &BigInt, beta: &BigInt) -> Self {
        let lin = Polynomial::new(vec![beta.clone(), alpha.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| &(&acc * &lin) + &Polynomial::constant(c.clone()))
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * t + BigRational::from_integer(c.clone())
        })
    }

    /// Horner evaluation in binary64. Coefficients are rounded individually.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Renders the polynomial in descending powers of `var`, e.g. `t^2 - 9 t - 2`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let omit_mag = p > 0 && mag.is_one();
            if !omit_mag {
                out.push_str(&mag.to_string());
            }
            if p > 0 {
                if !omit_mag {
                    out.push(' ');
                }
                out.push_str(var);
                if p > 1 {
                    out.push('^');
                    out.push_str(&p.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs().len(), 2);
        assert!(Polynomial::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn display_matches_cli_format() {
        assert_eq!(Polynomial::from_i64(&[-2, -9, 1]).to_string(), "t^2 - 9 t - 2");
        assert_eq!(Polynomial::from_i64(&[-1, 1]).to_string(), "t - 1");
        assert_eq!(Polynomial::from_i64(&[0, 16, -17, 1]).to_string(), "t^3 - 17 t^2 + 16 t");
        assert_eq!(Polynomial::from_i64(&[1]).to_string(), "1");
        assert_eq!(Polynomial::from_i64(&[0, -1]).to_string(), "-t");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_is_exact() {
        let p = Polynomial::from_i64(&[-1, 1]);
        let q = Polynomial::from_i64(&[1, 1]);
        assert_eq!(&p * &q, Polynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(&p + &q, Polynomial::from_i64(&[0, 2]));
        assert_eq!(&p - &p, Polynomial::zero());
        let big = Polynomial::constant(BigInt::from(i64::MAX));
        let sq = &big * &big;
        assert_eq!(sq.coeff(0), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
    }

    #[test]
    fn derivative_and_eval() {
        // (1 - x)^2 = 1 - 2x + x^2
        let p = Polynomial::from_i64(&[1, -2, 1]);
        assert_eq!(p.derivative(), Polynomial::from_i64(&[-2, 2]));
        assert_eq!(p.nth_derivative(3), Polynomial::zero());
        assert_eq!(p.eval(&BigInt::from(1)), BigInt::zero());
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(4));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval_rational(&half), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn affine_composition() {
        // t^2 at 2x - 1 = 4x^2 - 4x + 1
        let p = Polynomial::monomial(2);
        let c = p.compose_affine(&BigInt::from(2), &BigInt::from(-1));
        assert_eq!(c, Polynomial::from_i64(&[1, -4, 4]));
    }
}
