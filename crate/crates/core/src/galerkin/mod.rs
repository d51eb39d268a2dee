//! Conforming polynomial discretization of the clamped space and exact
//! assembly of the forms of `(-Δ)^k`, `k = 1 … l`, on an interval or an
//! axis-aligned rectangle.
//!
//! Forms use the variational realization that integration by parts allows
//! when every derivative through order `l-1` vanishes on the boundary:
//! `∫ (Δ^p u)(Δ^p v)` for `k = 2p` and `∫ ⟨∇Δ^p u, ∇Δ^p v⟩` for `k = 2p+1`.
//! Everything is computed in exact rational arithmetic and rounded to
//! binary64 once per entry.

mod basis;
mod table;

use std::io::{Read, Write};

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use basis::{
    boundary_factor, build_basis_1d, shifted_legendre, Basis1D, BasisInfo,
    CONDITIONING_WARN_ABOVE, MAX_FUNCTIONS,
};
pub use table::{derivative_integral_table, DerivativeTable};

use crate::eigen::{cholesky_spd, Matrix};
use crate::error::{invalid, Error, Result};

/// Interval `[0, a]` or rectangle `[0, a] × [0, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Domain {
    Interval { a: f64 },
    Rectangle { a: f64, b: f64 },
}

fn check_edge(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(format!("edge length must be positive and finite, got {x}")))
    }
}

impl Domain {
    pub fn interval(a: f64) -> Result<Self> {
        Ok(Domain::Interval { a: check_edge(a)? })
    }

    pub fn rectangle(a: f64, b: f64) -> Result<Self> {
        Ok(Domain::Rectangle {
            a: check_edge(a)?,
            b: check_edge(b)?,
        })
    }

    pub fn unit_interval() -> Self {
        Domain::Interval { a: 1.0 }
    }

    pub fn unit_square() -> Self {
        Domain::Rectangle { a: 1.0, b: 1.0 }
    }

    pub fn dim(&self) -> u32 {
        match self {
            Domain::Interval { .. } => 1,
            Domain::Rectangle { .. } => 2,
        }
    }

    pub fn edges(&self) -> Vec<f64> {
        match *self {
            Domain::Interval { a } => vec![a],
            Domain::Rectangle { a, b } => vec![a, b],
        }
    }
}

/// Form matrices `A_1 … A_l` on the discrete clamped space. `B = A_1` is the
/// Dirichlet-energy form.
#[derive(Debug, Clone)]
pub struct OperatorForms {
    domain: Domain,
    basis: BasisInfo,
    dofs: usize,
    forms: Vec<Matrix>,
}

impl OperatorForms {
    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn l(&self) -> u32 {
        self.basis.l
    }

    pub fn m(&self) -> usize {
        self.basis.m
    }

    pub fn basis_info(&self) -> &BasisInfo {
        &self.basis
    }

    /// Dimension `N` of the discrete space (`m` in 1D, `m²` in 2D).
    pub fn dofs(&self) -> usize {
        self.dofs
    }

    /// Form of `(-Δ)^k`, `1 ≤ k ≤ l`.
    pub fn a(&self, k: usize) -> &Matrix {
        assert!(k >= 1 && k <= self.forms.len(), "form index {k} out of range");
        &self.forms[k - 1]
    }

    pub fn b(&self) -> &Matrix {
        &self.forms[0]
    }

    pub fn forms(&self) -> &[Matrix] {
        &self.forms
    }

    fn header(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "N": self.dofs,
            "l": self.basis.l,
            "m": self.basis.m,
            "domain": self.domain,
            "matrices": (1..=self.forms.len()).map(|k| format!("A{k}")).collect::<Vec<_>>(),
            "dtype": "f64-le",
            "layout": "row-major",
        })
    }

    /// Writes a one-line JSON header followed by `A_1 … A_l` as little-endian
    /// binary64 in row-major order.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        let header = serde_json::to_string(&self.header()).map_err(|e| Error::Io(e.to_string()))?;
        w.write_all(header.as_bytes())?;
        w.write_all(b"\n")?;
        for m in &self.forms {
            for v in m.as_slice() {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Reads the format produced by [`OperatorForms::write_binary`].
pub fn read_binary<R: Read>(mut r: R) -> Result<(serde_json::Value, Vec<Matrix>)> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let nl = bytes
        .iter()
        .position(|&c| c == b'\n')
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let header: serde_json::Value =
        serde_json::from_slice(&bytes[..nl]).map_err(|e| Error::Parse(e.to_string()))?;
    let n = header["N"]
        .as_u64()
        .ok_or_else(|| Error::Parse("header lacks N".into()))? as usize;
    let count = header["matrices"]
        .as_array()
        .ok_or_else(|| Error::Parse("header lacks matrices".into()))?
        .len();
    let body = &bytes[nl + 1..];
    if body.len() != count * n * n * 8 {
        return Err(Error::Parse(format!(
            "expected {} data bytes, found {}",
            count * n * n * 8,
            body.len()
        )));
    }
    let values: Vec<f64> = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    let mats = values
        .chunks_exact(n * n)
        .map(|c| Matrix::from_row_major(n, n, c.to_vec()))
        .collect();
    Ok((header, mats))
}

/// One product term `coef · X[rx][sx] · Y[ry][sy]` of a tensor-product form.
#[derive(Debug, Clone, Copy)]
struct Term {
    coef: u64,
    rx: usize,
    sx: usize,
    ry: usize,
    sy: usize,
}

fn binom(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as u64)
}

/// Expands the 2D form of `(-Δ)^k` on `b_a(x) b_c(y)` via
/// `Δ^p = Σ_j C(p,j) ∂_x^{2j} ∂_y^{2p-2j}`.
fn terms_2d(k: usize) -> Vec<Term> {
    let p = k / 2;
    let mut out = Vec::new();
    for j in 0..=p {
        for j2 in 0..=p {
            let coef = binom(p, j) * binom(p, j2);
            if k.is_multiple_of(2) {
                out.push(Term {
                    coef,
                    rx: 2 * j,
                    sx: 2 * j2,
                    ry: 2 * p - 2 * j,
                    sy: 2 * p - 2 * j2,
                });
            } else {
                out.push(Term {
                    coef,
                    rx: 2 * j + 1,
                    sx: 2 * j2 + 1,
                    ry: 2 * p - 2 * j,
                    sy: 2 * p - 2 * j2,
                });
                out.push(Term {
                    coef,
                    rx: 2 * j,
                    sx: 2 * j2,
                    ry: 2 * p - 2 * j + 1,
                    sy: 2 * p - 2 * j2 + 1,
                });
            }
        }
    }
    out
}

fn ratio_pow(x: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Integer weights `w_e` and a denominator `D` with `w_e / D` equal to the
/// exact edge scaling for x-derivative total `e`.
///
/// A 1D table entry of orders `(r, s)` on `[0, a]` scales by `a^{1-r-s}`.
fn edge_scalings(edges: &[f64], k: usize) -> (Vec<BigInt>, BigInt) {
    let exact: Vec<BigRational> = edges
        .iter()
        .map(|&e| BigRational::from_float(e).expect("edge lengths are finite"))
        .collect();
    let total = 2 * k;
    let scales: Vec<BigRational> = (0..=total)
        .map(|ex| {
            let sx = ratio_pow(&exact[0], 1 - ex as i32);
            match exact.get(1) {
                Some(b) => sx * ratio_pow(b, 1 - (total - ex) as i32),
                None => sx,
            }
        })
        .collect();
    let denom = scales
        .iter()
        .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
    let weights = scales
        .iter()
        .map(|s| s.numer() * (&denom / s.denom()))
        .collect();
    (weights, denom)
}

fn to_f64(numer: BigInt, denom: &BigInt) -> f64 {
    BigRational::new_raw(numer, denom.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

fn assemble_1d(table: &DerivativeTable, k: usize, edges: &[f64]) -> Matrix {
    let m = table.m();
    let (weights, scale_denom) = edge_scalings(edges, k);
    let w = &weights[2 * k];
    let denom = table.denom() * &scale_denom;
    let mut out = Matrix::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let v = to_f64(table.numer(k, k, a, b) * w, &denom);
            out[(a, b)] = v;
            out[(b, a)] = v;
        }
    }
    out
}

fn assemble_2d(table: &DerivativeTable, k: usize, edges: &[f64]) -> Matrix {
    let m = table.m();
    let n = m * m;
    let terms = terms_2d(k);
    let (weights, scale_denom) = edge_scalings(edges, k);
    let denom = table.denom() * table.denom() * &scale_denom;

    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (a, c) = (i / m, i % m);
            let mut groups = vec![BigInt::zero(); 2 * k + 1];
            (i..n)
                .map(|j| {
                    let (a2, c2) = (j / m, j % m);
                    groups.iter_mut().for_each(Zero::set_zero);
                    for t in &terms {
                        let x = table.numer(t.rx, t.sx, a, a2);
                        if x.is_zero() {
                            continue;
                        }
                        let y = table.numer(t.ry, t.sy, c, c2);
                        if y.is_zero() {
                            continue;
                        }
                        groups[t.rx + t.sx] += x * y * BigInt::from(t.coef);
                    }
                    let total: BigInt = groups.iter().zip(&weights).map(|(g, w)| g * w).sum();
                    to_f64(total, &denom)
                })
                .collect()
        })
        .collect();

    let mut out = Matrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    out
}

/// Assembles `A_1 … A_l` on the tensor-product space of `basis`.
pub fn assemble_with_basis(domain: Domain, basis: &Basis1D) -> Result<OperatorForms> {
    let l = basis.l() as usize;
    let table = derivative_integral_table(basis, l)?;
    let edges = domain.edges();
    let forms: Vec<Matrix> = (1..=l)
        .map(|k| match domain {
            Domain::Interval { .. } => assemble_1d(&table, k, &edges),
            Domain::Rectangle { .. } => assemble_2d(&table, k, &edges),
        })
        .collect();
    cholesky_spd(&forms[0])?;
    cholesky_spd(&forms[l - 1])?;
    let dofs = forms[0].rows();
    Ok(OperatorForms {
        domain,
        basis: basis.info(),
        dofs,
        forms,
    })
}

pub fn assemble_forms(domain: Domain, l: u32, m: usize) -> Result<OperatorForms> {
    let basis = build_basis_1d(l, m)?;
    assemble_with_basis(domain, &basis)
}
