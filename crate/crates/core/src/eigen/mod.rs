//! Dense generalized symmetric eigensolver for `A x = Λ B x` with `A`, `B`
//! symmetric positive definite.
//!
//! `B = L Lᵀ` reduces the pencil to the standard problem for `L⁻¹ A L⁻ᵀ`, which
//! is tridiagonalized and diagonalized by implicitly shifted QL sweeps.
//! Eigenvectors are mapped back with `x = L⁻ᵀ y` and are therefore
//! `B`-orthonormal.

mod buckling;
mod matrix;
mod tridiag;

pub use buckling::{solve_buckling, BucklingSolution};
pub use matrix::Matrix;
pub use tridiag::{symmetric_eigen, DEFLATION_TOL, MAX_SWEEPS};

use crate::error::{invalid, Error, Result};

/// Relative pivot threshold for the Cholesky factorization.
pub const PIVOT_EPS: f64 = 1e-14;

/// Lower-triangular `L` with `L Lᵀ = M`.
///
/// Fails with [`Error::NotPositiveDefinite`] when a pivot drops to
/// `PIVOT_EPS * max_i M_ii` or below.
pub fn cholesky_spd(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(invalid("cholesky needs a square matrix"));
    }
    let n = m.rows();
    let max_diag = (0..n).map(|i| m[(i, i)]).fold(0.0f64, f64::max);
    let threshold = PIVOT_EPS * max_diag;
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut pivot = m[(j, j)];
        for k in 0..j {
            pivot -= l[(j, k)] * l[(j, k)];
        }
        if !(pivot > threshold) {
            return Err(Error::NotPositiveDefinite { index: j, pivot });
        }
        let ljj = pivot.sqrt();
        l[(j, j)] = ljj;
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// Solves `L X = R` for lower-triangular `L`, column by column.
fn forward_solve(l: &Matrix, r: &Matrix) -> Matrix {
    let n = l.rows();
    let mut x = r.clone();
    for c in 0..r.cols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Solves `Lᵀ X = R` for lower-triangular `L`.
fn backward_solve_transposed(l: &Matrix, r: &Matrix) -> Matrix {
    let n = l.rows();
    let mut x = r.clone();
    for c in 0..r.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, c)];
            for k in (i + 1)..n {
                s -= l[(k, i)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// The lowest eigenpairs of a symmetric-definite pencil.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    eigenvalues: Vec<f64>,
    /// `N × count`, one eigenvector per column.
    eigenvectors: Matrix,
}

impl EigenSolution {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// Largest `|x_iᵀ B x_j - δ_ij|` over the retained pairs.
    pub fn b_orthonormality_error(&self, b: &Matrix) -> f64 {
        let vecs: Vec<Vec<f64>> = (0..self.len()).map(|i| self.vector(i)).collect();
        let mut worst = 0.0f64;
        for (i, xi) in vecs.iter().enumerate() {
            let bxi = b.matvec(xi);
            for (j, xj) in vecs.iter().enumerate() {
                let dot: f64 = bxi.iter().zip(xj).map(|(p, q)| p * q).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }

    /// `‖A x_i - Λ_i B x_i‖_∞` for pair `i`.
    pub fn residual(&self, a: &Matrix, b: &Matrix, i: usize) -> f64 {
        let x = self.vector(i);
        let ax = a.matvec(&x);
        let bx = b.matvec(&x);
        ax.iter()
            .zip(&bx)
            .map(|(p, q)| (p - self.eigenvalues[i] * q).abs())
            .fold(0.0, f64::max)
    }
}

/// Flips the sign of `x` so its first significant component is positive.
/// Components below `1e-8 · max|x_i|` count as zero.
fn normalize_sign(x: &mut [f64]) {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(first) = x.iter().find(|v| v.abs() > 1e-8 * scale) {
        if *first < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Lowest `count` eigenpairs of `A x = Λ B x`, ascending.
pub fn solve_generalized(a: &Matrix, b: &Matrix, count: usize) -> Result<EigenSolution> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(invalid(format!(
            "A ({}x{}) and B ({}x{}) must be square of equal size",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    if count == 0 || count > n {
        return Err(invalid(format!("count must be in 1..={n}, got {count}")));
    }
    let l = cholesky_spd(b)?;

    // C = L⁻¹ A L⁻ᵀ, using the symmetry of A: L⁻¹ (L⁻¹ A)ᵀ.
    let x = forward_solve(&l, a);
    let mut c = forward_solve(&l, &x.transpose());
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (c[(i, j)] + c[(j, i)]);
            c[(i, j)] = avg;
            c[(j, i)] = avg;
        }
    }

    let (vals, vecs) = symmetric_eigen(&c)?;
    let mut y = Matrix::zeros(n, count);
    for j in 0..count {
        for i in 0..n {
            y[(i, j)] = vecs[(i, j)];
        }
    }
    let mut xs = backward_solve_transposed(&l, &y);
    for j in 0..count {
        let mut col = xs.column(j);
        normalize_sign(&mut col);
        for (i, v) in col.into_iter().enumerate() {
            xs[(i, j)] = v;
        }
    }
    Ok(EigenSolution {
        eigenvalues: vals[..count].to_vec(),
        eigenvectors: xs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_examples() {
        assert_eq!(cholesky_spd(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        assert_eq!(cholesky_spd(&Matrix::from_rows(&[&[4.0]])).unwrap()[(0, 0)], 2.0);
        let m = Matrix::from_rows(&[&[4.0, 2.0], &[2.0, 5.0]]);
        let l = cholesky_spd(&m).unwrap();
        assert_eq!(l, Matrix::from_rows(&[&[2.0, 0.0], &[1.0, 2.0]]));
        assert_eq!(l.matmul(&l.transpose()), m);
    }

    #[test]
    fn cholesky_reports_failing_pivot() {
        let m = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        match cholesky_spd(&m) {
            Err(Error::NotPositiveDefinite { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        let m = Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 1e-15]]);
        assert!(matches!(
            cholesky_spd(&m),
            Err(Error::NotPositiveDefinite { index: 1, .. })
        ));
    }

    #[test]
    fn generalized_examples() {
        let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let s = solve_generalized(&a, &a, 2).unwrap();
        for v in s.eigenvalues() {
            assert!((v - 1.0).abs() < 1e-14);
        }
        let a = Matrix::diagonal(&[2.0, 6.0]);
        let s = solve_generalized(&a, &Matrix::identity(2), 2).unwrap();
        assert_eq!(s.eigenvalues(), &[2.0, 6.0]);
        // √2 · √2 rounds, so this pencil is only reproduced to an ulp.
        let s = solve_generalized(&a, &Matrix::diagonal(&[2.0, 2.0]), 2).unwrap();
        for (v, want) in s.eigenvalues().iter().zip([1.0, 3.0]) {
            assert!((v - want).abs() < 4.0 * f64::EPSILON * want);
        }
    }

    #[test]
    fn generalized_rejects_bad_sizes() {
        let a = Matrix::identity(2);
        assert!(solve_generalized(&a, &Matrix::identity(3), 1).is_err());
        assert!(solve_generalized(&a, &a, 0).is_err());
        assert!(solve_generalized(&a, &a, 3).is_err());
    }

    #[test]
    fn sign_convention() {
        let a = Matrix::diagonal(&[1.0, 2.0]);
        let s = solve_generalized(&a, &Matrix::identity(2), 2).unwrap();
        assert!(s.vector(0)[0] > 0.0);
        assert!(s.vector(1)[1] > 0.0);
    }

    #[test]
    fn dense_pencil_invariants() {
        // Hilbert-like SPD B and a tridiagonal SPD A.
        let n = 8;
        let mut a = Matrix::zeros(n, n);
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = 1.0 / (1.0 + (i as f64 - j as f64).abs());
            }
            a[(i, i)] = 4.0 + i as f64;
            if i + 1 < n {
                a[(i, i + 1)] = -1.0;
                a[(i + 1, i)] = -1.0;
            }
        }
        let s = solve_generalized(&a, &b, n).unwrap();
        assert!(s.b_orthonormality_error(&b) < 1e-12);
        for i in 0..n {
            assert!(s.residual(&a, &b, i) < 1e-10 * a.norm_inf());
        }
        assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        let again = solve_generalized(&a, &b, n).unwrap();
        assert_eq!(
            s.eigenvalues().iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            again.eigenvalues().iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }
}
