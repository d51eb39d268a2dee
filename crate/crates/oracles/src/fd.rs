//! Finite-difference reference for the first clamped buckling eigenvalue of
//! the unit square, `Δ²u = -Λ Δu`.
//!
//! The biharmonic uses the 13-point stencil and the Laplacian the 5-point
//! stencil on the interior nodes of a uniform grid. The clamped condition
//! `∂u/∂ν = 0` is imposed by reflecting the ghost row across the boundary,
//! `u_{-1} = u_1`, which folds the far stencil arm back onto the first
//! interior node.

/// Symmetric banded matrix stored by rows of the lower band:
/// `band[i][t] = M[i][i + t - width]` for `t = 0 ..= width`.
#[derive(Clone)]
struct Banded {
    n: usize,
    width: usize,
    band: Vec<Vec<f64>>,
}

impl Banded {
    fn new(n: usize, width: usize) -> Self {
        Banded {
            n,
            width,
            band: vec![vec![0.0; width + 1]; n],
        }
    }

    fn add(&mut self, i: usize, j: usize, v: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.band[r][c + self.width - r] += v;
    }

    fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let w = self.width;
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            y[i] += self.band[i][w] * x[i];
            for c in i.saturating_sub(w)..i {
                let v = self.band[i][c + w - i];
                if v != 0.0 {
                    y[i] += v * x[c];
                    y[c] += v * x[i];
                }
            }
        }
        y
    }

    /// In-place banded Cholesky; the band then holds `L`.
    fn factor(mut self) -> Banded {
        let w = self.width;
        for i in 0..self.n {
            let first = i.saturating_sub(w);
            for j in first..=i {
                // Columns shared by rows i and j start at max(i-w, j-w) = i-w.
                let lo = first.max(j.saturating_sub(w));
                let (head, tail) = self.band.split_at_mut(i);
                let row_i = &tail[0];
                let row_j: &[f64] = if j == i { row_i } else { &head[j] };
                let dot: f64 = row_i[lo + w - i..j + w - i]
                    .iter()
                    .zip(&row_j[lo + w - j..w])
                    .map(|(a, b)| a * b)
                    .sum();
                let s = tail[0][j + w - i] - dot;
                if j == i {
                    assert!(s > 0.0, "finite-difference operator not positive definite");
                    tail[0][w] = s.sqrt();
                } else {
                    tail[0][j + w - i] = s / head[j][w];
                }
            }
        }
        self
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let w = self.width;
        let mut y = rhs.to_vec();
        for i in 0..self.n {
            let first = i.saturating_sub(w);
            let dot: f64 = self.band[i][first + w - i..w]
                .iter()
                .zip(&y[first..i])
                .map(|(a, b)| a * b)
                .sum();
            y[i] = (y[i] - dot) / self.band[i][w];
        }
        for i in (0..self.n).rev() {
            y[i] /= self.band[i][w];
            let yi = y[i];
            let first = i.saturating_sub(w);
            for (c, l) in (first..i).zip(&self.band[i][first + w - i..w]) {
                y[c] -= l * yi;
            }
        }
        y
    }
}

/// Lowest eigenvalue on the grid with `cells` intervals per side.
pub fn lowest_eigenvalue(cells: usize) -> f64 {
    let m = cells - 1;
    let h = 1.0 / cells as f64;
    let h2 = h * h;
    let h4 = h2 * h2;
    let n = m * m;
    let id = |i: usize, j: usize| i * m + j;

    let mut plate = Banded::new(n, 2 * m);
    let mut lap = Banded::new(n, m);
    let offsets: [(isize, isize, f64); 13] = [
        (0, 0, 20.0),
        (1, 0, -8.0),
        (-1, 0, -8.0),
        (0, 1, -8.0),
        (0, -1, -8.0),
        (1, 1, 2.0),
        (1, -1, 2.0),
        (-1, 1, 2.0),
        (-1, -1, 2.0),
        (2, 0, 1.0),
        (-2, 0, 1.0),
        (0, 2, 1.0),
        (0, -2, 1.0),
    ];
    for i in 0..m {
        for j in 0..m {
            let row = id(i, j);
            for &(di, dj, c) in &offsets {
                let (mut p, mut q) = (i as isize + di, j as isize + dj);
                // Node index -1 and m sit on the boundary (u = 0); -2 and
                // m+1 are ghosts reflected onto 0 and m-1.
                if p == -2 {
                    p = 0;
                } else if p == m as isize + 1 {
                    p = m as isize - 1;
                }
                if q == -2 {
                    q = 0;
                } else if q == m as isize + 1 {
                    q = m as isize - 1;
                }
                if p < 0 || q < 0 || p >= m as isize || q >= m as isize {
                    continue;
                }
                let col = id(p as usize, q as usize);
                if col <= row {
                    plate.add(row, col, c / h4);
                }
            }
            lap.add(row, row, 4.0 / h2);
            if i > 0 {
                lap.add(row, id(i - 1, j), -1.0 / h2);
            }
            if j > 0 {
                lap.add(row, id(i, j - 1), -1.0 / h2);
            }
        }
    }

    let plate_mat = plate.clone();
    let chol = plate.factor();

    // Inverse iteration on A u = Λ (-Δ_h) u from a positive bump.
    let mut u: Vec<f64> = (0..n)
        .map(|k| {
            let (i, j) = (k / m, k % m);
            let x = (i + 1) as f64 * h;
            let y = (j + 1) as f64 * h;
            (x * (1.0 - x) * y * (1.0 - y)).powi(2)
        })
        .collect();
    let mut lambda = f64::NAN;
    for _ in 0..200 {
        let bu = lap.matvec(&u);
        let w = chol.solve(&bu);
        let aw = plate_mat.matvec(&w);
        let bw = lap.matvec(&w);
        let num: f64 = w.iter().zip(&aw).map(|(a, b)| a * b).sum();
        let den: f64 = w.iter().zip(&bw).map(|(a, b)| a * b).sum();
        let next = num / den;
        let norm = den.sqrt();
        u = w.into_iter().map(|v| v / norm).collect();
        // The Rayleigh quotient converges quadratically in the vector error;
        // a 1e-12 change is far below the discretization error.
        if (next - lambda).abs() <= 1e-12 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda
}

/// Two Richardson steps over grids `c`, `2c`, `4c`, assuming an error
/// expansion in `h²` and `h⁴`.
pub fn richardson(coarse: f64, mid: f64, fine: f64) -> f64 {
    let r1 = (4.0 * mid - coarse) / 3.0;
    let r2 = (4.0 * fine - mid) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// Extrapolated first eigenvalue from the 32, 64 and 128 grids.
pub fn unit_square_first_eigenvalue() -> f64 {
    let v: Vec<f64> = [32, 64, 128].iter().map(|&c| lowest_eigenvalue(c)).collect();
    richardson(v[0], v[1], v[2])
}
