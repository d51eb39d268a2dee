//! Brute-force minimization of `Σ δ_i a_i + Σ b_i / δ_i` over positive
//! non-increasing `δ`.

pub fn objective(delta: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (0..a.len()).map(|i| delta[i] * a[i] + b[i] / delta[i]).sum()
}

/// Enumerates every split of `1..k` into contiguous runs. A run sharing one
/// value `δ` is optimal at `√(Σb/Σa)`; the global minimizer is the best
/// split whose run values are non-increasing.
pub fn enumerate_blocks(a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    let k = a.len();
    let mut best: Option<(Vec<f64>, f64)> = None;
    for mask in 0u32..(1 << (k - 1)) {
        let mut delta = Vec::with_capacity(k);
        let mut start = 0;
        for end in 1..=k {
            let cut = end == k || mask & (1 << (end - 1)) != 0;
            if cut {
                let sa: f64 = a[start..end].iter().sum();
                let sb: f64 = b[start..end].iter().sum();
                let v = (sb / sa).sqrt();
                delta.extend(std::iter::repeat_n(v, end - start));
                start = end;
            }
        }
        if delta.windows(2).any(|w| w[1] > w[0]) {
            continue;
        }
        let f = objective(&delta, a, b);
        if best.as_ref().is_none_or(|(_, bf)| f < *bf) {
            best = Some((delta, f));
        }
    }
    best.expect("the single-run split is always feasible")
}

/// Exact minimum over non-increasing `δ` whose entries all lie on one
/// log-spaced grid of `points` values spanning the unconstrained optima.
///
/// Solved by dynamic programming over the grid index, so the search is
/// exhaustive over the grid. A shared grid keeps ties `δ_i = δ_{i+1}`
/// representable.
pub fn grid_search(a: &[f64], b: &[f64], points: usize) -> (Vec<f64>, f64) {
    let k = a.len();
    let raw: Vec<f64> = (0..k).map(|i| (b[i] / a[i]).sqrt()).collect();
    let lo = (raw.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0).ln();
    let hi = (raw.iter().cloned().fold(0.0, f64::max) * 2.0).ln();
    let grid: Vec<f64> = (0..points)
        .map(|j| (lo + (hi - lo) * j as f64 / (points - 1) as f64).exp())
        .collect();

    // cost[j] = best total for δ_1 … δ_i with δ_i = grid[j];
    // choice[i][j] = grid index of δ_{i-1} in that optimum.
    let mut cost: Vec<f64> = grid.iter().map(|&d| d * a[0] + b[0] / d).collect();
    let mut choice: Vec<Vec<usize>> = Vec::with_capacity(k);
    choice.push(Vec::new());
    for i in 1..k {
        // Suffix minima: δ_{i-1} ≥ δ_i means index ≥ j.
        let mut best = vec![(f64::INFINITY, 0usize); points];
        let mut run = (f64::INFINITY, 0usize);
        for j in (0..points).rev() {
            if cost[j] < run.0 {
                run = (cost[j], j);
            }
            best[j] = run;
        }
        cost = (0..points)
            .map(|j| best[j].0 + grid[j] * a[i] + b[i] / grid[j])
            .collect();
        choice.push(best.iter().map(|p| p.1).collect());
    }
    let (mut j, f) = cost
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (j, &c)| if c < acc.1 { (j, c) } else { acc });
    let mut delta = vec![0.0; k];
    for i in (0..k).rev() {
        delta[i] = grid[j];
        if i > 0 {
            j = choice[i][j];
        }
    }
    (delta, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pooled_pair() {
        let (d, f) = enumerate_blocks(&[4.0, 1.0], &[1.0, 1.0]);
        let v = (2.0f64 / 5.0).sqrt();
        assert!((d[0] - v).abs() < 1e-15 && (d[1] - v).abs() < 1e-15);
        let (_, g) = grid_search(&[4.0, 1.0], &[1.0, 1.0], 300_001);
        assert!((f - g).abs() < 1e-9 * f);
    }

    #[test]
    fn grid_agrees_with_enumeration() {
        let a = [0.3, 2.0, 1.1, 0.2];
        let b = [1.0, 0.4, 3.0, 0.9];
        let (_, f) = enumerate_blocks(&a, &b);
        let (_, g) = grid_search(&a, &b, 300_001);
        assert!((f - g).abs() < 1e-10 * f, "{f} vs {g}");
    }
}
