//! Reference bound solvers built from direct formula evaluation and a
//! dense forward scan plus bisection.

use crate::closed_form::coefficient;
use crate::delta::enumerate_blocks;

/// Larger root of the quadratic Yang-type bound by the textbook formula.
pub fn quadratic_bound(lambda: &[f64], n: u32, l: u32) -> f64 {
    let c = 4.0 * coefficient(n, l) / f64::from(n * n);
    let k = lambda.len() as f64;
    let s1: f64 = lambda.iter().sum();
    let s2: f64 = lambda.iter().map(|v| v * v).sum();
    let (qa, qb, qc) = (k, -(2.0 + c) * s1, (1.0 + c) * s2);
    (-qb + (qb * qb - 4.0 * qa * qc).sqrt()) / (2.0 * qa)
}

/// Cauchy–Schwarz residual `Σ g² - (2√K/n) √(Σ g² Λ^{(l-2)/(l-1)}) √(Σ g Λ^{1/(l-1)})`.
pub fn sharp_residual(lambda: &[f64], n: u32, l: u32, x: f64) -> f64 {
    let e = 1.0 / f64::from(l - 1);
    let mut sq = 0.0;
    let mut p = 0.0;
    let mut q = 0.0;
    for &v in lambda {
        let g = x - v;
        sq += g * g;
        p += g * g * v.powf(1.0 - e);
        q += g * v.powf(e);
    }
    sq - 2.0 * coefficient(n, l).sqrt() / f64::from(n) * (p * q).sqrt()
}

/// `a_j^+` for `j = 1 … l-2`, by the `i128` recursion.
fn a_plus(l: u32, n: u32) -> Vec<f64> {
    let q = (l - 1) as usize;
    let phi = crate::poly::phi(q, i128::from(n));
    (1..q)
        .map(|j| {
            let sign = if (q - j).is_multiple_of(2) { 1 } else { -1 };
            (sign * phi[j]).max(0) as f64
        })
        .collect()
}

/// Spherical residual `LHS - min_δ RHS` with the minimum over weights found
/// by block enumeration.
pub fn sphere_residual(lambda: &[f64], n: u32, l: u32, x: f64) -> f64 {
    let nm2 = f64::from(n) - 2.0;
    let e = 1.0 / f64::from(l - 1);
    let ap = a_plus(l, n);
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    let konst = sign * nm2.powi(l as i32 - 2);
    let mut lhs = 0.0;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &v in lambda {
        let r = v.powf(e);
        let g = x - v;
        let h: f64 = konst
            + ap.iter()
                .enumerate()
                .map(|(j, c)| c * v.powf((j + 1) as f64 * e))
                .sum::<f64>();
        let s = v * (1.0 - 1.0 / (r - nm2)) + h;
        lhs += g * g * (2.0 + nm2 / (r - nm2));
        a.push(g * g * s);
        b.push(g * (r + nm2 * nm2 / 4.0));
    }
    let active: Vec<usize> = (0..a.len()).filter(|&i| a[i] != 0.0 || b[i] != 0.0).collect();
    if active.is_empty() {
        return lhs;
    }
    let aa: Vec<f64> = active.iter().map(|&i| a[i]).collect();
    let bb: Vec<f64> = active.iter().map(|&i| b[i]).collect();
    lhs - enumerate_blocks(&aa, &bb).1
}

/// Samples `[start, top]` uniformly from the bottom up, keeps the last
/// interval where `f` turns from nonpositive to positive, and bisects it to
/// `tol` relative. Returns `top` if `f(top) ≤ 0`.
pub fn last_crossing<F: Fn(f64) -> f64>(start: f64, top: f64, samples: usize, tol: f64, f: F) -> f64 {
    if top <= start || f(top) <= 0.0 {
        return top.max(start);
    }
    let at = |j: usize| {
        if j == samples {
            top
        } else {
            start + (top - start) * j as f64 / samples as f64
        }
    };
    let mut bracket = (at(samples - 1), top);
    let mut prev = f(start);
    for j in 1..=samples {
        let cur = f(at(j));
        if prev <= 0.0 && cur > 0.0 {
            bracket = (at(j - 1), at(j));
        }
        prev = cur;
    }
    let (mut lo, mut hi) = bracket;
    while hi - lo > tol * hi {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Cauchy–Schwarz bound, searched below the quadratic bound.
pub fn sharp_bound(lambda: &[f64], n: u32, l: u32) -> f64 {
    let last = lambda[lambda.len() - 1];
    let top = quadratic_bound(lambda, n, l);
    last_crossing(last, top, 20_000, 1e-15, |x| sharp_residual(lambda, n, l, x))
}

/// Spherical bound, searched below the point where every unconstrained
/// per-index term `g² W - 2 g^{3/2} √(S T)` is positive.
pub fn sphere_bound(lambda: &[f64], n: u32, l: u32) -> f64 {
    let last = lambda[lambda.len() - 1];
    let nm2 = f64::from(n) - 2.0;
    let e = 1.0 / f64::from(l - 1);
    let ap = a_plus(l, n);
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    let konst = sign * nm2.powi(l as i32 - 2);
    let top = lambda
        .iter()
        .map(|&v| {
            let r = v.powf(e);
            let h: f64 = konst
                + ap.iter()
                    .enumerate()
                    .map(|(j, c)| c * v.powf((j + 1) as f64 * e))
                    .sum::<f64>();
            let s = v * (1.0 - 1.0 / (r - nm2)) + h;
            let w = 2.0 + nm2 / (r - nm2);
            let t = r + nm2 * nm2 / 4.0;
            v + 4.0 * s * t / (w * w)
        })
        .fold(last, f64::max);
    last_crossing(last, top, 20_000, 1e-15, |x| sphere_residual(lambda, n, l, x))
}

/// A spectrum that satisfies the Euclidean inequalities: each new value is
/// placed a fraction `t_j ∈ [0, 1]` of the way from the last value to the
/// Cauchy–Schwarz bound of the values so far.
pub fn valid_spectrum(first: f64, fractions: &[f64], n: u32, l: u32) -> Vec<f64> {
    let mut v = vec![first];
    for &t in fractions {
        let last = v[v.len() - 1];
        let b = sharp_bound(&v, n, l);
        v.push(last + t * (b - last));
    }
    v
}

/// Like [`valid_spectrum`] for the spherical inequality. The first value is
/// shifted above the admissibility threshold `(n-2)^{l-1}`.
pub fn valid_sphere_spectrum(first: f64, fractions: &[f64], n: u32, l: u32) -> Vec<f64> {
    let mut v = vec![f64::from(n - 2).powi(l as i32 - 1) + first];
    for &t in fractions {
        let last = v[v.len() - 1];
        let b = sphere_bound(&v, n, l);
        v.push(last + t * (b - last));
    }
    v
}
