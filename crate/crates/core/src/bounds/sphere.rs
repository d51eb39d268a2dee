use crate::error::{Error, Result};
use crate::polyrec::{admissible_root, extract_a_coefficients};
use crate::spectrum::Spectrum;

use super::delta::pool;
use super::root::upper_crossing;
use super::{check_k, check_nl, gaps, tolerance, BoundReport, DeltaSequence, Method};

/// Per-eigenvalue coefficients of the spherical inequality.
struct SphereCoefficients {
    /// `2 + (n-2)/(Λ^{1/(l-1)} - (n-2))`
    w: Vec<f64>,
    /// `S_i`
    s: Vec<f64>,
    /// `Λ^{1/(l-1)} + (n-2)²/4`
    t: Vec<f64>,
}

impl SphereCoefficients {
    fn new(spectrum: &Spectrum, k: usize) -> Result<Self> {
        let (n, l) = (spectrum.n(), spectrum.l());
        check_nl(n, l)?;
        check_k(spectrum, k)?;
        let coeffs = extract_a_coefficients(l, n)?;
        let shift = f64::from(n - 2);
        let mut out = SphereCoefficients {
            w: Vec::with_capacity(k),
            s: Vec::with_capacity(k),
            t: Vec::with_capacity(k),
        };
        for (i, &lam) in spectrum.values()[..k].iter().enumerate() {
            let root = admissible_root(l, n, lam, i + 1)?;
            let excess = root - shift;
            out.w.push(2.0 + shift / excess);
            out.s.push(lam * (1.0 - 1.0 / excess) + coeffs.h_term(lam)?);
            out.t.push(root + shift * shift / 4.0);
        }
        Ok(out)
    }

    fn lhs(&self, gap: &[f64]) -> f64 {
        gap.iter().zip(&self.w).map(|(g, w)| g * g * w).sum()
    }

    /// Above `max_i (Λ_i + 4 S_i T_i / W_i²)` every term of
    /// `LHS - Σ 2√(a_i b_i)` is positive. The unconstrained minimum over `δ`
    /// bounds the constrained one from below, so the residual is positive there.
    fn ceiling(&self, lambda: &[f64]) -> f64 {
        (0..lambda.len())
            .map(|i| lambda[i] + 4.0 * self.s[i] * self.t[i] / (self.w[i] * self.w[i]))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn delta_weights(&self, gap: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let a = gap.iter().zip(&self.s).map(|(g, s)| g * g * s).collect();
        let b = gap.iter().zip(&self.t).map(|(g, t)| g * t).collect();
        (a, b)
    }
}

/// Spherical inequality with weights `δ`:
/// `Σ g² (2 + (n-2)/(Λ^{1/(l-1)}-(n-2))) ≤ Σ g² δ S + Σ g (Λ^{1/(l-1)} + (n-2)²/4) / δ`.
///
/// Every `Λ_i`, `i ≤ k`, must satisfy `Λ_i^{1/(l-1)} > n-2`.
pub fn eval_thm12(
    spectrum: &Spectrum,
    k: usize,
    candidate: f64,
    delta: &DeltaSequence,
) -> Result<BoundReport> {
    let gap = gaps(spectrum, k, candidate)?;
    let c = SphereCoefficients::new(spectrum, k)?;
    if delta.len() != k {
        return Err(Error::InvalidDelta(format!(
            "expected {k} weights, got {}",
            delta.len()
        )));
    }
    let (a, b) = c.delta_weights(&gap);
    let rhs: f64 = delta
        .values()
        .iter()
        .zip(a.iter().zip(&b))
        .map(|(d, (a, b))| d * a + b / d)
        .sum();
    Ok(BoundReport::new(Method::Thm12, k, candidate, c.lhs(&gap), rhs))
}

/// The weights `(a_i, b_i)` multiplying `δ_i` and `1/δ_i` on the right-hand
/// side of the spherical inequality at `candidate`.
pub fn sphere_delta_weights(
    spectrum: &Spectrum,
    k: usize,
    candidate: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let gap = gaps(spectrum, k, candidate)?;
    Ok(SphereCoefficients::new(spectrum, k)?.delta_weights(&gap))
}

/// Largest `x ≥ Λ_k` for which the spherical inequality holds with the best
/// non-increasing `δ`, re-optimized at every probe.
///
/// Fails with [`Error::Unbounded`] when some `S_i ≤ 0`: the right-hand side
/// then has no lower bound in `δ` and every candidate is admissible.
pub fn next_bound_sphere(spectrum: &Spectrum, k: usize) -> Result<f64> {
    let c = SphereCoefficients::new(spectrum, k)?;
    if let Some(i) = c.s.iter().position(|&s| !(s > 0.0)) {
        return Err(Error::Unbounded(format!(
            "S_{} = {} is not positive, so no finite bound follows",
            i + 1,
            c.s[i]
        )));
    }
    let values = &spectrum.values()[..k];
    upper_crossing(values[k - 1], Some(c.ceiling(values)), |x| {
        let gap: Vec<f64> = values.iter().map(|v| x - v).collect();
        let (a, b) = c.delta_weights(&gap);
        let (_, min_rhs) = pool(&a, &b);
        let lhs = c.lhs(&gap);
        Ok((lhs - min_rhs, tolerance(lhs, min_rhs)))
    })
}
