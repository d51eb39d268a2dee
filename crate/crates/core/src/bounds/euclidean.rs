use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::polyrec::root_power;
use crate::spectrum::Spectrum;

use super::delta::pool;
use super::root::upper_crossing;
use super::{euclidean_coefficient, euclidean_coefficient_f64, gaps, BoundReport, DeltaSequence, Method};

/// Per-index ingredients of the Euclidean inequalities at one candidate.
struct Terms<'a> {
    n: f64,
    coef: f64,
    lambda: &'a [f64],
    gap: Vec<f64>,
    /// `Λ_i^{(l-2)/(l-1)}`
    p: Vec<f64>,
    /// `Λ_i^{1/(l-1)}`
    q: Vec<f64>,
}

impl<'a> Terms<'a> {
    fn new(spectrum: &'a Spectrum, k: usize, candidate: f64) -> Result<Self> {
        let gap = gaps(spectrum, k, candidate)?;
        let (n, l) = (spectrum.n(), spectrum.l());
        let lambda = &spectrum.values()[..k];
        Ok(Terms {
            n: f64::from(n),
            coef: euclidean_coefficient_f64(n, l)?,
            lambda,
            gap,
            p: lambda.iter().map(|&v| root_power(v, l - 2, l - 1)).collect(),
            q: lambda.iter().map(|&v| root_power(v, 1, l - 1)).collect(),
        })
    }

    fn sum_sq_gaps(&self) -> f64 {
        self.gap.iter().map(|g| g * g).sum()
    }

    /// Weights of `δ_i` and `1/δ_i` on the right-hand side.
    fn delta_weights(&self) -> (Vec<f64>, Vec<f64>) {
        let a = self
            .gap
            .iter()
            .zip(&self.p)
            .map(|(g, p)| g * g * self.coef * p)
            .collect();
        let b = self.gap.iter().zip(&self.q).map(|(g, q)| g * q).collect();
        (a, b)
    }

    /// `Σ g² Λ^{(l-2)/(l-1)}` and `Σ g Λ^{1/(l-1)}`.
    fn moment_sums(&self) -> (f64, f64) {
        let pa: f64 = self.gap.iter().zip(&self.p).map(|(g, p)| g * g * p).sum();
        let qb: f64 = self.gap.iter().zip(&self.q).map(|(g, q)| g * q).sum();
        (pa, qb)
    }
}

/// Euclidean inequality with weights `δ`:
/// `n Σ g² ≤ K Σ δ_i g_i² Λ_i^{(l-2)/(l-1)} + Σ g_i Λ_i^{1/(l-1)} / δ_i`.
pub fn eval_thm11(
    spectrum: &Spectrum,
    k: usize,
    candidate: f64,
    delta: &DeltaSequence,
) -> Result<BoundReport> {
    let t = Terms::new(spectrum, k, candidate)?;
    if delta.len() != k {
        return Err(Error::InvalidDelta(format!(
            "expected {k} weights, got {}",
            delta.len()
        )));
    }
    Ok(thm11_report(&t, k, candidate, delta.values()))
}

fn thm11_report(t: &Terms, k: usize, candidate: f64, delta: &[f64]) -> BoundReport {
    let (a, b) = t.delta_weights();
    let lhs = t.n * t.sum_sq_gaps();
    let rhs: f64 = delta
        .iter()
        .zip(a.iter().zip(&b))
        .map(|(d, (a, b))| d * a + b / d)
        .sum();
    BoundReport::new(Method::Thm11, k, candidate, lhs, rhs)
}

/// [`eval_thm11`] with the weights that minimize the right-hand side.
pub fn eval_thm11_optimized(
    spectrum: &Spectrum,
    k: usize,
    candidate: f64,
) -> Result<(BoundReport, DeltaSequence)> {
    let t = Terms::new(spectrum, k, candidate)?;
    let (a, b) = t.delta_weights();
    let (delta, _) = pool(&a, &b);
    let report = thm11_report(&t, k, candidate, &delta);
    Ok((report, DeltaSequence::new(delta)?))
}

/// The constant weight `√(Σ g Λ^{1/(l-1)} / (K Σ g² Λ^{(l-2)/(l-1)}))` that
/// collapses the Euclidean inequality to its Cauchy–Schwarz form.
pub fn remark_constant_delta(spectrum: &Spectrum, k: usize, candidate: f64) -> Result<DeltaSequence> {
    let t = Terms::new(spectrum, k, candidate)?;
    let (pa, qb) = t.moment_sums();
    if !(pa > 0.0) {
        return Err(invalid("all gaps vanish; the constant weight is undefined"));
    }
    DeltaSequence::constant((qb / (t.coef * pa)).sqrt(), k)
}

/// `Σ g² ≤ (2√K / n) √(Σ g² Λ^{(l-2)/(l-1)}) √(Σ g Λ^{1/(l-1)})`.
pub fn eval_eq112(spectrum: &Spectrum, k: usize, candidate: f64) -> Result<BoundReport> {
    let t = Terms::new(spectrum, k, candidate)?;
    Ok(eq112_report(&t, k, candidate))
}

fn eq112_report(t: &Terms, k: usize, candidate: f64) -> BoundReport {
    let (pa, qb) = t.moment_sums();
    let rhs = 2.0 * t.coef.sqrt() / t.n * pa.sqrt() * qb.sqrt();
    BoundReport::new(Method::Eq112, k, candidate, t.sum_sq_gaps(), rhs)
}

/// `Σ g² ≤ (4K / n²) Σ g Λ`.
pub fn eval_cor11(spectrum: &Spectrum, k: usize, candidate: f64) -> Result<BoundReport> {
    let t = Terms::new(spectrum, k, candidate)?;
    let c = 4.0 * t.coef / (t.n * t.n);
    let s: f64 = t.gap.iter().zip(t.lambda).map(|(g, v)| g * v).sum();
    Ok(BoundReport::new(Method::Cor11, k, candidate, t.sum_sq_gaps(), c * s))
}

/// Larger root of `k x² - (2+C) S₁ x + (1+C) S₂ = 0` with `C = 4K/n²`,
/// `S₁ = Σ Λ_i`, `S₂ = Σ Λ_i²`.
pub fn next_bound_cor11(spectrum: &Spectrum, k: usize) -> Result<f64> {
    let last = spectrum.values().get(k.wrapping_sub(1)).copied().unwrap_or(0.0);
    let t = Terms::new(spectrum, k, last)?;
    let c = 4.0 * t.coef / (t.n * t.n);
    let s1: f64 = t.lambda.iter().sum();
    let s2: f64 = t.lambda.iter().map(|v| v * v).sum();
    let kf = k as f64;
    let disc = (2.0 + c) * (2.0 + c) * s1 * s1 - 4.0 * kf * (1.0 + c) * s2;
    if disc < 0.0 {
        return Err(Error::InfeasibleSpectrum(format!(
            "quadratic bound has negative discriminant {disc:e}"
        )));
    }
    let root = ((2.0 + c) * s1 + disc.sqrt()) / (2.0 * kf);
    if root < last * (1.0 - 1e-12) {
        return Err(Error::InfeasibleSpectrum(format!(
            "quadratic bound {root} lies below Λ_{k} = {last}"
        )));
    }
    Ok(root.max(last))
}

/// The quadratic bound for a single eigenvalue, `Λ_1 (1 + 4K/n²)`, exactly.
pub fn next_bound_cor11_single_exact(lambda1: &BigRational, n: u32, l: u32) -> Result<BigRational> {
    if !lambda1.is_positive() {
        return Err(invalid(format!("Λ_1 must be positive, got {lambda1}")));
    }
    let c = euclidean_coefficient(n, l)? * BigRational::new(4.into(), (n * n).into());
    Ok(lambda1 * (BigRational::one() + c))
}

/// Largest `x ≥ Λ_k` satisfying the Cauchy–Schwarz form of the Euclidean
/// inequality.
///
/// For ordered eigenvalues and `x ≥ Λ_k`,
/// `Σ g² Λ^{(l-2)/(l-1)} · Σ g Λ^{1/(l-1)} ≤ Σ g² · Σ g Λ`, so the residual is
/// positive beyond the quadratic bound. That bound is the scan ceiling; the
/// residual is not monotone below it.
pub fn next_bound_sharp(spectrum: &Spectrum, k: usize) -> Result<f64> {
    let last = spectrum.values().get(k.wrapping_sub(1)).copied().unwrap_or(0.0);
    Terms::new(spectrum, k, last)?;
    let ceiling = next_bound_cor11(spectrum, k).ok();
    upper_crossing(last, ceiling, |x| {
        let t = Terms::new(spectrum, k, x)?;
        let r = eq112_report(&t, k, x);
        Ok((r.residual, r.tolerance()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainMethod {
    Cor11,
    Sharp,
}

/// `b_1 = λ₁` and `b_{j+1}` = next bound from `b_1 … b_j`, treating earlier
/// bounds as the worst-case lower eigenvalues.
pub fn chain_bounds(
    lambda1: f64,
    count: usize,
    n: u32,
    l: u32,
    method: ChainMethod,
) -> Result<Vec<f64>> {
    if !(lambda1 > 0.0) || !lambda1.is_finite() {
        return Err(invalid(format!("lambda1 must be positive, got {lambda1}")));
    }
    if count == 0 {
        return Err(invalid("count must be >= 1"));
    }
    euclidean_coefficient_f64(n, l)?;
    let mut out = vec![lambda1];
    while out.len() < count {
        let spectrum = Spectrum::synthetic(out.clone(), n, l)?;
        let j = out.len();
        let next = match method {
            ChainMethod::Cor11 => next_bound_cor11(&spectrum, j)?,
            ChainMethod::Sharp => next_bound_sharp(&spectrum, j)?,
        };
        if !(next > out[j - 1]) {
            return Err(Error::Numerical(format!(
                "chain stalled at step {}: {next} does not exceed {}",
                j + 1,
                out[j - 1]
            )));
        }
        out.push(next);
    }
    Ok(out)
}
