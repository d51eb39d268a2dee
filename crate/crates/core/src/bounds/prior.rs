use crate::error::{invalid, Result};
use crate::spectrum::Spectrum;

use super::{gaps, BoundReport, Method};

/// The three earlier second-order inequalities at `candidate`, in the order
/// `prior16`, `prior18`, `prior19`:
///
/// * `Σ g² ≤ 4(n+2)/n² Σ g Λ`
/// * `Σ g² ≤ 4(n+4/3)/n² Σ g Λ`
/// * `2 Σ g² ≤ Σ g² (δΛ + δ²(Λ-(n-2)) / (4(δΛ+n-2))) + (1/δ) Σ g (Λ + (n-2)²/4)`
///
/// The last is the spherical form with a scalar weight `delta`.
pub fn eval_l2_priors(
    spectrum: &Spectrum,
    k: usize,
    candidate: f64,
    delta: f64,
) -> Result<Vec<BoundReport>> {
    if spectrum.l() != 2 {
        return Err(invalid(format!(
            "the earlier inequalities are second-order only, got l = {}",
            spectrum.l()
        )));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(invalid(format!("delta must be positive, got {delta}")));
    }
    let gap = gaps(spectrum, k, candidate)?;
    let lambda = &spectrum.values()[..k];
    let n = f64::from(spectrum.n());
    let shift = n - 2.0;

    let sq: f64 = gap.iter().map(|g| g * g).sum();
    let lin: f64 = gap.iter().zip(lambda).map(|(g, v)| g * v).sum();
    let c16 = 4.0 * (n + 2.0) / (n * n);
    let c18 = 4.0 * (n + 4.0 / 3.0) / (n * n);

    let rhs19: f64 = gap
        .iter()
        .zip(lambda)
        .map(|(g, &v)| {
            let weight = delta * v + delta * delta * (v - shift) / (4.0 * (delta * v + shift));
            g * g * weight + g * (v + shift * shift / 4.0) / delta
        })
        .sum();

    Ok(vec![
        BoundReport::new(Method::Prior16, k, candidate, sq, c16 * lin),
        BoundReport::new(Method::Prior18, k, candidate, sq, c18 * lin),
        BoundReport::new(Method::Prior19, k, candidate, 2.0 * sq, rhs19),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64], n: u32, l: u32) -> Spectrum {
        Spectrum::synthetic(v.to_vec(), n, l).unwrap()
    }

    #[test]
    fn stronger_coefficient() {
        for n in 2..=50 {
            let n = f64::from(n);
            assert!(4.0 * (n + 4.0 / 3.0) / (n * n) < 4.0 * (n + 2.0) / (n * n));
        }
    }

    #[test]
    fn tight_single_eigenvalue() {
        let r = eval_l2_priors(&spec(&[1.0], 2, 2), 1, 13.0 / 3.0, 1.0).unwrap();
        assert_eq!(r[1].method, Method::Prior18);
        assert!(r[1].residual.abs() < 1e-12);
        assert!(r[1].satisfied);
        assert!(r[0].residual < 0.0);
    }

    #[test]
    fn zero_gap_candidate() {
        let r = eval_l2_priors(&spec(&[2.0, 2.0], 3, 2), 2, 2.0, 0.4).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|b| b.residual <= 0.0 && b.satisfied));
    }

    #[test]
    fn rejects_higher_order_and_bad_delta() {
        assert!(eval_l2_priors(&spec(&[1.0], 2, 3), 1, 2.0, 1.0).is_err());
        assert!(eval_l2_priors(&spec(&[1.0], 2, 2), 1, 2.0, 0.0).is_err());
    }
}
