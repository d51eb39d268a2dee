use crate::galerkin::{assemble_forms, Domain, OperatorForms};
use crate::spectrum::{Provenance, Spectrum};
use crate::error::Result;

use super::{solve_generalized, EigenSolution};

/// Discrete buckling spectrum together with the eigenvectors and forms it
/// was computed from.
#[derive(Debug, Clone)]
pub struct BucklingSolution {
    pub spectrum: Spectrum,
    pub solution: EigenSolution,
    pub forms: OperatorForms,
}

impl BucklingSolution {
    pub fn eigenvalues(&self) -> &[f64] {
        self.spectrum.values()
    }
}

/// Lowest `count` eigenvalues of `A_l x = Λ B x` on the clamped polynomial
/// space of degree count `m` per direction. Each is an upper bound of the
/// corresponding true eigenvalue.
pub fn solve_buckling(domain: Domain, l: u32, m: usize, count: usize) -> Result<BucklingSolution> {
    let forms = assemble_forms(domain, l, m)?;
    let solution = solve_generalized(forms.a(l as usize), forms.b(), count)?;
    let spectrum = Spectrum::new(
        solution.eigenvalues().to_vec(),
        domain.dim(),
        l,
        Provenance::Computed,
    )?;
    Ok(BucklingSolution {
        spectrum,
        solution,
        forms,
    })
}
