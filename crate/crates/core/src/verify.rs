//! End-to-end checks on computed spectra: the Euclidean inequalities at the
//! finest resolution, the Rayleigh-quantity bounds on discrete eigenvectors,
//! and Rayleigh–Ritz convergence across nested bases.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    eval_cor11, eval_eq112, eval_thm11_optimized, next_bound_cor11, next_bound_sharp, BoundReport,
};
use crate::eigen::{solve_buckling, BucklingSolution};
use crate::error::{invalid, Error, Result};
use crate::galerkin::{Domain, OperatorForms};
use crate::polyrec::root_power;
use crate::spectrum::{Provenance, Spectrum};

/// Relative slack on `r_k ≤ Λ^{(k-1)/(l-1)}`.
pub const LEMMA_SLACK: f64 = 1e-6;

/// `|xᵀ B x - 1|` above this means the vector is not `B`-normalized.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// `r_1 = xᵀ B x` must equal 1 to this accuracy.
pub const UNIT_ENERGY_TOL: f64 = 1e-10;

/// Successive relative change below which a column counts as converged.
pub const CONVERGED_REL_CHANGE: f64 = 1e-7;

/// Allowed relative increase along nested bases before it counts as a
/// Rayleigh–Ritz monotonicity violation (solver roundoff only).
pub const MONOTONE_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    /// Violated, but by less than the estimated discretization error.
    Inconclusive,
    Failed,
}

/// `r_k = xᵀ A_k x` for `k = 1 … l-1`.
pub fn rayleigh_quantities(x: &[f64], forms: &OperatorForms) -> Result<Vec<f64>> {
    if x.len() != forms.dofs() {
        return Err(invalid(format!(
            "vector has length {}, expected {}",
            x.len(),
            forms.dofs()
        )));
    }
    let energy = forms.b().bilinear(x, x);
    if (energy - 1.0).abs() > NORMALIZATION_TOL {
        return Err(invalid(format!(
            "eigenvector is not B-normalized: xᵀBx = {energy}"
        )));
    }
    let l = forms.l() as usize;
    Ok((1..l).map(|k| forms.a(k).bilinear(x, x)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaRow {
    /// 1-based eigenpair index.
    pub i: usize,
    pub k: usize,
    pub r: f64,
    /// `Λ_i^{(k-1)/(l-1)}`
    pub bound: f64,
    /// `bound · (1 + slack) - r`
    pub margin: f64,
    pub passed: bool,
}

/// `0 ≤ r_k ≤ Λ_i^{(k-1)/(l-1)} (1 + 1e-6)` for every retained eigenpair and
/// `k = 1 … l-1`, with `r_1 = 1` to `1e-10`. Violations are recorded in the
/// rows, not raised.
pub fn check_lemma21(solution: &BucklingSolution) -> Result<Vec<LemmaRow>> {
    let l = solution.forms.l();
    let mut rows = Vec::new();
    for (idx, &lam) in solution.eigenvalues().iter().enumerate() {
        let x = solution.solution.vector(idx);
        let r = rayleigh_quantities(&x, &solution.forms)?;
        for (j, &rk) in r.iter().enumerate() {
            let k = j + 1;
            let bound = root_power(lam, k as u32 - 1, l - 1);
            let margin = bound * (1.0 + LEMMA_SLACK) - rk;
            let mut passed = rk >= 0.0 && margin >= 0.0;
            if k == 1 {
                passed &= (rk - 1.0).abs() <= UNIT_ENERGY_TOL;
            }
            rows.push(LemmaRow {
                i: idx + 1,
                k,
                r: rk,
                bound,
                margin,
                passed,
            });
        }
    }
    Ok(rows)
}

/// The Euclidean inequalities at `candidate = Λ_{k+1}` for `k = 1 … k_max`:
/// per `k`, the weighted form with optimized weights, its Cauchy–Schwarz
/// form, and the quadratic form, in that order. The last two carry the
/// bounds they imply for `Λ_{k+1}`.
///
/// Refuses spectra that were not computed here: the inequalities are
/// theorems about true spectra and nothing is learned from checking them
/// on arbitrary sequences.
pub fn check_theorem11(spectrum: &Spectrum, k_max: usize) -> Result<Vec<Vec<BoundReport>>> {
    if spectrum.provenance() != Provenance::Computed {
        return Err(Error::Provenance(format!(
            "theorem checks need a computed spectrum, got {:?} provenance",
            spectrum.provenance()
        )));
    }
    if k_max == 0 {
        return Ok(Vec::new());
    }
    if spectrum.len() < k_max + 1 {
        return Err(invalid(format!(
            "k_max = {k_max} needs {} eigenvalues, spectrum has {}",
            k_max + 1,
            spectrum.len()
        )));
    }
    (1..=k_max)
        .map(|k| {
            let x = spectrum.values()[k];
            let (thm, _) = eval_thm11_optimized(spectrum, k, x)?;
            let cs = eval_eq112(spectrum, k, x)?.with_bound(next_bound_sharp(spectrum, k)?);
            let quad = eval_cor11(spectrum, k, x)?.with_bound(next_bound_cor11(spectrum, k)?);
            Ok(vec![thm, cs, quad])
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub m: usize,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Per eigenvalue index: estimates never increase along the rows.
    pub monotone: Vec<bool>,
    /// Per eigenvalue index: Aitken Δ² limit of the last three rows, or the
    /// last value when fewer rows exist or the differences degenerate.
    pub extrapolated: Vec<f64>,
    /// Per eigenvalue index: first `m` whose relative change from the
    /// previous row is below `1e-7`.
    pub converged_at: Vec<Option<usize>>,
}

impl ConvergenceTable {
    pub fn is_monotone(&self) -> bool {
        self.monotone.iter().all(|&b| b)
    }
}

/// Aitken's Δ² on three successive estimates. The Galerkin error decays
/// geometrically in the polynomial degree, which is the regime Δ² is exact
/// for.
fn aitken(x0: f64, x1: f64, x2: f64) -> Option<f64> {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let denom = d2 - d1;
    if denom == 0.0 || !(d1 * d2 > 0.0) {
        return None;
    }
    let lim = x2 - d2 * d2 / denom;
    lim.is_finite().then_some(lim)
}

/// Lowest `count` eigenvalues for each `m` in the strictly increasing
/// `m_list`. Independent resolutions run in parallel; row order follows
/// `m_list`.
pub fn convergence_study(
    domain: Domain,
    l: u32,
    m_list: &[usize],
    count: usize,
) -> Result<ConvergenceTable> {
    if m_list.is_empty() {
        return Err(invalid("m list is empty"));
    }
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!("m list {m_list:?} is not strictly increasing")));
    }
    let rows: Vec<ConvergenceRow> = m_list
        .par_iter()
        .map(|&m| {
            let s = solve_buckling(domain, l, m, count)?;
            Ok(ConvergenceRow {
                m,
                values: s.eigenvalues().to_vec(),
            })
        })
        .collect::<Result<_>>()?;

    let column = |j: usize| -> Vec<f64> { rows.iter().map(|r| r.values[j]).collect() };
    let mut monotone = Vec::with_capacity(count);
    let mut extrapolated = Vec::with_capacity(count);
    let mut converged_at = Vec::with_capacity(count);
    for j in 0..count {
        let c = column(j);
        monotone.push(c.windows(2).all(|w| w[1] <= w[0] * (1.0 + MONOTONE_REL_TOL)));
        let last = c[c.len() - 1];
        let lim = match c.len() {
            n if n >= 3 => aitken(c[n - 3], c[n - 2], c[n - 1]).unwrap_or(last),
            _ => last,
        };
        extrapolated.push(lim);
        converged_at.push(
            c.windows(2)
                .position(|w| ((w[1] - w[0]) / w[0]).abs() < CONVERGED_REL_CHANGE)
                .map(|p| rows[p + 1].m),
        );
    }
    Ok(ConvergenceTable {
        rows,
        monotone,
        extrapolated,
        converged_at,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub domain: Domain,
    pub l: u32,
    pub m: usize,
    pub k_max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub k: usize,
    pub candidate: f64,
    pub reports: Vec<BoundReport>,
    /// Per report: change in residual between the coarser and the final
    /// resolution, used as the discretization error estimate.
    pub discretization_estimate: Vec<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub domain: Domain,
    pub n: u32,
    pub l: u32,
    pub m: usize,
    pub count: usize,
    pub notes: Vec<String>,
    pub eigenvalues: Vec<f64>,
    pub theorem: Vec<TheoremCheck>,
    pub lemma: Vec<LemmaRow>,
    pub convergence: ConvergenceTable,
    pub status: Status,
    pub pass: bool,
}

/// Coarser nested resolutions for the convergence table and the
/// discretization estimate.
fn resolution_ladder(m: usize) -> Vec<usize> {
    let mut out: Vec<usize> = [m.saturating_sub(4), m.saturating_sub(2), m]
        .into_iter()
        .filter(|&x| x >= 1)
        .collect();
    out.dedup();
    out
}

fn classify(report: &BoundReport, estimate: f64) -> Status {
    if report.satisfied {
        Status::Passed
    } else if report.residual - report.tolerance() <= estimate {
        Status::Inconclusive
    } else {
        Status::Failed
    }
}

fn worst(a: Status, b: Status) -> Status {
    match (a, b) {
        (Status::Failed, _) | (_, Status::Failed) => Status::Failed,
        (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
        _ => Status::Passed,
    }
}

/// Runs every check at resolution `m` and summarizes.
///
/// Inequalities are asserted only at the final `m`. A violation no larger
/// than the residual's change from the next coarser resolution is reported as
/// inconclusive instead of failed.
pub fn run_verification(config: &VerifyConfig) -> Result<VerificationReport> {
    let VerifyConfig {
        domain,
        l,
        m,
        k_max,
    } = *config;
    let n = domain.dim();
    let count = (k_max + 1).max(3);
    let ladder = resolution_ladder(m);
    if count > m.pow(n) {
        return Err(invalid(format!(
            "k_max = {k_max} needs {count} eigenvalues but the space has dimension {}",
            m.pow(n)
        )));
    }

    let mut notes = Vec::new();
    if matches!(domain, Domain::Rectangle { .. }) {
        notes.push(
            "rectangle has corners; the inequalities are proved for smooth boundaries, so \
             satisfaction here is evidence rather than a guaranteed consequence"
                .to_string(),
        );
    }
    if n < 2 && k_max > 0 {
        notes.push("inequality checks need n >= 2 and are skipped in one dimension".to_string());
    }

    let fine = solve_buckling(domain, l, m, count)?;
    let lemma = check_lemma21(&fine)?;
    let convergence = convergence_study(domain, l, &ladder, count)?;

    let mut theorem = Vec::new();
    if n >= 2 && k_max > 0 {
        let final_reports = check_theorem11(&fine.spectrum, k_max)?;
        let coarse_reports = match ladder.len() {
            len if len >= 2 => {
                let coarse = solve_buckling(domain, l, ladder[len - 2], count)?;
                Some(check_theorem11(&coarse.spectrum, k_max)?)
            }
            _ => None,
        };
        for (idx, reports) in final_reports.into_iter().enumerate() {
            let estimate: Vec<f64> = reports
                .iter()
                .enumerate()
                .map(|(r, rep)| match &coarse_reports {
                    Some(c) => (rep.residual - c[idx][r].residual).abs(),
                    None => 0.0,
                })
                .collect();
            let status = reports
                .iter()
                .zip(&estimate)
                .map(|(rep, &e)| classify(rep, e))
                .fold(Status::Passed, worst);
            theorem.push(TheoremCheck {
                k: idx + 1,
                candidate: fine.eigenvalues()[idx + 1],
                reports,
                discretization_estimate: estimate,
                status,
            });
        }
    }

    let mut status = theorem.iter().map(|t| t.status).fold(Status::Passed, worst);
    if lemma.iter().any(|r| !r.passed) || !convergence.is_monotone() {
        status = Status::Failed;
    }
    Ok(VerificationReport {
        schema: 1,
        domain,
        n,
        l,
        m,
        count,
        notes,
        eigenvalues: fine.eigenvalues().to_vec(),
        theorem,
        lemma,
        convergence,
        status,
        pass: status != Status::Failed,
    })
}
