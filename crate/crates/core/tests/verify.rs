use std::time::Instant;

use polybuckle::eigen::solve_buckling;
use polybuckle::galerkin::Domain;
use polybuckle::verify::{
    check_lemma21, check_theorem11, convergence_study, rayleigh_quantities, run_verification,
    Status, VerifyConfig,
};
use polybuckle::{Error, Spectrum};

#[test]
fn rayleigh_quantities_hold_for_order_three() {
    for domain in [Domain::unit_interval(), Domain::unit_square()] {
        let s = solve_buckling(domain, 3, 12, 3).unwrap();
        let rows = check_lemma21(&s).unwrap();
        assert_eq!(rows.len(), 6);
        for row in &rows {
            assert!(row.passed, "{row:?}");
            assert!(row.r >= 0.0);
            assert!(row.r <= row.bound * (1.0 + 1e-6));
            if row.k == 1 {
                assert!((row.r - 1.0).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn rayleigh_quantities_need_normalized_vectors() {
    let s = solve_buckling(Domain::unit_interval(), 3, 4, 1).unwrap();
    let x: Vec<f64> = s.solution.vector(0).iter().map(|v| 2.0 * v).collect();
    assert!(rayleigh_quantities(&x, &s.forms).is_err());
    assert!(rayleigh_quantities(&x[..2], &s.forms).is_err());
}

#[test]
fn euclidean_inequalities_hold_on_the_square() {
    let start = Instant::now();
    for l in [2, 3] {
        let s = solve_buckling(Domain::unit_square(), l, 12, 6).unwrap();
        let checks = check_theorem11(&s.spectrum, 5).unwrap();
        assert_eq!(checks.len(), 5);
        for (k, reports) in checks.iter().enumerate() {
            for r in reports {
                assert!(r.satisfied, "l={l} k={} {r:?}", k + 1);
                assert_eq!(r.k, k + 1);
            }
            // The two implied bounds are ordered and sit above Λ_{k+1}.
            let sharp = reports[1].bound_value.unwrap();
            let quad = reports[2].bound_value.unwrap();
            assert!(sharp <= quad * (1.0 + 1e-9));
            assert!(sharp >= s.eigenvalues()[k + 1] * (1.0 - 1e-9));
        }
    }
    assert!(start.elapsed().as_secs_f64() < 60.0);
}

#[test]
fn theorem_checks_refuse_synthetic_spectra() {
    let s = Spectrum::synthetic(vec![1.0, 2.0, 3.0], 2, 2).unwrap();
    assert!(matches!(check_theorem11(&s, 2), Err(Error::Provenance(_))));
}

#[test]
fn convergence_is_monotone_and_settles() {
    let t = convergence_study(Domain::unit_interval(), 2, &[4, 6, 8, 10, 12], 2).unwrap();
    assert!(t.is_monotone());
    assert_eq!(t.rows.len(), 5);
    let want = 4.0 * std::f64::consts::PI.powi(2);
    assert!((t.extrapolated[0] - want).abs() / want < 1e-8);
    assert!(t.converged_at[0].is_some());
}

#[test]
fn full_run_passes_on_the_square() {
    let report = run_verification(&VerifyConfig {
        domain: Domain::unit_square(),
        l: 2,
        m: 10,
        k_max: 4,
    })
    .unwrap();
    assert!(report.pass);
    assert_eq!(report.status, Status::Passed);
    assert_eq!(report.theorem.len(), 4);
    assert!(report.lemma.iter().all(|r| r.passed));
}

#[test]
fn full_run_on_a_rectangle_notes_the_corners() {
    let report = run_verification(&VerifyConfig {
        domain: Domain::rectangle(1.0, 0.5).unwrap(),
        l: 3,
        m: 8,
        k_max: 2,
    })
    .unwrap();
    assert!(!report.notes.is_empty());
    assert_ne!(report.status, Status::Failed);
}

#[test]
fn interval_run_skips_the_euclidean_checks() {
    let report = run_verification(&VerifyConfig {
        domain: Domain::unit_interval(),
        l: 3,
        m: 10,
        k_max: 3,
    })
    .unwrap();
    assert!(report.theorem.is_empty());
    assert!(report.pass);
}
