use num_bigint::BigInt;
use polybuckle::polyrec::{
    extract_a_coefficients, fg_polynomials, h_term, phi_polynomial, s_term, Polynomial,
};
use polybuckle::Error;
use polybuckle_oracles::poly;
use proptest::prelude::*;

fn as_i128(p: &Polynomial) -> Vec<i128> {
    p.coeffs()
        .iter()
        .map(|c| i128::try_from(c.clone()).expect("fits in i128"))
        .collect()
}

#[test]
fn phi_matches_independent_recursion_on_grid() {
    for n in 2..=10u32 {
        for q in 1..=12u32 {
            let p = phi_polynomial(q, n).unwrap();
            assert_eq!(as_i128(&p), poly::phi(q as usize, n.into()), "n={n} q={q}");
        }
    }
}

#[test]
fn fg_match_independent_recursion_on_grid() {
    for n in 2..=10u32 {
        for q in 0..=11u32 {
            let (f, g) = fg_polynomials(q, n).unwrap();
            let (of, og) = poly::fg(q as usize, n.into());
            assert_eq!(as_i128(&f), of, "F n={n} q={q}");
            assert_eq!(as_i128(&g), og, "G n={n} q={q}");
        }
    }
}

#[test]
fn phi3_matches_hand_expansion() {
    for n in 2..=10u32 {
        let p = phi_polynomial(3, n).unwrap();
        assert_eq!(as_i128(&p), poly::phi3_by_hand(n.into()));
    }
}

#[test]
fn monic_constant_and_commutator_identity() {
    let t = Polynomial::monomial(1);
    for n in 2..=10u32 {
        for q in 1..=12u32 {
            let p = phi_polynomial(q, n).unwrap();
            assert!(p.is_monic());
            assert_eq!(p.degree(), q as usize);
            assert_eq!(p.coeff(0), -BigInt::from(n - 2).pow(q - 1));
            let (f, g) = fg_polynomials(q - 1, n).unwrap();
            assert_eq!(p, &(&t * &f) - &g);
        }
    }
}

#[test]
fn coefficients_for_l2_are_empty() {
    for n in 2..=10 {
        let c = extract_a_coefficients(2, n).unwrap();
        assert!(c.a.is_empty() && c.a_plus.is_empty());
    }
}

#[test]
fn sign_pattern_gives_positive_middle_coefficient_for_l3() {
    // Φ_2 = t^2 - (n+5) t - (n-2), so a_1 = n + 5.
    for n in 2..=10u32 {
        let c = extract_a_coefficients(3, n).unwrap();
        assert_eq!(c.a, vec![BigInt::from(n + 5)]);
    }
}

#[test]
fn l2_s_term_reduction() {
    for n in 2..=10u32 {
        for &lam in &[9.5, 20.0, 123.25, 4000.0] {
            if lam <= f64::from(n - 2) {
                continue;
            }
            let s = s_term(2, n, lam).unwrap();
            let expect = lam * (1.0 - 1.0 / (lam - f64::from(n - 2))) + 1.0;
            assert!((s - expect).abs() <= 1e-12 * expect.abs(), "n={n} λ={lam}");
            assert_eq!(h_term(2, n, lam).unwrap(), 1.0);
        }
    }
    // At n = 2 the reduction collapses to S = Λ.
    for &lam in &[0.5, 3.0, 77.0] {
        let s = s_term(2, 2, lam).unwrap();
        assert!((s - lam).abs() <= 1e-12 * lam);
    }
}

#[test]
fn s_term_rejects_small_eigenvalues() {
    // l = 3, n = 6: the root √λ must exceed 4.
    match s_term(3, 6, 16.0) {
        Err(Error::DomainViolation { threshold, .. }) => assert_eq!(threshold, 4),
        other => panic!("expected a domain violation, got {other:?}"),
    }
    assert!(s_term(3, 6, 16.5).is_ok());
}

#[test]
fn h_term_monotone_on_grids() {
    for l in 2..=7u32 {
        for n in 2..=8u32 {
            let mut prev = f64::NEG_INFINITY;
            for j in 1..200 {
                let lam = 0.5 * f64::from(j).powi(2);
                let h = h_term(l, n, lam).unwrap();
                assert!(h >= prev, "l={l} n={n} λ={lam}");
                prev = h;
            }
        }
    }
}

#[test]
fn invalid_orders_are_rejected() {
    assert!(matches!(phi_polynomial(0, 3), Err(Error::InvalidParameter(_))));
    assert!(matches!(phi_polynomial(2, 1), Err(Error::InvalidParameter(_))));
    assert!(matches!(extract_a_coefficients(1, 3), Err(Error::InvalidParameter(_))));
}

proptest! {
    #[test]
    fn values_agree_with_oracle_at_integers(n in 2u32..=10, q in 1u32..=8, t in -20i64..=20) {
        let p = phi_polynomial(q, n).unwrap();
        let o = poly::phi(q as usize, n.into());
        let direct: i128 = o.iter().rev().fold(0i128, |acc, c| acc * i128::from(t) + c);
        prop_assert_eq!(p.eval(&BigInt::from(t)), BigInt::from(direct));
    }

    #[test]
    fn s_term_nondecreasing_when_coefficients_nonnegative(
        l in 2u32..=6, n in 2u32..=6, x in 1.0f64..50.0, dx in 0.0f64..10.0,
    ) {
        let c = extract_a_coefficients(l, n).unwrap();
        prop_assume!(c.a.iter().all(|a| a >= &BigInt::from(0)));
        let thresh = f64::from(n - 2) + 1e-3;
        let lam = (thresh + x).powi(l as i32 - 1);
        let lam2 = (thresh + x + dx).powi(l as i32 - 1);
        let s1 = c.s_term(lam).unwrap();
        let s2 = c.s_term(lam2).unwrap();
        prop_assert!(s2 >= s1 * (1.0 - 1e-12));
    }
}
