use num_rational::BigRational;
use polybuckle::bounds::{
    chain_bounds, delta_objective, euclidean_coefficient, euclidean_coefficient_f64, eval_cor11,
    eval_eq112, eval_l2_priors, eval_thm11, eval_thm11_optimized, eval_thm12, next_bound_cor11,
    next_bound_sharp, next_bound_sphere, optimize_delta, remark_constant_delta,
    sphere_delta_weights, ChainMethod, DeltaSequence,
};
use polybuckle::polyrec::s_term;
use polybuckle::{Error, Spectrum};
use polybuckle_oracles::{closed_form, delta as odelta, roots};
use proptest::prelude::*;

fn spec(v: &[f64], n: u32, l: u32) -> Spectrum {
    Spectrum::synthetic(v.to_vec(), n, l).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Increasing spectrum with `Λ_1 ∈ [lo, lo·10]` and relative steps up to 100%.
fn spectrum_strategy(max_k: usize, lo: f64) -> impl Strategy<Value = Vec<f64>> {
    (lo..lo * 10.0, prop::collection::vec(0.0f64..1.0, 0..max_k)).prop_map(|(first, steps)| {
        let mut v = vec![first];
        for s in steps {
            let last = *v.last().unwrap();
            v.push(last * (1.0 + s));
        }
        v
    })
}

/// Spectra built step by step below the independent bound.
fn valid_strategy(max_k: usize, n: u32, l: u32) -> impl Strategy<Value = Vec<f64>> {
    (0.1f64..10.0, prop::collection::vec(0.0f64..=1.0, 0..max_k))
        .prop_map(move |(first, t)| roots::valid_spectrum(first, &t, n, l))
}

fn valid_with_dims(max_k: usize) -> impl Strategy<Value = (Vec<f64>, u32, u32)> {
    (2u32..8, 2u32..6).prop_flat_map(move |(n, l)| (valid_strategy(max_k, n, l), Just(n), Just(l)))
}

fn weights() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..=5).prop_flat_map(|k| {
        (
            prop::collection::vec(1e-3f64..1e3, k),
            prop::collection::vec(1e-3f64..1e3, k),
        )
    })
}

#[test]
fn coefficient_at_order_two() {
    for n in 2..=10u32 {
        let k = euclidean_coefficient(n, 2).unwrap();
        let want = BigRational::new((3 * n as i64 + 4).into(), 3.into());
        assert_eq!(k, want);
        let (p, q) = closed_form::coefficient_thirds(n.into(), 2);
        assert_eq!((p as f64) / (q as f64), euclidean_coefficient_f64(n, 2).unwrap());
    }
}

#[test]
fn single_eigenvalue_quadratic_bound() {
    for n in 2..=6 {
        for l in 2..=5 {
            let c = euclidean_coefficient_f64(n, l).unwrap();
            let want = 3.0 * (1.0 + 4.0 * c / f64::from(n * n));
            let s = spec(&[3.0], n, l);
            assert!(rel(next_bound_cor11(&s, 1).unwrap(), want) < 1e-12);
            assert!(rel(next_bound_sharp(&s, 1).unwrap(), want) < 1e-12);
        }
    }
}

#[test]
fn sphere_rejects_small_roots() {
    // l = 3, n = 5: √Λ must exceed 3.
    let s = spec(&[8.9, 20.0], 5, 3);
    let d = DeltaSequence::new(vec![1.0, 1.0]).unwrap();
    match eval_thm12(&s, 2, 25.0, &d) {
        Err(Error::DomainViolation { index, threshold, .. }) => {
            assert_eq!(index, 1);
            assert_eq!(threshold, 3);
        }
        other => panic!("expected a domain violation, got {other:?}"),
    }
    assert!(matches!(next_bound_sphere(&s, 2), Err(Error::DomainViolation { .. })));
}

#[test]
fn sphere_hand_example() {
    let s = spec(&[2.0], 3, 2);
    let d = DeltaSequence::new(vec![1.0]).unwrap();
    let r = eval_thm12(&s, 1, 3.0, &d).unwrap();
    assert!((r.lhs - 3.0).abs() < 1e-14);
    assert!((r.rhs - 3.25).abs() < 1e-14);
    assert!(r.satisfied);
}

#[test]
fn sphere_l2_weights_reduce() {
    // At l = 2 the δ weight is g² S with S = Λ(1 - 1/(Λ-(n-2))) + 1.
    let v = [3.5, 7.25, 11.0];
    for n in 2..=4u32 {
        let s = spec(&v, n, 2);
        let x = 14.0;
        let (a, b) = sphere_delta_weights(&s, 3, x).unwrap();
        for i in 0..3 {
            let g = x - v[i];
            let sh = f64::from(n) - 2.0;
            let si = v[i] * (1.0 - 1.0 / (v[i] - sh)) + 1.0;
            assert!(rel(a[i], g * g * si) < 1e-12);
            assert!(rel(b[i], g * (v[i] + sh * sh / 4.0)) < 1e-12);
            assert!(rel(s_term(2, n, v[i]).unwrap(), si) < 1e-12);
        }
    }
}

#[test]
fn priors_are_ordered() {
    let s = spec(&[1.0, 2.0, 2.5], 3, 2);
    let r = eval_l2_priors(&s, 3, 3.2, 0.7).unwrap();
    assert_eq!(r.len(), 3);
    assert!(r[1].rhs < r[0].rhs);
    assert_eq!(r[0].lhs, r[1].lhs);
    assert!(eval_l2_priors(&spec(&[1.0], 3, 3), 1, 2.0, 1.0).is_err());
}

#[test]
fn chains_increase_and_sharp_is_lower() {
    let c = chain_bounds(1.0, 8, 2, 2, ChainMethod::Cor11).unwrap();
    let s = chain_bounds(1.0, 8, 2, 2, ChainMethod::Sharp).unwrap();
    assert!(c.windows(2).all(|w| w[1] > w[0]));
    assert!(s.windows(2).all(|w| w[1] > w[0]));
    assert!((c[1] - 13.0 / 3.0).abs() < 1e-12);
    for (a, b) in s.iter().zip(&c) {
        assert!(*a <= b * (1.0 + 1e-9));
    }
}

#[test]
fn candidate_below_last_eigenvalue_is_an_ordering_error() {
    let s = spec(&[1.0, 2.0], 2, 2);
    assert!(matches!(eval_cor11(&s, 2, 1.5), Err(Error::Ordering(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn optimizer_matches_block_enumeration((a, b) in weights()) {
        let d = optimize_delta(&a, &b).unwrap();
        let v = d.values();
        prop_assert!(v.iter().all(|&x| x > 0.0));
        prop_assert!(v.windows(2).all(|w| w[1] <= w[0]));
        let f = delta_objective(v, &a, &b);
        let (_, g) = odelta::enumerate_blocks(&a, &b);
        prop_assert!(rel(f, g) < 1e-12, "{} vs {}", f, g);
    }

    #[test]
    fn random_weights_never_beat_the_optimum((a, b) in weights(), seed in prop::collection::vec(0.01f64..1.0, 5)) {
        let k = a.len();
        let best = delta_objective(optimize_delta(&a, &b).unwrap().values(), &a, &b);
        let mut d = Vec::with_capacity(k);
        let mut cur = 100.0 * seed[0];
        for s in seed.iter().take(k) {
            cur *= s.max(0.05);
            d.push(cur);
        }
        prop_assert!(delta_objective(&d, &a, &b) >= best * (1.0 - 1e-12));
    }

    #[test]
    fn cor11_matches_quadratic_formula((v, n, l) in valid_with_dims(6)) {
        let s = spec(&v, n, l);
        let k = v.len();
        let got = next_bound_cor11(&s, k).unwrap();
        prop_assert!(rel(got, roots::quadratic_bound(&v, n, l)) < 1e-12);
        prop_assert!(got >= v[k - 1]);
    }

    #[test]
    fn cor11_scale_covariance((v, n, l) in valid_with_dims(6), c in 1e-3f64..1e3) {
        let s = spec(&v, n, l);
        let k = v.len();
        let base = next_bound_cor11(&s, k).unwrap();
        let scaled = next_bound_cor11(&s.scaled(c).unwrap(), k).unwrap();
        prop_assert!(rel(scaled, c * base) < 1e-12);
    }

    #[test]
    fn sharp_below_cor11_and_matches_oracle((v, n, l) in valid_with_dims(5)) {
        let s = spec(&v, n, l);
        let k = v.len();
        let sharp = next_bound_sharp(&s, k).unwrap();
        let cor = next_bound_cor11(&s, k).unwrap();
        prop_assert!(sharp <= cor + 1e-9 * cor.max(1.0));
        prop_assert!(sharp >= v[k - 1]);
        // Only an l = 2 comparison is exact: elsewhere powf and the crate's
        // exponent shortcuts differ in the last bits.
        let o = roots::sharp_bound(&v, n, l);
        prop_assert!(rel(sharp, o) < 1e-12, "{} vs {}", sharp, o);
    }

    #[test]
    fn constant_weight_collapses_to_cauchy_schwarz(v in spectrum_strategy(5, 0.1), n in 2u32..6, l in 2u32..5, t in 0.01f64..2.0) {
        let s = spec(&v, n, l);
        let k = v.len();
        let x = v[k - 1] * (1.0 + t);
        let d = remark_constant_delta(&s, k, x).unwrap();
        let w = eval_thm11(&s, k, x, &d).unwrap();
        let cs = eval_eq112(&s, k, x).unwrap();
        let nf = f64::from(n);
        prop_assert!((w.residual - nf * cs.residual).abs() <= 1e-12 * w.lhs.max(w.rhs));
        let (opt, _) = eval_thm11_optimized(&s, k, x).unwrap();
        prop_assert!(opt.rhs <= w.rhs * (1.0 + 1e-12));
    }

    #[test]
    fn order_two_weighted_form(v in spectrum_strategy(5, 0.1), n in 2u32..8, t in 0.01f64..2.0, ds in prop::collection::vec(0.1f64..1.0, 6)) {
        let s = spec(&v, n, 2);
        let k = v.len();
        let x = v[k - 1] * (1.0 + t);
        let mut d: Vec<f64> = Vec::new();
        let mut cur = 3.0;
        for r in ds.iter().take(k) {
            cur *= r;
            d.push(cur);
        }
        let r = eval_thm11(&s, k, x, &DeltaSequence::new(d.clone()).unwrap()).unwrap();
        let (lhs, rhs) = closed_form::weighted_second_order(&v, n, x, &d);
        prop_assert!(rel(r.lhs, lhs) < 1e-12);
        prop_assert!(rel(r.rhs, rhs) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sphere_matches_oracle(v in spectrum_strategy(4, 1.0), n in 2u32..5, l in 2u32..4) {
        let thresh = f64::from(n - 2).powi(l as i32 - 1);
        let v: Vec<f64> = v.iter().map(|x| x + thresh + 0.5).collect();
        let s = spec(&v, n, l);
        let k = v.len();
        match next_bound_sphere(&s, k) {
            Ok(x) => {
                let o = roots::sphere_bound(&v, n, l);
                prop_assert!(rel(x, o) < 1e-12, "{} vs {}", x, o);
                prop_assert!(x >= v[k - 1]);
            }
            Err(Error::Unbounded(_)) => {}
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }
}

#[test]
fn sharp_bound_takes_the_last_crossing() {
    // The feasible set here is two intervals; the bound is the top of the upper one.
    let v = [0.1, 0.1, 0.1, 1.9315880099460212];
    let s = spec(&v, 3, 5);
    let x = next_bound_sharp(&s, 4).unwrap();
    assert!(x > 4.0 && x < 4.2, "{x}");
    assert!(rel(x, roots::sharp_bound(&v, 3, 5)) < 1e-12);
    assert!(eval_eq112(&s, 4, 2.1).unwrap().residual > 0.0);
}
