use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use polybuckle::eigen::cholesky_spd;
use polybuckle::galerkin::{
    assemble_forms, assemble_with_basis, build_basis_1d, derivative_integral_table, Domain,
};
use polybuckle_oracles::closed_form::{integrate_unit, leading_minors};
use polybuckle_oracles::poly::{self, Poly};

/// `x^l (1-x)^l P_a(2x-1)` by the Bonnet recurrence, in `i128`.
fn oracle_basis(l: usize, a: usize) -> Poly {
    let s = vec![-1i128, 2];
    let mut p = vec![vec![1i128], s.clone()];
    for j in 1..a {
        let j = j as i128;
        let t1: Poly = poly::mul(&s, &p[j as usize]).iter().map(|c| c * (2 * j + 1)).collect();
        let t2: Poly = p[j as usize - 1].iter().map(|c| c * j).collect();
        let num = poly::sub(&t1, &t2);
        p.push(num.iter().map(|c| c / (j + 1)).collect());
    }
    let mut f = vec![1i128];
    for _ in 0..l {
        f = poly::mul(&f, &[0, 1]);
        f = poly::mul(&f, &[1, -1]);
    }
    poly::mul(&f, &p[a])
}

fn deriv(p: &[i128], r: usize) -> Poly {
    let mut q = p.to_vec();
    for _ in 0..r {
        q = if q.len() <= 1 {
            vec![0]
        } else {
            (1..q.len()).map(|i| q[i] * i as i128).collect()
        };
    }
    q
}

fn frac(p: (i128, i128)) -> f64 {
    p.0 as f64 / p.1 as f64
}

#[test]
fn basis_functions_are_clamped() {
    for l in 2..=4u32 {
        let basis = build_basis_1d(l, 6).unwrap();
        for f in basis.functions() {
            for r in 0..l as usize {
                let d = f.nth_derivative(r);
                assert!(d.eval(&BigInt::from(0)).is_zero());
                assert!(d.eval(&BigInt::from(1)).is_zero());
            }
            // The l-th derivative does not vanish at both ends.
            let d = f.nth_derivative(l as usize);
            assert!(!d.eval(&BigInt::from(0)).is_zero());
        }
    }
}

#[test]
fn basis_matches_independent_construction() {
    for l in 2..=3usize {
        let basis = build_basis_1d(l as u32, 6).unwrap();
        for (a, f) in basis.functions().iter().enumerate() {
            let got: Vec<i128> = f.coeffs().iter().map(|c| c.to_i128().unwrap()).collect();
            assert_eq!(got, oracle_basis(l, a), "l={l} a={a}");
        }
    }
}

#[test]
fn derivative_table_matches_direct_integration() {
    let (l, m) = (2usize, 4usize);
    let basis = build_basis_1d(l as u32, m).unwrap();
    let table = derivative_integral_table(&basis, l).unwrap();
    for r in 0..=l {
        for s in 0..=l {
            for a in 0..m {
                for b in 0..m {
                    let pa = deriv(&oracle_basis(l, a), r);
                    let pb = deriv(&oracle_basis(l, b), s);
                    let (num, den) = integrate_unit(&poly::mul(&pa, &pb));
                    let got = table.get(r, s, a, b);
                    assert_eq!(*got.numer(), BigInt::from(num), "r={r} s={s} a={a} b={b}");
                    assert_eq!(*got.denom(), BigInt::from(den));
                }
            }
        }
    }
}

#[test]
fn lowest_function_integrals() {
    let b0 = oracle_basis(2, 0);
    assert_eq!(integrate_unit(&poly::mul(&b0, &b0)), (1, 630));
    let d1 = deriv(&b0, 1);
    assert_eq!(integrate_unit(&poly::mul(&d1, &d1)), (2, 105));
    let d2 = deriv(&b0, 2);
    assert_eq!(integrate_unit(&poly::mul(&d2, &d2)), (4, 5));
    let f = assemble_forms(Domain::unit_interval(), 2, 1).unwrap();
    assert_eq!(f.b()[(0, 0)], frac((2, 105)));
    assert_eq!(f.a(2)[(0, 0)], frac((4, 5)));
}

#[test]
fn square_forms_follow_tensor_products() {
    let (l, m) = (3usize, 3usize);
    let basis = build_basis_1d(l as u32, m).unwrap();
    let t = derivative_integral_table(&basis, l).unwrap();
    let f = assemble_forms(Domain::unit_square(), l as u32, m).unwrap();
    let e = |r: usize, s: usize, a: usize, b: usize| t.get(r, s, a, b);
    for a in 0..m {
        for c in 0..m {
            for b in 0..m {
                for d in 0..m {
                    let (i, j) = (a * m + c, b * m + d);
                    let grad = e(1, 1, a, b) * e(0, 0, c, d) + e(0, 0, a, b) * e(1, 1, c, d);
                    let lap = e(2, 2, a, b) * e(0, 0, c, d)
                        + e(2, 0, a, b) * e(0, 2, c, d)
                        + e(0, 2, a, b) * e(2, 0, c, d)
                        + e(0, 0, a, b) * e(2, 2, c, d);
                    for (k, v) in [(1usize, grad), (2, lap)] {
                        let want = v.to_f64().unwrap();
                        let got = f.a(k)[(i, j)];
                        assert!((got - want).abs() <= 1e-15 * want.abs().max(1e-300), "k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn small_square_space_has_positive_minors() {
    let f = assemble_forms(Domain::unit_square(), 2, 2).unwrap();
    for k in 1..=2 {
        let a = f.a(k);
        let rows: Vec<Vec<f64>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
        let minors = leading_minors(&rows);
        assert_eq!(minors.len(), 4);
        assert!(minors.iter().all(|&d| d > 0.0), "{minors:?}");
        assert!(cholesky_spd(a).is_ok());
    }
}

#[test]
fn basis_reordering_permutes_forms_bitwise() {
    let basis = build_basis_1d(2, 5).unwrap();
    let perm = [3, 0, 4, 1, 2];
    let shuffled = basis.permuted(&perm).unwrap();
    for domain in [Domain::interval(1.7).unwrap(), Domain::rectangle(1.0, 2.5).unwrap()] {
        let base = assemble_with_basis(domain, &basis).unwrap();
        let moved = assemble_with_basis(domain, &shuffled).unwrap();
        let full: Vec<usize> = if domain.dim() == 1 {
            perm.to_vec()
        } else {
            let m = perm.len();
            (0..m * m).map(|i| perm[i / m] * m + perm[i % m]).collect()
        };
        for k in 1..=2 {
            assert_eq!(base.a(k).permuted(&full), *moved.a(k));
        }
    }
}

#[test]
fn assembly_is_deterministic() {
    let d = Domain::rectangle(1.0, 0.8).unwrap();
    let a = assemble_forms(d, 3, 5).unwrap();
    let b = assemble_forms(d, 3, 5).unwrap();
    for k in 1..=3 {
        assert_eq!(a.a(k), b.a(k));
    }
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(build_basis_1d(1, 3).is_err());
    assert!(build_basis_1d(2, 0).is_err());
    assert!(build_basis_1d(2, 25).is_err());
    assert!(Domain::rectangle(1.0, -1.0).is_err());
    assert!(Domain::interval(f64::NAN).is_err());
}
