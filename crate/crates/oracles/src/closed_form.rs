//! Small closed-form references.

/// `∫₀¹ x^p (1-x)^q dx = p! q! / (p+q+1)!` as a reduced fraction.
pub fn beta_integral(p: u32, q: u32) -> (i128, i128) {
    let fact = |k: u32| (1..=i128::from(k)).product::<i128>();
    reduce(fact(p) * fact(q), fact(p + q + 1))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn reduce(num: i128, den: i128) -> (i128, i128) {
    let g = gcd(num, den);
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

/// `∫₀¹ p(x) dx` for integer coefficients, as a reduced fraction.
pub fn integrate_unit(coeffs: &[i128]) -> (i128, i128) {
    let den: i128 = (1..=coeffs.len() as i128).fold(1, |acc, d| acc / gcd(acc, d) * d);
    let num: i128 = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * (den / (i as i128 + 1)))
        .sum();
    reduce(num, den)
}

/// `K(n, l)` as a fraction over 3.
pub fn coefficient_thirds(n: i128, l: i128) -> (i128, i128) {
    reduce(6 * l * l + (3 * n - 14) * l + 8 - 3 * n, 3)
}

pub fn coefficient(n: u32, l: u32) -> f64 {
    let (p, q) = coefficient_thirds(n.into(), l.into());
    p as f64 / q as f64
}

/// The weighted second-order Euclidean inequality written directly:
/// `(lhs, rhs)` of `n Σ g² ≤ (n + 4/3) Σ δ g² + Σ g Λ / δ`.
pub fn weighted_second_order(lambda: &[f64], n: u32, x: f64, delta: &[f64]) -> (f64, f64) {
    let n = f64::from(n);
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for (&v, &d) in lambda.iter().zip(delta) {
        let g = x - v;
        lhs += n * g * g;
        rhs += (n + 4.0 / 3.0) * d * g * g + g * v / d;
    }
    (lhs, rhs)
}

/// Leading principal minors by fraction-free elimination on `f64` input.
pub fn leading_minors(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    (1..=n)
        .map(|k| {
            let mut a: Vec<Vec<f64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            let mut det = 1.0;
            for c in 0..k {
                let piv = (c..k)
                    .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
                    .unwrap();
                if piv != c {
                    a.swap(piv, c);
                    det = -det;
                }
                det *= a[c][c];
                if a[c][c] == 0.0 {
                    return 0.0;
                }
                for r in (c + 1)..k {
                    let f = a[r][c] / a[c][c];
                    for j in c..k {
                        a[r][j] -= f * a[c][j];
                    }
                }
            }
            det
        })
        .collect()
}
