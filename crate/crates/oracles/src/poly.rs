//! Dense `i128` polynomial arithmetic, ascending coefficients.

pub type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p[p.len() - 1] == 0 {
        p.pop();
    }
    p
}

pub fn add(a: &[i128], b: &[i128]) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect(),
    )
}

pub fn neg(a: &[i128]) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[i128], b: &[i128]) -> Poly {
    add(a, &neg(b))
}

pub fn mul(a: &[i128], b: &[i128]) -> Poly {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `P_q = (2t-2) P_{q-1} - (t² + 2t - n(n-2)) P_{q-2}` from two seeds.
fn iterate(p0: Poly, p1: Poly, steps: usize, n: i128) -> Vec<Poly> {
    let lin = vec![-2, 2];
    let quad = vec![-n * (n - 2), 2, 1];
    let mut seq = vec![p0, p1];
    for q in 2..=steps {
        let next = sub(&mul(&lin, &seq[q - 1]), &mul(&quad, &seq[q - 2]));
        seq.push(next);
    }
    seq
}

/// `Φ_q`, `q ≥ 1`.
pub fn phi(q: usize, n: i128) -> Poly {
    let phi1 = vec![-1, 1];
    let phi2 = vec![-(n - 2), -(n + 5), 1];
    if q == 1 {
        return phi1;
    }
    // Index shift: seq[0] = Φ_1, seq[1] = Φ_2.
    iterate(phi1, phi2, q - 1, n).swap_remove(q - 1)
}

/// `(F_q, G_q)`, `q ≥ 0`.
pub fn fg(q: usize, n: i128) -> (Poly, Poly) {
    let f = iterate(vec![1], vec![-(n + 2), 1], q.max(1), n);
    let g = iterate(vec![1], vec![n - 2, 3], q.max(1), n);
    (f[q].clone(), g[q].clone())
}

/// `Φ_3` expanded by hand: `t³ - (2n+13) t² + (n² - 2n + 16) t - (n-2)²`.
pub fn phi3_by_hand(n: i128) -> Poly {
    vec![-(n - 2) * (n - 2), n * n - 2 * n + 16, -(2 * n + 13), 1]
}
