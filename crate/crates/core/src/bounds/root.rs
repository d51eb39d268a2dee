use crate::error::{Error, Result};

/// Bracket expansion gives up after this many doublings.
pub const MAX_DOUBLINGS: u32 = 64;

/// Samples taken between `Λ_k` and the ceiling when looking for the largest
/// crossing.
pub const SCAN_POINTS: usize = 1024;

/// Bisection stops once the bracket is this narrow relative to its top.
pub const BISECTION_REL_TOL: f64 = 1e-13;

/// Finds the largest crossing of `f` from `f ≤ 0` to `f > 0` above `start`.
///
/// `f` returns the inequality residual and its satisfaction tolerance. The
/// residual need not be monotone, so the feasible set can have gaps. When a
/// `ceiling` is known above which `f > 0` everywhere, the interval
/// `[start, ceiling]` is sampled from the top down and the first nonpositive
/// sample brackets the crossing. Without one, probes `start · 2^j` stop at the
/// first positive residual.
///
/// A residual above tolerance at `start` means no candidate there or above
/// satisfies the inequality. One within tolerance is treated as satisfied,
/// which matters when `start` is itself a previously computed bound.
pub(crate) fn upper_crossing<F>(start: f64, ceiling: Option<f64>, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let (f0, tol0) = f(start)?;
    if f0 > tol0 {
        return Err(Error::InfeasibleSpectrum(format!(
            "the inequality already fails at x = Λ_k = {start} (excess {f0:e})"
        )));
    }
    let (mut lo, mut hi) = match ceiling.filter(|c| c.is_finite()) {
        Some(top) if top <= start => return Ok(start),
        Some(top) => {
            let at = |j: usize| start + (top - start) * j as f64 / SCAN_POINTS as f64;
            if f(top)?.0 <= 0.0 {
                return Ok(top);
            }
            let mut j = SCAN_POINTS - 1;
            while j > 0 && f(at(j))?.0 > 0.0 {
                j -= 1;
            }
            (at(j), at(j + 1))
        }
        None => double_until_positive(start, &mut f)?,
    };
    while hi - lo > BISECTION_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)?.0 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn double_until_positive<F>(start: f64, f: &mut F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let mut lo = start;
    let mut probe = start;
    for _ in 0..MAX_DOUBLINGS {
        probe *= 2.0;
        if f(probe)?.0 > 0.0 {
            return Ok((lo, probe));
        }
        lo = probe;
    }
    Err(Error::Numerical(format!(
        "no sign change found within {MAX_DOUBLINGS} doublings of {start}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_square_root() {
        let r = upper_crossing(1.0, None, |x| Ok((x * x - 2.0, 0.0))).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        let r = upper_crossing(1.0, Some(5.0), |x| Ok((x * x - 2.0, 0.0))).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ceiling_finds_the_last_crossing() {
        // Feasible on [1, 2] and [3, 4].
        let f = |x: f64| Ok(((x - 2.0) * (x - 3.0) * (x - 4.0), 0.0));
        let r = upper_crossing(1.0, Some(10.0), f).unwrap();
        assert!((r - 4.0).abs() < 1e-12);
        let r = upper_crossing(1.0, None, f).unwrap();
        assert!((r - 4.0).abs() < 1e-12);
    }

    #[test]
    fn positive_start_is_infeasible() {
        assert!(matches!(
            upper_crossing(3.0, None, |x| Ok((x * x - 2.0, 0.0))),
            Err(Error::InfeasibleSpectrum(_))
        ));
    }

    #[test]
    fn no_crossing_is_numerical() {
        assert!(matches!(
            upper_crossing(1.0, None, |_| Ok((-1.0, 0.0))),
            Err(Error::Numerical(_))
        ));
    }
}
