use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Positive non-increasing weights `δ_1 ≥ … ≥ δ_k > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DeltaSequence(Vec<f64>);

impl DeltaSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDelta("sequence is empty".into()));
        }
        for (i, &d) in values.iter().enumerate() {
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::InvalidDelta(format!("δ_{} = {d} is not positive", i + 1)));
            }
            if i > 0 && d > values[i - 1] {
                return Err(Error::InvalidDelta(format!(
                    "δ_{} = {d} exceeds δ_{} = {}",
                    i + 1,
                    i,
                    values[i - 1]
                )));
            }
        }
        Ok(DeltaSequence(values))
    }

    pub fn constant(value: f64, k: usize) -> Result<Self> {
        Self::new(vec![value; k])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `Σ δ_i a_i + Σ b_i / δ_i`.
pub fn delta_objective(delta: &[f64], a: &[f64], b: &[f64]) -> f64 {
    delta
        .iter()
        .zip(a.iter().zip(b))
        .map(|(d, (a, b))| d * a + b / d)
        .sum()
}

/// Minimizes `Σ δ_i a_i + Σ b_i / δ_i` over positive non-increasing `δ`.
///
/// Each term is convex in `δ_i` with minimizer `√(b_i/a_i)`. Pooling adjacent
/// violators gives a block per maximal run on which the constraint binds,
/// valued `√(Σ b / Σ a)` over the block.
pub fn optimize_delta(a: &[f64], b: &[f64]) -> Result<DeltaSequence> {
    if a.len() != b.len() || a.is_empty() {
        return Err(invalid(format!(
            "weights must be nonempty and of equal length, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(invalid(format!(
                "weights at index {} must be positive, got a = {x}, b = {y}",
                i + 1
            )));
        }
    }
    let (values, _) = pool(a, b);
    DeltaSequence::new(values)
}

#[derive(Debug, Clone, Copy)]
struct Block {
    a: f64,
    b: f64,
    len: usize,
}

impl Block {
    fn value(&self) -> f64 {
        (self.b / self.a).sqrt()
    }
}

/// Pools weights that may include indices with `a_i = b_i = 0` (zero gaps),
/// which do not affect the objective. Those take the value of the preceding
/// block, or of the following one at the start. Returns the minimizer and
/// the minimum `Σ_blocks 2 √(A B)`.
pub(crate) fn pool(a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    let mut blocks: Vec<Block> = Vec::with_capacity(a.len());
    let mut active: Vec<bool> = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        if x == 0.0 && y == 0.0 {
            active.push(false);
            continue;
        }
        let mut cur = Block { a: x, b: y, len: 1 };
        while let Some(prev) = blocks.last() {
            if prev.value() >= cur.value() {
                break;
            }
            cur = Block {
                a: prev.a + cur.a,
                b: prev.b + cur.b,
                len: prev.len + cur.len,
            };
            blocks.pop();
        }
        blocks.push(cur);
        active.push(true);
    }

    let minimum: f64 = blocks.iter().map(|blk| 2.0 * (blk.a * blk.b).sqrt()).sum();

    // Expand blocks back onto the active indices.
    let mut active_values = Vec::new();
    for blk in &blocks {
        active_values.extend(std::iter::repeat_n(blk.value(), blk.len));
    }
    let mut next_active = active_values.iter();
    let mut out: Vec<Option<f64>> = active
        .iter()
        .map(|&on| if on { next_active.next().copied() } else { None })
        .collect();
    let first = out.iter().flatten().next().copied().unwrap_or(1.0);
    let mut last = first;
    for v in out.iter_mut() {
        match v {
            Some(x) => last = *x,
            None => *v = Some(last),
        }
    }
    (out.into_iter().map(|v| v.unwrap_or(1.0)).collect(), minimum)
}
