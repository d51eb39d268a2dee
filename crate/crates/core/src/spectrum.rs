//! Eigenvalue sequences with their problem metadata, and the plain-text
//! spectrum file format shared with the command line.
//!
//! File format: a header line `# n=<int> l=<int>` followed by one positive
//! eigenvalue per line in nondecreasing order. Blank lines are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Produced by the Galerkin solver in this crate.
    Computed,
    /// Constructed by hand or by a bound chain.
    Synthetic,
    /// Read from a spectrum file.
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    n: u32,
    l: u32,
    provenance: Provenance,
}

impl Spectrum {
    /// Validates positivity and ordering. `n` is the spatial dimension; the
    /// inequality evaluators additionally require `n >= 2`.
    pub fn new(values: Vec<f64>, n: u32, l: u32, provenance: Provenance) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("spectrum must contain at least one eigenvalue"));
        }
        if n < 1 {
            return Err(invalid("dimension n must be >= 1"));
        }
        if l < 2 {
            return Err(invalid(format!("order l must be >= 2, got {l}")));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(invalid(format!("eigenvalue {} = {v} is not positive", i + 1)));
            }
            if i > 0 && v < values[i - 1] {
                return Err(Error::Ordering(format!(
                    "eigenvalue {} = {v} is below its predecessor {}",
                    i + 1,
                    values[i - 1]
                )));
            }
        }
        Ok(Spectrum {
            values,
            n,
            l,
            provenance,
        })
    }

    pub fn synthetic(values: Vec<f64>, n: u32, l: u32) -> Result<Self> {
        Self::new(values, n, l, Provenance::Synthetic)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The first `k` eigenvalues as a new spectrum with the same metadata.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.len() {
            return Err(invalid(format!(
                "prefix length {k} outside 1..={}",
                self.len()
            )));
        }
        Ok(Spectrum {
            values: self.values[..k].to_vec(),
            ..self.clone()
        })
    }

    /// Multiplies every eigenvalue by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.values.iter().map(|v| v * c).collect(),
            self.n,
            self.l,
            self.provenance,
        )
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("# n={} l={}\n", self.n, self.l);
        for v in &self.values {
            let _ = writeln!(out, "{v}");
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let (n, l, lines) = split_file(text)?;
        let mut values = Vec::new();
        for (lineno, s) in lines {
            let v = f64::from_str(s)
                .map_err(|_| Error::Parse(format!("line {lineno}: not a number: {s:?}")))?;
            values.push(v);
        }
        Self::new(values, n, l, Provenance::File)
    }

    /// The eigenvalues of a spectrum file read as exact decimals. Ordering
    /// and positivity are validated by [`Spectrum::parse_file`], not here.
    pub fn parse_file_exact(text: &str) -> Result<Vec<BigRational>> {
        let (_, _, lines) = split_file(text)?;
        lines
            .map(|(lineno, s)| {
                parse_decimal(s).map_err(|_| Error::Parse(format!("line {lineno}: not a decimal: {s:?}")))
            })
            .collect()
    }
}

type NumberedLines<'a> = Box<dyn Iterator<Item = (usize, &'a str)> + 'a>;

fn split_file(text: &str) -> Result<(u32, u32, NumberedLines<'_>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, s)| (i + 1, s.trim()))
        .filter(|(_, s)| !s.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty spectrum file".into()))?;
    let (n, l) = parse_header(header)?;
    Ok((n, l, Box::new(lines)))
}

/// Exact value of a decimal literal such as `52.3`, `-1e-3` or `2.5E+2`.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let mut value = BigInt::from_str(&all).map_err(|_| bad())?;
    if neg {
        value = -value;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(value, num_traits::pow(ten, (-scale) as usize))
    })
}

fn parse_header(line: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse(format!("expected header '# n=<int> l=<int>', got {line:?}"));
    let rest = line.strip_prefix('#').ok_or_else(bad)?;
    let mut n = None;
    let mut l = None;
    for tok in rest.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(bad)?;
        let val: u32 = val.parse().map_err(|_| bad())?;
        match key {
            "n" if n.is_none() => n = Some(val),
            "l" if l.is_none() => l = Some(val),
            _ => return Err(bad()),
        }
    }
    match (n, l) {
        (Some(n), Some(l)) => Ok((n, l)),
        _ => Err(bad()),
    }
}
