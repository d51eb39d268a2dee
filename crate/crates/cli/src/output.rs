use std::fmt;

use polybuckle::Error;

/// Fixed 12 fractional digits; scientific notation outside `[1e-4, 1e12)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e12).contains(&a) {
        format!("{x:.12}")
    } else {
        format!("{x:.12e}")
    }
}

/// A failed command: a short machine-readable code, a message and the
/// process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub exit: u8,
}

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: "usage",
            message: message.into(),
            exit: EXIT_USAGE,
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: "verification-failed",
            message: message.into(),
            exit: EXIT_VERIFICATION,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // One line, whatever the message contains.
        let flat = self.message.replace('\n', " ");
        write!(f, "error: {}: {}", self.code, flat.trim())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, exit) = match &e {
            Error::InvalidParameter(_) => ("invalid-parameter", EXIT_USAGE),
            Error::InternalConsistency(_) => ("internal", EXIT_NUMERICAL),
            Error::NotPositiveDefinite { .. } => ("not-positive-definite", EXIT_NUMERICAL),
            Error::Numerical(_) => ("numerical", EXIT_NUMERICAL),
            Error::InvalidDelta(_) => ("invalid-delta", EXIT_INPUT),
            Error::Ordering(_) => ("ordering", EXIT_INPUT),
            Error::DomainViolation { .. } => ("domain-violation", EXIT_INPUT),
            Error::InfeasibleSpectrum(_) => ("infeasible-spectrum", EXIT_INPUT),
            Error::Unbounded(_) => ("unbounded", EXIT_INPUT),
            Error::Provenance(_) => ("provenance", EXIT_INPUT),
            Error::Parse(_) => ("parse", EXIT_INPUT),
            Error::Io(_) => ("io", EXIT_INPUT),
        };
        let message = match e {
            Error::InvalidParameter(m)
            | Error::InternalConsistency(m)
            | Error::Numerical(m)
            | Error::InvalidDelta(m)
            | Error::Ordering(m)
            | Error::InfeasibleSpectrum(m)
            | Error::Unbounded(m)
            | Error::Provenance(m)
            | Error::Parse(m)
            | Error::Io(m) => m,
            other => other.to_string(),
        };
        Failure {
            code,
            message,
            exit,
        }
    }
}
