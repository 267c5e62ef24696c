use std::fmt;

/// Distance below which an argument is treated as sitting on a
/// non-positive-integer pole.
pub const POLE_TOLERANCE: f64 = 1e-8;

/// An argument landed (within [`POLE_TOLERANCE`]) on an excluded pole.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleError {
    pub function: &'static str,
    pub location: f64,
    pub distance: f64,
    /// Optional advice on how to reach the point anyway.
    pub hint: Option<&'static str>,
}

impl fmt::Display for PoleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} has a pole at {} (argument within {:.3e})",
            self.function, self.location, self.distance
        )?;
        if let Some(h) = self.hint {
            write!(f, "; {h}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Pole(PoleError),

    #[error("{what} did not converge (value {value:e}, error estimate {err:e})")]
    NonConvergence { what: String, value: f64, err: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("divergent input: {0}")]
    DivergentInput(String),

    #[error("recurrence check failed: lhs {lhs:e}, rhs {rhs:e}, relative residual {residual:e}")]
    RecurrenceViolation { lhs: f64, rhs: f64, residual: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<PoleError> for Error {
    fn from(e: PoleError) -> Self {
        Error::Pole(e)
    }
}

impl Error {
    pub(crate) fn non_convergence(what: impl Into<String>, value: f64, err: f64) -> Self {
        Error::NonConvergence {
            what: what.into(),
            value,
            err,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Error::Pole(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns a [`PoleError`] when `x` is within [`POLE_TOLERANCE`] of a
/// non-positive integer.
pub fn check_pole(function: &'static str, x: f64) -> std::result::Result<(), PoleError> {
    if x <= POLE_TOLERANCE {
        let nearest = x.round();
        let distance = (x - nearest).abs();
        if nearest <= 0.0 && distance < POLE_TOLERANCE {
            return Err(PoleError {
                function,
                location: nearest,
                distance,
                hint: None,
            });
        }
    }
    Ok(())
}

/// True when `x` is within [`POLE_TOLERANCE`] of any integer.
pub fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() < POLE_TOLERANCE
}
