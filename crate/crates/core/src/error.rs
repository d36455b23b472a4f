use std::fmt;

use thiserror::Error;

/// Errors raised by kernel evaluation, quadrature and field handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("parameter {name}={value} outside the admissible range {valid}")]
    Range {
        name: &'static str,
        value: f64,
        valid: &'static str,
    },

    #[error("point r={r}, rho={rho}, zeta={zeta} lies on the kernel diagonal")]
    Singular { r: f64, rho: f64, zeta: f64 },

    #[error("quadrature did not converge: estimate {value} with error {error_estimate}")]
    Accuracy { value: f64, error_estimate: f64 },

    #[error("data error: {0}")]
    Data(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn data(msg: impl fmt::Display) -> Self {
        Error::Data(msg.to_string())
    }
}

pub(crate) fn check_finite(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

pub(crate) fn check_nonneg(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}
