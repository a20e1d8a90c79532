use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("integration diverged at t = {t}")]
    Divergence { t: f64 },

    #[error("stationarity condition has no real root (W = {w:e})")]
    NoRealRoot { w: f64 },

    #[error("degenerate closed form: i0 * beta * s0 = 0")]
    DegenerateDenominator,

    #[error("interval [{lo}, {hi}] does not bracket a {what}")]
    NotBracketed { lo: f64, hi: f64, what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {value}")))
    }
}
