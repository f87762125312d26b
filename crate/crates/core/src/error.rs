use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular point: {0}")]
    Singularity(String),

    /// The quotient-difference table hit a vanishing denominator.
    #[error("laplace inversion breakdown at t = {t}: {reason} (partial result {partial})")]
    InversionBreakdown { t: f64, reason: String, partial: f64 },

    #[error(
        "oscillatory quadrature not converged after {panels} panels (estimate {estimate}, last change {last_change:e})"
    )]
    QuadratureNotConverged {
        estimate: Complex64,
        panels: usize,
        last_change: f64,
    },

    #[error("cosine series not converged after {terms} terms (partial value {partial})")]
    SeriesNotConverged { partial: Complex64, terms: usize },

    #[error("coupling pole: {0}")]
    Pole(String),

    #[error("evaluation failed at r_D = {r_d}, z_D = {z_d}, t_s = {t_s}: {source}")]
    AtPoint {
        r_d: f64,
        z_d: f64,
        t_s: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn at_point(self, r_d: f64, z_d: f64, t_s: f64) -> Self {
        Error::AtPoint {
            r_d,
            z_d,
            t_s,
            source: Box::new(self),
        }
    }

    /// Innermost error, looking through positional context.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPoint { source, .. } => source.root(),
            other => other,
        }
    }
}
