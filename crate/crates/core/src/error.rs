use thiserror::Error;

/// Errors surfaced by the scattering/RH pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("admissibility violated: {0}")]
    Admissibility(String),

    #[error("datum rejected: {0}")]
    Datum(String),

    #[error("quadrature failure: {0}")]
    Quadrature(String),

    #[error("spectral map evaluated on the cut without a side")]
    CutSideRequired,

    #[error("Volterra solve failed: {0}")]
    Volterra(String),

    #[error("root refinement failed: {0}")]
    RootFind(String),

    #[error("scattering audit failed: {0}")]
    Audit(String),

    #[error("contour construction failed: {0}")]
    Contour(String),

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("RH solver: {0}")]
    Solver(String),

    #[error("evaluation point too close to the contour (dist {dist:.3e}, spacing {spacing:.3e})")]
    NearContour { dist: f64, spacing: f64 },

    #[error("reconstruction: {0}")]
    Reconstruct(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
