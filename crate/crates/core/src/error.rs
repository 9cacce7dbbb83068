use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("degenerate excitation: {0}")]
    DegenerateExcitation(String),
    #[error("singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e}")]
    Singular { pivot: f64, threshold: f64 },
    #[error("invalid configuration field `{field}`: {message}")]
    Config { field: String, message: String },
}
