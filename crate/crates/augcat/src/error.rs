use thiserror::Error;

/// Crate-wide error type.
///
/// `Structural` covers malformed inputs (broken composition tables,
/// non-functors, bad JSON shape references). Property violations are not
/// errors; they are carried by the report types of each checker.
#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("amalgamation refused: {0}")]
    AmalgamationRefused(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration guard exceeded ({0} states)")]
    GuardExceeded(u64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
