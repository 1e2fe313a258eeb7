use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] qcleb_core::Error),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("sequence has zero variance")]
    ZeroVariance,
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed")]
    VerificationFailed,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// 1 on a failed verification, 3 when a budget or feasibility limit is hit, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        use qcleb_core::Error as C;
        match self {
            Error::VerificationFailed => 1,
            Error::Core(
                C::BudgetExceeded { .. } | C::TooLarge { .. } | C::DecodeFailure | C::SyndromeCollision { .. },
            ) => 3,
            _ => 2,
        }
    }
}
