//! Library side of the `cil` binary: theorem dispatch, report records and
//! sweep configuration. The binary only parses arguments and renders.

pub mod check;
pub mod report;
pub mod sweep;

use thiserror::Error;

/// Default ground-set cap for searches; `CIL_MAX_N` may only lower it.
pub const DEFAULT_MAX_N: usize = crossint::search::PREFIX_MAX_N;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crossint::Error),

    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(#[from] toml::de::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `min(DEFAULT_MAX_N, CIL_MAX_N)`; an unparsable value is a usage error.
pub fn max_n_from_env() -> Result<usize> {
    match std::env::var("CIL_MAX_N") {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| usage(format!("CIL_MAX_N must be a non-negative integer, got {v:?}")))?;
            Ok(cap.min(DEFAULT_MAX_N))
        }
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

pub fn check_n(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(usage(format!("n = {n} exceeds the ground-set cap {cap}")));
    }
    Ok(())
}
