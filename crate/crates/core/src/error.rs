use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label '{0}' in ranking")]
    DuplicateLabel(String),
    #[error("unknown label '{0}' in ranking")]
    UnknownLabel(String),
    #[error("ranking '{ranking}' has {found} labels, expected {expected}")]
    RankingLength {
        ranking: String,
        found: usize,
        expected: usize,
    },
    #[error(
        "unknown rule '{0}' (valid rules: plurality, plurality-runoff, borda, copeland, schulze)"
    )]
    UnknownRule(String),
    #[error("invalid committee: {0}")]
    InvalidCommittee(String),
    #[error("profile has {found} rankings but the committee has {expected} players")]
    ProfileArity { found: usize, expected: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("enumeration too large: {size} items exceeds the cap of {cap}; use Monte Carlo estimation instead")]
    EnumerationTooLarge { size: String, cap: u64 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by hitting a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::EnumerationTooLarge { .. })
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
