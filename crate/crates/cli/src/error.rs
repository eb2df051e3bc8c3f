use std::fmt;

/// Top-level failure, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config file or unsupported parameters (exit 2).
    Config(String),
    /// The computation itself raised a typed error (exit 3).
    Compute(hmf_core::Error),
    /// A verification ran to completion and failed (exit 4).
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Verify(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(e) => write!(f, "computation error: {e:?}: {e}"),
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<hmf_core::Error> for CliError {
    fn from(e: hmf_core::Error) -> Self {
        use hmf_core::Error as E;
        match e {
            // field and parameter rejections are configuration problems
            E::NotFundamentalDiscriminant(_) | E::NarrowClassNumberNotOne { .. } | E::RegionViolation(_) => {
                CliError::Config(format!("{e:?}: {e}"))
            }
            e => CliError::Compute(e),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
