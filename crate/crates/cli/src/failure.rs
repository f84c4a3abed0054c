use std::fmt;

/// Why a command did not finish with a definite answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable or invalid input; exit code 1.
    Input(String),
    /// A search limit was hit; exit code 2.
    Unknown(String),
    /// `verify` found a failing property; exit code 3.
    PropertyFailed(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Unknown(_) => 2,
            Failure::PropertyFailed(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Unknown(m) => write!(f, "unknown (search limit): {m}. Raise --max-states or --max-subsets, or pass a --limits file"),
            Failure::PropertyFailed(m) => write!(f, "{m}"),
        }
    }
}

impl From<scat_core::Error> for Failure {
    fn from(e: scat_core::Error) -> Self {
        use scat_core::Error;
        match e {
            Error::ResourceLimit { .. } => Failure::Unknown(e.to_string()),
            Error::DisconnectedComplex => {
                Failure::Input(format!("{e}; every operation needs connected complexes, split the input into components"))
            }
            Error::Parse(m) => Failure::Input(format!("could not parse input: {m}")),
            other => Failure::Input(other.to_string()),
        }
    }
}
