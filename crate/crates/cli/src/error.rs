use std::path::PathBuf;

use thiserror::Error;

/// Exit status 2: the input could not be read or does not describe a valid
/// object. Exit status 3: a well-formed request that exceeds a capacity,
/// mismatches in dimension or is undefined for the given game.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qpower::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use qpower::Error as E;
        match self {
            CliError::Read { .. } | CliError::Usage(_) => 2,
            CliError::Write(_) | CliError::Csv(_) => 3,
            CliError::Core(e) => match e {
                E::Parse(_)
                | E::PlayerOutOfRange { .. }
                | E::EmptyCoalitionWins
                | E::TrivialInStandardModel
                | E::NegativeWeight { .. }
                | E::NonzeroEmptyWorth
                | E::InvalidRow(_)
                | E::UnknownFamily(_)
                | E::InvalidAlpha
                | E::MalformedPermutation { .. }
                | E::InvalidDistribution(_)
                | E::EmptyDeviation => 2,
                _ => 3,
            },
        }
    }
}
