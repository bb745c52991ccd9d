use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player count {0} is outside the supported range 1..={max}", max = crate::coalition::MAX_PLAYERS)]
    InvalidPlayerCount(usize),
    #[error("player index {player} is out of range for a game on {n} players")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("the empty coalition cannot win in the standard model")]
    EmptyCoalitionWins,
    #[error("trivial games are only legal in the extended model")]
    TrivialInStandardModel,
    #[error("weight of player {player} is negative")]
    NegativeWeight { player: usize },
    #[error("v(empty set) must be 0 in the standard model")]
    NonzeroEmptyWorth,
    #[error("enumeration over {n} players exceeds the capacity limit of {limit}")]
    Capacity { n: usize, limit: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dual is undefined in the standard model: the grand coalition loses, so the empty coalition would win")]
    DualUndefined,
    #[error("operation needs at least {required} players, game has {n}")]
    TooFewPlayers { n: usize, required: usize },
    #[error("player {player} is not a member of the coalition")]
    NotAMember { player: usize },
    #[error("invalid rescaling row: {0}")]
    InvalidRow(String),
    #[error("unknown rescaling family `{0}`")]
    UnknownFamily(String),
    #[error("normalization constant c_n is zero, so the normalized semivalue is undefined")]
    NormalizationUndefined,
    #[error("player {player} belongs to a coalition with probability zero; the conditional expectation is undefined")]
    ConditionalUndefined { player: usize },
    #[error("invalid coalition distribution: {0}")]
    InvalidDistribution(String),
    #[error("no player ever swings a coalition; proposer probabilities are all zero")]
    AllZero,
    #[error("malformed permutation of 0..{n}")]
    MalformedPermutation { n: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("alpha must lie in [0, 1]")]
    InvalidAlpha,
    #[error("a deviating coalition needs at least one voter")]
    EmptyDeviation,
    #[error("deviation search over {size} voters exceeds the limit of {limit}")]
    DeviationCapacity { size: usize, limit: usize },
}

impl Error {
    /// Errors caused by malformed input text rather than by a well-formed
    /// request that cannot be carried out.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
