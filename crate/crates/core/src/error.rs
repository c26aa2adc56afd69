use thiserror::Error;

/// Errors raised by the domain operations.
///
/// Parsing and schema problems are reported separately through
/// [`crate::spec::SpecError`], so the CLI can tell a usage failure from a
/// domain failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("state index {index} out of range for a space of {size} states")]
    StateOutOfRange { index: usize, size: usize },
    #[error("non-empty Ω required")]
    EmptyStateSpace,
    #[error("duplicate state identifier `{0}`")]
    DuplicateState(String),
    #[error("duplicate agent identifier `{0}`")]
    DuplicateAgent(String),
    #[error("invalid partition for agent `{agent}`: {reason}")]
    InvalidPartition { agent: String, reason: String },
    #[error("agent set must be non-empty")]
    EmptyAgentSet,
    #[error("knowledge event is empty; knowledge cannot be contradictory")]
    EmptyKnowledge,
    #[error("threshold not a probability below k=2 (got k={0})")]
    ThresholdDomain(u32),
    #[error("value {value} outside [{lo}, {hi}] for {what}")]
    OutOfRange {
        what: &'static str,
        value: String,
        lo: &'static str,
        hi: &'static str,
    },
    #[error("session has no rounds")]
    EmptyHistory,
    #[error("round indices must be strictly increasing (got {got} after {prev})")]
    RoundOrder { prev: u32, got: u32 },
    #[error("lambda product undefined for two {0} forms")]
    UndefinedProduct(&'static str),
    #[error("invalid lambda vector: {0}")]
    InvalidLambdaVector(String),
    #[error("matrix is not one of the canonical lambda products")]
    NonCanonicalMatrix,
    #[error("no stage probability for {pair} when {order}")]
    UnassignedStageProbability { pair: String, order: String },
    #[error("ambiguous stage: P_U = P_I = {0}")]
    AmbiguousStage(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid mixed strategy for player {player}: {reason}")]
    InvalidMixedStrategy { player: usize, reason: String },
    #[error("{0} is not an equilibrium")]
    NotAnEquilibrium(String),
    #[error("equilibrium set has {0} members; sub-solution search is limited to 20")]
    TooManyEquilibria(usize),
    #[error("game has {0} profiles; enumeration is limited to 1000000")]
    TooManyProfiles(u128),
    #[error("permutation shape mismatch: {0}")]
    PermutationShape(String),
    #[error("strategy of player {player} varies within one information cell (states `{a}` and `{b}`)")]
    NotMeasurable { player: usize, a: String, b: String },
    #[error("invalid conjecture: {0}")]
    InvalidConjecture(String),
    #[error("invalid linguistic scale: {0}")]
    InvalidScale(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid fuzzy game: {0}")]
    InvalidFuzzyGame(String),
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
