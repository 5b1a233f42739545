use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invariant factor list is empty")]
    EmptyFactors,
    #[error("invariant factor {0} is less than 2")]
    FactorTooSmall(u64),
    #[error("invariant factor chain broken: {0} does not divide {1}")]
    ChainBroken(u64, u64),
    #[error("group order overflows a 64-bit integer")]
    OrderOverflow,
    #[error("rank mismatch: expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("{value} does not divide {modulus}")]
    NotADivisor { value: u64, modulus: u64 },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("set must be nonempty")]
    EmptySet,
    #[error("group order {order} exceeds the enumerable limit {limit}")]
    OrderTooLarge { order: u64, limit: u64 },
    #[error("fold weight {h} exceeds the limit {limit}")]
    FoldTooLarge { h: u64, limit: u64 },
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("budget exceeded: instance needs {needed} set evaluations, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error(
        "invalid group notation {0:?}: expected comma-separated invariant factors like \"3,3\""
    )]
    ParseGroup(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
