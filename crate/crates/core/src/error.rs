use thiserror::Error;

/// Errors reported by the library. Player and vertex indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a game needs at least one player")]
    EmptyGame,
    #[error("{n} players exceeds the supported maximum of {max}")]
    TooManyPlayers { n: usize, max: usize },
    #[error("declared player count {declared} does not match {actual} budgets")]
    PlayerCountMismatch { declared: usize, actual: usize },
    #[error("player {player} has budget {budget}, but budgets must be below n = {n}")]
    InvalidBudget { player: usize, budget: usize, n: usize },
    #[error("player {player} owns {actual} arcs but has budget {expected}")]
    BudgetMismatch {
        player: usize,
        expected: usize,
        actual: usize,
    },
    #[error("player {player} links to itself")]
    SelfLink { player: usize },
    #[error("player {player} links to {target} twice")]
    DuplicateTarget { player: usize, target: usize },
    #[error("index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("enumeration needs {needed} items, cap is {cap}")]
    EnumerationCapExceeded { needed: u64, cap: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction condition violated: {0}")]
    ConditionViolated(String),
    #[error("instance needs {vertices} vertices, cap is {cap}")]
    ResourceBound { vertices: u64, cap: u64 },
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("player {player} has budget {budget}, expected 1")]
    NonUnitBudget { player: usize, budget: usize },
    #[error("underlying graph is not a tree")]
    NotATree,
    #[error("budget sum {sum} differs from n - 1 = {expected}")]
    NotTreeBg { sum: usize, expected: usize },
    #[error("profile is not an equilibrium: player {player} can lower its cost from {old_cost} to {new_cost}")]
    NotAnEquilibrium {
        player: usize,
        old_cost: u64,
        new_cost: u64,
    },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
