//! Deterministic builders for equilibrium constructions and lower-bound
//! families.
//!
//! Every builder returns a feasible [`GameSpec`] and [`StrategyProfile`] plus
//! a list of [`Claim`]s that downstream checkers can verify.

mod existence;
mod trees;
mod word_graph;

use serde::Serialize;

use crate::game::{GameSpec, StrategyProfile, Version};

pub use existence::{construct_equilibrium, LayeredTrace};
pub use trees::{gen_perfect_binary_tree, gen_spider};
pub use word_graph::{gen_sqrtlog_instance, gen_word_graph, word_graph_condition, WordGraph};

/// Which construction produced an output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Budget sum at least `n - 1` and largest budget covers the zero-budget players.
    ExistenceStar,
    /// Budget sum at least `n - 1` with more zero-budget players than the largest budget.
    ExistenceLayered,
    /// Budget sum below `n - 1`: an equilibrium on a suffix plus isolated players.
    ExistenceDisconnected,
    Spider,
    BinaryTree,
    WordGraph,
    SqrtLogInstance,
}

/// A machine-checkable property attached to a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "claim", rename_all = "kebab-case")]
pub enum Claim {
    Equilibrium { version: Version },
    DiameterAtMost { value: u64 },
    DiameterExactly { value: u64 },
    /// Every vertex has this local diameter.
    LocalDiameterExactly { value: u64 },
    DegreeBetween { min: usize, max: usize },
    /// Budgets sum to `n - 1`.
    TreeBg,
    AllBudgetsPositive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutput {
    pub spec: GameSpec,
    pub profile: StrategyProfile,
    pub provenance: Provenance,
    pub claims: Vec<Claim>,
    /// For existence constructions: `permutation[i]` is the original player
    /// at position `i` of the ascending budget order.
    pub permutation: Option<Vec<usize>>,
    pub layered: Option<LayeredTrace>,
    /// Optional display label per vertex (word-graph tuples, spider names).
    pub labels: Option<Vec<String>>,
}
