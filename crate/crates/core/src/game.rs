//! Games, strategy profiles and enumeration caps.
//!
//! Players are 0-based throughout the library. File formats and the CLI shift
//! everything to 1-based on the way in and out.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported player count. Costs are bounded by `n^3`, which must fit
/// in a `u64`.
pub const MAX_PLAYERS: usize = 2_000_000;

/// Which cost function the players minimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Version {
    /// Sum of distances to all other vertices.
    Sum,
    /// Local diameter plus `(kappa - 1) * n^2`.
    Max,
}

impl Version {
    pub const BOTH: [Version; 2] = [Version::Sum, Version::Max];

    pub fn as_str(self) -> &'static str {
        match self {
            Version::Sum => "sum",
            Version::Max => "max",
        }
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Version {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sum" => Ok(Version::Sum),
            "max" => Ok(Version::Max),
            other => Err(Error::Parse(format!("unknown version '{other}'"))),
        }
    }
}

/// A bounded budget game: one budget per player plus the cost version.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameSpec {
    budgets: Vec<usize>,
    version: Version,
}

impl GameSpec {
    pub fn new(budgets: Vec<usize>, version: Version) -> Result<Self> {
        let n = budgets.len();
        if n == 0 {
            return Err(Error::EmptyGame);
        }
        if n > MAX_PLAYERS {
            return Err(Error::TooManyPlayers { n, max: MAX_PLAYERS });
        }
        if let Some((player, &budget)) = budgets.iter().enumerate().find(|(_, &b)| b >= n) {
            return Err(Error::InvalidBudget { player, budget, n });
        }
        Ok(GameSpec { budgets, version })
    }

    pub fn n(&self) -> usize {
        self.budgets.len()
    }

    pub fn budgets(&self) -> &[usize] {
        &self.budgets
    }

    pub fn budget(&self, player: usize) -> usize {
        self.budgets[player]
    }

    pub fn version(&self) -> Version {
        self.version
    }

    pub fn with_version(&self, version: Version) -> GameSpec {
        GameSpec {
            budgets: self.budgets.clone(),
            version,
        }
    }

    pub fn budget_sum(&self) -> usize {
        self.budgets.iter().sum()
    }

    pub fn min_budget(&self) -> usize {
        self.budgets.iter().copied().min().unwrap_or(0)
    }

    /// `n^2`, the distance assigned to pairs in different components.
    pub fn c_inf(&self) -> u64 {
        let n = self.n() as u64;
        n * n
    }

    /// Number of feasible strategies of `player`.
    pub fn strategy_count(&self, player: usize) -> u64 {
        crate::combinatorics::binomial(self.n() as u64 - 1, self.budgets[player] as u64)
    }

    /// Number of strategy profiles, saturating at `u64::MAX`.
    pub fn profile_count(&self) -> u64 {
        (0..self.n()).fold(1u64, |acc, p| acc.saturating_mul(self.strategy_count(p)))
    }
}

/// One target set per player. Targets are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    strategies: Vec<Vec<usize>>,
}

impl StrategyProfile {
    /// Builds a profile, rejecting self links and repeated targets. Budget
    /// feasibility is checked separately by [`StrategyProfile::validate`].
    pub fn new(strategies: Vec<Vec<usize>>) -> Result<Self> {
        let n = strategies.len();
        let mut out = Vec::with_capacity(n);
        for (player, mut targets) in strategies.into_iter().enumerate() {
            targets.sort_unstable();
            for w in targets.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateTarget { player, target: w[0] });
                }
            }
            if let Some(&bad) = targets.iter().find(|&&t| t >= n) {
                return Err(Error::IndexOutOfRange { index: bad, n });
            }
            if targets.binary_search(&player).is_ok() {
                return Err(Error::SelfLink { player });
            }
            out.push(targets);
        }
        Ok(StrategyProfile { strategies: out })
    }

    /// Empty strategy for every player.
    pub fn empty(n: usize) -> Self {
        StrategyProfile {
            strategies: vec![Vec::new(); n],
        }
    }

    pub(crate) fn from_sorted_unchecked(strategies: Vec<Vec<usize>>) -> Self {
        StrategyProfile { strategies }
    }

    pub fn n(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategies(&self) -> &[Vec<usize>] {
        &self.strategies
    }

    pub fn strategy(&self, player: usize) -> &[usize] {
        &self.strategies[player]
    }

    /// Replaces one player's strategy. `targets` must be sorted.
    pub fn set_strategy(&mut self, player: usize, targets: Vec<usize>) {
        debug_assert!(targets.windows(2).all(|w| w[0] < w[1]));
        self.strategies[player] = targets;
    }

    pub fn with_strategy(&self, player: usize, targets: Vec<usize>) -> StrategyProfile {
        let mut p = self.clone();
        p.set_strategy(player, targets);
        p
    }

    pub fn arc_count(&self) -> usize {
        self.strategies.iter().map(Vec::len).sum()
    }

    pub fn validate(&self, spec: &GameSpec) -> Result<()> {
        if self.n() != spec.n() {
            return Err(Error::PlayerCountMismatch {
                declared: spec.n(),
                actual: self.n(),
            });
        }
        for (player, targets) in self.strategies.iter().enumerate() {
            if targets.len() != spec.budget(player) {
                return Err(Error::BudgetMismatch {
                    player,
                    expected: spec.budget(player),
                    actual: targets.len(),
                });
            }
        }
        Ok(())
    }
}

/// Explicit enumeration limits. Exceeding one is an error, never a silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Maximum candidate strategies for one exact best response.
    pub candidate_cap: u64,
    /// Maximum strategy profiles for exhaustive enumeration.
    pub profile_cap: u64,
    /// Maximum vertices for generated families.
    pub vertex_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            candidate_cap: 10_000_000,
            profile_cap: 10_000_000,
            vertex_cap: 1 << 20,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_budget_at_least_n() {
        assert_eq!(
            GameSpec::new(vec![1, 2], Version::Sum),
            Err(Error::InvalidBudget {
                player: 1,
                budget: 2,
                n: 2
            })
        );
        assert_eq!(GameSpec::new(vec![], Version::Sum), Err(Error::EmptyGame));
    }

    #[test]
    fn single_player_only_budget_zero() {
        assert!(GameSpec::new(vec![0], Version::Max).is_ok());
        assert!(GameSpec::new(vec![1], Version::Max).is_err());
    }

    #[test]
    fn profile_errors() {
        assert_eq!(
            StrategyProfile::new(vec![vec![0], vec![]]),
            Err(Error::SelfLink { player: 0 })
        );
        assert_eq!(
            StrategyProfile::new(vec![vec![1, 1], vec![]]),
            Err(Error::DuplicateTarget { player: 0, target: 1 })
        );
        assert_eq!(
            StrategyProfile::new(vec![vec![5], vec![]]),
            Err(Error::IndexOutOfRange { index: 5, n: 2 })
        );
        let spec = GameSpec::new(vec![1, 1], Version::Sum).unwrap();
        let p = StrategyProfile::new(vec![vec![1], vec![]]).unwrap();
        assert_eq!(
            p.validate(&spec),
            Err(Error::BudgetMismatch {
                player: 1,
                expected: 1,
                actual: 0
            })
        );
    }

    #[test]
    fn counts() {
        let spec = GameSpec::new(vec![1, 1, 1], Version::Sum).unwrap();
        assert_eq!(spec.profile_count(), 8);
        assert_eq!(spec.c_inf(), 9);
        assert_eq!("MAX".parse::<Version>().unwrap(), Version::Max);
    }
}
