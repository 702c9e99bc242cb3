//! Best-response dynamics with cycle detection and replayable traces.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Caps, GameSpec, StrategyProfile};
use crate::graph::Realization;

use super::best_response::{exact_on, swap_on};
use super::check::{ensure_exact_feasible, exact_check_on};

/// Which player moves when within a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderPolicy {
    /// Players `0..n` in order every round.
    RoundRobin,
    /// A fresh seeded permutation every round.
    Random,
}

/// How a scheduled player picks its move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveOracle {
    Exact,
    Swap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsConfig {
    pub order: OrderPolicy,
    pub oracle: MoveOracle,
    pub seed: u64,
    pub round_limit: usize,
    pub caps: Caps,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            order: OrderPolicy::RoundRobin,
            oracle: MoveOracle::Exact,
            seed: 0,
            round_limit: 1000,
            caps: Caps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub round: usize,
    pub player: usize,
    pub old_strategy: Vec<usize>,
    pub new_strategy: Vec<usize>,
    pub old_cost: u64,
    pub new_cost: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    /// A full round without moves; the final profile passed the exact check.
    Equilibrium,
    /// The swap oracle went silent for a full round but the exact check found
    /// an improving move, or exact checking was over the cap.
    SwapStable,
    /// The profile after move `second` equals the profile after move `first`
    /// (index 0 is the initial profile).
    CycleDetected { period: usize, first: usize, second: usize },
    RoundLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub config: DynamicsConfig,
    pub initial: StrategyProfile,
    pub moves: Vec<Move>,
    pub outcome: Outcome,
    pub rounds: usize,
    pub final_profile: StrategyProfile,
}

fn profile_hash(p: &StrategyProfile) -> u64 {
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    h.finish()
}

/// Uniform random feasible profile.
pub fn random_profile(spec: &GameSpec, rng: &mut ChaCha8Rng) -> StrategyProfile {
    let n = spec.n();
    let strategies = (0..n)
        .map(|player| {
            let mut s: Vec<usize> = rand::seq::index::sample(rng, n - 1, spec.budget(player))
                .into_iter()
                .map(|i| if i >= player { i + 1 } else { i })
                .collect();
            s.sort_unstable();
            s
        })
        .collect();
    StrategyProfile::from_sorted_unchecked(strategies)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Runs dynamics from `initial`. Moves are applied only when strictly improving.
///
/// Terminates on a silent round, on a repeated profile, or at the round
/// limit. Deterministic for a fixed config.
pub fn best_response_dynamics(
    spec: &GameSpec,
    initial: &StrategyProfile,
    config: &DynamicsConfig,
) -> Result<DynamicsTrace> {
    initial.validate(spec)?;
    if config.oracle == MoveOracle::Exact {
        ensure_exact_feasible(spec, &config.caps)?;
    }
    // order shuffles use a stream separate from any initial-profile sampling
    let mut rng = seeded_rng(config.seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = spec.n();
    let mut profile = initial.clone();
    let mut history: Vec<StrategyProfile> = vec![profile.clone()];
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    seen.entry(profile_hash(&profile)).or_default().push(0);
    let mut moves = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();

    let finish = |profile: StrategyProfile, moves, outcome, rounds| DynamicsTrace {
        config: *config,
        initial: initial.clone(),
        moves,
        outcome,
        rounds,
        final_profile: profile,
    };

    for round in 0..config.round_limit {
        if config.order == OrderPolicy::Random {
            order.shuffle(&mut rng);
        }
        let mut moved = false;
        for &player in &order {
            if spec.budget(player) == 0 {
                continue;
            }
            let r = Realization::from_profile(&profile);
            let br = match config.oracle {
                MoveOracle::Exact => exact_on(&r, &profile, player, spec.budget(player), spec.version()),
                MoveOracle::Swap => swap_on(&r, &profile, player, spec.version()),
            };
            if !br.improved {
                continue;
            }
            moved = true;
            moves.push(Move {
                round,
                player,
                old_strategy: profile.strategy(player).to_vec(),
                new_strategy: br.strategy.clone(),
                old_cost: br.current_cost,
                new_cost: br.cost,
            });
            profile.set_strategy(player, br.strategy);
            let idx = history.len();
            let h = profile_hash(&profile);
            let bucket = seen.entry(h).or_default();
            if let Some(&first) = bucket.iter().find(|&&i| history[i] == profile) {
                return Ok(finish(
                    profile,
                    moves,
                    Outcome::CycleDetected {
                        period: idx - first,
                        first,
                        second: idx,
                    },
                    round + 1,
                ));
            }
            bucket.push(idx);
            history.push(profile.clone());
        }
        if !moved {
            let outcome = match config.oracle {
                MoveOracle::Exact => Outcome::Equilibrium,
                MoveOracle::Swap => {
                    let feasible = ensure_exact_feasible(spec, &config.caps).is_ok();
                    let r = Realization::from_profile(&profile);
                    if feasible && exact_check_on(&r, spec, &profile).is_equilibrium {
                        Outcome::Equilibrium
                    } else {
                        Outcome::SwapStable
                    }
                }
            };
            return Ok(finish(profile, moves, outcome, round + 1));
        }
    }
    Ok(finish(profile, moves, Outcome::RoundLimit, config.round_limit))
}

/// Applies recorded moves to the initial profile, checking each old strategy.
pub fn replay(initial: &StrategyProfile, moves: &[Move]) -> Result<StrategyProfile> {
    let mut p = initial.clone();
    for (i, m) in moves.iter().enumerate() {
        if m.player >= p.n() || p.strategy(m.player) != m.old_strategy.as_slice() {
            return Err(Error::Parse(format!("move {i} does not match the replayed profile")));
        }
        if m.new_strategy.len() != m.old_strategy.len() {
            return Err(Error::Parse(format!("move {i} changes the number of arcs")));
        }
        let mut s = p.strategies().to_vec();
        s[m.player] = m.new_strategy.clone();
        p = StrategyProfile::new(s)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::check::is_equilibrium_exact;
    use crate::game::Version;

    fn path4() -> (GameSpec, StrategyProfile) {
        (
            GameSpec::new(vec![1, 1, 1, 0], Version::Sum).unwrap(),
            StrategyProfile::new(vec![vec![1], vec![2], vec![3], vec![]]).unwrap(),
        )
    }

    #[test]
    fn path_converges_round_robin() {
        let (spec, p) = path4();
        let t = best_response_dynamics(&spec, &p, &DynamicsConfig::default()).unwrap();
        assert_eq!(t.outcome, Outcome::Equilibrium);
        assert!(!t.moves.is_empty());
        assert!(t.moves.iter().all(|m| m.new_cost < m.old_cost));
        assert!(is_equilibrium_exact(&spec, &t.final_profile, &Caps::default()).unwrap().is_equilibrium);
        assert_eq!(replay(&p, &t.moves).unwrap(), t.final_profile);
    }

    #[test]
    fn equilibrium_start_is_silent() {
        let spec = GameSpec::new(vec![1, 1, 1], Version::Sum).unwrap();
        let p = StrategyProfile::new(vec![vec![1], vec![2], vec![0]]).unwrap();
        let t = best_response_dynamics(&spec, &p, &DynamicsConfig::default()).unwrap();
        assert_eq!(t.outcome, Outcome::Equilibrium);
        assert!(t.moves.is_empty());
        assert_eq!(t.rounds, 1);
    }

    #[test]
    fn zero_round_limit() {
        let (spec, p) = path4();
        let cfg = DynamicsConfig {
            round_limit: 0,
            ..DynamicsConfig::default()
        };
        let t = best_response_dynamics(&spec, &p, &cfg).unwrap();
        assert_eq!(t.outcome, Outcome::RoundLimit);
        assert!(t.moves.is_empty());
    }

    #[test]
    fn seeded_runs_are_deterministic() {
        let spec = GameSpec::new(vec![2, 1, 2, 1, 2, 1, 1], Version::Sum).unwrap();
        let init = random_profile(&spec, &mut seeded_rng(7));
        let cfg = DynamicsConfig {
            order: OrderPolicy::Random,
            oracle: MoveOracle::Swap,
            seed: 11,
            ..DynamicsConfig::default()
        };
        let a = best_response_dynamics(&spec, &init, &cfg).unwrap();
        let b = best_response_dynamics(&spec, &init, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(replay(&init, &a.moves).unwrap(), a.final_profile);
    }

    #[test]
    fn random_profile_is_feasible() {
        let spec = GameSpec::new(vec![3, 0, 2, 1, 4], Version::Max).unwrap();
        let mut rng = seeded_rng(1);
        for _ in 0..50 {
            let p = random_profile(&spec, &mut rng);
            assert!(StrategyProfile::new(p.strategies().to_vec()).is_ok());
            p.validate(&spec).unwrap();
        }
    }

    #[test]
    fn replay_rejects_mismatch() {
        let (_, p) = path4();
        let bad = Move {
            round: 0,
            player: 0,
            old_strategy: vec![3],
            new_strategy: vec![2],
            old_cost: 6,
            new_cost: 5,
        };
        assert!(replay(&p, &[bad]).is_err());
    }
}
