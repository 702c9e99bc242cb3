//! Exact (exhaustive) and swap hill-climbing best responses.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::Combinations;
use crate::distance::{bfs_into, UNREACHED};
use crate::error::{Error, Result};
use crate::game::{Caps, GameSpec, StrategyProfile, Version};
use crate::graph::Realization;

/// Outcome of a best-response query for one player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestResponseResult {
    pub player: usize,
    /// Chosen targets, sorted ascending.
    pub strategy: Vec<usize>,
    pub cost: u64,
    pub current_cost: u64,
    /// Strictly better than the current strategy.
    pub improved: bool,
    pub candidates_examined: u64,
}

/// Cost of every possible strategy of one player, others held fixed.
///
/// Distances are precomputed in the graph with the player deleted. A path
/// from the player leaves through one neighbor and never returns, so its new
/// distance to `v` is `1 + min over neighbors a of dist(a, v)`.
pub(crate) struct DeviationEvaluator {
    n: usize,
    player: usize,
    version: Version,
    c_inf: u64,
    rows: Vec<u32>,
    comp: Vec<usize>,
    kappa_rest: usize,
    base: Vec<u32>,
    base_comps: Vec<usize>,
}

impl DeviationEvaluator {
    pub(crate) fn new(r: &Realization, player: usize, version: Version) -> Self {
        let n = r.n();
        let g = r.underlying();
        let mut rows = vec![UNREACHED; n * n];
        let mut queue = VecDeque::new();
        for a in 0..n {
            if a != player {
                bfs_into(g, a, Some(player), &mut rows[a * n..(a + 1) * n], &mut queue);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut kappa_rest = 0;
        for a in 0..n {
            if a == player || comp[a] != usize::MAX {
                continue;
            }
            for v in 0..n {
                if rows[a * n + v] != UNREACHED {
                    comp[v] = kappa_rest;
                }
            }
            kappa_rest += 1;
        }
        let in_neighbors: Vec<usize> = g
            .neighbors(player)
            .iter()
            .copied()
            .filter(|&a| r.has_arc(a, player))
            .collect();
        let mut base = vec![UNREACHED; n];
        for &a in &in_neighbors {
            for v in 0..n {
                base[v] = base[v].min(rows[a * n + v]);
            }
        }
        let mut base_comps: Vec<usize> = in_neighbors.iter().map(|&a| comp[a]).collect();
        base_comps.sort_unstable();
        base_comps.dedup();
        DeviationEvaluator {
            n,
            player,
            version,
            c_inf: (n as u64) * (n as u64),
            rows,
            comp,
            kappa_rest,
            base,
            base_comps,
        }
    }

    pub(crate) fn cost(&self, targets: &[usize], scratch: &mut Vec<u32>) -> u64 {
        let n = self.n;
        scratch.clear();
        scratch.extend_from_slice(&self.base);
        for &s in targets {
            let row = &self.rows[s * n..(s + 1) * n];
            for (b, &d) in scratch.iter_mut().zip(row) {
                if d < *b {
                    *b = d;
                }
            }
        }
        let mut sum = 0u64;
        let mut max = 0u64;
        for (v, &d) in scratch.iter().enumerate() {
            if v == self.player {
                continue;
            }
            let d = if d == UNREACHED { self.c_inf } else { d as u64 + 1 };
            sum += d;
            max = max.max(d);
        }
        match self.version {
            Version::Sum => sum,
            Version::Max => {
                let mut touched = self.base_comps.len();
                for (i, &s) in targets.iter().enumerate() {
                    let c = self.comp[s];
                    if !self.base_comps.contains(&c) && !targets[..i].iter().any(|&t| self.comp[t] == c) {
                        touched += 1;
                    }
                }
                let kappa = self.kappa_rest + 1 - touched;
                max + (kappa as u64 - 1) * self.c_inf
            }
        }
    }
}

fn check_player(spec: &GameSpec, profile: &StrategyProfile, player: usize) -> Result<()> {
    profile.validate(spec)?;
    if player >= spec.n() {
        return Err(Error::IndexOutOfRange {
            index: player,
            n: spec.n(),
        });
    }
    Ok(())
}

/// Global minimum over all `C(n-1, b)` strategies.
///
/// If the current strategy attains the minimum it is returned unchanged;
/// otherwise the lexicographically smallest minimizer is returned.
pub fn best_response_exact(
    spec: &GameSpec,
    profile: &StrategyProfile,
    player: usize,
    caps: &Caps,
) -> Result<BestResponseResult> {
    check_player(spec, profile, player)?;
    let needed = spec.strategy_count(player);
    if needed > caps.candidate_cap {
        return Err(Error::EnumerationCapExceeded {
            needed,
            cap: caps.candidate_cap,
        });
    }
    let r = Realization::from_profile(profile);
    Ok(exact_on(&r, profile, player, spec.budget(player), spec.version()))
}

const PARALLEL_THRESHOLD: u64 = 4096;

pub(crate) fn exact_on(
    r: &Realization,
    profile: &StrategyProfile,
    player: usize,
    budget: usize,
    version: Version,
) -> BestResponseResult {
    let eval = DeviationEvaluator::new(r, player, version);
    let n = r.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != player).collect();
    let current = profile.strategy(player);
    let mut scratch = Vec::with_capacity(n);
    let current_cost = eval.cost(current, &mut scratch);
    let total = crate::combinatorics::binomial(others.len() as u64, budget as u64);

    let best: Option<(u64, Vec<usize>)> = if budget == 0 {
        Some((current_cost, Vec::new()))
    } else if total >= PARALLEL_THRESHOLD {
        (0..=others.len() - budget)
            .into_par_iter()
            .map_init(Vec::new, |scratch, first| {
                let mut best: Option<(u64, Vec<usize>)> = None;
                for s in Combinations::starting_with(&others, budget, first) {
                    let c = eval.cost(&s, scratch);
                    if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                        best = Some((c, s));
                    }
                }
                best
            })
            .flatten()
            .min()
    } else {
        let mut best: Option<(u64, Vec<usize>)> = None;
        let mut combos = Combinations::new(&others, budget);
        while let Some(s) = combos.next_subset() {
            let c = eval.cost(s, &mut scratch);
            if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                best = Some((c, s.to_vec()));
            }
        }
        best
    };
    let (best_cost, best_strategy) = best.expect("at least one feasible strategy");
    if current_cost <= best_cost {
        BestResponseResult {
            player,
            strategy: current.to_vec(),
            cost: current_cost,
            current_cost,
            improved: false,
            candidates_examined: total,
        }
    } else {
        BestResponseResult {
            player,
            strategy: best_strategy,
            cost: best_cost,
            current_cost,
            improved: true,
            candidates_examined: total,
        }
    }
}

/// Hill-climbs over single-arc swaps until none strictly improves.
///
/// Scan order is owned targets ascending, then replacement targets
/// ascending; the first improving swap is taken and the scan restarts.
pub fn best_response_swap(spec: &GameSpec, profile: &StrategyProfile, player: usize) -> Result<BestResponseResult> {
    check_player(spec, profile, player)?;
    let r = Realization::from_profile(profile);
    Ok(swap_on(&r, profile, player, spec.version()))
}

pub(crate) fn swap_on(r: &Realization, profile: &StrategyProfile, player: usize, version: Version) -> BestResponseResult {
    let eval = DeviationEvaluator::new(r, player, version);
    let n = r.n();
    let mut scratch = Vec::with_capacity(n);
    let mut strategy = profile.strategy(player).to_vec();
    let current_cost = eval.cost(&strategy, &mut scratch);
    let mut cost = current_cost;
    let mut examined = 1u64;
    let mut trial = Vec::with_capacity(strategy.len());
    'climb: loop {
        for i in 0..strategy.len() {
            for c in 0..n {
                if c == player || strategy.binary_search(&c).is_ok() {
                    continue;
                }
                trial.clear();
                trial.extend(strategy.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &t)| t));
                let pos = trial.partition_point(|&t| t < c);
                trial.insert(pos, c);
                examined += 1;
                let tc = eval.cost(&trial, &mut scratch);
                if tc < cost {
                    cost = tc;
                    std::mem::swap(&mut strategy, &mut trial);
                    continue 'climb;
                }
            }
        }
        break;
    }
    BestResponseResult {
        player,
        strategy,
        cost,
        current_cost,
        improved: cost < current_cost,
        candidates_examined: examined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost;

    fn path4(version: Version) -> (GameSpec, StrategyProfile) {
        (
            GameSpec::new(vec![1, 1, 1, 0], version).unwrap(),
            StrategyProfile::new(vec![vec![1], vec![2], vec![3], vec![]]).unwrap(),
        )
    }

    /// Independent oracle: rebuild the realization for every candidate.
    fn brute_force(spec: &GameSpec, profile: &StrategyProfile, player: usize) -> Vec<(Vec<usize>, u64)> {
        let others: Vec<usize> = (0..spec.n()).filter(|&v| v != player).collect();
        Combinations::new(&others, spec.budget(player))
            .map(|s| {
                let p = profile.with_strategy(player, s.clone());
                let r = Realization::build(spec, &p).unwrap();
                (s, cost(&r, player, spec.version()))
            })
            .collect()
    }

    #[test]
    fn path_oracle_values() {
        let (spec, p) = path4(Version::Sum);
        assert_eq!(
            brute_force(&spec, &p, 0),
            vec![(vec![1], 6), (vec![2], 5), (vec![3], 6)]
        );
        let (spec, p) = path4(Version::Max);
        assert_eq!(
            brute_force(&spec, &p, 0),
            vec![(vec![1], 3), (vec![2], 2), (vec![3], 3)]
        );
    }

    #[test]
    fn exact_on_path() {
        let (spec, p) = path4(Version::Sum);
        let br = best_response_exact(&spec, &p, 0, &Caps::default()).unwrap();
        assert_eq!(br.strategy, vec![2]);
        assert_eq!(br.cost, 5);
        assert!(br.improved);
        assert_eq!(br.candidates_examined, 3);
        let (spec, p) = path4(Version::Max);
        let br = best_response_exact(&spec, &p, 0, &Caps::default()).unwrap();
        assert_eq!((br.strategy, br.cost, br.improved), (vec![2], 2, true));
    }

    #[test]
    fn exact_on_brace_is_unchanged() {
        for v in Version::BOTH {
            let spec = GameSpec::new(vec![1, 1], v).unwrap();
            let p = StrategyProfile::new(vec![vec![1], vec![0]]).unwrap();
            let br = best_response_exact(&spec, &p, 0, &Caps::default()).unwrap();
            assert_eq!((br.strategy, br.cost, br.improved), (vec![1], 1, false));
        }
    }

    #[test]
    fn exact_respects_cap() {
        let (spec, p) = path4(Version::Sum);
        let caps = Caps {
            candidate_cap: 2,
            ..Caps::default()
        };
        assert_eq!(
            best_response_exact(&spec, &p, 0, &caps),
            Err(Error::EnumerationCapExceeded { needed: 3, cap: 2 })
        );
    }

    #[test]
    fn swap_on_path() {
        let (spec, p) = path4(Version::Sum);
        let br = best_response_swap(&spec, &p, 0).unwrap();
        assert_eq!((br.strategy, br.cost, br.improved), (vec![2], 5, true));
    }

    #[test]
    fn swap_budget_zero() {
        let (spec, p) = path4(Version::Sum);
        let br = best_response_swap(&spec, &p, 3).unwrap();
        assert!(br.strategy.is_empty());
        assert!(!br.improved);
        assert_eq!(br.cost, br.current_cost);
    }

    #[test]
    fn evaluator_matches_rebuild_with_disconnection() {
        // 0 -> 1, 2 -> 3, 4 isolated-ish: player 1 owns an arc to 4
        let spec = GameSpec::new(vec![1, 1, 1, 0, 0], Version::Max).unwrap();
        let p = StrategyProfile::new(vec![vec![1], vec![4], vec![3], vec![], vec![]]).unwrap();
        for v in Version::BOTH {
            let spec = spec.with_version(v);
            for player in 0..3 {
                let r = Realization::from_profile(&p);
                let eval = DeviationEvaluator::new(&r, player, v);
                let mut scratch = Vec::new();
                for (s, c) in brute_force(&spec, &p, player) {
                    assert_eq!(eval.cost(&s, &mut scratch), c, "player {player} strategy {s:?} {v}");
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        // player 0 with budget 4 of 15 others: 1365 candidates; force parallel with a bigger game
        let n = 18;
        let mut budgets = vec![1; n];
        budgets[0] = 5;
        let spec = GameSpec::new(budgets, Version::Sum).unwrap();
        let mut s: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
        s[0] = vec![1, 2, 3, 4, 5];
        let p = StrategyProfile::new(s).unwrap();
        let r = Realization::from_profile(&p);
        let fast = exact_on(&r, &p, 0, 5, Version::Sum);
        assert!(fast.candidates_examined >= PARALLEL_THRESHOLD);
        let oracle = brute_force(&spec, &p, 0);
        let min = oracle.iter().map(|x| x.1).min().unwrap();
        assert_eq!(fast.cost, min);
        let current = oracle.iter().find(|x| x.0 == vec![1, 2, 3, 4, 5]).unwrap();
        let expected = if current.1 == min {
            current
        } else {
            oracle.iter().find(|x| x.1 == min).unwrap()
        };
        assert_eq!(fast.strategy, expected.0);
    }
}
