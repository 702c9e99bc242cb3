//! Exact and sufficient equilibrium tests.

use serde::Serialize;

use crate::cost::cost_report_from;
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::game::{Caps, GameSpec, StrategyProfile, Version};
use crate::graph::Realization;

use super::best_response::exact_on;

/// A strictly improving deviation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub player: usize,
    pub strategy: Vec<usize>,
    pub old_cost: u64,
    pub new_cost: u64,
}

impl Witness {
    pub fn cost_delta(&self) -> u64 {
        self.old_cost - self.new_cost
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumCheck {
    pub is_equilibrium: bool,
    /// First player (ascending) with an improving move, and its exact best response.
    pub witness: Option<Witness>,
}

/// Fails with `EnumerationCapExceeded` if any player's strategy space is over the cap.
pub(crate) fn ensure_exact_feasible(spec: &GameSpec, caps: &Caps) -> Result<()> {
    for p in 0..spec.n() {
        let needed = spec.strategy_count(p);
        if needed > caps.candidate_cap {
            return Err(Error::EnumerationCapExceeded {
                needed,
                cap: caps.candidate_cap,
            });
        }
    }
    Ok(())
}

pub fn is_equilibrium_exact(spec: &GameSpec, profile: &StrategyProfile, caps: &Caps) -> Result<EquilibriumCheck> {
    profile.validate(spec)?;
    ensure_exact_feasible(spec, caps)?;
    let r = Realization::from_profile(profile);
    Ok(exact_check_on(&r, spec, profile))
}

pub(crate) fn exact_check_on(r: &Realization, spec: &GameSpec, profile: &StrategyProfile) -> EquilibriumCheck {
    for player in 0..spec.n() {
        if spec.budget(player) == 0 {
            continue;
        }
        let br = exact_on(r, profile, player, spec.budget(player), spec.version());
        if br.improved {
            return EquilibriumCheck {
                is_equilibrium: false,
                witness: Some(Witness {
                    player,
                    strategy: br.strategy,
                    old_cost: br.current_cost,
                    new_cost: br.cost,
                }),
            };
        }
    }
    EquilibriumCheck {
        is_equilibrium: true,
        witness: None,
    }
}

/// Result of the local-diameter sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sufficiency {
    /// Equilibrium in both versions.
    Proven,
    /// No claim either way.
    Inconclusive,
}

/// Proven iff every vertex has budget 0, local diameter 1, or local
/// diameter at most 2 without lying on a brace.
pub fn is_equilibrium_sufficient(spec: &GameSpec, profile: &StrategyProfile) -> Result<Sufficiency> {
    profile.validate(spec)?;
    let r = Realization::from_profile(profile);
    let dm = DistanceMatrix::compute(r.underlying());
    Ok(sufficient_on(&r, spec, &dm))
}

pub(crate) fn sufficient_on(r: &Realization, spec: &GameSpec, dm: &DistanceMatrix) -> Sufficiency {
    let costs = cost_report_from(dm, Version::Max);
    let ok = (0..spec.n()).all(|u| {
        let c_max = costs.costs[u];
        spec.budget(u) == 0 || c_max <= 1 || (c_max <= 2 && !r.in_brace(u))
    });
    if ok {
        Sufficiency::Proven
    } else {
        Sufficiency::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(budgets: &[usize], v: Version, s: Vec<Vec<usize>>) -> (GameSpec, StrategyProfile) {
        (GameSpec::new(budgets.to_vec(), v).unwrap(), StrategyProfile::new(s).unwrap())
    }

    #[test]
    fn directed_triangle_is_equilibrium() {
        for v in Version::BOTH {
            let (spec, p) = game(&[1, 1, 1], v, vec![vec![1], vec![2], vec![0]]);
            let chk = is_equilibrium_exact(&spec, &p, &Caps::default()).unwrap();
            assert!(chk.is_equilibrium);
            assert_eq!(is_equilibrium_sufficient(&spec, &p).unwrap(), Sufficiency::Proven);
        }
    }

    #[test]
    fn brace_with_pendant_has_witness() {
        let (spec, p) = game(&[1, 1, 1], Version::Sum, vec![vec![1], vec![0], vec![0]]);
        let chk = is_equilibrium_exact(&spec, &p, &Caps::default()).unwrap();
        assert_eq!(
            chk.witness,
            Some(Witness {
                player: 1,
                strategy: vec![2],
                old_cost: 3,
                new_cost: 2
            })
        );
    }

    #[test]
    fn path_is_not_equilibrium() {
        let (spec, p) = game(&[1, 1, 1, 0], Version::Sum, vec![vec![1], vec![2], vec![3], vec![]]);
        let chk = is_equilibrium_exact(&spec, &p, &Caps::default()).unwrap();
        assert!(!chk.is_equilibrium);
        let w = chk.witness.unwrap();
        assert_eq!((w.player, w.strategy.clone(), w.cost_delta()), (0, vec![2], 1));
    }

    #[test]
    fn star_is_proven() {
        let (spec, p) = game(&[3, 0, 0, 0], Version::Sum, vec![vec![1, 2, 3], vec![], vec![], vec![]]);
        assert_eq!(is_equilibrium_sufficient(&spec, &p).unwrap(), Sufficiency::Proven);
    }

    #[test]
    fn brace_pair_is_proven_via_local_diameter_one() {
        let (spec, p) = game(&[1, 1], Version::Max, vec![vec![1], vec![0]]);
        assert_eq!(is_equilibrium_sufficient(&spec, &p).unwrap(), Sufficiency::Proven);
    }

    #[test]
    fn disconnected_is_inconclusive() {
        let (spec, p) = game(&[0, 0, 1], Version::Sum, vec![vec![], vec![], vec![0]]);
        assert_eq!(is_equilibrium_sufficient(&spec, &p).unwrap(), Sufficiency::Inconclusive);
    }
}
