//! Exhaustive profile enumeration at tiny scale.

use rayon::prelude::*;

use crate::combinatorics::Combinations;
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::game::{Caps, GameSpec, StrategyProfile};
use crate::graph::Realization;

use super::check::{ensure_exact_feasible, exact_check_on};

const CHUNK: u64 = 2048;

/// Visits every feasible profile in canonical order (player 0's strategy is
/// the most significant digit, each digit in lexicographic subset order).
///
/// Work is split into chunks processed in parallel; one accumulator per chunk
/// is returned in chunk order, so merged results do not depend on scheduling.
pub fn sweep_profiles<A, M, F>(spec: &GameSpec, caps: &Caps, make: M, visit: F) -> Result<Vec<A>>
where
    A: Send,
    M: Fn() -> A + Sync,
    F: Fn(&mut A, &StrategyProfile) + Sync,
{
    let total = spec.profile_count();
    if total > caps.profile_cap {
        return Err(Error::EnumerationCapExceeded {
            needed: total,
            cap: caps.profile_cap,
        });
    }
    let n = spec.n();
    let options: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|p| {
            let others: Vec<usize> = (0..n).filter(|&v| v != p).collect();
            Combinations::new(&others, spec.budget(p)).collect()
        })
        .collect();
    let chunks = total.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = make();
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(total);
            // decode lo into mixed-radix digits
            let mut digits = vec![0usize; n];
            let mut rest = lo;
            for p in (0..n).rev() {
                let base = options[p].len() as u64;
                digits[p] = (rest % base) as usize;
                rest /= base;
            }
            let mut profile =
                StrategyProfile::from_sorted_unchecked((0..n).map(|p| options[p][digits[p]].clone()).collect());
            for i in lo..hi {
                visit(&mut acc, &profile);
                if i + 1 == hi {
                    break;
                }
                let mut p = n - 1;
                loop {
                    digits[p] += 1;
                    if digits[p] < options[p].len() {
                        profile.set_strategy(p, options[p][digits[p]].clone());
                        break;
                    }
                    digits[p] = 0;
                    profile.set_strategy(p, options[p][0].clone());
                    p -= 1;
                }
            }
            acc
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumEnumeration {
    /// Every equilibrium profile, canonically ordered.
    pub profiles: Vec<StrategyProfile>,
    /// Diameter of each equilibrium, parallel to `profiles`.
    pub diameters: Vec<u64>,
    pub total_profiles: u64,
}

impl EquilibriumEnumeration {
    pub fn count(&self) -> usize {
        self.profiles.len()
    }

    pub fn min_diameter(&self) -> Option<u64> {
        self.diameters.iter().copied().min()
    }

    pub fn max_diameter(&self) -> Option<u64> {
        self.diameters.iter().copied().max()
    }
}

/// All profiles passing the exact equilibrium check.
pub fn enumerate_equilibria(spec: &GameSpec, caps: &Caps) -> Result<EquilibriumEnumeration> {
    ensure_exact_feasible(spec, caps)?;
    let total = spec.profile_count();
    let parts = sweep_profiles(spec, caps, Vec::new, |acc: &mut Vec<(StrategyProfile, u64)>, p| {
        let r = Realization::from_profile(p);
        if exact_check_on(&r, spec, p).is_equilibrium {
            let d = DistanceMatrix::compute(r.underlying()).diameter();
            acc.push((p.clone(), d));
        }
    })?;
    let (profiles, diameters) = parts.into_iter().flatten().unzip();
    Ok(EquilibriumEnumeration {
        profiles,
        diameters,
        total_profiles: total,
    })
}
