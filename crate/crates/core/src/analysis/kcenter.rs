//! Facility location as a best response: appending a player with budget `k`
//! to any orientation of `H` turns its best response into a k-center (MAX)
//! or k-median (SUM) solution of `H`.

use crate::combinatorics::{binomial, Combinations};
use crate::distance::bfs_from_set;
use crate::error::{Error, Result};
use crate::game::{GameSpec, StrategyProfile, Version};
use crate::graph::UndirectedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub spec: GameSpec,
    /// Opponents own the edges of `H` oriented low to high; the appended
    /// player starts on `{0, .., k - 1}`.
    pub profile: StrategyProfile,
    /// Index of the appended player (`= |V(H)|`).
    pub player: usize,
    pub k: usize,
}

impl Reduction {
    /// k-center radius or k-median sum corresponding to the appended player's cost.
    pub fn objective_from_cost(&self, cost: u64) -> u64 {
        match self.spec.version() {
            Version::Max => cost - 1,
            Version::Sum => cost - self.player as u64,
        }
    }
}

fn validate(h: &UndirectedGraph, k: usize) -> Result<()> {
    let n = h.n();
    if n < 2 {
        return Err(Error::InvalidGraph(format!("need at least 2 vertices, got {n}")));
    }
    if !h.is_connected() {
        return Err(Error::InvalidGraph("graph is disconnected".into()));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k must be in 1..={n}, got {k}")));
    }
    Ok(())
}

fn reduce(h: &UndirectedGraph, k: usize, version: Version) -> Result<Reduction> {
    validate(h, k)?;
    let n = h.n();
    let mut arcs: Vec<Vec<usize>> = (0..n)
        .map(|u| h.neighbors(u).iter().copied().filter(|&v| v > u).collect())
        .collect();
    arcs.push((0..k).collect());
    let spec = GameSpec::new(arcs.iter().map(Vec::len).collect(), version)?;
    let profile = StrategyProfile::new(arcs)?;
    Ok(Reduction {
        spec,
        profile,
        player: n,
        k,
    })
}

pub fn reduce_kcenter(h: &UndirectedGraph, k: usize) -> Result<Reduction> {
    reduce(h, k, Version::Max)
}

pub fn reduce_kmedian(h: &UndirectedGraph, k: usize) -> Result<Reduction> {
    reduce(h, k, Version::Sum)
}

fn brute_force(h: &UndirectedGraph, k: usize, cap: u64, objective: fn(&[u32]) -> u64) -> Result<(u64, Vec<usize>)> {
    validate(h, k)?;
    let n = h.n();
    let needed = binomial(n as u64, k as u64);
    if needed > cap {
        return Err(Error::EnumerationCapExceeded { needed, cap });
    }
    let all: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut combos = Combinations::new(&all, k);
    while let Some(s) = combos.next_subset() {
        let value = objective(&bfs_from_set(h, s));
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, s.to_vec()));
        }
    }
    Ok(best.expect("k <= n gives at least one subset"))
}

/// `min_{|S| = k} max_v dist(v, S)` with the lexicographically first optimal set.
pub fn brute_force_kcenter(h: &UndirectedGraph, k: usize, cap: u64) -> Result<(u64, Vec<usize>)> {
    brute_force(h, k, cap, |d| d.iter().copied().max().unwrap_or(0) as u64)
}

/// `min_{|S| = k} sum_v dist(v, S)` with the lexicographically first optimal set.
pub fn brute_force_kmedian(h: &UndirectedGraph, k: usize, cap: u64) -> Result<(u64, Vec<usize>)> {
    brute_force(h, k, cap, |d| d.iter().map(|&x| x as u64).sum())
}
