//! Shift-overlap word graphs on `{1..t}^k`.
//!
//! Two words are adjacent when one is the other shifted by one position with
//! a new symbol entering: `(x_1..x_k) ~ (a, x_1..x_{k-1})` for every `a`.
//! Words are indexed in mixed radix with `x_1` most significant, so index
//! order is lexicographic order.

use crate::error::{Error, Result};
use crate::game::{GameSpec, StrategyProfile, Version};
use crate::graph::UndirectedGraph;

use super::{Claim, ConstructionOutput, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordGraph {
    pub t: usize,
    pub k: usize,
}

impl WordGraph {
    pub fn vertex_count(&self) -> usize {
        self.t.pow(self.k as u32)
    }

    /// Word of a vertex, symbols in `1..=t`.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut word = vec![0; self.k];
        for slot in word.iter_mut().rev() {
            *slot = index % self.t + 1;
            index /= self.t;
        }
        word
    }

    pub fn encode(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &x| acc * self.t + (x - 1))
    }

    pub fn label(&self, index: usize) -> String {
        let parts: Vec<String> = self.decode(index).iter().map(usize::to_string).collect();
        format!("({})", parts.join(","))
    }

    /// Distinct neighbors of a vertex, excluding itself, ascending.
    pub fn neighbors(&self, index: usize) -> Vec<usize> {
        let t = self.t;
        let high = t.pow(self.k as u32 - 1);
        let mut out = Vec::with_capacity(2 * t);
        for a in 0..t {
            // (a, x_1 .. x_{k-1})
            out.push(a * high + index / t);
            // (x_2 .. x_k, a)
            out.push((index % high) * t + a);
        }
        out.retain(|&y| y != index);
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn graph(&self) -> UndirectedGraph {
        let adj = (0..self.vertex_count()).map(|v| self.neighbors(v)).collect();
        UndirectedGraph::from_adjacency(adj)
    }
}

/// Whether `(2t)^k - 1 < t^k (2t - 1)`; `None` if the numbers overflow `u128`.
pub fn word_graph_condition(t: usize, k: usize) -> Option<bool> {
    let t = t as u128;
    let k = u32::try_from(k).ok()?;
    let lhs = (2 * t).checked_pow(k)?.checked_sub(1)?;
    let rhs = t.checked_pow(k)?.checked_mul(2 * t - 1)?;
    Some(lhs < rhs)
}

/// Orients every edge from the smaller to the larger index, then gives each
/// vertex left with no out-arc one flipped edge from its smallest in-neighbor
/// that can spare one.
fn orient(g: &UndirectedGraph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let mut out: Vec<Vec<usize>> = (0..n)
        .map(|u| g.neighbors(u).iter().copied().filter(|&v| v > u).collect())
        .collect();
    for v in 0..n {
        if !out[v].is_empty() {
            continue;
        }
        let donor = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| out[w].len() >= 2 && out[w].binary_search(&v).is_ok())
            .ok_or_else(|| Error::Invariant(format!("vertex {v} cannot receive an out-arc")))?;
        let pos = out[donor].binary_search(&v).expect("donor owns the arc");
        out[donor].remove(pos);
        out[v].push(donor);
    }
    Ok(out)
}

fn build(wg: WordGraph, provenance: Provenance, version: Version) -> Result<ConstructionOutput> {
    let g = wg.graph();
    let arcs = orient(&g)?;
    let budgets: Vec<usize> = arcs.iter().map(Vec::len).collect();
    let spec = GameSpec::new(budgets, version)?;
    let profile = StrategyProfile::new(arcs)?;
    let k = wg.k as u64;
    let mut claims = vec![
        Claim::Equilibrium { version: Version::Max },
        Claim::DiameterExactly { value: k },
        Claim::LocalDiameterExactly { value: k },
        Claim::DegreeBetween {
            min: wg.t - 1,
            max: 2 * wg.t,
        },
    ];
    if provenance == Provenance::SqrtLogInstance {
        claims.push(Claim::AllBudgetsPositive);
    }
    Ok(ConstructionOutput {
        spec,
        profile,
        provenance,
        claims,
        permutation: None,
        layered: None,
        labels: Some((0..wg.vertex_count()).map(|v| wg.label(v)).collect()),
    })
}

fn check_cap(t: usize, k: usize, vertex_cap: u64) -> Result<()> {
    let vertices = (t as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if vertices > vertex_cap as u128 {
        return Err(Error::ResourceBound {
            vertices: u64::try_from(vertices).unwrap_or(u64::MAX),
            cap: vertex_cap,
        });
    }
    Ok(())
}

/// Word graph for `t, k > 3` satisfying the degree-counting condition.
pub fn gen_word_graph(t: usize, k: usize, vertex_cap: u64) -> Result<ConstructionOutput> {
    if t <= 3 || k <= 3 {
        return Err(Error::ConditionViolated(format!("need t > 3 and k > 3, got t = {t}, k = {k}")));
    }
    match word_graph_condition(t, k) {
        Some(true) => {}
        Some(false) => {
            return Err(Error::ConditionViolated(format!(
                "(2t)^k - 1 >= t^k (2t - 1) for t = {t}, k = {k}"
            )))
        }
        None => {
            return Err(Error::ResourceBound {
                vertices: u64::MAX,
                cap: vertex_cap,
            })
        }
    }
    check_cap(t, k, vertex_cap)?;
    build(WordGraph { t, k }, Provenance::WordGraph, Version::Max)
}

/// Word graph with `t = 2^k`, so `n = 2^(k^2)` and the diameter is `sqrt(log2 n)`.
pub fn gen_sqrtlog_instance(k: usize, vertex_cap: u64) -> Result<ConstructionOutput> {
    if k <= 3 {
        return Err(Error::InvalidParameter(format!("need k > 3, got {k}")));
    }
    if k * k >= 64 {
        return Err(Error::ResourceBound {
            vertices: u64::MAX,
            cap: vertex_cap,
        });
    }
    let t = 1usize << k;
    check_cap(t, k, vertex_cap)?;
    if word_graph_condition(t, k) != Some(true) {
        return Err(Error::ConditionViolated(format!("condition fails for t = {t}, k = {k}")));
    }
    build(WordGraph { t, k }, Provenance::SqrtLogInstance, Version::Max)
}
