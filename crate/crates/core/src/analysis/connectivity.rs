//! Vertex connectivity by unit-capacity max flow and by brute-force cuts.

use std::collections::VecDeque;

use serde::Serialize;

use crate::combinatorics::Combinations;
use crate::distance::DistanceMatrix;
use crate::equilibria::is_equilibrium_exact;
use crate::error::{Error, Result};
use crate::game::{Caps, GameSpec, StrategyProfile, Version};
use crate::graph::{Realization, UndirectedGraph};

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, u: usize, v: usize, c: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Augmenting-path max flow, stopping once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut flow = 0;
        let mut prev = vec![usize::MAX; self.head.len()];
        while flow < limit {
            prev.fill(usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && prev[v] == usize::MAX && v != s {
                        prev[v] = e;
                        if v == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !found {
                break;
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally disjoint paths between non-adjacent `s`, `t`.
fn local_connectivity(g: &UndirectedGraph, s: usize, t: usize, limit: u32) -> u32 {
    let n = g.n();
    let big = n as u32;
    // vertex v splits into in = 2v and out = 2v + 1
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.add(2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        net.add(2 * u + 1, 2 * v, big);
        net.add(2 * v + 1, 2 * u, big);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Minimum vertex cut size, via Menger: the minimum over non-adjacent pairs
/// of the local connectivity, or `n - 1` for complete graphs.
pub fn vertex_connectivity(g: &UndirectedGraph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = (n - 1) as u32;
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(local_connectivity(g, s, t, best));
            }
        }
    }
    best as usize
}

/// Smallest vertex set whose removal disconnects the graph, by enumeration.
pub fn vertex_connectivity_brute_force(g: &UndirectedGraph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    let all: Vec<usize> = (0..n).collect();
    for k in 1..n.saturating_sub(1) {
        for cut in Combinations::new(&all, k) {
            let mut removed = vec![false; n];
            for &v in &cut {
                removed[v] = true;
            }
            if !g.without_vertices(&removed).is_connected() {
                return k;
            }
        }
    }
    n - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityVerdict {
    pub min_budget: usize,
    pub diameter: u64,
    pub connectivity: usize,
    /// Diameter at most 3, or connectivity at least the minimum budget.
    pub holds: bool,
    /// Whether the equilibrium property was confirmed by the exact checker.
    pub equilibrium_verified: bool,
}

/// Connectivity predicate for SUM equilibria: diameter at most 3 or
/// `min budget`-connected.
pub fn check_connectivity_theorem(
    spec: &GameSpec,
    profile: &StrategyProfile,
    caps: &Caps,
) -> Result<ConnectivityVerdict> {
    if spec.version() != Version::Sum {
        return Err(Error::InvalidParameter("connectivity predicate applies to the SUM version".into()));
    }
    let r = Realization::build(spec, profile)?;
    let verified = match is_equilibrium_exact(spec, profile, caps) {
        Ok(chk) => {
            if let Some(w) = chk.witness {
                return Err(Error::NotAnEquilibrium {
                    player: w.player,
                    old_cost: w.old_cost,
                    new_cost: w.new_cost,
                });
            }
            true
        }
        Err(Error::EnumerationCapExceeded { .. }) => false,
        Err(e) => return Err(e),
    };
    let diameter = DistanceMatrix::compute(r.underlying()).diameter();
    let connectivity = vertex_connectivity(r.underlying());
    let min_budget = spec.min_budget();
    Ok(ConnectivityVerdict {
        min_budget,
        diameter,
        connectivity,
        holds: diameter <= 3 || connectivity >= min_budget,
        equilibrium_verified: verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        assert_eq!(vertex_connectivity(&UndirectedGraph::complete(4)), 3);
        assert_eq!(vertex_connectivity(&UndirectedGraph::path(4)), 1);
        assert_eq!(vertex_connectivity(&UndirectedGraph::cycle(5)), 2);
        assert_eq!(vertex_connectivity_brute_force(&UndirectedGraph::complete(4)), 3);
        assert_eq!(vertex_connectivity_brute_force(&UndirectedGraph::path(4)), 1);
        assert_eq!(vertex_connectivity_brute_force(&UndirectedGraph::cycle(5)), 2);
    }

    #[test]
    fn disconnected_and_tiny() {
        let g = UndirectedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&g), 0);
        assert_eq!(vertex_connectivity_brute_force(&g), 0);
        assert_eq!(vertex_connectivity(&UndirectedGraph::complete(2)), 1);
    }

    #[test]
    fn petersen_is_three_connected() {
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let g = UndirectedGraph::from_edges(10, &edges).unwrap();
        assert_eq!(vertex_connectivity(&g), 3);
        assert_eq!(vertex_connectivity_brute_force(&g), 3);
    }

    #[test]
    fn triangle_predicate_holds() {
        let spec = GameSpec::new(vec![1, 1, 1], Version::Sum).unwrap();
        let p = StrategyProfile::new(vec![vec![1], vec![2], vec![0]]).unwrap();
        let v = check_connectivity_theorem(&spec, &p, &Caps::default()).unwrap();
        assert!(v.holds && v.equilibrium_verified);
        assert_eq!(v.diameter, 1);
    }

    #[test]
    fn rejects_non_equilibrium() {
        let spec = GameSpec::new(vec![1, 1, 1, 0], Version::Sum).unwrap();
        let p = StrategyProfile::new(vec![vec![1], vec![2], vec![3], vec![]]).unwrap();
        assert!(matches!(
            check_connectivity_theorem(&spec, &p, &Caps::default()),
            Err(Error::NotAnEquilibrium { player: 0, .. })
        ));
    }
}
