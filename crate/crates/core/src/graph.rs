//! Realizations and their underlying undirected graphs.

use crate::error::{Error, Result};
use crate::game::{GameSpec, StrategyProfile};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    /// Builds a graph from an edge list, collapsing parallel edges. Self
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Like [`UndirectedGraph::from_edges`] but also rejects repeated edges.
    pub fn simple_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::from_edges(n, edges)?;
        if g.edge_count() != edges.len() {
            return Err(Error::InvalidGraph("repeated edge".into()));
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        UndirectedGraph { adj }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        UndirectedGraph { adj }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Component id per vertex (ids in order of smallest member) and the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Graph with the listed vertices removed, relabelled in increasing order.
    pub fn without_vertices(&self, removed: &[bool]) -> UndirectedGraph {
        let mut map = vec![usize::MAX; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if !removed[v] {
                map[v] = next;
                next += 1;
            }
        }
        let mut adj = vec![Vec::new(); next];
        for u in 0..self.n() {
            if removed[u] {
                continue;
            }
            adj[map[u]] = self.adj[u]
                .iter()
                .filter(|&&v| !removed[v])
                .map(|&v| map[v])
                .collect();
        }
        UndirectedGraph { adj }
    }
}

/// Directed realization of a strategy profile plus its underlying graph.
///
/// A brace (mutual pair of arcs) is recorded in `braces` and contributes a
/// single adjacency to the underlying graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    arcs: Vec<Vec<usize>>,
    underlying: UndirectedGraph,
    braces: Vec<(usize, usize)>,
}

impl Realization {
    pub fn build(spec: &GameSpec, profile: &StrategyProfile) -> Result<Self> {
        profile.validate(spec)?;
        Ok(Self::from_profile(profile))
    }

    /// Realization of a profile without budget validation.
    pub fn from_profile(profile: &StrategyProfile) -> Self {
        let n = profile.n();
        let arcs: Vec<Vec<usize>> = profile.strategies().to_vec();
        let mut adj = vec![Vec::new(); n];
        let mut braces = Vec::new();
        for (u, targets) in arcs.iter().enumerate() {
            for &v in targets {
                adj[u].push(v);
                adj[v].push(u);
                if v > u && arcs[v].binary_search(&u).is_ok() {
                    braces.push((u, v));
                }
            }
        }
        Realization {
            arcs,
            underlying: UndirectedGraph::from_adjacency(adj),
            braces,
        }
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_arcs(&self, owner: usize) -> &[usize] {
        &self.arcs[owner]
    }

    pub fn has_arc(&self, owner: usize, target: usize) -> bool {
        self.arcs[owner].binary_search(&target).is_ok()
    }

    /// All arcs `(owner, target)` in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs
            .iter()
            .enumerate()
            .flat_map(|(u, ts)| ts.iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn underlying(&self) -> &UndirectedGraph {
        &self.underlying
    }

    /// Braces as `(u, v)` with `u < v`.
    pub fn braces(&self) -> &[(usize, usize)] {
        &self.braces
    }

    pub fn in_brace(&self, v: usize) -> bool {
        self.braces.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Owners of arcs pointing at `v`.
    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.has_arc(u, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Version;

    fn realize(budgets: &[usize], strategies: Vec<Vec<usize>>) -> Result<Realization> {
        let spec = GameSpec::new(budgets.to_vec(), Version::Sum)?;
        Realization::build(&spec, &StrategyProfile::new(strategies)?)
    }

    #[test]
    fn two_player_brace() {
        let r = realize(&[1, 1], vec![vec![1], vec![0]]).unwrap();
        assert_eq!(r.braces(), &[(0, 1)]);
        assert_eq!(r.underlying().edge_count(), 1);
        assert_eq!(r.arc_count(), 2);
    }

    #[test]
    fn directed_path() {
        let r = realize(&[1, 1, 1, 0], vec![vec![1], vec![2], vec![3], vec![]]).unwrap();
        assert!(r.braces().is_empty());
        assert_eq!(r.underlying().edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn brace_plus_edge() {
        let r = realize(&[1, 1, 1], vec![vec![1], vec![0], vec![0]]).unwrap();
        assert_eq!(r.braces(), &[(0, 1)]);
        assert_eq!(r.underlying().edges(), vec![(0, 1), (0, 2)]);
        assert!(r.in_brace(1) && !r.in_brace(2));
        assert_eq!(r.in_neighbors(0), vec![1, 2]);
    }

    #[test]
    fn budget_mismatch() {
        assert_eq!(
            realize(&[1, 1], vec![vec![1], vec![]]),
            Err(Error::BudgetMismatch {
                player: 1,
                expected: 1,
                actual: 0
            })
        );
    }

    #[test]
    fn vertex_removal_relabels() {
        let g = UndirectedGraph::cycle(5);
        let h = g.without_vertices(&[false, true, false, false, false]);
        assert_eq!(h.n(), 4);
        assert_eq!(h.edges(), vec![(0, 3), (1, 2), (2, 3)]);
        assert!(UndirectedGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(UndirectedGraph::simple_from_edges(2, &[(0, 1), (1, 0)]).is_err());
    }
}
