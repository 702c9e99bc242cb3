//! Breadth-first distances on underlying graphs.
//!
//! Pairs in different components are at distance `n^2`. Within a component
//! every distance is below `n`, so the convention is unambiguous for `n >= 2`.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::UndirectedGraph;

/// Marker for "not reached" in raw BFS output.
pub const UNREACHED: u32 = u32::MAX;

/// Single-source BFS; unreachable vertices get [`UNREACHED`].
pub fn bfs(graph: &UndirectedGraph, source: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHED; graph.n()];
    let mut queue = VecDeque::new();
    bfs_into(graph, source, None, &mut dist, &mut queue);
    dist
}

/// BFS into a caller-provided buffer, treating `skip` as deleted.
pub(crate) fn bfs_into(
    graph: &UndirectedGraph,
    source: usize,
    skip: Option<usize>,
    dist: &mut [u32],
    queue: &mut VecDeque<usize>,
) {
    dist.fill(UNREACHED);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in graph.neighbors(u) {
            if dist[v] == UNREACHED && Some(v) != skip {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

/// Multi-source BFS distance from a vertex set.
pub fn bfs_from_set(graph: &UndirectedGraph, sources: &[usize]) -> Vec<u32> {
    let mut dist = vec![UNREACHED; graph.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if dist[v] == UNREACHED {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// All-pairs distances with the `n^2` disconnection convention.
///
/// Stores `n^2` entries; intended for desk-scale graphs. Large graphs should
/// use [`bfs`] or [`ball_sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    raw: Vec<u32>,
    component: Vec<usize>,
    kappa: usize,
}

impl DistanceMatrix {
    pub fn compute(graph: &UndirectedGraph) -> Self {
        let n = graph.n();
        let mut raw = vec![UNREACHED; n * n];
        raw.par_chunks_mut(n.max(1)).enumerate().for_each_init(VecDeque::new, |queue, (s, row)| {
            if s < n {
                bfs_into(graph, s, None, row, queue);
            }
        });
        let (component, kappa) = graph.components();
        DistanceMatrix {
            n,
            raw,
            component,
            kappa,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c_inf(&self) -> u64 {
        (self.n as u64) * (self.n as u64)
    }

    /// Distance in the underlying graph, or `n^2` across components.
    pub fn dist(&self, u: usize, v: usize) -> u64 {
        match self.raw[u * self.n + v] {
            UNREACHED => self.c_inf(),
            d => d as u64,
        }
    }

    pub fn row(&self, u: usize) -> impl Iterator<Item = u64> + '_ {
        (0..self.n).map(move |v| self.dist(u, v))
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    /// Component partition, each part sorted, parts ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.kappa];
        for (v, &c) in self.component.iter().enumerate() {
            parts[c].push(v);
        }
        parts
    }

    pub fn local_diameter(&self, u: usize) -> u64 {
        self.row(u).max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u64 {
        (0..self.n).map(|u| self.local_diameter(u)).max().unwrap_or(0)
    }
}

/// Per-source eccentricities and minimum ball sizes from a full BFS sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSummary {
    /// Eccentricity of every vertex within its component.
    pub eccentricity: Vec<u32>,
    /// `min_ball[r - 1] = min_u |B_r(u)|` for `r = 1..=max eccentricity`.
    /// Empty unless ball sizes were requested.
    pub min_ball: Vec<usize>,
}

const LANES: usize = 4;
type Block = [u64; LANES];
const BATCH: usize = 64 * LANES;

/// BFS from every vertex at once, 256 sources per pass, using bitsets of
/// "sources that reached this vertex".
///
/// A vertex whose bitset is full is skipped, so the last levels of a small
/// diameter graph cost almost nothing.
pub fn ball_sweep(graph: &UndirectedGraph, with_balls: bool) -> SweepSummary {
    let n = graph.n();
    let batches: Vec<usize> = (0..n.div_ceil(BATCH)).collect();
    let results: Vec<(Vec<u32>, Vec<usize>)> = batches
        .par_iter()
        .map(|&b| sweep_batch(graph, b * BATCH, (b * BATCH + BATCH).min(n), with_balls))
        .collect();
    let mut eccentricity = Vec::with_capacity(n);
    let mut min_ball: Vec<usize> = Vec::new();
    for (ecc, balls) in results {
        eccentricity.extend(ecc);
        if with_balls {
            if balls.len() > min_ball.len() {
                // radii past a batch's largest eccentricity have ball size n
                min_ball.resize(balls.len(), n);
            }
            for (r, &size) in balls.iter().enumerate() {
                min_ball[r] = min_ball[r].min(size);
            }
        }
    }
    if with_balls {
        let maxr = eccentricity.iter().copied().max().unwrap_or(0) as usize;
        min_ball.resize(maxr, n);
    }
    SweepSummary {
        eccentricity,
        min_ball,
    }
}

fn sweep_batch(graph: &UndirectedGraph, lo: usize, hi: usize, with_balls: bool) -> (Vec<u32>, Vec<usize>) {
    let n = graph.n();
    let width = hi - lo;
    let mut full: Block = [0; LANES];
    for j in 0..width {
        full[j / 64] |= 1 << (j % 64);
    }
    let mut visited: Vec<Block> = vec![[0; LANES]; n];
    let mut frontier: Vec<Block> = vec![[0; LANES]; n];
    let mut next: Vec<Block> = vec![[0; LANES]; n];
    for j in 0..width {
        visited[lo + j][j / 64] |= 1 << (j % 64);
        frontier[lo + j][j / 64] |= 1 << (j % 64);
    }
    let mut ecc = vec![0u32; width];
    let mut ball = vec![1usize; width];
    let mut min_ball = Vec::new();
    let mut level = 0u32;
    loop {
        level += 1;
        let mut any: Block = [0; LANES];
        for v in 0..n {
            let seen = visited[v];
            if seen == full {
                next[v] = [0; LANES];
                continue;
            }
            let mut acc: Block = [0; LANES];
            for &w in graph.neighbors(v) {
                let f = &frontier[w];
                for l in 0..LANES {
                    acc[l] |= f[l];
                }
            }
            for l in 0..LANES {
                acc[l] &= !seen[l];
                any[l] |= acc[l];
            }
            next[v] = acc;
            if with_balls {
                for (l, &word) in acc.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        ball[l * 64 + bits.trailing_zeros() as usize] += 1;
                        bits &= bits - 1;
                    }
                }
            }
        }
        if any == [0; LANES] {
            break;
        }
        for (l, &word) in any.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                ecc[l * 64 + bits.trailing_zeros() as usize] = level;
                bits &= bits - 1;
            }
        }
        for v in 0..n {
            for l in 0..LANES {
                visited[v][l] |= next[v][l];
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        if with_balls {
            min_ball.push(ball.iter().copied().min().unwrap_or(n));
        }
    }
    (ecc, min_ball)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let g = UndirectedGraph::path(4);
        let d = DistanceMatrix::compute(&g);
        assert_eq!(d.dist(0, 3), 3);
        assert_eq!(d.kappa(), 1);
        assert_eq!(d.diameter(), 3);
    }

    #[test]
    fn disconnected_uses_n_squared() {
        let g = UndirectedGraph::from_edges(3, &[(2, 0)]).unwrap();
        let d = DistanceMatrix::compute(&g);
        assert_eq!(d.dist(2, 0), 1);
        assert_eq!(d.dist(2, 1), 9);
        assert_eq!(d.dist(0, 1), 9);
        assert_eq!(d.kappa(), 2);
        assert_eq!(d.components(), vec![vec![0, 2], vec![1]]);
        assert_eq!(d.diameter(), 9);
    }

    #[test]
    fn single_vertex() {
        let d = DistanceMatrix::compute(&UndirectedGraph::path(1));
        assert_eq!(d.diameter(), 0);
        assert_eq!(d.kappa(), 1);
    }

    #[test]
    fn sweep_matches_bfs_on_cycle() {
        let g = UndirectedGraph::cycle(7);
        let s = ball_sweep(&g, true);
        assert_eq!(s.eccentricity, vec![3; 7]);
        assert_eq!(s.min_ball, vec![3, 5, 7]);
    }

    #[test]
    fn sweep_matches_bfs_across_batches() {
        // 600 vertices spans three batches
        let n = 600;
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.extend((0..n).step_by(7).map(|i| (i, (i * 13 + 5) % n)).filter(|&(a, b)| a != b));
        let g = UndirectedGraph::from_edges(n, &edges).unwrap();
        let s = ball_sweep(&g, true);
        for v in (0..n).step_by(37) {
            let d = bfs(&g, v);
            assert_eq!(s.eccentricity[v], *d.iter().max().unwrap());
        }
        let mut expect = Vec::new();
        let all: Vec<Vec<u32>> = (0..n).map(|v| bfs(&g, v)).collect();
        let maxr = s.eccentricity.iter().copied().max().unwrap();
        for r in 1..=maxr {
            expect.push(all.iter().map(|d| d.iter().filter(|&&x| x <= r).count()).min().unwrap());
        }
        assert_eq!(s.min_ball, expect);
    }
}
