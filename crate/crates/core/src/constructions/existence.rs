//! Equilibrium existence construction for arbitrary budget vectors.
//!
//! Players are first sorted by budget (ascending, ties by index). Work happens
//! on sorted positions `0..n`; the result is mapped back to the caller's
//! player numbering through the recorded permutation.

use serde::Serialize;

use crate::distance::bfs;
use crate::error::{Error, Result};
use crate::game::{GameSpec, StrategyProfile, Version};
use crate::graph::UndirectedGraph;

use super::{Claim, ConstructionOutput, Provenance};

/// Intermediate values of the layered construction, in sorted positions
/// (0-based) for `t`. `phase2_counts` lists `(sorted position, arcs into the
/// zero-budget block)` in the order they were added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayeredTrace {
    pub zero_budget: usize,
    /// 1-based index `t` in the ascending budget order.
    pub t: usize,
    pub s: usize,
    pub phase2_counts: Vec<(usize, usize)>,
    /// After phase 2 every zero-budget vertex has exactly one incoming arc.
    pub single_incoming_after_phase2: bool,
    /// Every arc from the connector block into the zero-budget block ends at
    /// a vertex whose only neighbor is that arc's owner.
    pub connector_leaves_private: bool,
}

pub fn construct_equilibrium(budgets: &[usize], version: Version) -> Result<ConstructionOutput> {
    let spec = GameSpec::new(budgets.to_vec(), version)?;
    let n = spec.n();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&i| (budgets[i], i));
    let sorted: Vec<usize> = perm.iter().map(|&i| budgets[i]).collect();

    let (arcs, provenance, layered, mut claims) = build_sorted(&sorted)?;

    let mut strategies = vec![Vec::new(); n];
    for (pos, targets) in arcs.iter().enumerate() {
        let mut s: Vec<usize> = targets.iter().map(|&t| perm[t]).collect();
        s.sort_unstable();
        strategies[perm[pos]] = s;
    }
    let profile = StrategyProfile::new(strategies)?;
    profile.validate(&spec)?;
    claims.insert(0, Claim::Equilibrium { version: Version::Max });
    claims.insert(0, Claim::Equilibrium { version: Version::Sum });
    Ok(ConstructionOutput {
        spec,
        profile,
        provenance,
        claims,
        permutation: Some(perm),
        layered,
        labels: None,
    })
}

type Built = (Vec<Vec<usize>>, Provenance, Option<LayeredTrace>, Vec<Claim>);

fn build_sorted(b: &[usize]) -> Result<Built> {
    let n = b.len();
    let sigma: usize = b.iter().sum();
    let z = b.iter().filter(|&&x| x == 0).count();
    let bmax = b[n - 1];
    if n == 1 {
        return Ok((vec![Vec::new()], Provenance::ExistenceStar, None, vec![Claim::DiameterAtMost { value: 2 }]));
    }
    if sigma + 1 >= n {
        if bmax >= z {
            Ok((star_case(b)?, Provenance::ExistenceStar, None, vec![Claim::DiameterAtMost { value: 2 }]))
        } else {
            let (arcs, trace) = layered_case(b)?;
            Ok((arcs, Provenance::ExistenceLayered, Some(trace), vec![Claim::DiameterAtMost { value: 4 }]))
        }
    } else {
        disconnected_case(b)
    }
}

fn adjacent(arcs: &[Vec<usize>], u: usize, v: usize) -> bool {
    arcs[u].contains(&v) || arcs[v].contains(&u)
}

fn underlying(arcs: &[Vec<usize>]) -> UndirectedGraph {
    let mut adj = vec![Vec::new(); arcs.len()];
    for (u, ts) in arcs.iter().enumerate() {
        for &v in ts {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    UndirectedGraph::from_adjacency(adj)
}

/// Star on the largest-budget vertex, then fill, then remove braces.
fn star_case(b: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = b.len();
    let hub = n - 1;
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    arcs[hub].extend(0..b[hub]);
    for out in &mut arcs[b[hub]..hub] {
        out.push(hub);
    }
    // fill: smallest non-neighbor first, else smallest non-target
    for u in 0..n {
        while arcs[u].len() < b[u] {
            let pick = (0..n)
                .find(|&w| w != u && !adjacent(&arcs, u, w))
                .or_else(|| (0..n).find(|&w| w != u && !arcs[u].contains(&w)))
                .ok_or_else(|| Error::Invariant("no target left while filling".into()))?;
            arcs[u].push(pick);
        }
    }
    // brace elimination, braces scanned by (min, max)
    loop {
        let mut braces: Vec<(usize, usize)> = Vec::new();
        for u in 0..n {
            for &v in &arcs[u] {
                if v > u && arcs[v].contains(&u) {
                    braces.push((u, v));
                }
            }
        }
        braces.sort_unstable();
        let g = underlying(&arcs);
        let mut replaced = false;
        'scan: for &(a, c) in &braces {
            for (u, v) in [(a, c), (c, a)] {
                let ecc = bfs(&g, u).into_iter().max().unwrap_or(0);
                if ecc != 2 {
                    continue;
                }
                if let Some(w) = (0..n).find(|&w| w != u && !g.has_edge(u, w)) {
                    let slot = arcs[u].iter().position(|&x| x == v).expect("brace arc present");
                    arcs[u][slot] = w;
                    replaced = true;
                    break 'scan;
                }
            }
        }
        if !replaced {
            break;
        }
    }
    for a in &mut arcs {
        a.sort_unstable();
    }
    Ok(arcs)
}

/// Layered construction for many zero-budget players. Positions are 0-based;
/// the 1-based index `i` of the write-up is position `i - 1`.
fn layered_case(b: &[usize]) -> Result<(Vec<Vec<usize>>, LayeredTrace)> {
    let n = b.len();
    let z = b.iter().filter(|&&x| x == 0).count();
    let at = |i: usize| b[i - 1];
    let suffix = |i: usize| (i..=n).map(at).sum::<usize>();
    // largest 1-based t with b_n + ... + b_t >= z + n - t
    let t = (1..=n)
        .rev()
        .find(|&t| suffix(t) >= z + n - t)
        .ok_or_else(|| Error::Invariant("no valid split index".into()))?;
    if t <= z || t >= n {
        return Err(Error::Invariant(format!("split index {t} outside ({z}, {n})")));
    }
    let v = |i: usize| i - 1;
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); n];

    // phase 1: B and C point at v_n
    for i in z + 1..n {
        arcs[v(i)].push(v(n));
    }

    // phase 2: v_n, then C descending, then v_t cover A left to right
    let mut next_a = 1;
    let mut counts = Vec::new();
    let mut give = |owner: usize, count: usize, arcs: &mut Vec<Vec<usize>>, next_a: &mut usize| -> Result<()> {
        if *next_a + count > z + 1 {
            return Err(Error::Invariant("zero-budget block exhausted".into()));
        }
        for a in *next_a..*next_a + count {
            arcs[v(owner)].push(v(a));
        }
        *next_a += count;
        counts.push((v(owner), count));
        Ok(())
    };
    give(n, at(n), &mut arcs, &mut next_a)?;
    for i in (t + 1..n).rev() {
        give(i, at(i) - 1, &mut arcs, &mut next_a)?;
    }
    let s = (z + n) - (t + 1) - suffix(t + 1);
    if s == 0 || next_a + s != z + 1 {
        return Err(Error::Invariant(format!("s = {s} does not close the zero-budget block")));
    }
    give(t, s, &mut arcs, &mut next_a)?;

    let mut incoming = vec![0usize; n];
    for ts in &arcs {
        for &x in ts {
            incoming[x] += 1;
        }
    }
    let single_incoming = (1..=z).all(|a| incoming[v(a)] == 1);
    if !single_incoming {
        return Err(Error::Invariant("zero-budget vertex without a unique incoming arc".into()));
    }

    // phase 3: B links to C and v_t, from v_{n-1} downwards
    for i in z + 1..=t {
        for j in (t..n).rev() {
            if arcs[v(i)].len() >= at(i) {
                break;
            }
            if j != i {
                arcs[v(i)].push(v(j));
            }
        }
    }
    // phase 4: remaining B budget goes to A from v_1 upwards
    for i in z + 1..=t {
        let mut a = 1;
        while arcs[v(i)].len() < at(i) {
            if a > z {
                return Err(Error::Invariant("phase 4 ran out of targets".into()));
            }
            if !arcs[v(i)].contains(&v(a)) {
                arcs[v(i)].push(v(a));
            }
            a += 1;
        }
    }

    for (pos, ts) in arcs.iter().enumerate() {
        if ts.len() != b[pos] {
            return Err(Error::Invariant(format!("position {pos} owns {} arcs, budget {}", ts.len(), b[pos])));
        }
    }
    for u in 0..n {
        for &w in &arcs[u] {
            if arcs[w].contains(&u) {
                return Err(Error::Invariant("layered construction created a brace".into()));
            }
        }
    }
    let g = underlying(&arcs);
    let leaves_private = (t + 1..n).all(|i| {
        arcs[v(i)]
            .iter()
            .filter(|&&x| x < z)
            .all(|&x| g.neighbors(x) == [v(i)])
    });
    if !leaves_private {
        return Err(Error::Invariant("connector arc into a shared zero-budget vertex".into()));
    }
    for a in &mut arcs {
        a.sort_unstable();
    }
    Ok((
        arcs,
        LayeredTrace {
            zero_budget: z,
            t,
            s,
            phase2_counts: counts,
            single_incoming_after_phase2: single_incoming,
            connector_leaves_private: leaves_private,
        },
    ))
}

/// Budget sum below `n - 1`: SUM equilibrium on the shortest feasible suffix.
fn disconnected_case(b: &[usize]) -> Result<Built> {
    let n = b.len();
    // smallest 1-based m with b_m + ... + b_n >= n - m
    let m = (1..=n)
        .find(|&m| b[m - 1..].iter().sum::<usize>() >= n - m)
        .expect("m = n always qualifies");
    let sub = &b[m - 1..];
    let (sub_arcs, _, layered, _) = build_sorted(sub)?;
    let offset = m - 1;
    let mut arcs = vec![Vec::new(); n];
    for (i, ts) in sub_arcs.into_iter().enumerate() {
        arcs[offset + i] = ts.into_iter().map(|x| x + offset).collect();
    }
    let nn = (n as u64) * (n as u64);
    Ok((arcs, Provenance::ExistenceDisconnected, layered, vec![Claim::DiameterExactly { value: nn }]))
}
