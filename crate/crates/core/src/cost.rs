//! SUM and MAX costs, local diameters and the diameter of a realization.

use serde::Serialize;

use crate::distance::{bfs, DistanceMatrix, UNREACHED};
use crate::game::Version;
use crate::graph::Realization;

/// Per-player costs and local diameters under one version.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub version: Version,
    pub costs: Vec<u64>,
    pub local_diameters: Vec<u64>,
    pub kappa: usize,
}

fn cost_from_row(row: impl Iterator<Item = u64>, kappa: usize, c_inf: u64, version: Version) -> (u64, u64) {
    let mut sum = 0u64;
    let mut max = 0u64;
    for d in row {
        sum += d;
        max = max.max(d);
    }
    let cost = match version {
        Version::Sum => sum,
        Version::Max => max + (kappa as u64 - 1) * c_inf,
    };
    (cost, max)
}

pub fn cost_report(r: &Realization, version: Version) -> CostReport {
    let dm = DistanceMatrix::compute(r.underlying());
    cost_report_from(&dm, version)
}

pub fn cost_report_from(dm: &DistanceMatrix, version: Version) -> CostReport {
    let (costs, local_diameters) = (0..dm.n())
        .map(|u| cost_from_row(dm.row(u), dm.kappa(), dm.c_inf(), version))
        .unzip();
    CostReport {
        version,
        costs,
        local_diameters,
        kappa: dm.kappa(),
    }
}

/// Cost of one player, computed from a single BFS.
pub fn cost(r: &Realization, player: usize, version: Version) -> u64 {
    let n = r.n() as u64;
    let d = bfs(r.underlying(), player);
    let kappa = r.underlying().components().1;
    cost_from_row(
        d.iter().map(|&x| if x == UNREACHED { n * n } else { x as u64 }),
        kappa,
        n * n,
        version,
    )
    .0
}

pub fn local_diameter(r: &Realization, player: usize) -> u64 {
    let n = r.n() as u64;
    bfs(r.underlying(), player)
        .into_iter()
        .map(|x| if x == UNREACHED { n * n } else { x as u64 })
        .max()
        .unwrap_or(0)
}

/// Largest distance between two vertices; `n^2` when disconnected.
pub fn diameter(r: &Realization) -> u64 {
    DistanceMatrix::compute(r.underlying()).diameter()
}
