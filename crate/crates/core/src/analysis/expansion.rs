//! Ball-growth profile `f(r) = min_u |B_r(u)|`.

use crate::distance::ball_sweep;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// `f(1..=diameter)` of a connected graph; the last entry is `n`.
pub fn expansion_profile(graph: &UndirectedGraph) -> Result<Vec<usize>> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(ball_sweep(graph, true).min_ball)
}
