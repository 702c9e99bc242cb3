//! Bounded-budget network creation games.
//!
//! Each of `n` players owns a fixed number of outgoing links and picks
//! their targets; distances are measured in the undirected graph formed by
//! all links. A player's cost is either the sum of its distances (SUM) or its
//! local diameter (MAX), with disconnected pairs charged `n^2`.
//!
//! Players are 0-based throughout the library. The [`io`] module converts to
//! and from the 1-based indices used in files.

pub mod analysis;
pub mod combinatorics;
pub mod constructions;
pub mod cost;
pub mod distance;
pub mod equilibria;
mod error;
pub mod game;
pub mod graph;
pub mod io;

pub use error::{Error, Result};
pub use game::{Caps, GameSpec, StrategyProfile, Version, MAX_PLAYERS};
pub use graph::{Realization, UndirectedGraph};
