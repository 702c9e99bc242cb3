//! JSON interchange and DOT export.
//!
//! Every player index in a file is 1-based; the library is 0-based. The
//! conversion happens here and nowhere else.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::equilibria::{DynamicsConfig, DynamicsTrace, Move, Outcome, Witness};
use crate::error::{Error, Result};
use crate::game::{GameSpec, StrategyProfile, Version};
use crate::graph::{Realization, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameFile {
    pub n: usize,
    pub budgets: Vec<usize>,
    pub version: Version,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl GameFile {
    pub fn from_spec(spec: &GameSpec, meta: Option<Value>) -> Self {
        GameFile {
            n: spec.n(),
            budgets: spec.budgets().to_vec(),
            version: spec.version(),
            meta,
        }
    }

    pub fn to_spec(&self) -> Result<GameSpec> {
        if self.n != self.budgets.len() {
            return Err(Error::PlayerCountMismatch {
                declared: self.n,
                actual: self.budgets.len(),
            });
        }
        GameSpec::new(self.budgets.clone(), self.version)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileFile {
    pub strategies: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

fn to_one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|&x| x + 1).collect()
}

fn to_zero_based(v: &[usize], n: usize) -> Result<Vec<usize>> {
    v.iter()
        .map(|&x| {
            if x == 0 || x > n {
                Err(Error::IndexOutOfRange { index: x, n })
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

fn profile_to_one_based(p: &StrategyProfile) -> Vec<Vec<usize>> {
    p.strategies().iter().map(|s| to_one_based(s)).collect()
}

fn profile_from_one_based(strategies: &[Vec<usize>]) -> Result<StrategyProfile> {
    let n = strategies.len();
    let zero = strategies.iter().map(|s| to_zero_based(s, n)).collect::<Result<Vec<_>>>()?;
    StrategyProfile::new(zero)
}

impl ProfileFile {
    pub fn from_profile(profile: &StrategyProfile, meta: Option<Value>) -> Self {
        ProfileFile {
            strategies: profile_to_one_based(profile),
            meta,
        }
    }

    pub fn to_profile(&self) -> Result<StrategyProfile> {
        profile_from_one_based(&self.strategies)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl GraphFile {
    pub fn from_graph(g: &UndirectedGraph, meta: Option<Value>) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
            meta,
        }
    }

    /// Simple graph; loops and repeated edges are rejected.
    pub fn to_graph(&self) -> Result<UndirectedGraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let z = to_zero_based(e, self.n)?;
                Ok((z[0], z[1]))
            })
            .collect::<Result<Vec<_>>>()?;
        UndirectedGraph::simple_from_edges(self.n, &edges)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_game(text: &str) -> Result<GameSpec> {
    parse::<GameFile>(text)?.to_spec()
}

/// Parses a profile and checks it against the game.
pub fn parse_profile(text: &str, spec: &GameSpec) -> Result<StrategyProfile> {
    let file: ProfileFile = parse(text)?;
    if file.strategies.len() != spec.n() {
        return Err(Error::PlayerCountMismatch {
            declared: spec.n(),
            actual: file.strategies.len(),
        });
    }
    let p = file.to_profile()?;
    p.validate(spec)?;
    Ok(p)
}

pub fn parse_graph(text: &str) -> Result<UndirectedGraph> {
    parse::<GraphFile>(text)?.to_graph()
}

/// `digraph` with one edge per arc; braces show up as two opposite edges.
pub fn to_dot(r: &Realization, labels: Option<&[String]>, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str("// ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str("digraph realization {\n");
    for v in 0..r.n() {
        match labels.and_then(|l| l.get(v)) {
            Some(label) => out.push_str(&format!("  {} [label=\"{}\"];\n", v + 1, label.replace('"', "\\\""))),
            None => out.push_str(&format!("  {};\n", v + 1)),
        }
    }
    for (u, v) in r.arcs() {
        out.push_str(&format!("  {} -> {};\n", u + 1, v + 1));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub player: usize,
    pub strategy: Vec<usize>,
    pub old_cost: u64,
    pub new_cost: u64,
}

impl From<&Witness> for WitnessFile {
    fn from(w: &Witness) -> Self {
        WitnessFile {
            player: w.player + 1,
            strategy: to_one_based(&w.strategy),
            old_cost: w.old_cost,
            new_cost: w.new_cost,
        }
    }
}

/// One line of a dynamics trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum TraceLine {
    Header {
        config: DynamicsConfig,
        initial: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meta: Option<Value>,
    },
    Move {
        round: usize,
        player: usize,
        old_strategy: Vec<usize>,
        new_strategy: Vec<usize>,
        old_cost: u64,
        new_cost: u64,
    },
    Footer {
        outcome: Outcome,
        rounds: usize,
        #[serde(rename = "final")]
        final_profile: Vec<Vec<usize>>,
    },
}

/// JSON lines: a header, one line per move, and the outcome footer.
pub fn trace_to_jsonl(trace: &DynamicsTrace, meta: Option<Value>) -> String {
    let mut lines = vec![TraceLine::Header {
        config: trace.config,
        initial: profile_to_one_based(&trace.initial),
        meta,
    }];
    lines.extend(trace.moves.iter().map(|m| TraceLine::Move {
        round: m.round,
        player: m.player + 1,
        old_strategy: to_one_based(&m.old_strategy),
        new_strategy: to_one_based(&m.new_strategy),
        old_cost: m.old_cost,
        new_cost: m.new_cost,
    }));
    lines.push(TraceLine::Footer {
        outcome: trace.outcome,
        rounds: trace.rounds,
        final_profile: profile_to_one_based(&trace.final_profile),
    });
    let mut out = String::new();
    for line in lines {
        out.push_str(&serde_json::to_string(&line).expect("trace lines serialize"));
        out.push('\n');
    }
    out
}

/// A trace read back from JSON lines, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedTrace {
    pub config: DynamicsConfig,
    pub initial: StrategyProfile,
    pub moves: Vec<Move>,
    pub outcome: Option<Outcome>,
    pub rounds: Option<usize>,
    pub final_profile: Option<StrategyProfile>,
}

pub fn parse_trace_jsonl(text: &str) -> Result<ParsedTrace> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let (config, initial) = match lines.next().map(parse::<TraceLine>).transpose()? {
        Some(TraceLine::Header { config, initial, .. }) => (config, profile_from_one_based(&initial)?),
        _ => return Err(Error::Parse("trace must start with a header line".into())),
    };
    let n = initial.n();
    let mut parsed = ParsedTrace {
        config,
        initial,
        moves: Vec::new(),
        outcome: None,
        rounds: None,
        final_profile: None,
    };
    for line in lines {
        if parsed.outcome.is_some() {
            return Err(Error::Parse("content after trace footer".into()));
        }
        match parse::<TraceLine>(line)? {
            TraceLine::Header { .. } => return Err(Error::Parse("repeated trace header".into())),
            TraceLine::Move {
                round,
                player,
                old_strategy,
                new_strategy,
                old_cost,
                new_cost,
            } => {
                let player = to_zero_based(&[player], n)?[0];
                parsed.moves.push(Move {
                    round,
                    player,
                    old_strategy: to_zero_based(&old_strategy, n)?,
                    new_strategy: to_zero_based(&new_strategy, n)?,
                    old_cost,
                    new_cost,
                });
            }
            TraceLine::Footer {
                outcome,
                rounds,
                final_profile,
            } => {
                parsed.outcome = Some(outcome);
                parsed.rounds = Some(rounds);
                parsed.final_profile = Some(profile_from_one_based(&final_profile)?);
            }
        }
    }
    Ok(parsed)
}
