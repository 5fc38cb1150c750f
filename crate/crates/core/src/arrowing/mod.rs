//! Arrowing: decide `G → (F_1, …, F_s)`, i.e. whether every `s`-coloring
//! of the edges of `G` contains, for some `i`, a copy of `F_i` entirely in
//! color `i`. A coloring is any total map from edges to colors; classes may
//! be empty.
//!
//! The decision is a backtracking search over edge colorings with
//! propagation (see [`search`]). A refuting coloring is returned as an
//! [`ArrowWitness`] and can be re-checked with [`verify_witness`], which
//! shares no code with the search.
//!
//! Ramsey numbers only need complete hosts: if some `N`-vertex `G` arrows
//! the tuple then so does `K_N`, because a coloring of `K_N` restricts to a
//! coloring of `G` and any monochromatic copy found there is also one in
//! `K_N`.

mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{canonical_form, copies_of, Hypergraph};

pub use search::SearchStats;

/// Default node budget for a single arrowing decision.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowError {
    #[error("the target tuple is empty")]
    NoTargets,
    #[error("uniformities differ: host has {host}, target {index} has {target}")]
    UniformityMismatch {
        index: usize,
        host: usize,
        target: usize,
    },
    #[error("target {0} has no edges")]
    EdgelessTarget(usize),
    #[error("at most 32 colors are supported, got {0}")]
    TooManyColors(usize),
    #[error("no K_N with N <= {cap} arrows the targets")]
    NotFound { cap: usize },
    #[error("search budget exhausted on K_{n}")]
    Unknown { n: usize },
}

/// A host together with the target tuple `(F_1, …, F_s)`. Targets are
/// stored with isolated vertices removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowInstance {
    host: Hypergraph,
    targets: Vec<Hypergraph>,
}

impl ArrowInstance {
    pub fn new(host: Hypergraph, targets: Vec<Hypergraph>) -> Result<Self, ArrowError> {
        if targets.is_empty() {
            return Err(ArrowError::NoTargets);
        }
        if targets.len() > 32 {
            return Err(ArrowError::TooManyColors(targets.len()));
        }
        let mut stripped = Vec::with_capacity(targets.len());
        for (index, t) in targets.iter().enumerate() {
            if t.r() != host.r() {
                return Err(ArrowError::UniformityMismatch {
                    index,
                    host: host.r(),
                    target: t.r(),
                });
            }
            if t.edge_count() == 0 {
                return Err(ArrowError::EdgelessTarget(index));
            }
            stripped.push(t.strip_isolated());
        }
        Ok(ArrowInstance {
            host,
            targets: stripped,
        })
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn targets(&self) -> &[Hypergraph] {
        &self.targets
    }

    pub fn colors(&self) -> usize {
        self.targets.len()
    }

    /// All targets are isomorphic, so colors are interchangeable.
    fn symmetric_targets(&self) -> bool {
        let first = &self.targets[0];
        self.targets[1..].iter().all(|t| {
            t == first
                || match (canonical_form(t), canonical_form(first)) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                }
        })
    }
}

/// An edge coloring of the host: `colors[i]` is the color of host edge `i`
/// (edge order as in [`Hypergraph::edge_masks`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowWitness {
    pub colors: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
struct ColoredEdge {
    edge: Vec<usize>,
    color: usize,
}

impl ArrowWitness {
    /// `[{"edge": [..], "color": c}, ...]` in host edge order.
    pub fn to_json(&self, host: &Hypergraph) -> serde_json::Value {
        let list: Vec<ColoredEdge> = self
            .colors
            .iter()
            .enumerate()
            .map(|(i, &color)| ColoredEdge {
                edge: host.edge(i),
                color,
            })
            .collect();
        serde_json::to_value(list).expect("witness JSON is always representable")
    }

    /// Edges of one color class, as a spanning sub-hypergraph of `host`.
    pub fn color_class(&self, host: &Hypergraph, color: usize) -> Hypergraph {
        host.with_edges((0..self.colors.len()).filter(|&i| self.colors[i] == color))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrowOutcome {
    Arrows,
    NotArrows(ArrowWitness),
    /// The node budget ran out before the search finished.
    Unknown,
}

impl ArrowOutcome {
    pub fn is_arrows(&self) -> bool {
        matches!(self, ArrowOutcome::Arrows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Decide `host → (targets…)`.
pub fn arrows(inst: &ArrowInstance, cfg: &SearchConfig) -> ArrowOutcome {
    arrows_with_stats(inst, cfg).0
}

pub fn arrows_with_stats(inst: &ArrowInstance, cfg: &SearchConfig) -> (ArrowOutcome, SearchStats) {
    let copies: Vec<Vec<Vec<usize>>> = inst
        .targets
        .iter()
        .map(|t| copies_of(t, &inst.host).into_iter().map(|c| c.edges).collect())
        .collect();
    search::run(
        inst.host.edge_count(),
        &copies,
        inst.colors() > 1 && inst.symmetric_targets(),
        cfg.node_budget,
    )
}

/// Independent check of a refuting coloring: total, in range, and free of
/// any copy of `F_i` colored entirely `i`.
pub fn verify_witness(inst: &ArrowInstance, w: &ArrowWitness) -> bool {
    if w.colors.len() != inst.host.edge_count() || w.colors.iter().any(|&c| c >= inst.colors()) {
        return false;
    }
    inst.targets.iter().enumerate().all(|(i, t)| {
        copies_of(t, &inst.host)
            .iter()
            .all(|copy| copy.edges.iter().any(|&e| w.colors[e] != i))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyNumberResult {
    pub value: usize,
    /// A coloring of `K_{value-1}` refuting arrowing.
    pub witness: ArrowWitness,
    pub witness_host: Hypergraph,
}

/// Least `N <= cap` with `K_N → (targets…)`, with a refuting coloring of
/// `K_{N-1}`.
pub fn ramsey_number(
    targets: &[Hypergraph],
    cap: usize,
    cfg: &SearchConfig,
) -> Result<RamseyNumberResult, ArrowError> {
    let r = targets.first().ok_or(ArrowError::NoTargets)?.r();
    let below = Hypergraph::empty(r, r - 1).expect("r - 1 vertices fit");
    // Validate the tuple once, against an edgeless host.
    ArrowInstance::new(below.clone(), targets.to_vec())?;
    let mut last = (below, ArrowWitness { colors: Vec::new() });
    for n in r..=cap {
        let host = Hypergraph::complete(r, n).map_err(|_| ArrowError::NotFound { cap })?;
        let inst = ArrowInstance::new(host.clone(), targets.to_vec())?;
        match arrows(&inst, cfg) {
            ArrowOutcome::Arrows => {
                return Ok(RamseyNumberResult {
                    value: n,
                    witness: last.1,
                    witness_host: last.0,
                })
            }
            ArrowOutcome::NotArrows(w) => last = (host, w),
            ArrowOutcome::Unknown => return Err(ArrowError::Unknown { n }),
        }
    }
    Err(ArrowError::NotFound { cap })
}
