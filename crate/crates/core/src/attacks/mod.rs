//! Recalculated targeted attacks.
//!
//! Every strategy recomputes its score on the residual graph after each
//! removal. Ties are broken by the smallest node id everywhere, so a trace is
//! a pure function of the input graph and the strategy parameters.

mod betweenness;
mod bp;
mod degree;
mod forest;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId};

pub use betweenness::{betweenness, next_target_betweenness, BetweennessSelector};
pub use bp::{bp_sweep, next_target_bp, BpMessages, BpSelector, Decycling};
pub use degree::{next_target_degree, DegreeSelector};
pub use forest::largest_tree_centroid;

/// Smallest probability a message component may take.
pub const BP_EPSILON: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AttackError {
    #[error("no alive nodes")]
    EmptyGraph,
    #[error("graph has {n} alive nodes; exhaustive search is limited to {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid attack parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackKind {
    Degree,
    Betweenness,
    Bp,
}

impl AttackKind {
    pub const ALL: [AttackKind; 3] = [AttackKind::Degree, AttackKind::Betweenness, AttackKind::Bp];

    pub fn as_str(self) -> &'static str {
        match self {
            AttackKind::Degree => "degree",
            AttackKind::Betweenness => "betweenness",
            AttackKind::Bp => "bp",
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AttackKind {
    type Err = AttackError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degree" => Ok(AttackKind::Degree),
            "betweenness" => Ok(AttackKind::Betweenness),
            "bp" => Ok(AttackKind::Bp),
            other => Err(AttackError::InvalidParams(format!(
                "unknown strategy {other:?}"
            ))),
        }
    }
}

/// Parameters of the belief-propagation decycling attack.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BpParams {
    /// Reward per occupied node in the spin model; larger favors smaller
    /// feedback sets.
    pub x: f64,
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Weight of the previous value in each message update, in `[0, 1)`.
    pub damping: f64,
}

impl Default for BpParams {
    fn default() -> Self {
        BpParams {
            x: 10.0,
            tolerance: 1e-6,
            max_sweeps: 1000,
            damping: 0.5,
        }
    }
}

impl BpParams {
    pub fn validate(&self) -> Result<(), AttackError> {
        if !(self.x > 0.0 && self.x.is_finite()) {
            return Err(AttackError::InvalidParams(format!(
                "x = {} must be > 0",
                self.x
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(AttackError::InvalidParams("tolerance must be > 0".into()));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(AttackError::InvalidParams(
                "damping must be in [0, 1)".into(),
            ));
        }
        if self.max_sweeps == 0 {
            return Err(AttackError::InvalidParams("max_sweeps must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AttackStrategy {
    Degree,
    Betweenness,
    BeliefPropagation(BpParams),
}

impl AttackStrategy {
    pub fn kind(&self) -> AttackKind {
        match self {
            AttackStrategy::Degree => AttackKind::Degree,
            AttackStrategy::Betweenness => AttackKind::Betweenness,
            AttackStrategy::BeliefPropagation(_) => AttackKind::Bp,
        }
    }

    pub fn from_kind(kind: AttackKind, bp: BpParams) -> Self {
        match kind {
            AttackKind::Degree => AttackStrategy::Degree,
            AttackKind::Betweenness => AttackStrategy::Betweenness,
            AttackKind::Bp => AttackStrategy::BeliefPropagation(bp),
        }
    }

    pub fn selector(&self) -> Result<Box<dyn TargetSelector>, AttackError> {
        Ok(match *self {
            AttackStrategy::Degree => Box::new(DegreeSelector),
            AttackStrategy::Betweenness => Box::new(BetweennessSelector),
            AttackStrategy::BeliefPropagation(p) => Box::new(BpSelector::new(p)?),
        })
    }
}

/// Picks the next node to remove from the current residual graph.
///
/// Selectors may carry state across calls within one attack run (the BP
/// selector warm-starts its messages); use a fresh selector per run.
pub trait TargetSelector {
    fn next_target(&mut self, g: &Graph) -> Result<NodeId, AttackError>;
}

/// Removal sequence and the largest-component curve it produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackTrace {
    pub removal_order: Vec<NodeId>,
    /// Entry `t` is the LCC size after `t + 1` removals.
    pub lcc_curve: Vec<usize>,
}

impl AttackTrace {
    pub fn len(&self) -> usize {
        self.lcc_curve.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lcc_curve.is_empty()
    }

    /// Checks that the trace is a full, monotone dismantling of `initial`.
    pub fn check_invariants(&self, initial: &Graph) -> Result<(), String> {
        let mut seen = vec![false; initial.node_count()];
        for &v in &self.removal_order {
            if !initial.is_alive(v) {
                return Err(format!("removed {v} was not alive"));
            }
            if std::mem::replace(&mut seen[v.index()], true) {
                return Err(format!("{v} removed twice"));
            }
        }
        if self.removal_order.len() != initial.alive_count() {
            return Err("removal order is not a permutation of the alive nodes".into());
        }
        if self.lcc_curve.len() != self.removal_order.len() {
            return Err("curve and removal order lengths differ".into());
        }
        if self.lcc_curve.windows(2).any(|w| w[1] > w[0]) {
            return Err("lcc curve increases".into());
        }
        if self.lcc_curve.last().copied().unwrap_or(0) != 0 {
            return Err("lcc curve does not end at 0".into());
        }
        Ok(())
    }
}

/// Dismantles a copy of `g` with the given strategy.
pub fn run_attack(g: &Graph, strategy: &AttackStrategy) -> Result<AttackTrace, AttackError> {
    let mut selector = strategy.selector()?;
    run_attack_with(g, selector.as_mut())
}

/// Dismantles a copy of `g`, querying `selector` before each removal.
pub fn run_attack_with(
    g: &Graph,
    selector: &mut dyn TargetSelector,
) -> Result<AttackTrace, AttackError> {
    if g.alive_count() == 0 {
        return Err(AttackError::EmptyGraph);
    }
    let mut work = g.clone();
    let n = work.alive_count();
    let mut removal_order = Vec::with_capacity(n);
    let mut lcc_curve = Vec::with_capacity(n);
    while work.alive_count() > 0 {
        let target = selector.next_target(&work)?;
        work.remove_node(target)?;
        removal_order.push(target);
        lcc_curve.push(work.components().lcc);
    }
    Ok(AttackTrace {
        removal_order,
        lcc_curve,
    })
}

/// Index of the largest score, ties (within a relative `1e-9`) to the
/// smallest index. Non-candidates are `None`.
pub(crate) fn argmax_smallest_id(scores: impl IntoIterator<Item = Option<f64>>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, s) in scores.into_iter().enumerate() {
        let Some(s) = s else { continue };
        match best {
            None => best = Some((i, s)),
            Some((_, b)) if s > b + 1e-9 * b.abs() => best = Some((i, s)),
            _ => {}
        }
    }
    best.map(|(i, _)| i)
}
