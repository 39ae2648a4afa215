//! Robustness index, degree statistics and shortest-loop statistics.

pub mod oracle;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::attacks::AttackTrace;
use crate::graph::{BfsScratch, Graph, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("trace has {trace} entries, expected {n}")]
    LengthMismatch { trace: usize, n: usize },
    #[error("no alive nodes")]
    EmptyGraph,
    #[error("graph has {n} alive nodes; exhaustive search is limited to {max}")]
    TooLarge { n: usize, max: usize },
}

/// Mean relative size of the largest component over all removal fractions:
/// `R = (1/n) sum_{t=1..n} S(t)/n`.
pub fn robustness_index(trace: &AttackTrace, n: usize) -> Result<f64, MetricsError> {
    robustness_index_of_curve(&trace.lcc_curve, n)
}

pub fn robustness_index_of_curve(curve: &[usize], n: usize) -> Result<f64, MetricsError> {
    if curve.len() != n || n == 0 {
        return Err(MetricsError::LengthMismatch {
            trace: curve.len(),
            n,
        });
    }
    let total: usize = curve.iter().sum();
    Ok(total as f64 / (n as f64 * n as f64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub k_max: usize,
    /// Node count per degree.
    pub counts: BTreeMap<usize, usize>,
    /// `P(k)`, relative frequency per degree.
    pub histogram: BTreeMap<usize, f64>,
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats, MetricsError> {
    let n = g.alive_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let mut counts = BTreeMap::new();
    let (mut s1, mut s2) = (0u64, 0u64);
    for v in g.nodes() {
        let k = g.degree(v);
        *counts.entry(k).or_insert(0) += 1;
        s1 += k as u64;
        s2 += (k * k) as u64;
    }
    let mean = s1 as f64 / n as f64;
    let second_moment = s2 as f64 / n as f64;
    // exact integer numerator: n * sum k^2 - (sum k)^2
    let variance =
        ((n as u128 * s2 as u128) - (s1 as u128 * s1 as u128)) as f64 / (n as f64 * n as f64);
    let histogram = counts
        .iter()
        .map(|(&k, &c)| (k, c as f64 / n as f64))
        .collect();
    Ok(DegreeStats {
        mean,
        second_moment,
        variance,
        k_max: *counts.keys().next_back().unwrap(),
        counts,
        histogram,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopStats {
    /// Number of links per shortest-loop length.
    pub counts: BTreeMap<usize, usize>,
    /// `P(l)`, normalized over non-bridge links.
    pub histogram: BTreeMap<usize, f64>,
    /// `<l>`; `None` when every link is a bridge.
    pub mean: Option<f64>,
    pub bridge_count: usize,
    pub link_count: usize,
}

impl LoopStats {
    pub fn has_loops(&self) -> bool {
        self.mean.is_some()
    }
}

/// Shortest loop through every alive edge: the edge plus the shortest
/// alternative path between its endpoints. `None` marks a bridge.
pub fn edge_loop_lengths(g: &Graph) -> Vec<((NodeId, NodeId), Option<usize>)> {
    let mut bfs = BfsScratch::new(g.node_count());
    g.edges()
        .map(|(u, v)| {
            let detour = bfs.detour_len(g, u, v).expect("edge is alive");
            ((u, v), detour.map(|d| d + 1))
        })
        .collect()
}

pub fn shortest_loop_stats(g: &Graph) -> LoopStats {
    let lengths = edge_loop_lengths(g);
    let mut counts = BTreeMap::new();
    let mut bridges = 0;
    for (_, l) in &lengths {
        match l {
            Some(l) => *counts.entry(*l).or_insert(0) += 1,
            None => bridges += 1,
        }
    }
    loop_stats_from_counts(counts, bridges)
}

/// Builds [`LoopStats`] from per-length link counts. Also used to pool
/// several graphs.
pub fn loop_stats_from_counts(counts: BTreeMap<usize, usize>, bridge_count: usize) -> LoopStats {
    let looped: usize = counts.values().sum();
    let histogram: BTreeMap<usize, f64> = counts
        .iter()
        .map(|(&l, &c)| (l, c as f64 / looped as f64))
        .collect();
    let mean = (looped > 0)
        .then(|| counts.iter().map(|(&l, &c)| (l * c) as f64).sum::<f64>() / looped as f64);
    LoopStats {
        counts,
        histogram,
        mean,
        bridge_count,
        link_count: looped + bridge_count,
    }
}
