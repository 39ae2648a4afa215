//! Shortest loop per edge by exhaustive simple-cycle enumeration.

use std::collections::BTreeMap;

use super::MetricsError;
use crate::graph::{Graph, NodeId};

pub const MAX_LOOP_NODES: usize = 10;

/// Length of the shortest simple cycle through each alive edge (`None` for
/// bridges), keyed by `(u, v)` with `u < v`.
///
/// Every cycle is enumerated from its smallest node, walking only through
/// larger nodes, so each cycle is visited once per direction.
pub fn brute_force_shortest_loops(
    g: &Graph,
) -> Result<BTreeMap<(NodeId, NodeId), Option<usize>>, MetricsError> {
    let n = g.alive_count();
    if n > MAX_LOOP_NODES {
        return Err(MetricsError::TooLarge {
            n,
            max: MAX_LOOP_NODES,
        });
    }
    let mut best: BTreeMap<(NodeId, NodeId), Option<usize>> =
        g.edges().map(|e| (e, None)).collect();
    let mut path = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    for start in g.nodes() {
        path.push(start);
        on_path[start.index()] = true;
        extend(g, start, &mut path, &mut on_path, &mut best);
        on_path[start.index()] = false;
        path.pop();
    }
    Ok(best)
}

fn extend(
    g: &Graph,
    start: NodeId,
    path: &mut Vec<NodeId>,
    on_path: &mut [bool],
    best: &mut BTreeMap<(NodeId, NodeId), Option<usize>>,
) {
    let last = *path.last().unwrap();
    for &next in g.neighbors(last) {
        if next == start && path.len() >= 3 {
            let len = path.len();
            for i in 0..len {
                let (a, b) = (path[i], path[(i + 1) % len]);
                let slot = best.get_mut(&(a.min(b), a.max(b))).unwrap();
                if slot.map_or(true, |l| len < l) {
                    *slot = Some(len);
                }
            }
        } else if next > start && !on_path[next.index()] {
            path.push(next);
            on_path[next.index()] = true;
            extend(g, start, path, on_path, best);
            on_path[next.index()] = false;
            path.pop();
        }
    }
}
