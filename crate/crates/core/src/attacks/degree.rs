use super::{AttackError, TargetSelector};
use crate::graph::{Graph, NodeId};

/// Alive node of maximum current degree, smallest id on ties.
pub fn next_target_degree(g: &Graph) -> Result<NodeId, AttackError> {
    let mut best: Option<(NodeId, usize)> = None;
    for v in g.nodes() {
        let d = g.degree(v);
        if best.map_or(true, |(_, bd)| d > bd) {
            best = Some((v, d));
        }
    }
    best.map(|(v, _)| v).ok_or(AttackError::EmptyGraph)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DegreeSelector;

impl TargetSelector for DegreeSelector {
    fn next_target(&mut self, g: &Graph) -> Result<NodeId, AttackError> {
        next_target_degree(g)
    }
}
