//! Exact shortest-path betweenness (Brandes accumulation).

use std::collections::VecDeque;

use super::{argmax_smallest_id, AttackError, TargetSelector};
use crate::graph::{Graph, NodeId};

/// Unnormalized betweenness of every node id, summed over unordered
/// source-target pairs with fractional credit for equal-length paths.
/// Endpoints get no credit; dead nodes score 0.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    if n == 0 {
        return score;
    }
    let comps = g.components();
    let mut comp_size = vec![0usize; comps.sizes.len()];
    for c in comps.component_of.iter().flatten() {
        comp_size[*c] += 1;
    }

    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in g.nodes() {
        // components with fewer than 3 nodes route nothing through an interior node
        let c = comps.component_of[s.index()].expect("alive node has a component");
        if comp_size[c] < 3 {
            continue;
        }
        let s = s.index();
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(NodeId::from(v)) {
                let w = w.index();
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in g.neighbors(NodeId::from(w)) {
                let v = v.index();
                if dist[v] != u32::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if w != s {
                score[w] += delta[w];
            }
        }
        for &v in &order {
            dist[v] = u32::MAX;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
    }
    // each unordered pair was accumulated from both ends
    for x in &mut score {
        *x /= 2.0;
    }
    score
}

/// Node of highest betweenness, smallest id on ties.
pub fn next_target_betweenness(g: &Graph) -> Result<NodeId, AttackError> {
    if g.alive_count() == 0 {
        return Err(AttackError::EmptyGraph);
    }
    let b = betweenness(g);
    let i = argmax_smallest_id(
        b.iter()
            .enumerate()
            .map(|(i, &s)| g.is_alive(NodeId::from(i)).then_some(s)),
    )
    .ok_or(AttackError::EmptyGraph)?;
    Ok(NodeId::from(i))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BetweennessSelector;

impl TargetSelector for BetweennessSelector {
    fn next_target(&mut self, g: &Graph) -> Result<NodeId, AttackError> {
        next_target_betweenness(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn path_cycle_star() {
        assert_eq!(betweenness(&families::path(3)), vec![0.0, 1.0, 0.0]);
        assert_eq!(betweenness(&families::cycle(4)), vec![0.5; 4]);
        assert_eq!(
            betweenness(&families::star(4)),
            vec![6.0, 0.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn targets() {
        assert_eq!(
            next_target_betweenness(&families::path(3)).unwrap(),
            NodeId(1)
        );
        assert_eq!(
            next_target_betweenness(&families::cycle(4)).unwrap(),
            NodeId(0)
        );
        assert_eq!(
            next_target_betweenness(&Graph::new(0)),
            Err(AttackError::EmptyGraph)
        );
    }

    #[test]
    fn disconnected_and_dead_nodes() {
        // P3 plus a separate edge plus an isolated node
        let mut g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(betweenness(&g), vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        g.remove_node(NodeId(1)).unwrap();
        assert_eq!(betweenness(&g), vec![0.0; 6]);
        // all scores zero: smallest alive id
        assert_eq!(next_target_betweenness(&g).unwrap(), NodeId(0));
    }
}
