use rand::seq::SliceRandom;
use rand::Rng;

use super::rng::RngSeed;
use super::GenerationError;
use crate::graph::{Graph, NodeId};

const LOCAL_RETRIES: usize = 100;
pub const MAX_RESTARTS: usize = 10_000;

/// Rewires `g` by configuration-model stub matching, keeping every node's
/// degree. Self-loops and multi-edges are rejected; the result is always one
/// connected component.
///
/// Stubs are shuffled and paired front to back. A pair that would violate
/// simplicity redraws its partner among the remaining stubs (up to 100 times).
/// If no partner fits, the pair is placed by swapping it against a random
/// existing edge. A failed repair or a disconnected result restarts the
/// matching.
pub fn randomize_preserving_degrees(g: &Graph, seed: RngSeed) -> Result<Graph, GenerationError> {
    let n = g.node_count();
    if g.nodes().any(|v| g.degree(v) == 0) {
        return Err(GenerationError::InvalidParams(
            "randomization needs min degree >= 1".into(),
        ));
    }
    let mut base_stubs = Vec::with_capacity(2 * g.edge_count());
    for v in g.nodes() {
        base_stubs.extend(std::iter::repeat(v).take(g.degree(v)));
    }
    let mut rng = seed.rng();
    let mut stubs = base_stubs.clone();

    for _ in 0..MAX_RESTARTS {
        stubs.copy_from_slice(&base_stubs);
        stubs.shuffle(&mut rng);
        let mut out = Graph::new(n);
        for v in 0..n {
            if !g.is_alive(NodeId::from(v)) {
                out.remove_node(NodeId::from(v)).expect("fresh node");
            }
        }
        if match_stubs(&mut out, &mut stubs, &mut rng) && out.components().sizes.len() == 1 {
            return Ok(out);
        }
    }
    Err(GenerationError::RandomizationFailed {
        restarts: MAX_RESTARTS,
    })
}

const REPAIR_TRIES: usize = 1000;

fn match_stubs<R: Rng>(out: &mut Graph, stubs: &mut [NodeId], rng: &mut R) -> bool {
    let len = stubs.len();
    let mut placed: Vec<(NodeId, NodeId)> = Vec::with_capacity(len / 2);
    let mut p = 0;
    while p + 1 < len {
        let a = stubs[p];
        let ok = |b: NodeId, out: &Graph| b != a && !out.has_edge(a, b);
        let mut found = ok(stubs[p + 1], out);
        for _ in 0..LOCAL_RETRIES {
            if found {
                break;
            }
            let q = rng.random_range(p + 1..len);
            if ok(stubs[q], out) {
                stubs.swap(p + 1, q);
                found = true;
            }
        }
        if found {
            out.add_edge(a, stubs[p + 1]).expect("checked simple");
            placed.push((a, stubs[p + 1]));
        } else if !repair(out, &mut placed, a, stubs[p + 1], rng) {
            return false;
        }
        p += 2;
    }
    true
}

/// Places the forbidden pair `(a, b)` by trading it against a random placed
/// edge `(u, v)` for `(a, u)` and `(b, v)`. Every degree is unchanged.
fn repair<R: Rng>(
    out: &mut Graph,
    placed: &mut Vec<(NodeId, NodeId)>,
    a: NodeId,
    b: NodeId,
    rng: &mut R,
) -> bool {
    if placed.is_empty() {
        return false;
    }
    for _ in 0..REPAIR_TRIES {
        let i = rng.random_range(0..placed.len());
        let (mut u, mut v) = placed[i];
        if rng.random::<bool>() {
            std::mem::swap(&mut u, &mut v);
        }
        if u == a || v == b || out.has_edge(a, u) || out.has_edge(b, v) {
            continue;
        }
        out.remove_edge(u, v).expect("placed edge");
        out.add_edge(a, u).expect("checked simple");
        out.add_edge(b, v).expect("checked simple");
        placed.swap_remove(i);
        placed.push((a, u));
        placed.push((b, v));
        return true;
    }
    false
}
