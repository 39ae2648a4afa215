//! Exhaustive reference computations for small graphs.
//!
//! These deliberately share no code with the attack implementations they
//! validate.

use super::AttackError;
use crate::graph::{Graph, NodeId};

pub const MAX_FVS_NODES: usize = 20;
pub const MAX_SPIN_NODES: usize = 8;

fn alive_index(g: &Graph) -> (Vec<NodeId>, Vec<usize>) {
    let nodes: Vec<NodeId> = g.nodes().collect();
    let mut pos = vec![usize::MAX; g.node_count()];
    for (p, v) in nodes.iter().enumerate() {
        pos[v.index()] = p;
    }
    (nodes, pos)
}

/// Whether the nodes in `keep` (bitmask over local indices) induce a forest.
fn induces_forest(edges: &[(usize, usize)], n: usize, keep: u32) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in edges {
        if keep & (1 << u) == 0 || keep & (1 << v) == 0 {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Size of a minimum feedback vertex set and one witness, by enumerating
/// node subsets in order of increasing size.
pub fn brute_force_min_fvs(g: &Graph) -> Result<(usize, Vec<NodeId>), AttackError> {
    let (nodes, pos) = alive_index(g);
    let n = nodes.len();
    if n > MAX_FVS_NODES {
        return Err(AttackError::TooLarge {
            n,
            max: MAX_FVS_NODES,
        });
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (pos[u.index()], pos[v.index()]))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for size in 0..=n {
        if size == 0 {
            if induces_forest(&edges, n, full) {
                return Ok((0, Vec::new()));
            }
            continue;
        }
        // Gosper's hack over subsets of the given size
        let mut removed: u32 = (1u32 << size) - 1;
        while removed <= full {
            if induces_forest(&edges, n, full & !removed) {
                let witness = (0..n)
                    .filter(|&i| removed & (1 << i) != 0)
                    .map(|i| nodes[i])
                    .collect();
                return Ok((size, witness));
            }
            let c = removed & removed.wrapping_neg();
            let r = removed + c;
            if r == 0 {
                break;
            }
            removed = (((r ^ removed) >> 2) / c) | r;
        }
    }
    unreachable!("removing every node leaves a forest")
}

const EMPTY: usize = 0;

/// Local state encoding: `0` empty, `1` root, `2 + a` parent is `nbrs[u][a]`.
struct SpinEnumeration<'a> {
    nbrs: &'a [Vec<usize>],
    x: f64,
    state: Vec<usize>,
    z: f64,
    empty_weight: Vec<f64>,
}

impl SpinEnumeration<'_> {
    fn parent_of(&self, u: usize, s: usize) -> Option<usize> {
        (s >= 2).then(|| self.nbrs[u][s - 2])
    }

    fn admissible(&self, u: usize, su: usize, v: usize, sv: usize) -> bool {
        let u_to_v = self.parent_of(u, su) == Some(v);
        let v_to_u = self.parent_of(v, sv) == Some(u);
        match (su == EMPTY, sv == EMPTY) {
            (true, true) => true,
            (true, false) => !v_to_u,
            (false, true) => !u_to_v,
            (false, false) => u_to_v != v_to_u,
        }
    }

    /// Assigns node `u` and recurses; edges are checked against
    /// already-assigned (smaller) neighbors.
    fn visit(&mut self, u: usize) {
        let n = self.state.len();
        if u == n {
            let occupied = self.state.iter().filter(|&&s| s != EMPTY).count();
            let w = (self.x * occupied as f64).exp();
            self.z += w;
            for v in 0..n {
                if self.state[v] == EMPTY {
                    self.empty_weight[v] += w;
                }
            }
            return;
        }
        for s in 0..2 + self.nbrs[u].len() {
            let ok = self.nbrs[u]
                .iter()
                .filter(|&&v| v < u)
                .all(|&v| self.admissible(u, s, v, self.state[v]));
            if ok {
                self.state[u] = s;
                self.visit(u + 1);
            }
        }
    }
}

/// Exact probability that each node is empty under the decycling spin model,
/// by enumerating every configuration. Indexed by node id, `None` for dead
/// nodes.
pub fn exact_spin_marginals(g: &Graph, x: f64) -> Result<Vec<Option<f64>>, AttackError> {
    let (nodes, pos) = alive_index(g);
    let n = nodes.len();
    if n > MAX_SPIN_NODES {
        return Err(AttackError::TooLarge {
            n,
            max: MAX_SPIN_NODES,
        });
    }
    let nbrs: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|w| pos[w.index()]).collect())
        .collect();
    let mut e = SpinEnumeration {
        nbrs: &nbrs,
        x,
        state: vec![EMPTY; n],
        z: 0.0,
        empty_weight: vec![0.0; n],
    };
    e.visit(0);

    let mut out = vec![None; g.node_count()];
    for (p, v) in nodes.iter().enumerate() {
        out[v.index()] = Some(e.empty_weight[p] / e.z);
    }
    Ok(out)
}
