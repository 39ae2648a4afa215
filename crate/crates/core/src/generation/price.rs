use rand::Rng;

use super::rng::RngSeed;
use super::{GenerationError, PriceParams};
use crate::graph::{Graph, NodeId};

/// Fenwick tree over non-negative weights with prefix search.
struct WeightTree {
    tree: Vec<f64>,
}

impl WeightTree {
    fn new(n: usize) -> Self {
        WeightTree {
            tree: vec![0.0; n + 1],
        }
    }

    fn add(&mut self, i: usize, delta: f64) {
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
    }

    /// Smallest index whose inclusive prefix sum exceeds `target`.
    fn search(&self, mut target: f64) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Grows a network by the shifted-linear (Price) preferential attachment rule.
///
/// Starts from a clique on `m + 1` nodes. Each later node attaches `m`
/// distinct edges; every draw picks an existing node `i` with probability
/// proportional to `k_i + c`, redrawing targets already chosen for this node.
pub fn price_generate(params: &PriceParams, seed: RngSeed) -> Result<Graph, GenerationError> {
    params.validate()?;
    let PriceParams { n, m, .. } = *params;
    let c = params.c();
    let mut rng = seed.rng();
    let mut g = Graph::new(n);
    let mut weights = WeightTree::new(n);
    let mut total = 0.0;

    let seed_size = m + 1;
    for i in 0..seed_size {
        for j in i + 1..seed_size {
            g.add_edge(NodeId::from(i), NodeId::from(j))
                .expect("seed clique is simple");
        }
    }
    for i in 0..seed_size {
        let w = m as f64 + c;
        weights.add(i, w);
        total += w;
    }

    let mut targets: Vec<usize> = Vec::with_capacity(m);
    for new in seed_size..n {
        targets.clear();
        while targets.len() < m {
            let r = rng.random::<f64>() * total;
            let t = weights.search(r).min(new - 1);
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_edge(NodeId::from(new), NodeId::from(t))
                .expect("targets are distinct existing nodes");
            weights.add(t, 1.0);
            total += 1.0;
        }
        let w = m as f64 + c;
        debug_assert!(w > 0.0, "attachment weight must stay positive");
        weights.add(new, w);
        total += w;
    }
    debug_assert_eq!(g.edge_count(), params.expected_edge_count());
    Ok(g)
}
