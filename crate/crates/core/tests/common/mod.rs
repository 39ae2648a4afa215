#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfnet_core::{Graph, NodeId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p).
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                g.add_edge(NodeId::from(i), NodeId::from(j)).unwrap();
            }
        }
    }
    g
}

/// Uniform random attachment tree on a shuffled labelling.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut g = Graph::new(n);
    for i in 1..n {
        let j = rng.random_range(0..i);
        g.add_edge(NodeId::from(labels[i]), NodeId::from(labels[j]))
            .unwrap();
    }
    g
}

/// Random tree plus `extra` random chords.
pub fn random_connected(n: usize, extra: usize, rng: &mut impl Rng) -> Graph {
    let mut g = random_tree(n, rng);
    let max_edges = n * (n - 1) / 2;
    let mut added = 0;
    while added < extra && g.edge_count() < max_edges {
        let a = NodeId::from(rng.random_range(0..n));
        let b = NodeId::from(rng.random_range(0..n));
        if a != b && !g.has_edge(a, b) {
            g.add_edge(a, b).unwrap();
            added += 1;
        }
    }
    g
}

/// Connected graph with at least one cycle.
pub fn random_loopy(n: usize, rng: &mut impl Rng) -> Graph {
    let extra = rng.random_range(1..=n.max(2));
    random_connected(n, extra, rng)
}

/// Betweenness by listing every simple path, keeping the shortest per pair,
/// and crediting interior nodes with their share.
pub fn betweenness_by_enumeration(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    for s in g.nodes() {
        for t in g.nodes() {
            if t.index() <= s.index() {
                continue;
            }
            let mut paths = Vec::new();
            let mut path = vec![s];
            let mut on = vec![false; n];
            on[s.index()] = true;
            simple_paths(g, t, &mut path, &mut on, &mut paths);
            let Some(best) = paths.iter().map(Vec::len).min() else {
                continue;
            };
            let shortest: Vec<&Vec<NodeId>> = paths.iter().filter(|p| p.len() == best).collect();
            let share = 1.0 / shortest.len() as f64;
            for p in shortest {
                for v in &p[1..p.len() - 1] {
                    score[v.index()] += share;
                }
            }
        }
    }
    score
}

fn simple_paths(
    g: &Graph,
    t: NodeId,
    path: &mut Vec<NodeId>,
    on: &mut [bool],
    out: &mut Vec<Vec<NodeId>>,
) {
    let u = *path.last().unwrap();
    if u == t {
        out.push(path.clone());
        return;
    }
    for &w in g.neighbors(u) {
        if !on[w.index()] {
            on[w.index()] = true;
            path.push(w);
            simple_paths(g, t, path, on, out);
            path.pop();
            on[w.index()] = false;
        }
    }
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let ra = ranks(a);
    let rb = ranks(b);
    let n = a.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap());
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}
