use crate::graph::{Graph, NodeId};

/// Centroid of the largest tree component: the node whose removal leaves the
/// smallest largest piece of that tree. Among equal-size largest components
/// the one holding the smallest id is used; centroid ties go to the smaller id.
///
/// Returns `None` when no node is alive. Only meaningful when the component is
/// a tree; on a cyclic component the subtree sizes come from a BFS spanning tree.
pub fn largest_tree_centroid(g: &Graph) -> Option<NodeId> {
    let comps = g.components();
    if comps.lcc == 0 {
        return None;
    }
    let mut comp_size = vec![0usize; comps.sizes.len()];
    for c in comps.component_of.iter().flatten() {
        comp_size[*c] += 1;
    }
    let root = g
        .nodes()
        .find(|&v| comp_size[comps.component_of[v.index()].unwrap()] == comps.lcc)
        .expect("largest component exists");
    let size = comps.lcc;

    // BFS order from root, then subtree sizes bottom-up
    let n = g.node_count();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(size);
    seen[root.index()] = true;
    order.push(root.index());
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(NodeId::from(u)) {
            if !seen[v.index()] {
                seen[v.index()] = true;
                parent[v.index()] = u;
                order.push(v.index());
            }
        }
    }
    let mut sub = vec![1usize; n];
    let mut heaviest_child = vec![0usize; n];
    for &v in order.iter().rev() {
        let p = parent[v];
        if p != usize::MAX {
            sub[p] += sub[v];
            heaviest_child[p] = heaviest_child[p].max(sub[v]);
        }
    }
    let mut candidates = order;
    candidates.sort_unstable();
    candidates
        .into_iter()
        .map(|v| (heaviest_child[v].max(size - sub[v]), v))
        .min()
        .map(|(_, v)| NodeId::from(v))
}
