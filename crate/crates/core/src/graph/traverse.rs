use std::collections::VecDeque;

use super::{Graph, GraphError, NodeId};

/// Partition of the alive nodes into connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    /// Component sizes, descending.
    pub sizes: Vec<usize>,
    /// Size of the largest component, 0 when no node is alive.
    pub lcc: usize,
    /// Component index per node id (`None` for dead nodes). Indices follow
    /// discovery order from the smallest id, not the size order of `sizes`.
    pub component_of: Vec<Option<usize>>,
}

pub(super) fn components(g: &Graph) -> ComponentReport {
    let n = g.node_count();
    let mut component_of = vec![None; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in g.nodes() {
        if component_of[s.index()].is_some() {
            continue;
        }
        let c = sizes.len();
        component_of[s.index()] = Some(c);
        stack.push(s);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                if component_of[v.index()].is_none() {
                    component_of[v.index()] = Some(c);
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let lcc = sizes.first().copied().unwrap_or(0);
    ComponentReport {
        sizes,
        lcc,
        component_of,
    }
}

/// Reusable BFS buffers. Visited marks are generation stamps, so a new search
/// costs nothing proportional to `n` up front.
#[derive(Clone, Debug)]
pub struct BfsScratch {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    current: u32,
    queue: VecDeque<NodeId>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            stamp: vec![0; n],
            dist: vec![0; n],
            current: 0,
            queue: VecDeque::new(),
        }
    }

    fn next_stamp(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
            self.dist.resize(n, 0);
        }
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.current = 1;
        }
    }

    /// BFS distance from `i` to `j` ignoring the edge `(i, j)` itself.
    pub fn detour_len(
        &mut self,
        g: &Graph,
        i: NodeId,
        j: NodeId,
    ) -> Result<Option<usize>, GraphError> {
        if !g.has_edge(i, j) {
            return Err(GraphError::NoSuchEdge(i, j));
        }
        self.next_stamp(g.node_count());
        let cur = self.current;
        self.queue.clear();
        self.stamp[i.index()] = cur;
        self.dist[i.index()] = 0;
        self.queue.push_back(i);
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u.index()];
            for &v in g.neighbors(u) {
                if u == i && v == j {
                    continue;
                }
                if self.stamp[v.index()] == cur {
                    continue;
                }
                if v == j {
                    return Ok(Some(du as usize + 1));
                }
                self.stamp[v.index()] = cur;
                self.dist[v.index()] = du + 1;
                self.queue.push_back(v);
            }
        }
        Ok(None)
    }
}
