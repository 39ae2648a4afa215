//! Mutable undirected simple graph with node removal.
//!
//! Nodes are dense indices in `[0, n)`. Removing a node flags it dead and
//! deletes its incident edges; ids are never renumbered, so an attack trace
//! can refer to the same id across the whole removal sequence.
//!
//! Neighbor lists are kept sorted by id. Every traversal in this crate walks
//! them in that order, which is what makes tie-breaking reproducible.

pub mod families;
mod io;
mod traverse;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use io::{read_edge_list, to_edge_list_string, write_edge_list};
pub use traverse::{BfsScratch, ComponentReport};

/// Index of a node. Stable for the lifetime of a [`Graph`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    #[inline]
    fn from(i: usize) -> Self {
        NodeId(u32::try_from(i).expect("node index exceeds u32"))
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge endpoint {0} is dead")]
    DeadEndpoint(NodeId),
    #[error("node {0} already removed")]
    AlreadyDead(NodeId),
    #[error("no edge ({0}, {1})")]
    NoSuchEdge(NodeId, NodeId),
    #[error("node {0} out of range (n = {1})")]
    OutOfRange(NodeId, usize),
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    alive: Vec<bool>,
    adj: Vec<Vec<NodeId>>,
    alive_count: usize,
    edge_count: usize,
}

impl Graph {
    /// `n` alive, isolated nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            alive: vec![true; n],
            adj: vec![Vec::new(); n],
            alive_count: n,
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(NodeId::from(u), NodeId::from(v))?;
        }
        Ok(g)
    }

    /// Count of ever-created nodes, alive or dead.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.alive.len()
    }

    #[inline]
    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn is_alive(&self, i: NodeId) -> bool {
        self.alive.get(i.index()).copied().unwrap_or(false)
    }

    #[inline]
    pub fn degree(&self, i: NodeId) -> usize {
        self.adj[i.index()].len()
    }

    /// Alive neighbors in ascending id order.
    #[inline]
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adj[i.index()]
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| NodeId::from(i))
    }

    /// Alive edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = NodeId::from(u);
            nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    pub fn has_edge(&self, i: NodeId, j: NodeId) -> bool {
        i.index() < self.adj.len() && self.adj[i.index()].binary_search(&j).is_ok()
    }

    fn check_range(&self, i: NodeId) -> Result<(), GraphError> {
        if i.index() >= self.alive.len() {
            Err(GraphError::OutOfRange(i, self.alive.len()))
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, i: NodeId, j: NodeId) -> Result<(), GraphError> {
        self.check_range(i)?;
        self.check_range(j)?;
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        for x in [i, j] {
            if !self.alive[x.index()] {
                return Err(GraphError::DeadEndpoint(x));
            }
        }
        let pos_i = match self.adj[i.index()].binary_search(&j) {
            Ok(_) => return Err(GraphError::DuplicateEdge(i.min(j), i.max(j))),
            Err(p) => p,
        };
        self.adj[i.index()].insert(pos_i, j);
        let pos_j = self.adj[j.index()]
            .binary_search(&i)
            .expect_err("adjacency out of sync");
        self.adj[j.index()].insert(pos_j, i);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, i: NodeId, j: NodeId) -> Result<(), GraphError> {
        self.check_range(i)?;
        self.check_range(j)?;
        let pos_i = self.adj[i.index()]
            .binary_search(&j)
            .map_err(|_| GraphError::NoSuchEdge(i, j))?;
        self.adj[i.index()].remove(pos_i);
        let pos_j = self.adj[j.index()]
            .binary_search(&i)
            .expect("adjacency out of sync");
        self.adj[j.index()].remove(pos_j);
        self.edge_count -= 1;
        Ok(())
    }

    pub fn remove_node(&mut self, i: NodeId) -> Result<(), GraphError> {
        self.check_range(i)?;
        if !self.alive[i.index()] {
            return Err(GraphError::AlreadyDead(i));
        }
        let nbrs = std::mem::take(&mut self.adj[i.index()]);
        for &j in &nbrs {
            let list = &mut self.adj[j.index()];
            let pos = list.binary_search(&i).expect("adjacency out of sync");
            list.remove(pos);
        }
        self.edge_count -= nbrs.len();
        self.alive[i.index()] = false;
        self.alive_count -= 1;
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Degree of every node id (0 for dead nodes).
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Nodes of the 2-core in ascending order; empty iff the graph is a forest.
    pub fn two_core(&self) -> Vec<NodeId> {
        let mask = self.two_core_mask();
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| NodeId::from(i))
            .collect()
    }

    /// Membership flags of the 2-core, indexed by node id.
    pub fn two_core_mask(&self) -> Vec<bool> {
        let n = self.node_count();
        let mut deg: Vec<usize> = self.degrees();
        let mut keep = self.alive.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&i| keep[i] && deg[i] <= 1).collect();
        while let Some(u) = stack.pop() {
            if !keep[u] {
                continue;
            }
            keep[u] = false;
            for &v in &self.adj[u] {
                let v = v.index();
                if keep[v] {
                    deg[v] -= 1;
                    if deg[v] == 1 {
                        stack.push(v);
                    }
                }
            }
        }
        keep
    }

    /// True when the alive subgraph has no cycle (edges = nodes − components).
    pub fn is_forest(&self) -> bool {
        let report = self.components();
        self.edge_count + report.sizes.len() == self.alive_count
    }

    pub fn components(&self) -> ComponentReport {
        traverse::components(self)
    }

    /// Hop distance from `i` to `j` with the edge `(i, j)` masked out.
    ///
    /// `Ok(None)` means the edge is a bridge.
    pub fn shortest_path_len_excluding_edge(
        &self,
        i: NodeId,
        j: NodeId,
    ) -> Result<Option<usize>, GraphError> {
        BfsScratch::new(self.node_count()).detour_len(self, i, j)
    }

    /// Checks the structural invariants. Intended for tests and debug assertions.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut degree_sum = 0;
        let mut alive = 0;
        for (i, nbrs) in self.adj.iter().enumerate() {
            let u = NodeId::from(i);
            if self.alive[i] {
                alive += 1;
            } else if !nbrs.is_empty() {
                return Err(format!("dead node {u} has neighbors"));
            }
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("neighbors of {u} not strictly ascending"));
            }
            for &v in nbrs {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if !self.alive[v.index()] {
                    return Err(format!("{u} adjacent to dead {v}"));
                }
                if self.adj[v.index()].binary_search(&u).is_err() {
                    return Err(format!("asymmetric edge {u} -> {v}"));
                }
            }
            degree_sum += nbrs.len();
        }
        if degree_sum != 2 * self.edge_count {
            return Err(format!(
                "handshake violated: degree sum {degree_sum}, edges {}",
                self.edge_count
            ));
        }
        if alive != self.alive_count {
            return Err("alive count out of sync".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::families::{complete, cycle};
    use super::*;

    fn id(i: usize) -> NodeId {
        NodeId::from(i)
    }

    #[test]
    fn add_edge_updates_both_sides() {
        let mut g = Graph::new(2);
        g.add_edge(id(0), id(1)).unwrap();
        assert_eq!(g.degree(id(0)), 1);
        assert_eq!(g.degree(id(1)), 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn add_edge_rejects_forbidden_cases() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(id(0), id(0)), Err(GraphError::SelfLoop(id(0))));
        g.add_edge(id(0), id(1)).unwrap();
        assert_eq!(
            g.add_edge(id(1), id(0)),
            Err(GraphError::DuplicateEdge(id(0), id(1)))
        );
        g.remove_node(id(2)).unwrap();
        assert_eq!(
            g.add_edge(id(0), id(2)),
            Err(GraphError::DeadEndpoint(id(2)))
        );
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(
            g.add_edge(id(0), id(9)),
            Err(GraphError::OutOfRange(..))
        ));
    }

    #[test]
    fn remove_node_from_triangle() {
        let mut g = complete(3);
        g.remove_node(id(0)).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(id(1), id(2))]);
        assert_eq!(g.alive_count(), 2);
        assert_eq!(g.remove_node(id(0)), Err(GraphError::AlreadyDead(id(0))));
        g.check_invariants().unwrap();
    }

    #[test]
    fn remove_star_hub_isolates_leaves() {
        let mut g = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        g.remove_node(id(0)).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.nodes().all(|v| g.degree(v) == 0));
        assert_eq!(g.components().lcc, 1);
    }

    #[test]
    fn components_examples() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let r = g.components();
        assert_eq!(r.sizes, vec![3, 3]);
        assert_eq!(r.lcc, 3);

        let p5 = Graph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap();
        assert_eq!(p5.components().lcc, 5);

        let mut dead = complete(3);
        for i in 0..3 {
            dead.remove_node(id(i)).unwrap();
        }
        let r = dead.components();
        assert_eq!(r.lcc, 0);
        assert!(r.sizes.is_empty());
    }

    #[test]
    fn two_core_examples() {
        let tree = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert!(tree.two_core().is_empty());

        let mut c5p = Graph::new(6);
        for i in 0..5 {
            c5p.add_edge(id(i), id((i + 1) % 5)).unwrap();
        }
        c5p.add_edge(id(2), id(5)).unwrap();
        assert_eq!(c5p.two_core(), (0..5).map(id).collect::<Vec<_>>());

        assert_eq!(complete(4).two_core().len(), 4);
    }

    #[test]
    fn detour_examples() {
        let c4 = cycle(4);
        for (u, v) in c4.edges() {
            assert_eq!(c4.shortest_path_len_excluding_edge(u, v).unwrap(), Some(3));
        }
        let k4 = complete(4);
        for (u, v) in k4.edges() {
            assert_eq!(k4.shortest_path_len_excluding_edge(u, v).unwrap(), Some(2));
        }
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            p3.shortest_path_len_excluding_edge(id(0), id(1)).unwrap(),
            None
        );
        assert_eq!(
            p3.shortest_path_len_excluding_edge(id(0), id(2)),
            Err(GraphError::NoSuchEdge(id(0), id(2)))
        );
        // graph is untouched
        assert_eq!(p3.edge_count(), 2);
    }

    #[test]
    fn forest_detection() {
        assert!(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().is_forest());
        assert!(!cycle(3).is_forest());
        assert!(Graph::new(0).is_forest());
    }
}
