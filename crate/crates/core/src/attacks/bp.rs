//! Belief-propagation decycling.
//!
//! The attack approximates a minimum feedback vertex set with the cavity
//! method on a spin model whose occupied nodes must form cycle-free
//! structures. Each node `i` takes a state
//!
//! * `empty` (the node is a feedback-set candidate),
//! * `root`,
//! * `parent = j` for one neighbor `j`.
//!
//! An edge `(i, j)` is admissible when
//!
//! * both ends are empty, or
//! * one end is empty and the other does not name it as parent, or
//! * both are occupied and exactly one names the other as parent.
//!
//! A configuration has weight `exp(x * #occupied)` when every edge is
//! admissible and 0 otherwise. Every occupied component then carries exactly
//! as many parent pointers as edges, which forbids more than one cycle per
//! component; at large `x` the measure concentrates on the largest such
//! occupied sets, and the empty nodes form a near-minimum feedback set.
//!
//! Messages live on directed edges `i -> j` of a support subgraph (the 2-core
//! during an attack) and describe `i` in the cavity graph without `j`:
//! `empty` is the probability `i` is empty and `root` the probability it is a
//! root. With `P_k = empty_{k->i} + root_{k->i}` and `D_k = 1 - empty_{k->i}`,
//!
//! ```text
//! z_{i->j}     = 1 + e^x prod_{k != j} P_k + e^x sum_{k != j} D_k prod_{l != j,k} P_l
//! empty_{i->j} = 1 / z_{i->j}
//! root_{i->j}  = e^x prod_{k != j} P_k / z_{i->j}
//! ```
//!
//! A cavity root `k` can adopt `i` as its parent once `i` is put back, which
//! is why `root` appears inside `P_k`. These equations are exact on trees.

use super::forest::largest_tree_centroid;
use super::{argmax_smallest_id, AttackError, BpParams, TargetSelector, BP_EPSILON};
use crate::graph::{Graph, NodeId};

const UNIFORM: f64 = 1.0 / 3.0;

/// Cavity messages on the directed edges of a support subgraph.
#[derive(Clone, Debug)]
pub struct BpMessages {
    support: Vec<bool>,
    adj: Vec<Vec<NodeId>>,
    /// `rev[i][a]` is the position of `i` in `adj[adj[i][a]]`.
    rev: Vec<Vec<u32>>,
    empty: Vec<Vec<f64>>,
    root: Vec<Vec<f64>>,
    next_empty: Vec<Vec<f64>>,
    next_root: Vec<Vec<f64>>,
}

/// Product of `(P + t D)` terms truncated after the linear term in `t`.
#[derive(Clone, Copy, Debug)]
struct Linear {
    constant: f64,
    slope: f64,
}

impl Linear {
    const ONE: Linear = Linear {
        constant: 1.0,
        slope: 0.0,
    };

    #[inline]
    fn mul(self, o: Linear) -> Linear {
        Linear {
            constant: self.constant * o.constant,
            slope: self.constant * o.slope + self.slope * o.constant,
        }
    }
}

impl BpMessages {
    /// Uniform messages on the 2-core of `g`.
    pub fn on_two_core(g: &Graph) -> Self {
        Self::on_nodes(g, &g.two_core_mask())
    }

    /// Uniform messages on the subgraph induced by `mask`.
    pub fn on_nodes(g: &Graph, mask: &[bool]) -> Self {
        Self::build(g, mask, None)
    }

    /// Messages on the 2-core of the (shrunken) graph `g`, reusing every
    /// message whose directed edge survived and starting the rest uniform.
    pub fn warm_restart(&self, g: &Graph) -> Self {
        Self::build(g, &g.two_core_mask(), Some(self))
    }

    fn build(g: &Graph, mask: &[bool], old: Option<&BpMessages>) -> Self {
        let n = g.node_count();
        let support: Vec<bool> = (0..n)
            .map(|i| mask.get(i).copied().unwrap_or(false) && g.is_alive(NodeId::from(i)))
            .collect();
        let adj: Vec<Vec<NodeId>> = (0..n)
            .map(|i| {
                if support[i] {
                    g.neighbors(NodeId::from(i))
                        .iter()
                        .copied()
                        .filter(|v| support[v.index()])
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let rev: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let me = NodeId::from(i);
                adj[i]
                    .iter()
                    .map(|j| adj[j.index()].binary_search(&me).expect("symmetric") as u32)
                    .collect()
            })
            .collect();
        let mut empty: Vec<Vec<f64>> = adj.iter().map(|a| vec![UNIFORM; a.len()]).collect();
        let mut root = empty.clone();
        if let Some(old) = old {
            for i in 0..n {
                if i >= old.adj.len() {
                    break;
                }
                for (a, j) in adj[i].iter().enumerate() {
                    if let Ok(b) = old.adj[i].binary_search(j) {
                        empty[i][a] = old.empty[i][b];
                        root[i][a] = old.root[i][b];
                    }
                }
            }
        }
        BpMessages {
            support,
            next_empty: empty.clone(),
            next_root: root.clone(),
            adj,
            rev,
            empty,
            root,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.support
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| NodeId::from(i))
    }

    pub fn is_empty(&self) -> bool {
        !self.support.iter().any(|&s| s)
    }

    /// Number of directed edges carrying a message.
    pub fn len(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// `(empty, root)` components of the message `from -> to`.
    pub fn message(&self, from: NodeId, to: NodeId) -> Option<(f64, f64)> {
        let a = self.adj.get(from.index())?.binary_search(&to).ok()?;
        Some((self.empty[from.index()][a], self.root[from.index()][a]))
    }

    fn incoming(&self, i: usize, a: usize) -> Linear {
        let k = self.adj[i][a].index();
        let b = self.rev[i][a] as usize;
        let e = self.empty[k][b];
        Linear {
            constant: e + self.root[k][b],
            slope: 1.0 - e,
        }
    }

    /// Probability each support node is empty, indexed by node id; `None`
    /// outside the support.
    pub fn marginals(&self, x: f64) -> Vec<Option<f64>> {
        let ex = x.exp();
        (0..self.support.len())
            .map(|i| {
                if !self.support[i] {
                    return None;
                }
                let all = (0..self.adj[i].len())
                    .map(|a| self.incoming(i, a))
                    .fold(Linear::ONE, Linear::mul);
                Some(1.0 / (1.0 + ex * all.constant + ex * all.slope))
            })
            .collect()
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        for i in 0..self.adj.len() {
            for a in 0..self.adj[i].len() {
                let (e, r) = (self.empty[i][a], self.root[i][a]);
                for p in [e, r] {
                    if !(BP_EPSILON..=1.0 - BP_EPSILON).contains(&p) {
                        return Err(format!(
                            "message {i}->{} component {p} out of range",
                            self.adj[i][a]
                        ));
                    }
                }
                if e + r > 1.0 + 1e-9 {
                    return Err(format!("message {i}->{} sums to {}", self.adj[i][a], e + r));
                }
            }
        }
        Ok(())
    }
}

/// One synchronous, damped update of every message. Returns the largest
/// absolute change of any component.
pub fn bp_sweep(msgs: &mut BpMessages, x: f64, damping: f64) -> f64 {
    let ex = x.exp();
    let mut prefix: Vec<Linear> = Vec::new();
    let mut max_change: f64 = 0.0;
    for i in 0..msgs.adj.len() {
        let deg = msgs.adj[i].len();
        if deg == 0 {
            continue;
        }
        prefix.clear();
        prefix.push(Linear::ONE);
        for a in 0..deg {
            let next = prefix[a].mul(msgs.incoming(i, a));
            prefix.push(next);
        }
        let mut suffix = Linear::ONE;
        for a in (0..deg).rev() {
            let excl = prefix[a].mul(suffix);
            let z = 1.0 + ex * excl.constant + ex * excl.slope;
            let new_empty = 1.0 / z;
            let new_root = ex * excl.constant / z;
            let old_e = msgs.empty[i][a];
            let old_r = msgs.root[i][a];
            let e =
                (damping * old_e + (1.0 - damping) * new_empty).clamp(BP_EPSILON, 1.0 - BP_EPSILON);
            let r =
                (damping * old_r + (1.0 - damping) * new_root).clamp(BP_EPSILON, 1.0 - BP_EPSILON);
            max_change = max_change.max((e - old_e).abs()).max((r - old_r).abs());
            msgs.next_empty[i][a] = e;
            msgs.next_root[i][a] = r;
            suffix = suffix.mul(msgs.incoming(i, a));
        }
    }
    std::mem::swap(&mut msgs.empty, &mut msgs.next_empty);
    std::mem::swap(&mut msgs.root, &mut msgs.next_root);
    max_change
}

/// Sweeps until the largest change drops below `tolerance` or `max_sweeps`
/// is reached. Returns the number of sweeps and whether it converged.
pub(crate) fn converge(msgs: &mut BpMessages, p: &BpParams) -> (usize, bool) {
    for s in 1..=p.max_sweeps {
        if bp_sweep(msgs, p.x, p.damping) < p.tolerance {
            return (s, true);
        }
    }
    (p.max_sweeps, false)
}

/// What happened when the 2-core first emptied during a BP attack.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decycling {
    /// Removals made while the 2-core was non-empty.
    pub removals: usize,
    /// Independent check that the residual graph had no cycle at that point.
    pub residual_acyclic: bool,
}

/// Recalculated BP attack.
///
/// While the graph has a 2-core, messages are converged on it (warm-started
/// from the previous step) and the core node most likely to be empty is
/// removed. Once the 2-core is gone the centroid of the largest remaining
/// tree is removed instead.
#[derive(Clone, Debug)]
pub struct BpSelector {
    params: BpParams,
    msgs: Option<BpMessages>,
    cycle_removals: usize,
    decycling: Option<Decycling>,
    unconverged: usize,
}

impl BpSelector {
    pub fn new(params: BpParams) -> Result<Self, AttackError> {
        params.validate()?;
        Ok(BpSelector {
            params,
            msgs: None,
            cycle_removals: 0,
            decycling: None,
            unconverged: 0,
        })
    }

    /// Set once the residual graph first becomes a forest.
    pub fn decycling(&self) -> Option<Decycling> {
        self.decycling
    }

    /// Recalculations that hit `max_sweeps` without converging.
    pub fn unconverged(&self) -> usize {
        self.unconverged
    }
}

impl TargetSelector for BpSelector {
    fn next_target(&mut self, g: &Graph) -> Result<NodeId, AttackError> {
        if g.alive_count() == 0 {
            return Err(AttackError::EmptyGraph);
        }
        let mask = g.two_core_mask();
        if mask.iter().any(|&m| m) {
            let mut msgs = match self.msgs.take() {
                Some(prev) => BpMessages::build(g, &mask, Some(&prev)),
                None => BpMessages::on_nodes(g, &mask),
            };
            let (_, converged) = converge(&mut msgs, &self.params);
            if !converged {
                self.unconverged += 1;
            }
            debug_assert!(msgs.check_invariants().is_ok());
            let target = argmax_smallest_id(msgs.marginals(self.params.x))
                .map(NodeId::from)
                .expect("non-empty support");
            self.msgs = Some(msgs);
            self.cycle_removals += 1;
            return Ok(target);
        }
        if self.decycling.is_none() {
            let residual_acyclic = g.is_forest();
            debug_assert!(residual_acyclic, "empty 2-core but cycles remain");
            self.decycling = Some(Decycling {
                removals: self.cycle_removals,
                residual_acyclic,
            });
            self.msgs = None;
        }
        largest_tree_centroid(g).ok_or(AttackError::EmptyGraph)
    }
}

/// BP target for a single graph, without warm start.
pub fn next_target_bp(g: &Graph, params: &BpParams) -> Result<NodeId, AttackError> {
    BpSelector::new(*params)?.next_target(g)
}
