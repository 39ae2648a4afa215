//! Robustness of randomized scale-free networks.
//!
//! * [`graph`]: mutable undirected simple graph with node removal.
//! * [`generation`]: tunable-exponent preferential attachment and
//!   degree-preserving randomization.
//! * [`attacks`]: recalculated degree, betweenness and belief-propagation
//!   dismantling.
//! * [`metrics`]: robustness index `R`, degree moments, shortest loops.
//! * [`experiment`]: seeded parameter sweeps and their CSV/JSON outputs.

// `!(x > 0.0)` is used on purpose so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attacks;
pub mod experiment;
pub mod generation;
pub mod graph;
pub mod metrics;

pub use attacks::{run_attack, AttackKind, AttackStrategy, AttackTrace, BpParams};
pub use experiment::{run_experiment, ExperimentConfig, ResultsTable};

pub use generation::{price_generate, randomize_preserving_degrees, PriceParams, RngSeed};
pub use graph::{Graph, NodeId};
pub use metrics::{degree_stats, robustness_index, shortest_loop_stats, DegreeStats, LoopStats};
