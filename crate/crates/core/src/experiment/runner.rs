use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::seed::{derive_seed, Stage};
use super::{CellError, ExperimentConfig, ExperimentError};
use crate::attacks::{run_attack, AttackKind, AttackStrategy};
use crate::generation::{price_generate, randomize_preserving_degrees, PriceParams, RngSeed};
use crate::metrics::{
    degree_stats, loop_stats_from_counts, robustness_index, shortest_loop_stats, DegreeStats,
    LoopStats,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSeeds {
    pub generate: RngSeed,
    pub randomize: RngSeed,
    pub attack: RngSeed,
}

/// Everything measured on one realization at one exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub gamma: f64,
    pub gamma_index: usize,
    pub realization: usize,
    pub seeds: CellSeeds,
    pub degree: DegreeStats,
    pub loops: LoopStats,
    pub robustness: BTreeMap<AttackKind, f64>,
    /// LCC size after each removal, per attack. Not serialized.
    #[serde(skip)]
    pub curves: BTreeMap<AttackKind, Vec<usize>>,
}

/// Grows, randomizes, measures and attacks one network.
pub fn run_cell(
    config: &ExperimentConfig,
    gamma_index: usize,
    realization: usize,
) -> Result<CellResult, CellError> {
    let gammas = config.gamma_values();
    let gamma = *gammas.get(gamma_index).ok_or_else(|| CellError {
        gamma: f64::NAN,
        realization,
        message: format!("gamma index {gamma_index} outside grid of {}", gammas.len()),
    })?;
    let fail = |message: String| CellError {
        gamma,
        realization,
        message,
    };
    let seeds = CellSeeds {
        generate: derive_seed(config.base_seed, gamma_index, realization, Stage::Generate),
        randomize: derive_seed(config.base_seed, gamma_index, realization, Stage::Randomize),
        attack: derive_seed(config.base_seed, gamma_index, realization, Stage::Attack),
    };
    let params = PriceParams::new(config.n, config.m, gamma).map_err(|e| fail(e.to_string()))?;
    let grown = price_generate(&params, seeds.generate).map_err(|e| fail(e.to_string()))?;
    let g =
        randomize_preserving_degrees(&grown, seeds.randomize).map_err(|e| fail(e.to_string()))?;

    let degree = degree_stats(&g).map_err(|e| fail(e.to_string()))?;
    let loops = shortest_loop_stats(&g);

    let mut robustness = BTreeMap::new();
    let mut curves = BTreeMap::new();
    for kind in config.attack_kinds() {
        let strategy = AttackStrategy::from_kind(kind, config.bp);
        let trace = run_attack(&g, &strategy).map_err(|e| fail(format!("{kind} attack: {e}")))?;
        let r = robustness_index(&trace, g.node_count()).map_err(|e| fail(e.to_string()))?;
        robustness.insert(kind, r);
        curves.insert(kind, trace.lcc_curve);
    }
    Ok(CellResult {
        gamma,
        gamma_index,
        realization,
        seeds,
        degree,
        loops,
        robustness,
        curves,
    })
}

/// Sample mean and sample (n - 1) standard deviation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

impl MeanStd {
    /// Summed in iteration order. The standard deviation is 0 for fewer
    /// than two samples; an empty input gives NaN.
    pub fn of(values: &[f64]) -> Self {
        let count = values.len();
        if count == 0 {
            return MeanStd {
                mean: f64::NAN,
                std: f64::NAN,
                count,
            };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let std = if count < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        };
        MeanStd { mean, std, count }
    }
}

/// Aggregates over all realizations at one exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSummary {
    pub gamma: f64,
    pub realizations: usize,
    pub mean_degree: MeanStd,
    pub variance: MeanStd,
    pub k_max: MeanStd,
    /// Over realizations that have at least one loop.
    pub mean_loop: MeanStd,
    pub robustness: BTreeMap<AttackKind, MeanStd>,
    /// Pooled `P(k)` over all realizations.
    pub degree_hist: BTreeMap<usize, f64>,
    /// Pooled `P(l)` over all non-bridge links of all realizations.
    pub loop_hist: BTreeMap<usize, f64>,
    /// Mean `S(q)/N` at `q = t/N`, `t = 1..N`, per attack.
    pub curves: BTreeMap<AttackKind, Vec<f64>>,
}

impl GammaSummary {
    /// Aggregates cells in the given order. All cells must share `gamma`.
    pub fn from_cells(gamma: f64, n: usize, cells: &[CellResult]) -> Self {
        let collect = |f: &dyn Fn(&CellResult) -> Option<f64>| -> Vec<f64> {
            cells.iter().filter_map(f).collect()
        };
        let mean_degree = MeanStd::of(&collect(&|c| Some(c.degree.mean)));
        let variance = MeanStd::of(&collect(&|c| Some(c.degree.variance)));
        let k_max = MeanStd::of(&collect(&|c| Some(c.degree.k_max as f64)));
        let mean_loop = MeanStd::of(&collect(&|c| c.loops.mean));

        let mut robustness = BTreeMap::new();
        let mut curves = BTreeMap::new();
        let kinds: Vec<AttackKind> = cells
            .first()
            .map(|c| c.robustness.keys().copied().collect())
            .unwrap_or_default();
        for kind in kinds {
            robustness.insert(
                kind,
                MeanStd::of(&collect(&|c| c.robustness.get(&kind).copied())),
            );
            let mut sum = vec![0.0; n];
            for c in cells {
                if let Some(curve) = c.curves.get(&kind) {
                    for (acc, &s) in sum.iter_mut().zip(curve) {
                        *acc += s as f64 / n as f64;
                    }
                }
            }
            let k = cells.len() as f64;
            curves.insert(kind, sum.into_iter().map(|v| v / k).collect());
        }

        let mut degree_counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut loop_counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut bridges = 0;
        for c in cells {
            for (&k, &cnt) in &c.degree.counts {
                *degree_counts.entry(k).or_insert(0) += cnt;
            }
            for (&l, &cnt) in &c.loops.counts {
                *loop_counts.entry(l).or_insert(0) += cnt;
            }
            bridges += c.loops.bridge_count;
        }
        let total_nodes: usize = degree_counts.values().sum();
        let degree_hist = degree_counts
            .iter()
            .map(|(&k, &c)| (k, c as f64 / total_nodes as f64))
            .collect();
        let loop_hist = loop_stats_from_counts(loop_counts, bridges).histogram;

        GammaSummary {
            gamma,
            realizations: cells.len(),
            mean_degree,
            variance,
            k_max,
            mean_loop,
            robustness,
            degree_hist,
            loop_hist,
            curves,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultsTable {
    pub n: usize,
    pub attacks: Vec<AttackKind>,
    pub rows: Vec<GammaSummary>,
    /// Per-cell results in (gamma, realization) order, kept when the config
    /// asks for cell dumps.
    pub cells: Option<Vec<CellResult>>,
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, ExperimentError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))
}

/// Runs every (gamma, realization) cell and aggregates per gamma.
///
/// Cells of one gamma run in parallel; aggregation walks them in realization
/// order, so the table does not depend on the thread count. Writes the
/// output files when `config.out_dir` is set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultsTable, ExperimentError> {
    config.validate()?;
    let pool = thread_pool(config.threads)?;
    let gammas = config.gamma_values();
    let mut rows = Vec::with_capacity(gammas.len());
    let mut kept = config.dump_cells.then(Vec::new);
    let mut failures = Vec::new();

    for (gi, &gamma) in gammas.iter().enumerate() {
        let results: Vec<Result<CellResult, CellError>> = pool.install(|| {
            (0..config.realizations)
                .into_par_iter()
                .map(|r| run_cell(config, gi, r))
                .collect()
        });
        let mut cells = Vec::with_capacity(results.len());
        for r in results {
            match r {
                Ok(c) => cells.push(c),
                Err(e) => failures.push(e),
            }
        }
        if !failures.is_empty() {
            continue;
        }
        rows.push(GammaSummary::from_cells(gamma, config.n, &cells));
        if let Some(k) = kept.as_mut() {
            for mut c in cells {
                c.curves.clear();
                k.push(c);
            }
        }
    }
    if !failures.is_empty() {
        return Err(ExperimentError::Cells(failures));
    }
    let table = ResultsTable {
        n: config.n,
        attacks: config.attack_kinds(),
        rows,
        cells: kept,
    };
    if let Some(dir) = &config.out_dir {
        super::output::write_outputs(&table, config, dir)?;
    }
    Ok(table)
}
