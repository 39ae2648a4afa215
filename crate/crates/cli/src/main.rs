//! `sfnet`: command-line front end for the scale-free robustness lab.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 runtime failure.

use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sfnet_core::experiment::{
    output::{format_loops_csv, format_trace_csv},
    run_cell, run_experiment, splitmix64, ExperimentConfig, ExperimentError,
};
use sfnet_core::graph::{read_edge_list, to_edge_list_string};
use sfnet_core::{
    degree_stats, price_generate, randomize_preserving_degrees, run_attack, shortest_loop_stats,
    AttackKind, AttackStrategy, BpParams, Graph, PriceParams, RngSeed,
};

#[derive(Parser, Debug)]
#[command(name = "sfnet", version, about = "Scale-free network robustness lab")]
struct Cli {
    /// JSON experiment config; flags given on the command line override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory for `experiment`/`cell`, output file for the others
    /// (stdout when absent).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Base seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grow one Price network, randomize it, and write its edge list.
    Generate {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 3.0)]
        gamma: f64,
        /// Skip the degree-preserving randomization.
        #[arg(long)]
        no_randomize: bool,
    },
    /// Dismantle the graph in an edge-list file and write the trace CSV.
    Attack {
        input: PathBuf,
        #[arg(long, default_value = "degree")]
        strategy: AttackKind,
        #[command(flatten)]
        bp: BpArgs,
    },
    /// Shortest-loop histogram of an edge-list file.
    Loops { input: PathBuf },
    /// Degree statistics of an edge-list file, as JSON.
    Stats { input: PathBuf },
    /// Run the full sweep and write its output files.
    Experiment {
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Run one (gamma, realization) cell and print it as JSON.
    Cell {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Index into the gamma grid.
        #[arg(long)]
        gamma_index: usize,
        #[arg(long, default_value_t = 0)]
        realization: usize,
    },
}

#[derive(Args, Debug, Default)]
struct BpArgs {
    #[arg(long)]
    bp_x: Option<f64>,
    #[arg(long)]
    bp_tol: Option<f64>,
    #[arg(long)]
    bp_max_sweeps: Option<usize>,
    #[arg(long)]
    bp_damping: Option<f64>,
}

impl BpArgs {
    fn apply(&self, mut p: BpParams) -> BpParams {
        if let Some(x) = self.bp_x {
            p.x = x;
        }
        if let Some(t) = self.bp_tol {
            p.tolerance = t;
        }
        if let Some(s) = self.bp_max_sweeps {
            p.max_sweeps = s;
        }
        if let Some(d) = self.bp_damping {
            p.damping = d;
        }
        p
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    gamma_start: Option<f64>,
    #[arg(long)]
    gamma_stop: Option<f64>,
    #[arg(long)]
    gamma_step: Option<f64>,
    #[arg(long)]
    realizations: Option<usize>,
    /// Comma-separated subset of degree,betweenness,bp.
    #[arg(long, value_delimiter = ',')]
    attacks: Option<Vec<AttackKind>>,
    /// Also write cells.jsonl.
    #[arg(long)]
    dump_cells: bool,
    #[command(flatten)]
    bp: BpArgs,
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Config(_) => CliError::Config(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

fn resolve_config(cli: &Cli, sweep: &SweepArgs) -> Result<ExperimentConfig, CliError> {
    let mut c = match &cli.config {
        Some(p) => ExperimentConfig::from_json_file(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = sweep.n {
        c.n = v;
    }
    if let Some(v) = sweep.m {
        c.m = v;
    }
    if let Some(v) = sweep.gamma_start {
        c.gamma.start = v;
    }
    if let Some(v) = sweep.gamma_stop {
        c.gamma.stop = v;
    }
    if let Some(v) = sweep.gamma_step {
        c.gamma.step = v;
    }
    if let Some(v) = sweep.realizations {
        c.realizations = v;
    }
    if let Some(v) = &sweep.attacks {
        c.attacks = v.clone();
    }
    if sweep.dump_cells {
        c.dump_cells = true;
    }
    c.bp = sweep.bp.apply(c.bp);
    if let Some(v) = cli.seed {
        c.base_seed = v;
    }
    if let Some(v) = cli.threads {
        c.threads = v;
    }
    if let Some(v) = &cli.out {
        c.out_dir = Some(v.clone());
    }
    c.validate()?;
    Ok(c)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let f = File::open(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    read_edge_list(BufReader::new(f))
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
    .map_err(|e| CliError::Runtime(format!("writing output: {e}")))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Generate {
            n,
            m,
            gamma,
            no_randomize,
        } => {
            let params =
                PriceParams::new(*n, *m, *gamma).map_err(|e| CliError::Config(e.to_string()))?;
            let seed = cli.seed.unwrap_or(0);
            let mut g = price_generate(&params, RngSeed(seed))
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            if !no_randomize {
                g = randomize_preserving_degrees(&g, RngSeed(splitmix64(seed)))
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
            }
            emit(out, &to_edge_list_string(&g))
        }
        Command::Attack {
            input,
            strategy,
            bp,
        } => {
            let params = bp.apply(BpParams::default());
            params
                .validate()
                .map_err(|e| CliError::Config(e.to_string()))?;
            let g = read_graph(input)?;
            let trace = run_attack(&g, &AttackStrategy::from_kind(*strategy, params))
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            emit(out, &format_trace_csv(&trace))
        }
        Command::Loops { input } => {
            let g = read_graph(input)?;
            emit(out, &format_loops_csv(&shortest_loop_stats(&g)))
        }
        Command::Stats { input } => {
            let g = read_graph(input)?;
            let s = degree_stats(&g).map_err(|e| CliError::Runtime(e.to_string()))?;
            let json = serde_json::to_string_pretty(&s).expect("stats serialize");
            emit(out, &(json + "\n"))
        }
        Command::Experiment { sweep } => {
            let c = resolve_config(cli, sweep)?;
            let table = run_experiment(&c)?;
            eprintln!(
                "{} gamma values x {} realizations done",
                table.rows.len(),
                c.realizations
            );
            if let Some(dir) = &c.out_dir {
                eprintln!("wrote {}", dir.display());
            } else {
                eprintln!("no --out given; nothing written");
            }
            Ok(())
        }
        Command::Cell {
            sweep,
            gamma_index,
            realization,
        } => {
            let mut c = resolve_config(cli, sweep)?;
            let dir = c.out_dir.take();
            let grid = c.gamma_values().len();
            if *gamma_index >= grid {
                return Err(CliError::Config(format!(
                    "gamma index {gamma_index} outside grid of {grid}"
                )));
            }
            let cell = run_cell(&c, *gamma_index, *realization)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            let json = serde_json::to_string(&cell).expect("cell serializes") + "\n";
            match dir {
                Some(d) => {
                    fs::create_dir_all(&d)
                        .map_err(|e| CliError::Runtime(format!("{}: {e}", d.display())))?;
                    let name = format!("cell_{:.1}_{realization}.json", cell.gamma);
                    emit(Some(&d.join(name)), &json)
                }
                None => emit(None, &json),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
