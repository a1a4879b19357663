//! `optimize`: differential-evolution search over base matrices.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use protoldpc_core::opt::{optimize, OptimizerConfig};

use crate::error::CliError;
use crate::formats::render_base_matrix;
use crate::manifest::{f12, json_f64, render_json, ManifestBuilder};
use crate::parallel::RayonEvaluator;

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    /// Base-matrix rows (check nodes).
    #[arg(long)]
    pub rows: usize,
    /// Base-matrix columns (variable nodes).
    #[arg(long)]
    pub cols: usize,
    /// Population size N_P; default 10 * rows * cols.
    #[arg(long)]
    pub population: Option<usize>,
    /// Per-entry crossover probability; default 0.88.
    #[arg(long)]
    pub crossover_prob: Option<f64>,
    /// Generation budget G_max.
    #[arg(long)]
    pub generations: usize,
    /// Largest admissible matrix entry; default 6.
    #[arg(long)]
    pub entry_cap: Option<u32>,
    /// Master seed for the whole run.
    #[arg(long)]
    pub seed: u64,
    /// Bisection tolerance used during the search; default 1e-3.
    #[arg(long)]
    pub search_tolerance: Option<f64>,
    /// Bisection tolerance for the winner's final re-evaluation; default 1e-5.
    #[arg(long)]
    pub final_tolerance: Option<f64>,
    /// Density-evolution iteration budget per probe; default 300.
    #[arg(long)]
    pub t_max: Option<usize>,
    /// Convergence target for the maximum edge erasure; default 1e-10.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Directory for best_matrix.txt, report.json, history.csv, manifest.
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run(args: &OptimizeArgs) -> Result<(), CliError> {
    let mut cfg = OptimizerConfig::new(args.rows, args.cols, args.generations, args.seed);
    if let Some(v) = args.population {
        cfg.population_size = v;
    }
    if let Some(v) = args.crossover_prob {
        cfg.crossover_prob = v;
    }
    if let Some(v) = args.entry_cap {
        cfg.entry_cap = v;
    }
    if let Some(v) = args.search_tolerance {
        cfg.search_tolerance = v;
    }
    if let Some(v) = args.final_tolerance {
        cfg.final_tolerance = v;
    }
    if let Some(v) = args.t_max {
        cfg.t_max = v;
    }
    if let Some(v) = args.delta {
        cfg.delta = v;
    }
    cfg.validate().map_err(|e| CliError::Input(format!("invalid optimizer config: {e}")))?;

    let config_json = serde_json::json!({
        "rows": cfg.rows,
        "cols": cfg.cols,
        "population_size": cfg.population_size,
        "crossover_prob": json_f64(cfg.crossover_prob),
        "max_generations": cfg.max_generations,
        "entry_cap": cfg.entry_cap,
        "seed": cfg.seed,
        "search_tolerance": json_f64(cfg.search_tolerance),
        "final_tolerance": json_f64(cfg.final_tolerance),
        "t_max": cfg.t_max,
        "delta": json_f64(cfg.delta),
    });
    let mut manifest = ManifestBuilder::new("optimize", Some(args.seed), config_json.clone());

    let started = Instant::now();
    let mut progress = |generation: usize, best: f64| {
        println!("generation {generation} best {}", f12(best));
    };
    let result = optimize(&cfg, &RayonEvaluator, &mut progress)
        .map_err(|e| CliError::Input(format!("invalid optimizer config: {e}")))?;
    let wall = started.elapsed().as_secs_f64();
    println!(
        "best threshold {} ({} distinct evaluations)",
        f12(result.best_fitness_fine),
        result.evaluations
    );

    let mut history_csv = String::from("generation,best_fitness\n");
    for (g, f) in result.history.iter().enumerate() {
        history_csv.push_str(&format!("{g},{}\n", f12(*f)));
    }
    let report = serde_json::json!({
        "config": config_json,
        "history": result.history.iter().map(|&f| json_f64(f)).collect::<Vec<_>>(),
        "best_fitness_search": json_f64(result.best.fitness),
        "best_fitness_fine": json_f64(result.best_fitness_fine),
        "best_generation_born": result.best.generation_born,
        "evaluations": result.evaluations,
        "wall_time_seconds": wall,
    });
    manifest.write_artifact(
        &args.out_dir.join("best_matrix.txt"),
        &render_base_matrix(&result.best.matrix),
    )?;
    manifest.write_artifact(&args.out_dir.join("history.csv"), &history_csv)?;
    manifest.write_artifact(&args.out_dir.join("report.json"), &render_json(&report))?;
    manifest.finish(&args.out_dir)?;
    Ok(())
}
