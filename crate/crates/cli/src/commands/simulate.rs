//! `simulate`: Monte Carlo peeling-decoder error rates over the BEC.

use std::path::PathBuf;

use clap::Args;
use protoldpc_core::sim::ChannelConfig;

use crate::error::{read_input, CliError};
use crate::formats::parse_alist;
use crate::manifest::{f12, ManifestBuilder};
use crate::parallel::parallel_simulate;

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Tanner graph in alist format.
    #[arg(long)]
    pub alist: PathBuf,
    /// Erasure probabilities, comma separated. The same trial index reuses
    /// the same channel randomness at every epsilon (common random
    /// numbers), so sweep columns are directly comparable.
    #[arg(long, value_delimiter = ',', required = true)]
    pub epsilon: Vec<f64>,
    /// Trials per epsilon.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Master seed; trial t draws from stream (seed, trial).
    #[arg(long)]
    pub seed: u64,
    /// Cap on peeling waves per trial; peeling terminates naturally
    /// without one.
    #[arg(long)]
    pub max_peel_rounds: Option<usize>,
    /// Directory for simulate.csv and the manifest.
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run(args: &SimulateArgs) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new(
        "simulate",
        Some(args.seed),
        serde_json::json!({
            "alist": args.alist.display().to_string(),
            "epsilon": args.epsilon,
            "trials": args.trials,
            "seed": args.seed,
            "max_peel_rounds": args.max_peel_rounds,
        }),
    );
    let text = read_input(&args.alist)?;
    manifest.record_input(&args.alist, &text);
    let t = parse_alist(&text)?;
    let n = t.variable_count();

    let mut csv = String::from("epsilon,n,trials,bit_error,block_error,ci_lo,ci_hi\n");
    for &epsilon in &args.epsilon {
        let mut cfg = ChannelConfig::new(epsilon, args.trials, args.seed)
            .map_err(|e| CliError::Input(e.to_string()))?;
        cfg.max_peel_rounds = args.max_peel_rounds;
        let stats = parallel_simulate(&t, &cfg).map_err(|e| CliError::Input(e.to_string()))?;
        let row = format!(
            "{},{n},{},{},{},{},{}",
            f12(epsilon),
            args.trials,
            f12(stats.bit_error_rate),
            f12(stats.block_error_rate),
            f12(stats.wilson_interval_95.0),
            f12(stats.wilson_interval_95.1),
        );
        println!("{row}");
        csv.push_str(&row);
        csv.push('\n');
    }
    manifest.write_artifact(&args.out_dir.join("simulate.csv"), &csv)?;
    manifest.finish(&args.out_dir)?;
    Ok(())
}
