//! `threshold`: density-evolution threshold of a base matrix.

use std::path::PathBuf;

use clap::Args;
use protoldpc_core::de::{de_step, threshold, ErasureState, DEFAULT_DELTA, DEFAULT_TOLERANCE, DEFAULT_T_MAX};
use protoldpc_core::proto::Protograph;

use crate::error::{read_input, CliError};
use crate::formats::parse_base_matrix;
use crate::manifest::{f12, json_f64, render_json, ManifestBuilder};

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// Base-matrix text file.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Bisection stops once the bracket is this narrow.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Density-evolution iteration budget per probe.
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: usize,
    /// Convergence target for the maximum edge erasure.
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
    /// Also write trace.csv: the average-erasure decay curve at the
    /// largest epsilon the bisection verified as converging.
    #[arg(long)]
    pub trace: bool,
    /// Directory for threshold.json, the optional trace, and the manifest.
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run(args: &ThresholdArgs) -> Result<(), CliError> {
    if !(args.tolerance > 0.0) {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", args.tolerance)));
    }
    if args.t_max == 0 {
        return Err(CliError::Input("t-max must be at least 1".into()));
    }
    if !(args.delta > 0.0) {
        return Err(CliError::Input(format!("delta must be positive, got {}", args.delta)));
    }
    let mut manifest = ManifestBuilder::new(
        "threshold",
        None,
        serde_json::json!({
            "matrix": args.matrix.display().to_string(),
            "tolerance": json_f64(args.tolerance),
            "t_max": args.t_max,
            "delta": json_f64(args.delta),
            "trace": args.trace,
        }),
    );
    let text = read_input(&args.matrix)?;
    manifest.record_input(&args.matrix, &text);
    let matrix = parse_base_matrix(&text)?;
    let p = Protograph::from_matrix(&matrix)
        .map_err(|e| CliError::Input(format!("invalid matrix: {e}")))?;

    let chain = p.check_chain_constraint();
    if chain.pass {
        println!("chain constraint: pass");
    } else {
        let offending: Vec<String> =
            chain.offending_checks.iter().map(usize::to_string).collect();
        println!("chain constraint: FAIL at checks {}", offending.join(", "));
    }

    let result = threshold(&p, args.tolerance, args.t_max, args.delta);
    println!("epsilon_threshold {}", f12(result.epsilon_threshold));

    let trace_file = args.trace.then(|| String::from("trace.csv"));
    if args.trace {
        let csv = trace_csv(&p, result.bracket.0, args.t_max, args.delta);
        manifest.write_artifact(&args.out_dir.join("trace.csv"), &csv)?;
    }
    let report = serde_json::json!({
        "matrix_file": args.matrix.display().to_string(),
        "epsilon_threshold": json_f64(result.epsilon_threshold),
        "tolerance": json_f64(result.tolerance),
        "t_max": result.t_max,
        "delta": json_f64(result.delta),
        "trace_file": trace_file,
    });
    manifest.write_artifact(&args.out_dir.join("threshold.json"), &render_json(&report))?;
    manifest.finish(&args.out_dir)?;
    Ok(())
}

/// CSV rows `t,x_bar` of the average edge erasure under DE at `epsilon`,
/// mirroring the run loop: stop on convergence, a bit-exact stall, or
/// the iteration budget.
fn trace_csv(p: &Protograph, epsilon: f64, t_max: usize, delta: f64) -> String {
    let average = |x: &[f64]| x.iter().sum::<f64>() / x.len() as f64;
    let peak = |x: &[f64]| x.iter().fold(0.0_f64, |m, &v| m.max(v));
    let mut out = String::from("t,x_bar\n");
    let mut state = ErasureState::initial(p, epsilon);
    out.push_str(&format!("0,{}\n", f12(average(&state.x))));
    for t in 1..=t_max {
        let next = de_step(p, &state, epsilon);
        out.push_str(&format!("{t},{}\n", f12(average(&next.x))));
        if peak(&next.x) < delta || next.x == state.x {
            break;
        }
        state = next;
    }
    out
}
