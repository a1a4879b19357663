//! `verify-decay`: check the doubling bound on the DE trace below
//! threshold. Exit 0 when no violations, 1 when the property fails.

use std::path::PathBuf;

use clap::Args;
use protoldpc_core::de::{verify_decay, DEFAULT_T_MAX};
use protoldpc_core::proto::Protograph;

use crate::error::{read_input, CliError};
use crate::formats::parse_base_matrix;
use crate::manifest::{json_f64, render_json, ManifestBuilder};

#[derive(Args, Debug)]
pub struct VerifyDecayArgs {
    /// Base-matrix text file.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Channel erasure probability to iterate at; must sit below the
    /// matrix's threshold for the decay regime to exist.
    #[arg(long)]
    pub epsilon: f64,
    /// Density-evolution iteration budget.
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: usize,
    /// Directory for decay.json and the manifest.
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run(args: &VerifyDecayArgs) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&args.epsilon) {
        return Err(CliError::Input(format!("epsilon {} outside [0, 1]", args.epsilon)));
    }
    if args.t_max == 0 {
        return Err(CliError::Input("t-max must be at least 1".into()));
    }
    let mut manifest = ManifestBuilder::new(
        "verify-decay",
        None,
        serde_json::json!({
            "matrix": args.matrix.display().to_string(),
            "epsilon": json_f64(args.epsilon),
            "t_max": args.t_max,
        }),
    );
    let text = read_input(&args.matrix)?;
    manifest.record_input(&args.matrix, &text);
    let matrix = parse_base_matrix(&text)?;
    let p = Protograph::from_matrix(&matrix)
        .map_err(|e| CliError::Input(format!("invalid matrix: {e}")))?;

    let report = verify_decay(&p, args.epsilon, args.t_max)
        .map_err(|e| CliError::Domain(format!("decay check not applicable: {e}")))?;
    let pass = report.violations.is_empty() && report.y_violations.is_empty();
    let artifact = serde_json::json!({
        "matrix_file": args.matrix.display().to_string(),
        "epsilon": json_f64(report.epsilon),
        "d": report.d,
        "l_m": report.l_m,
        "l_m_prime": report.l_m_prime,
        "a": json_f64(report.a),
        "r": report.r,
        "trace_len": report.trace_len,
        "violations": report.violations,
        "y_violations": report.y_violations,
        "pass": pass,
    });
    manifest.write_artifact(&args.out_dir.join("decay.json"), &render_json(&artifact))?;
    manifest.finish(&args.out_dir)?;
    if pass {
        println!(
            "decay bound holds: R = {}, {} trace points, no violations",
            report.r, report.trace_len
        );
        Ok(())
    } else {
        println!(
            "decay bound FAILED: {} squared-decay violations, {} y-bound violations",
            report.violations.len(),
            report.y_violations.len()
        );
        Err(CliError::Domain("decay bound violated".into()))
    }
}
