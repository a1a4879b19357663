//! `construct`: base matrix + colored regular bipartite source graph
//! -> node-split Tanner graph, verified and written as alist.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use protoldpc_core::graph::{
    lps_bipartite, node_split, protograph_to_partitions, split_to_degree, tanner_girth,
    verify_lifting, LpsParams,
};
use protoldpc_core::proto::Protograph;

use crate::commands::girth_json;
use crate::error::{read_input, CliError};
use crate::formats::{parse_base_matrix, render_alist, render_edge_list};
use crate::manifest::{json_f64, render_json, ManifestBuilder};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SourceKind {
    /// Deterministic LPS Cayley graph (flags --p and --q).
    Lps,
    /// Seeded random regular bipartite graph (flags --half-size, --seed).
    Random,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Base-matrix text file; its edge count fixes the source degree.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Where the source graph comes from.
    #[arg(long, value_enum)]
    pub source: SourceKind,
    /// LPS prime p (degree becomes p + 1).
    #[arg(long)]
    pub p: Option<u64>,
    /// LPS prime q (group size parameter).
    #[arg(long)]
    pub q: Option<u64>,
    /// Left-class size for the random source.
    #[arg(long)]
    pub half_size: Option<usize>,
    /// Seed for the random source.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Smallest acceptable source girth for the random source.
    #[arg(long, default_value_t = 4)]
    pub girth_floor: u32,
    /// Also write the colored source graph as source.edges.
    #[arg(long)]
    pub save_source: bool,
    /// Directory for graph.alist, construct.json, and the manifest.
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run(args: &ConstructArgs) -> Result<(), CliError> {
    let mut manifest = ManifestBuilder::new(
        "construct",
        args.seed,
        serde_json::json!({
            "matrix": args.matrix.display().to_string(),
            "source": match args.source {
                SourceKind::Lps => "lps",
                SourceKind::Random => "random",
            },
            "p": args.p,
            "q": args.q,
            "half_size": args.half_size,
            "seed": args.seed,
            "girth_floor": args.girth_floor,
            "save_source": args.save_source,
        }),
    );
    let text = read_input(&args.matrix)?;
    manifest.record_input(&args.matrix, &text);
    let matrix = parse_base_matrix(&text)?;
    let p = Protograph::from_matrix(&matrix)
        .map_err(|e| CliError::Input(format!("invalid matrix: {e}")))?;
    let sp = protograph_to_partitions(&p)
        .map_err(|e| CliError::Input(format!("matrix has no valid socket partition: {e}")))?;
    let d = sp.d() as usize;

    let (source_graph, label, lps_bound) = match args.source {
        SourceKind::Lps => {
            let (pp, qq) = match (args.p, args.q) {
                (Some(pp), Some(qq)) => (pp, qq),
                _ => return Err(CliError::Input("--source lps requires --p and --q".into())),
            };
            let params = LpsParams::new(pp, qq)
                .map_err(|e| CliError::Domain(format!("LPS({pp},{qq}): {e}")))?;
            let base = lps_bipartite(&params);
            let bound = params.girth_lower_bound();
            let degree = base.degree();
            if degree == d {
                (base, format!("lps({pp},{qq})"), Some(bound))
            } else if degree % d == 0 {
                let split = split_to_degree(&base, d)
                    .map_err(|e| CliError::Domain(format!("degree split failed: {e}")))?;
                (split, format!("lps({pp},{qq})/split({d})"), Some(bound))
            } else {
                return Err(CliError::Domain(format!(
                    "LPS({pp},{qq}) gives degree {degree}, which is not a multiple of the \
                     protograph degree {d}; pick primes with p + 1 = k * {d}, or use \
                     --source random"
                )));
            }
        }
        SourceKind::Random => {
            let (half, seed) = match (args.half_size, args.seed) {
                (Some(h), Some(s)) => (h, s),
                _ => {
                    return Err(CliError::Input(
                        "--source random requires --half-size and --seed".into(),
                    ))
                }
            };
            let g = protoldpc_core::graph::random_regular_bipartite(
                d,
                half,
                args.girth_floor,
                seed,
            )
            .map_err(|e| {
                CliError::Domain(format!(
                    "no {d}-regular bipartite graph with girth >= {} found: {e}",
                    args.girth_floor
                ))
            })?;
            (g, format!("random(d={d},half={half},seed={seed},floor={})", args.girth_floor), None)
        }
    };

    let t = node_split(&source_graph, &sp, &label)
        .map_err(|e| CliError::Domain(format!("node splitting failed: {e}")))?;
    if !verify_lifting(&t, &matrix) {
        return Err(CliError::Domain(
            "constructed graph failed lifting verification; this is a bug".into(),
        ));
    }
    let measured = tanner_girth(&t);
    let rate = p.design_rate();
    println!(
        "constructed {} variables, {} checks, girth {} (source bound {})",
        t.variable_count(),
        t.check_count(),
        measured,
        t.girth_lower_bound(),
    );

    if args.save_source {
        manifest
            .write_artifact(&args.out_dir.join("source.edges"), &render_edge_list(&source_graph))?;
    }
    manifest.write_artifact(&args.out_dir.join("graph.alist"), &render_alist(&t))?;
    let metadata = serde_json::json!({
        "matrix_file": args.matrix.display().to_string(),
        "source": label,
        "variable_count": t.variable_count(),
        "check_count": t.check_count(),
        "edge_count": t.edges().len(),
        "copies": t.copies(),
        "design_rate": rate.to_string(),
        "girth_measured": girth_json(measured),
        "girth_source": girth_json(t.girth_lower_bound()),
        "girth_lps_bound": lps_bound.map(json_f64),
        "verified": true,
        "partition": {
            "d": sp.d(),
            "variable_classes": sp.variable_classes(),
            "check_classes": sp.check_classes(),
        },
    });
    manifest.write_artifact(&args.out_dir.join("construct.json"), &render_json(&metadata))?;
    manifest.finish(&args.out_dir)?;
    Ok(())
}
