use std::path::PathBuf;

use cayleynet::metrics::{diameter, moore_bound, moore_fill_ratio};
use clap::Args;
use serde_json::json;

use crate::output::{pretty, read_graph, CliResult, EXIT_OK};

#[derive(Args)]
pub struct MooreArgs {
    /// Maximum degree Δ.
    #[arg(long)]
    delta: u64,
    /// Diameter D.
    #[arg(long)]
    diameter: u32,
    /// Graph whose vertex count is compared against the bound.
    #[arg(long)]
    graph: Option<PathBuf>,
}

pub fn run(args: MooreArgs) -> CliResult {
    let bound = moore_bound(args.delta, args.diameter).to_string();
    let mut row = json!({
        "delta": args.delta,
        "diameter": args.diameter,
        "moore_bound": bound.parse::<u64>().map_or_else(|_| json!(bound), |v| json!(v)),
    });
    if let Some(path) = args.graph {
        let graph = read_graph(&path)?;
        let n = graph.vertex_count() as u64;
        row["vertices"] = json!(n);
        row["fill_ratio"] = json!(moore_fill_ratio(n, args.delta, args.diameter));
        if let Ok(d) = diameter(&graph) {
            row["graph_diameter"] = json!(d);
        }
    }
    print!("{}", pretty(&row));
    Ok(EXIT_OK)
}
