use std::path::PathBuf;

use cayleynet::containers::{
    embed_word_container, folded_container, hypercube_container, parse_word,
};
use cayleynet::graph::build_family;
use cayleynet::FamilySpec;
use clap::{Args, ValueEnum};
use serde_json::json;

use crate::build::GraphFormat;
use crate::output::{emit, pretty, CliResult, Failure, EXIT_OK, EXIT_VERIFICATION};

/// Largest n for which the host graph is materialized for verification.
const MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum WordFamily {
    Hypercube,
    Folded,
}

#[derive(Args)]
pub struct ContainerArgs {
    #[arg(long, value_enum)]
    family: WordFamily,
    #[arg(long)]
    n: usize,
    /// Source word, e.g. 000000.
    #[arg(long)]
    src: String,
    /// Target word.
    #[arg(long)]
    dst: String,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn run(args: ContainerArgs) -> CliResult {
    let n = args.n;
    if !(1..=MAX_N).contains(&n) {
        return Err(Failure::usage(format!("--n must be between 1 and {MAX_N}")));
    }
    let x = parse_word(&args.src, n)?;
    let y = parse_word(&args.dst, n)?;
    let (words, spec) = match args.family {
        WordFamily::Hypercube => (hypercube_container(n, x, y)?, FamilySpec::Hypercube(n)),
        WordFamily::Folded => (folded_container(n, x, y)?, FamilySpec::Folded(n)),
    };
    let graph = build_family(&spec, 1 << MAX_N)?;
    let container = embed_word_container(&words, &graph, n)?;
    let report = container.verify(&graph);
    let text = match args.format {
        GraphFormat::Dot => container.to_dot(&graph),
        GraphFormat::Json => {
            let paths: Vec<Vec<String>> = words
                .paths
                .iter()
                .map(|p| p.iter().map(|&w| format!("{w:0n$b}")).collect())
                .collect();
            pretty(&json!({
                "family": spec.name(),
                "n": n,
                "source": args.src,
                "target": args.dst,
                "paths": paths,
                "verification": report,
            }))
        }
    };
    emit(&text, args.output.as_ref())?;
    if report.valid {
        Ok(EXIT_OK)
    } else {
        eprintln!("container failed verification");
        Ok(EXIT_VERIFICATION)
    }
}
