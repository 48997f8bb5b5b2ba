use std::path::PathBuf;

use cayleynet::codes::{cayley_from_matrix, BinaryMatrix};
use cayleynet::graph::{build_family, cayley_graph};
use cayleynet::io::{graph_to_dot, graph_to_json};
use cayleynet::transpositions::TranspositionSet;
use cayleynet::{FamilySpec, GeneratingSet, Graph, GroupSpec, Guards};
use clap::{ArgGroup, Args, ValueEnum};

use crate::output::{emit, read_text, CliResult, Failure, EXIT_OK};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("source")
        .required(true)
        .args(["family", "from_matrix", "from_transpositions", "cayley"])
))]
pub struct BuildArgs {
    /// Named family: hypercube, folded, augmented, star, bubble-sort,
    /// modified-bubble-sort, complete-transposition, alternating, circulant,
    /// torus, mesh, harary, petersen, complete, complete-bipartite, cycle, path.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Circulant jumps, comma separated.
    #[arg(long, value_delimiter = ',')]
    jumps: Vec<usize>,
    /// Torus cycle lengths or mesh path lengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Binary matrix file; its columns generate Z2^r.
    #[arg(long)]
    from_matrix: Option<PathBuf>,
    /// Transposition file: `n`, then one `i j` pair per line.
    #[arg(long)]
    from_transpositions: Option<PathBuf>,
    /// Group for an explicit Cayley graph: sym:N, perm:N, z2:R or zprod:a,b,...
    #[arg(long)]
    cayley: Option<String>,
    /// Generator of the --cayley group; repeat for each element.
    #[arg(long = "gen", requires = "cayley")]
    gens: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::usage(format!("family {family} needs --{flag}")))
}

fn family_spec(args: &BuildArgs, name: &str) -> Result<FamilySpec, Failure> {
    let n = || need(args.n, "n", name);
    let dims = || {
        if args.dims.is_empty() {
            Err(Failure::usage(format!("family {name} needs --dims")))
        } else {
            Ok(args.dims.clone())
        }
    };
    let spec = match name {
        "hypercube" => FamilySpec::Hypercube(n()?),
        "folded" => FamilySpec::Folded(n()?),
        "augmented" => FamilySpec::Augmented(n()?),
        "star" => FamilySpec::Star(n()?),
        "bubble-sort" => FamilySpec::BubbleSort(n()?),
        "modified-bubble-sort" => FamilySpec::ModifiedBubbleSort(n()?),
        "complete-transposition" => FamilySpec::CompleteTransposition(n()?),
        "alternating" => FamilySpec::AlternatingGroupGraph(n()?),
        "circulant" => {
            if args.jumps.is_empty() {
                return Err(Failure::usage("family circulant needs --jumps"));
            }
            FamilySpec::Circulant {
                n: n()?,
                jumps: args.jumps.clone(),
            }
        }
        "torus" => FamilySpec::Torus(dims()?),
        "mesh" => FamilySpec::Mesh(dims()?),
        "harary" => FamilySpec::Harary {
            k: need(args.k, "k", name)?,
            n: n()?,
        },
        "petersen" => FamilySpec::Petersen,
        "complete" => FamilySpec::Complete(n()?),
        "complete-bipartite" => {
            FamilySpec::CompleteBipartite(need(args.a, "a", name)?, need(args.b, "b", name)?)
        }
        "cycle" => FamilySpec::Cycle(n()?),
        "path" => FamilySpec::Path(n()?),
        other => return Err(Failure::usage(format!("unknown family `{other}`"))),
    };
    Ok(spec)
}

fn build_graph(args: &BuildArgs, guards: &Guards) -> Result<Graph, Failure> {
    if let Some(name) = &args.family {
        let spec = family_spec(args, name)?;
        return Ok(build_family(&spec, guards.closure)?);
    }
    if let Some(path) = &args.from_matrix {
        let matrix = BinaryMatrix::parse(&read_text(path)?)?;
        let built = cayley_from_matrix(&matrix, guards.closure)?;
        for w in &built.warnings {
            eprintln!("warning: {w}");
        }
        return Ok(built.cayley.into_graph());
    }
    if let Some(path) = &args.from_transpositions {
        let set = TranspositionSet::parse(&read_text(path)?)?;
        return Ok(set.cayley(guards.closure)?.into_graph());
    }
    let spec: GroupSpec = args
        .cayley
        .as_deref()
        .expect("source group is required")
        .parse()?;
    if args.gens.is_empty() {
        return Err(Failure::usage("--cayley needs at least one --gen"));
    }
    let texts: Vec<&str> = args.gens.iter().map(String::as_str).collect();
    let set = GeneratingSet::parse(spec, &texts)?;
    Ok(cayley_graph(&set, guards.closure)?.into_graph())
}

pub fn run(args: BuildArgs, guards: &Guards) -> CliResult {
    let graph = build_graph(&args, guards)?;
    let text = match args.format {
        GraphFormat::Json => {
            let mut t = graph_to_json(&graph);
            t.push('\n');
            t
        }
        GraphFormat::Dot => graph_to_dot(&graph),
    };
    emit(&text, args.output.as_ref())?;
    let counts = format!(
        "vertices: {}\nedges: {}",
        graph.vertex_count(),
        graph.edge_count()
    );
    if args.output.is_some() {
        println!("{counts}");
    } else {
        eprintln!("{counts}");
    }
    Ok(EXIT_OK)
}
