use std::path::PathBuf;
use std::time::Instant;

use cayleynet::connectivity::{
    atom_size, atoms, edge_connectivity, identity_atom_structure, vertex_connectivity,
    VertexCertificate,
};
use cayleynet::metrics::{
    degree_stats, diameter_with_budget, girth, is_bipartite, moore_bound, Bipartiteness,
};
use cayleynet::symmetry::{
    automorphism_summary, normality_from_order, AutSummary, TransitivityReport,
};
use cayleynet::{CayleyGraph, Error, Graph, Guards};
use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};

use crate::output::{emit, graph_identity, pretty, read_graph, CliResult, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Kappa,
    Lambda,
    Diameter,
    Girth,
    Bipartite,
    Aut,
    Transitivity,
    Normality,
    Atoms,
    MooreGap,
}

impl Metric {
    fn key(self) -> &'static str {
        match self {
            Metric::Kappa => "kappa",
            Metric::Lambda => "lambda",
            Metric::Diameter => "diameter",
            Metric::Girth => "girth",
            Metric::Bipartite => "bipartite",
            Metric::Aut => "aut",
            Metric::Transitivity => "transitivity",
            Metric::Normality => "normality",
            Metric::Atoms => "atoms",
            Metric::MooreGap => "moore_gap",
        }
    }

    fn block(self) -> &'static str {
        match self {
            Metric::Kappa | Metric::Lambda | Metric::Atoms => "connectivity",
            Metric::Aut | Metric::Transitivity | Metric::Normality => "symmetry",
            _ => "metrics",
        }
    }
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Graph JSON file.
    graph: PathBuf,
    /// Analyses to run, comma separated.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "kappa,lambda,diameter,girth,bipartite"
    )]
    metrics: Vec<Metric>,
    /// Largest k checked for k-arc-transitivity.
    #[arg(long, default_value_t = 3)]
    k_cap: usize,
    /// Leave out the timing block, for byte-stable output.
    #[arg(long)]
    no_timing: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

struct Analysis<'a> {
    graph: &'a Graph,
    guards: &'a Guards,
    k_cap: usize,
    aut: Option<Result<AutSummary, Error>>,
    cayley: Option<Result<CayleyGraph, Error>>,
    warnings: Vec<String>,
}

/// A JSON number when it fits in u64, otherwise its decimal string.
fn big_value(n: &impl std::fmt::Display) -> Value {
    let text = n.to_string();
    match text.parse::<u64>() {
        Ok(v) => json!(v),
        Err(_) => json!(text),
    }
}

impl Analysis<'_> {
    fn aut(&mut self) -> Result<&AutSummary, Error> {
        if self.aut.is_none() {
            self.aut = Some(automorphism_summary(self.graph, self.guards));
        }
        self.aut
            .as_ref()
            .expect("just computed")
            .as_ref()
            .map_err(Clone::clone)
    }

    fn cayley(&mut self) -> Result<&CayleyGraph, Error> {
        if self.cayley.is_none() {
            self.cayley = Some(CayleyGraph::recover(self.graph, self.guards.closure));
        }
        self.cayley
            .as_ref()
            .expect("just computed")
            .as_ref()
            .map_err(Clone::clone)
    }

    fn run(&mut self, metric: Metric) -> Result<Value, Error> {
        let graph = self.graph;
        match metric {
            Metric::Kappa => {
                let (kappa, cert) = vertex_connectivity(graph);
                let delta = degree_stats(graph).min;
                let separator = match cert {
                    VertexCertificate::Complete => Value::Null,
                    VertexCertificate::Separator(s) => json!(s),
                };
                Ok(json!({
                    "value": kappa,
                    "min_degree": delta,
                    "separator": separator,
                    "fault_tolerance": kappa as i64 - 1,
                    "optimal": kappa == delta,
                }))
            }
            Metric::Lambda => {
                let (lambda, cut) = edge_connectivity(graph);
                Ok(json!({ "value": lambda, "cut": cut }))
            }
            Metric::Diameter => {
                let est = diameter_with_budget(graph, self.guards.diameter_work)?;
                if !est.exact {
                    self.warnings.push(format!(
                        "diameter is a lower bound from {} BFS sources",
                        est.sources
                    ));
                }
                Ok(json!({ "value": est.value, "exact": est.exact, "sources": est.sources }))
            }
            Metric::Girth => Ok(match girth(graph) {
                Some(g) => json!(g),
                None => json!("infinite"),
            }),
            Metric::Bipartite => Ok(match is_bipartite(graph) {
                Bipartiteness::Bipartite(_) => json!({ "value": true }),
                Bipartiteness::OddCycle(cycle) => json!({ "value": false, "odd_cycle": cycle }),
            }),
            Metric::Aut => {
                let aut = self.aut()?;
                let gens: Vec<Vec<usize>> = aut.generators().iter().map(|g| g.images()).collect();
                Ok(json!({
                    "order": big_value(&aut.order()),
                    "generators": gens,
                    "base": aut.base(),
                    "orbit_sizes": aut.orbit_sizes(),
                }))
            }
            Metric::Transitivity => {
                let (guards, k_cap) = (self.guards, self.k_cap);
                let aut = self.aut()?;
                Ok(serde_json::to_value(TransitivityReport::from_summary(
                    graph, aut, k_cap, guards,
                )?)
                .expect("report serializes"))
            }
            Metric::Normality => {
                let guards = self.guards;
                let aut_order = self.aut()?.order();
                let cayley = self.cayley()?;
                let verdict = normality_from_order(cayley, aut_order, guards)?;
                Ok(serde_json::to_value(verdict).expect("verdict serializes"))
            }
            Metric::Atoms => {
                let list = atoms(graph, self.guards.atom_vertices, self.guards.atom_kappa)?;
                let mut block = json!({
                    "count": list.len(),
                    "atom_size": atom_size(&list),
                    "atoms": list,
                });
                if let Ok(cayley) = self.cayley() {
                    let structure = identity_atom_structure(cayley, &list)?;
                    block["identity_atom"] =
                        serde_json::to_value(structure).expect("structure serializes");
                }
                Ok(block)
            }
            Metric::MooreGap => {
                let est = diameter_with_budget(graph, self.guards.diameter_work)?;
                if !est.exact {
                    return Err(Error::GuardExceeded {
                        what: "exact diameter work",
                        limit: self.guards.diameter_work as usize,
                    });
                }
                let max_degree = degree_stats(graph).max as u64;
                let bound = moore_bound(max_degree, est.value as u32);
                let n = graph.vertex_count() as u64;
                let gap = bound.clone() - n;
                Ok(json!({
                    "max_degree": max_degree,
                    "diameter": est.value,
                    "moore_bound": big_value(&bound),
                    "gap": big_value(&gap),
                    "fill_ratio": cayleynet::metrics::moore_fill_ratio(n, max_degree, est.value as u32),
                }))
            }
        }
    }
}

fn skip_reason(e: &Error) -> String {
    match e {
        Error::GuardExceeded { what, limit } => format!("guard: {what} exceeds {limit}"),
        other => other.to_string(),
    }
}

pub fn run(args: AnalyzeArgs, guards: &Guards) -> CliResult {
    let graph = read_graph(&args.graph)?;
    let mut analysis = Analysis {
        graph: &graph,
        guards,
        k_cap: args.k_cap,
        aut: None,
        cayley: None,
        warnings: Vec::new(),
    };
    let mut blocks: Map<String, Value> = Map::new();
    let mut skipped = Map::new();
    let mut timing = Map::new();
    let mut seen = Vec::new();
    for metric in args.metrics {
        if seen.contains(&metric) {
            continue;
        }
        seen.push(metric);
        let start = Instant::now();
        let result = analysis.run(metric);
        timing.insert(
            metric.key().into(),
            json!(start.elapsed().as_secs_f64() * 1e3),
        );
        match result {
            Ok(value) => {
                let block = blocks.entry(metric.block()).or_insert_with(|| json!({}));
                block[metric.key()] = value;
            }
            Err(e) => {
                skipped.insert(metric.key().into(), json!(skip_reason(&e)));
            }
        }
    }
    let degrees = degree_stats(&graph);
    let mut report = json!({
        "graph": graph_identity(&graph),
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "degree": { "min": degrees.min, "max": degrees.max, "regular": degrees.regular },
        "skipped": skipped,
        "warnings": analysis.warnings,
    });
    for (name, block) in blocks {
        report[name] = block;
    }
    if !args.no_timing {
        report["timing_ms"] = Value::Object(timing);
    }
    emit(&pretty(&report), args.output.as_ref())?;
    Ok(EXIT_OK)
}
