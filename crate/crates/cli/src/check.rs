use cayleynet::codes::{cayley_from_matrix, column_sum_condition, rank_f2, BinaryMatrix};
use cayleynet::connectivity::{edge_connectivity, max_independent_paths, vertex_connectivity};
use cayleynet::containers::{embed_word_container, folded_container, hypercube_container};
use cayleynet::graph::{build_family, complement};
use cayleynet::metrics::degree_stats;
use cayleynet::symmetry::automorphism_summary;
use cayleynet::{FamilySpec, Graph, Guards};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map};

use crate::output::{pretty, CliResult, Failure, EXIT_OK, EXIT_VERIFICATION};

#[derive(Args)]
pub struct CheckArgs {
    /// Seed for the random inputs; equal seeds give equal reports.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random inputs per property.
    #[arg(long, default_value_t = 50)]
    cases: usize,
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.2..0.8);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

/// Smallest vertex set avoiding `s`, `t` whose removal separates them.
fn brute_separator(g: &Graph, s: usize, t: usize) -> usize {
    let others: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| v != s && v != t)
        .collect();
    let mut best = others.len();
    for mask in 0u32..1 << others.len() {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed: Vec<usize> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let mut seen = vec![false; g.vertex_count()];
        for &v in &removed {
            seen[v] = true;
        }
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if !seen[t] {
            best = size;
        }
    }
    best
}

struct Tally {
    checked: usize,
    violations: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

fn whitney(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for case in 0..cases {
        let n = rng.gen_range(4..=12);
        let g = random_graph(rng, n);
        let kappa = vertex_connectivity(&g).0;
        let lambda = edge_connectivity(&g).0;
        let delta = degree_stats(&g).min;
        t.record(kappa <= lambda && lambda <= delta, || {
            format!("case {case}: kappa {kappa}, lambda {lambda}, delta {delta}")
        });
    }
    t
}

fn menger(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    let mut case = 0;
    while t.checked < cases {
        case += 1;
        let n = rng.gen_range(4..=9);
        let g = random_graph(rng, n);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|s| (s + 1..n).map(move |u| (s, u)))
            .filter(|&(s, u)| !g.has_edge(s, u))
            .collect();
        if !g.is_connected() || pairs.is_empty() {
            continue;
        }
        let (s, u) = pairs[rng.gen_range(0..pairs.len())];
        let paths = max_independent_paths(&g, s, u).expect("valid endpoints");
        let valid = paths.verify(&g).valid;
        let expected = brute_separator(&g, s, u);
        t.record(valid && paths.width() == expected, || {
            format!(
                "case {case}: {} paths between {s} and {u}, separator {expected}",
                paths.width()
            )
        });
    }
    t
}

fn containers(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    let graphs: Vec<(bool, usize, Graph)> = (4..=7)
        .flat_map(|n| [(false, n), (true, n)])
        .map(|(folded, n)| {
            let spec = if folded {
                FamilySpec::Folded(n)
            } else {
                FamilySpec::Hypercube(n)
            };
            (
                folded,
                n,
                build_family(&spec, 1 << 10).expect("small family"),
            )
        })
        .collect();
    for _ in 0..cases {
        let (folded, n, g) = &graphs[rng.gen_range(0..graphs.len())];
        let x = rng.gen_range(0..1u64 << n);
        let mut y = rng.gen_range(0..1u64 << n);
        if y == x {
            y ^= 1;
        }
        let words = if *folded {
            folded_container(*n, x, y)
        } else {
            hypercube_container(*n, x, y)
        };
        let c = words.and_then(|w| embed_word_container(&w, g, *n));
        let want = n + usize::from(*folded);
        let ok = c.as_ref().is_ok_and(|c| {
            let r = c.verify(g);
            r.valid && r.width == want
        });
        t.record(ok, || {
            format!(
                "{} n={n} {x:0n$b} -> {y:0n$b}",
                if *folded { "folded" } else { "hypercube" }
            )
        });
    }
    t
}

fn aut_complement(rng: &mut ChaCha8Rng, cases: usize, guards: &Guards) -> Tally {
    let mut t = Tally::new();
    for case in 0..cases {
        let n = rng.gen_range(4..=9);
        let g = random_graph(rng, n);
        let a = automorphism_summary(&g, guards).map(|a| a.order());
        let b = automorphism_summary(&complement(&g), guards).map(|a| a.order());
        t.record(a.is_ok() && a == b, || {
            format!("case {case}: {a:?} vs {b:?}")
        });
    }
    t
}

fn column_sums(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    let mut case = 0;
    while t.checked < cases {
        case += 1;
        let r = rng.gen_range(2..=6);
        let n = rng.gen_range(r..=10);
        let cols: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1u64 << r)).collect();
        let bits = (0..r)
            .flat_map(|i| cols.iter().map(move |c| c >> (r - 1 - i) & 1 == 1))
            .collect();
        let m = BinaryMatrix::new(r, n, bits).expect("sized");
        if rank_f2(&m) < r || !column_sum_condition(&m).holds {
            continue;
        }
        let g = cayley_from_matrix(&m, 1 << 10)
            .expect("valid matrix")
            .cayley
            .into_graph();
        let kappa = vertex_connectivity(&g).0;
        let delta = degree_stats(&g).min;
        t.record(kappa == delta, || {
            format!("case {case}: kappa {kappa} < delta {delta}\n{m}")
        });
    }
    t
}

pub fn run(args: CheckArgs, guards: &Guards) -> CliResult {
    if args.cases == 0 {
        return Err(Failure::usage("--cases must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let results = [
        ("whitney", whitney(&mut rng, args.cases)),
        ("menger", menger(&mut rng, args.cases)),
        ("containers", containers(&mut rng, args.cases)),
        (
            "aut_complement",
            aut_complement(&mut rng, args.cases, guards),
        ),
        ("column_sum", column_sums(&mut rng, args.cases)),
    ];
    let mut properties = Map::new();
    let mut failed = false;
    for (name, tally) in results {
        failed |= !tally.violations.is_empty();
        properties.insert(
            name.into(),
            json!({ "checked": tally.checked, "violations": tally.violations.len(), "examples": tally.violations }),
        );
    }
    print!(
        "{}",
        pretty(&json!({ "seed": args.seed, "cases": args.cases, "properties": properties }))
    );
    Ok(if failed { EXIT_VERIFICATION } else { EXIT_OK })
}
