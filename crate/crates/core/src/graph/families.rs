use std::fmt;

use serde_json::json;

use super::{cartesian_product, cayley_graph, CayleyGraph, FamilyMeta, Graph};
use crate::error::{Error, Result};
use crate::groups::{GeneratingSet, GroupElement, GroupSpec};

/// The named topology families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Hypercube(usize),
    Folded(usize),
    Augmented(usize),
    Star(usize),
    BubbleSort(usize),
    ModifiedBubbleSort(usize),
    CompleteTransposition(usize),
    AlternatingGroupGraph(usize),
    Circulant { n: usize, jumps: Vec<usize> },
    Torus(Vec<usize>),
    Mesh(Vec<usize>),
    Harary { k: usize, n: usize },
    Petersen,
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    Path(usize),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Hypercube(_) => "hypercube",
            FamilySpec::Folded(_) => "folded",
            FamilySpec::Augmented(_) => "augmented",
            FamilySpec::Star(_) => "star",
            FamilySpec::BubbleSort(_) => "bubble-sort",
            FamilySpec::ModifiedBubbleSort(_) => "modified-bubble-sort",
            FamilySpec::CompleteTransposition(_) => "complete-transposition",
            FamilySpec::AlternatingGroupGraph(_) => "alternating",
            FamilySpec::Circulant { .. } => "circulant",
            FamilySpec::Torus(_) => "torus",
            FamilySpec::Mesh(_) => "mesh",
            FamilySpec::Harary { .. } => "harary",
            FamilySpec::Petersen => "petersen",
            FamilySpec::Complete(_) => "complete",
            FamilySpec::CompleteBipartite(..) => "complete-bipartite",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Path(_) => "path",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidParameter(format!("{}: {why}", self)));
        match self {
            FamilySpec::Hypercube(n) if !(1..=32).contains(n) => bad("needs 1 ≤ n ≤ 32"),
            FamilySpec::Folded(n) if !(2..=32).contains(n) => bad("needs 2 ≤ n ≤ 32"),
            FamilySpec::Augmented(n) if !(4..=32).contains(n) => bad("needs 4 ≤ n ≤ 32"),
            FamilySpec::Star(n)
            | FamilySpec::BubbleSort(n)
            | FamilySpec::CompleteTransposition(n)
                if !(2..=20).contains(n) =>
            {
                bad("needs 2 ≤ n ≤ 20")
            }
            FamilySpec::ModifiedBubbleSort(n) | FamilySpec::AlternatingGroupGraph(n)
                if !(3..=20).contains(n) =>
            {
                bad("needs 3 ≤ n ≤ 20")
            }
            FamilySpec::Circulant { n, jumps } => {
                if *n < 2 || jumps.is_empty() || jumps.iter().any(|&a| a % n == 0) {
                    bad("needs n ≥ 2 and nonzero jumps")
                } else {
                    Ok(())
                }
            }
            FamilySpec::Torus(m) if m.is_empty() || m.iter().any(|&r| r < 3) => {
                bad("needs at least one cycle length, each ≥ 3")
            }
            FamilySpec::Mesh(d) if d.is_empty() || d.iter().any(|&r| r < 2) => {
                bad("needs at least one dimension, each ≥ 2")
            }
            FamilySpec::Harary { k, n } if !(*k > 1 && k < n && k % 2 == 0) => {
                bad("needs even k with 1 < k < n")
            }
            FamilySpec::Complete(n) if *n == 0 => bad("needs n ≥ 1"),
            FamilySpec::CompleteBipartite(a, b) if *a == 0 || *b == 0 => bad("needs a, b ≥ 1"),
            FamilySpec::Cycle(n) if *n < 3 => bad("needs n ≥ 3"),
            FamilySpec::Path(n) if *n == 0 => bad("needs n ≥ 1"),
            _ => Ok(()),
        }
    }

    fn meta(&self) -> FamilyMeta {
        let meta = FamilyMeta::new(self.name());
        match self {
            FamilySpec::Hypercube(n)
            | FamilySpec::Folded(n)
            | FamilySpec::Augmented(n)
            | FamilySpec::Star(n)
            | FamilySpec::BubbleSort(n)
            | FamilySpec::ModifiedBubbleSort(n)
            | FamilySpec::CompleteTransposition(n)
            | FamilySpec::AlternatingGroupGraph(n)
            | FamilySpec::Complete(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Path(n) => meta.with("n", *n),
            FamilySpec::Circulant { n, jumps } => meta.with("n", *n).with("jumps", json!(jumps)),
            FamilySpec::Torus(m) => meta.with("moduli", json!(m)),
            FamilySpec::Mesh(d) => meta.with("dims", json!(d)),
            FamilySpec::Harary { k, n } => meta.with("k", *k).with("n", *n),
            FamilySpec::CompleteBipartite(a, b) => meta.with("a", *a).with("b", *b),
            FamilySpec::Petersen => meta,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let meta = self.meta();
        write!(f, "{}", meta.family)?;
        if !meta.params.is_empty() {
            let parts: Vec<String> = meta
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

fn words(len: usize, bits: impl IntoIterator<Item = u64>) -> Result<Vec<GroupElement>> {
    bits.into_iter()
        .map(|b| GroupElement::word(b, len))
        .collect()
}

fn transpositions(
    n: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Vec<GroupElement>> {
    pairs
        .into_iter()
        .map(|(i, j)| GroupElement::transposition(n, i, j))
        .collect()
}

fn circulant_set(n: usize, jumps: impl IntoIterator<Item = usize>) -> Result<GeneratingSet> {
    let mut residues = Vec::new();
    for a in jumps {
        for r in [a % n, (n - a % n) % n] {
            if r != 0 && !residues.contains(&r) {
                residues.push(r);
            }
        }
    }
    let moduli = vec![n as u32];
    let gens = residues
        .into_iter()
        .map(|r| GroupElement::tuple(vec![r as u32], moduli.clone()))
        .collect::<Result<_>>()?;
    GeneratingSet::new(GroupSpec::CyclicProduct(moduli), gens)
}

/// The generating set of a Cayley family, or `None` for families built
/// combinatorially.
///
/// Unit vector `e_i` has its 1 in coordinate `i` counted from the left.
pub fn cayley_family_generators(spec: &FamilySpec) -> Option<Result<GeneratingSet>> {
    if let Err(e) = spec.validate() {
        return Some(Err(e));
    }
    let units = |n: usize| (1..=n).map(move |i| 1u64 << (n - i));
    let set = match spec {
        FamilySpec::Hypercube(n) => {
            words(*n, units(*n)).and_then(|g| GeneratingSet::new(GroupSpec::Binary(*n), g))
        }
        FamilySpec::Folded(n) => {
            let all = if *n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            words(*n, units(*n).chain([all]))
                .and_then(|g| GeneratingSet::new(GroupSpec::Binary(*n), g))
        }
        FamilySpec::Augmented(n) => {
            // i-th extra generator: the last i+1 coordinates set
            let extra = (1..*n).map(|i| (1u64 << (i + 1)) - 1);
            words(*n, units(*n).chain(extra))
                .and_then(|g| GeneratingSet::new(GroupSpec::Binary(*n), g))
        }
        FamilySpec::Star(n) => transpositions(*n, (2..=*n).map(|i| (1, i)))
            .and_then(|g| GeneratingSet::new(GroupSpec::Symmetric(*n), g)),
        FamilySpec::BubbleSort(n) => transpositions(*n, (1..*n).map(|i| (i, i + 1)))
            .and_then(|g| GeneratingSet::new(GroupSpec::Symmetric(*n), g)),
        FamilySpec::ModifiedBubbleSort(n) => {
            transpositions(*n, (1..*n).map(|i| (i, i + 1)).chain([(1, *n)]))
                .and_then(|g| GeneratingSet::new(GroupSpec::Symmetric(*n), g))
        }
        FamilySpec::CompleteTransposition(n) => {
            let n = *n;
            transpositions(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
                .and_then(|g| GeneratingSet::new(GroupSpec::Symmetric(n), g))
        }
        FamilySpec::AlternatingGroupGraph(n) => {
            let n = *n;
            let mut gens = Vec::new();
            for i in 3..=n {
                let mut images: Vec<u8> = (0..n as u8).collect();
                // s_i = (1,2,i) and its inverse (1,i,2)
                images[0] = 1;
                images[1] = (i - 1) as u8;
                images[i - 1] = 0;
                let s = GroupElement::Perm(images);
                gens.push(crate::groups::inverse(&s));
                gens.insert(gens.len() - 1, s);
            }
            GeneratingSet::new(GroupSpec::PermSubgroup(n), gens)
        }
        FamilySpec::Circulant { n, jumps } => circulant_set(*n, jumps.iter().copied()),
        FamilySpec::Harary { k, n } => circulant_set(*n, 1..=k / 2),
        FamilySpec::Torus(moduli) => {
            let m: Vec<u32> = moduli.iter().map(|&r| r as u32).collect();
            let mut gens = Vec::new();
            for i in 0..m.len() {
                for delta in [1, m[i] - 1] {
                    let mut residues = vec![0; m.len()];
                    residues[i] = delta;
                    gens.push(GroupElement::Tuple {
                        residues,
                        moduli: m.clone(),
                    });
                }
            }
            GeneratingSet::new(GroupSpec::CyclicProduct(m), gens)
        }
        _ => return None,
    };
    Some(set)
}

fn cycle(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
        .with_vertex_labels((0..n).map(|i| i.to_string()).collect())
}

fn path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?
        .with_vertex_labels((0..n).map(|i| i.to_string()).collect())
}

fn product_of(factors: Vec<Graph>) -> Graph {
    let mut iter = factors.into_iter();
    let first = iter.next().expect("at least one factor");
    iter.fold(first, |acc, g| cartesian_product(&acc, &g))
}

/// Builds a named family. Cayley families go through [`cayley_graph`] and
/// keep their vertex and edge labels.
pub fn build_family(spec: &FamilySpec, closure_guard: usize) -> Result<Graph> {
    spec.validate()?;
    let meta = spec.meta();
    let graph = match spec {
        FamilySpec::Torus(moduli) => {
            let factors = moduli
                .iter()
                .map(|&r| cycle(r))
                .collect::<Result<Vec<_>>>()?;
            let set = cayley_family_generators(spec).expect("torus is Cayley")?;
            let mut meta = meta;
            meta.params.extend(super::cayley_meta(&set).params);
            return Ok(product_of(factors).with_meta(meta));
        }
        FamilySpec::Mesh(dims) => product_of(dims.iter().map(|&r| path(r)).collect::<Result<_>>()?),
        FamilySpec::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
            Graph::from_edges(10, outer.chain(spokes).chain(inner))?
        }
        FamilySpec::Complete(n) => {
            let n = *n;
            Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))?
        }
        FamilySpec::CompleteBipartite(a, b) => {
            let (a, b) = (*a, *b);
            Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))?
        }
        FamilySpec::Cycle(n) => cycle(*n)?,
        FamilySpec::Path(n) => path(*n)?,
        _ => {
            let cayley = build_cayley_family(spec, closure_guard)?;
            return Ok(cayley.into_graph());
        }
    };
    Ok(graph.with_meta(meta))
}

/// Builds a Cayley family keeping its group structure.
pub fn build_cayley_family(spec: &FamilySpec, closure_guard: usize) -> Result<CayleyGraph> {
    if let FamilySpec::Torus(_) = spec {
        return CayleyGraph::recover(&build_family(spec, closure_guard)?, closure_guard);
    }
    let set = cayley_family_generators(spec)
        .ok_or_else(|| Error::Unsupported(format!("{spec} is not built as a Cayley graph")))??;
    let cayley = cayley_graph(&set, closure_guard)?;
    let mut meta = spec.meta();
    meta.params.extend(super::cayley_meta(&set).params);
    Ok(cayley.map_graph(|g| g.with_meta(meta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complement, line_graph};

    fn regular_degree(g: &Graph) -> Option<usize> {
        let d = g.degree(0);
        (0..g.vertex_count()).all(|v| g.degree(v) == d).then_some(d)
    }

    #[test]
    fn family_counts() {
        let cases: Vec<(FamilySpec, usize, usize)> = vec![
            (FamilySpec::Hypercube(5), 32, 5),
            (FamilySpec::Folded(4), 16, 5),
            (FamilySpec::Augmented(4), 16, 7),
            (FamilySpec::Star(5), 120, 4),
            (FamilySpec::BubbleSort(4), 24, 3),
            (FamilySpec::ModifiedBubbleSort(4), 24, 4),
            (FamilySpec::CompleteTransposition(4), 24, 6),
            (FamilySpec::AlternatingGroupGraph(4), 12, 4),
            (FamilySpec::AlternatingGroupGraph(5), 60, 6),
            (
                FamilySpec::Circulant {
                    n: 8,
                    jumps: vec![1, 4],
                },
                8,
                3,
            ),
            (FamilySpec::Torus(vec![4, 5]), 20, 4),
            (FamilySpec::Harary { k: 4, n: 10 }, 10, 4),
            (FamilySpec::Petersen, 10, 3),
            (FamilySpec::Complete(5), 5, 4),
            (FamilySpec::CompleteBipartite(3, 3), 6, 3),
            (FamilySpec::Cycle(7), 7, 2),
        ];
        for (spec, n, d) in cases {
            let g = build_family(&spec, 1_000_000).unwrap();
            g.validate().unwrap();
            assert_eq!(g.vertex_count(), n, "{spec}");
            assert_eq!(regular_degree(&g), Some(d), "{spec}");
            assert_eq!(g.family_meta().unwrap().family, spec.name());
        }
        let mesh = build_family(&FamilySpec::Mesh(vec![3, 4]), 100).unwrap();
        assert_eq!((mesh.vertex_count(), mesh.edge_count()), (12, 17));
        let path = build_family(&FamilySpec::Path(4), 100).unwrap();
        assert_eq!(path.edge_count(), 3);
    }

    #[test]
    fn star8_counts() {
        let g = build_family(&FamilySpec::Star(8), 1_000_000).unwrap();
        assert_eq!(g.vertex_count(), 40_320);
        assert_eq!(regular_degree(&g), Some(7));
    }

    #[test]
    fn augmented_generators_match_listing() {
        let set = cayley_family_generators(&FamilySpec::Augmented(5))
            .unwrap()
            .unwrap();
        let texts: Vec<String> = set.elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(
            texts,
            ["10000", "01000", "00100", "00010", "00001", "00011", "00111", "01111", "11111"]
        );
    }

    #[test]
    fn alternating_generators() {
        let set = cayley_family_generators(&FamilySpec::AlternatingGroupGraph(4))
            .unwrap()
            .unwrap();
        let texts: Vec<String> = set.elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(texts, ["(1,2,3)", "(1,3,2)", "(1,2,4)", "(1,4,2)"]);
    }

    #[test]
    fn petersen_is_kneser() {
        let p = build_family(&FamilySpec::Petersen, 10).unwrap();
        let k =
            complement(&line_graph(&build_family(&FamilySpec::Complete(5), 10).unwrap()).unwrap());
        assert_eq!(p.edge_count(), k.edge_count());
    }

    #[test]
    fn circulant_diagonal_jump_counts_once() {
        let g = build_family(
            &FamilySpec::Circulant {
                n: 6,
                jumps: vec![1, 3],
            },
            100,
        )
        .unwrap();
        assert_eq!(regular_degree(&g), Some(3));
    }

    #[test]
    fn invalid_parameters() {
        for spec in [
            FamilySpec::Folded(1),
            FamilySpec::Augmented(3),
            FamilySpec::AlternatingGroupGraph(2),
            FamilySpec::Harary { k: 3, n: 10 },
            FamilySpec::Harary { k: 10, n: 10 },
            FamilySpec::Circulant {
                n: 6,
                jumps: vec![6],
            },
            FamilySpec::Torus(vec![2, 4]),
            FamilySpec::Cycle(2),
        ] {
            assert!(build_family(&spec, 100).is_err(), "{spec}");
        }
        assert!(matches!(
            build_family(&FamilySpec::Star(8), 1000),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn torus_keeps_group_structure() {
        let c = build_cayley_family(&FamilySpec::Torus(vec![3, 4]), 100).unwrap();
        assert_eq!(c.graph().label(5), "1,1");
        assert_eq!(c.elements()[5].to_string(), "1,1");
    }
}
