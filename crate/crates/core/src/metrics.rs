//! Distance-based measures.

use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) const UNREACHED: usize = usize::MAX;

/// BFS distances from `source`; unreachable vertices get `UNREACHED`.
pub(crate) fn bfs_distances(graph: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; graph.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in graph.neighbors(u) {
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The layers X₀(v), X₁(v), … of the component containing `source`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistancePartition {
    pub source: usize,
    pub layers: Vec<Vec<usize>>,
    pub unreachable: Vec<usize>,
}

impl DistancePartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }
}

pub fn distance_layers(graph: &Graph, source: usize) -> DistancePartition {
    let dist = bfs_distances(graph, source);
    let depth = dist
        .iter()
        .filter(|&&d| d != UNREACHED)
        .max()
        .copied()
        .unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    let mut unreachable = Vec::new();
    for (v, &d) in dist.iter().enumerate() {
        if d == UNREACHED {
            unreachable.push(v);
        } else {
            layers[d].push(v);
        }
    }
    DistancePartition {
        source,
        layers,
        unreachable,
    }
}

/// Exact diameter by BFS from every vertex.
pub fn diameter(graph: &Graph) -> Result<usize> {
    let est = diameter_with_budget(graph, u64::MAX)?;
    Ok(est.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterEstimate {
    pub value: usize,
    /// False when only a sample of sources was searched; `value` is then a
    /// lower bound.
    pub exact: bool,
    pub sources: usize,
}

/// Diameter with a work budget measured in `Σ (|V| + |E|)` over BFS sources.
/// Over budget, evenly spaced sources are searched and the result is a lower
/// bound flagged `exact = false`.
pub fn diameter_with_budget(graph: &Graph, budget: u64) -> Result<DiameterEstimate> {
    let n = graph.vertex_count();
    if n == 0 {
        return Ok(DiameterEstimate {
            value: 0,
            exact: true,
            sources: 0,
        });
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let per_source = (n + graph.edge_count()) as u64;
    let affordable = (budget / per_source.max(1)).max(1);
    let (sources, exact): (Vec<usize>, bool) = if affordable >= n as u64 {
        ((0..n).collect(), true)
    } else {
        let k = affordable as usize;
        ((0..k).map(|i| i * n / k).collect(), false)
    };
    let value = sources
        .iter()
        .map(|&s| bfs_distances(graph, s).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    Ok(DiameterEstimate {
        value,
        exact,
        sources: sources.len(),
    })
}

/// Length of a shortest cycle; `None` for forests.
pub fn girth(graph: &Graph) -> Option<usize> {
    let n = graph.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if best == 3 {
            break;
        }
        let mut touched = vec![root];
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in graph.neighbors(u) {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        for v in touched {
            dist[v] = UNREACHED;
            parent[v] = UNREACHED;
        }
    }
    (best != usize::MAX).then_some(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub regular: bool,
}

pub fn degree_stats(graph: &Graph) -> DegreeStats {
    let degrees = (0..graph.vertex_count()).map(|v| graph.degree(v));
    let min = degrees.clone().min().unwrap_or(0);
    let max = degrees.max().unwrap_or(0);
    DegreeStats {
        min,
        max,
        regular: min == max,
    }
}

/// 1 + Δ·Σ_{i<D} (Δ−1)ⁱ, exact. Gives 2 for Δ = 1 and 1 for D = 0.
pub fn moore_bound(max_degree: u64, diameter: u32) -> BigUint {
    let mut sum = BigUint::from(0u32);
    let mut power = BigUint::from(1u32);
    let base = BigUint::from(max_degree.saturating_sub(1));
    for _ in 0..diameter {
        sum += &power;
        power *= &base;
    }
    BigUint::from(1u32) + BigUint::from(max_degree) * sum
}

/// |V| / Moore(Δ, D).
pub fn moore_fill_ratio(vertices: u64, max_degree: u64, diameter: u32) -> f64 {
    let bound = moore_bound(max_degree, diameter);
    let digits = bound.to_u64_digits();
    let bound_f = digits.iter().rev().fold(0.0f64, |acc, &d| {
        acc * 18_446_744_073_709_551_616.0 + d as f64
    });
    vertices as f64 / bound_f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bipartiteness {
    /// Colour (0 or 1) of every vertex.
    Bipartite(Vec<u8>),
    /// Vertices of an odd cycle, in cyclic order.
    OddCycle(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite(_))
    }
}

pub fn is_bipartite(graph: &Graph) -> Bipartiteness {
    let n = graph.vertex_count();
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![UNREACHED; n];
    for root in 0..n {
        if dist[root] != UNREACHED {
            continue;
        }
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if dist[w] == dist[u] {
                    return Bipartiteness::OddCycle(odd_cycle(&parent, u, w));
                }
            }
        }
    }
    Bipartiteness::Bipartite(dist.iter().map(|d| (d % 2) as u8).collect())
}

/// Closes the BFS-tree paths from `u` and `w` (same depth) at their lowest
/// common ancestor.
fn odd_cycle(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (vec![u], vec![w]);
    let (mut x, mut y) = (u, w);
    while x != y {
        x = parent[x];
        y = parent[y];
        a.push(x);
        b.push(y);
    }
    b.pop();
    b.reverse();
    a.extend(b);
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, cartesian_product, cayley_graph, FamilySpec};
    use crate::groups::{GeneratingSet, GroupElement, GroupSpec};

    fn family(spec: FamilySpec) -> Graph {
        build_family(&spec, 1_000_000).unwrap()
    }

    #[test]
    fn layer_sizes() {
        let q3 = family(FamilySpec::Hypercube(3));
        assert_eq!(distance_layers(&q3, 0).sizes(), vec![1, 3, 3, 1]);
        let k6 = family(FamilySpec::Complete(6));
        assert_eq!(distance_layers(&k6, 4).sizes(), vec![1, 5]);
        let p = family(FamilySpec::Petersen);
        for v in 0..10 {
            assert_eq!(distance_layers(&p, v).sizes(), vec![1, 3, 6]);
        }
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(distance_layers(&two, 0).unreachable, vec![2, 3]);
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&family(FamilySpec::Star(6))).unwrap(), 7);
        for n in 1..=6 {
            assert_eq!(diameter(&family(FamilySpec::Hypercube(n))).unwrap(), n);
        }
        assert_eq!(
            diameter(&family(FamilySpec::Torus(vec![6, 5, 6]))).unwrap(),
            8
        );
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(diameter(&two), Err(Error::Disconnected));
    }

    #[test]
    fn sampled_diameter_is_flagged() {
        let q6 = family(FamilySpec::Hypercube(6));
        let est = diameter_with_budget(&q6, 5 * (64 + 192)).unwrap();
        assert!(!est.exact);
        assert_eq!(est.sources, 5);
        assert!(est.value <= 6);
        assert!(diameter_with_budget(&q6, u64::MAX).unwrap().exact);
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&family(FamilySpec::Petersen)), Some(5));
        assert_eq!(girth(&family(FamilySpec::Path(6))), None);
        assert_eq!(girth(&family(FamilySpec::Complete(4))), Some(3));
        assert_eq!(girth(&family(FamilySpec::Cycle(9))), Some(9));
        assert_eq!(girth(&family(FamilySpec::Hypercube(4))), Some(4));
    }

    /// Every S ⊆ Z₂⁴ \ {0} with |S| ≥ 3 gives girth at most 4, and girth 3
    /// exactly when S holds some a, b and a ⊕ b.
    #[test]
    fn binary_cayley_girth_at_most_four() {
        let nonzero: Vec<u64> = (1..16).collect();
        let mut checked = 0;
        for mask in 0u32..(1 << 15) {
            if mask.count_ones() < 3 {
                continue;
            }
            let gens: Vec<GroupElement> = nonzero
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &b)| GroupElement::word(b, 4).unwrap())
                .collect();
            let set = GeneratingSet::new(GroupSpec::Binary(4), gens).unwrap();
            let g = cayley_graph(&set, 100).unwrap();
            let words: Vec<u64> = nonzero
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &b)| b)
                .collect();
            let has_sum_triple = words
                .iter()
                .any(|&a| words.iter().any(|&b| a != b && words.contains(&(a ^ b))));
            let expected = if has_sum_triple { 3 } else { 4 };
            assert_eq!(girth(g.graph()), Some(expected), "mask {mask:#x}");
            checked += 1;
        }
        assert_eq!(checked, (1 << 15) - 1 - 15 - 105);
    }

    #[test]
    fn degree_statistics() {
        assert_eq!(
            degree_stats(&family(FamilySpec::Folded(4))),
            DegreeStats {
                min: 5,
                max: 5,
                regular: true
            }
        );
        assert_eq!(
            degree_stats(&family(FamilySpec::CompleteBipartite(3, 4))),
            DegreeStats {
                min: 3,
                max: 4,
                regular: false
            }
        );
        assert_eq!(
            degree_stats(&family(FamilySpec::Augmented(4))),
            DegreeStats {
                min: 7,
                max: 7,
                regular: true
            }
        );
    }

    #[test]
    fn moore_bounds() {
        assert_eq!(moore_bound(7, 10), BigUint::from(84_652_646u64));
        for d in 1..20 {
            assert_eq!(moore_bound(2, d), BigUint::from(2 * d + 1));
        }
        assert_eq!(moore_bound(3, 2), BigUint::from(10u32));
        assert_eq!(moore_bound(1, 5), BigUint::from(2u32));
        assert_eq!(moore_bound(9, 0), BigUint::from(1u32));
        assert!(moore_bound(1000, 50) > BigUint::from(u128::MAX));
        assert!((moore_fill_ratio(10, 3, 2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bipartite_checks() {
        assert!(is_bipartite(&family(FamilySpec::Star(4))).is_bipartite());
        assert!(is_bipartite(&family(FamilySpec::Hypercube(4))).is_bipartite());
        let p = family(FamilySpec::Petersen);
        match is_bipartite(&p) {
            Bipartiteness::OddCycle(cycle) => {
                assert_eq!(cycle.len(), 5);
                for i in 0..cycle.len() {
                    assert!(p.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        if let Bipartiteness::Bipartite(colors) = is_bipartite(&family(FamilySpec::Hypercube(3))) {
            let q3 = family(FamilySpec::Hypercube(3));
            assert!(q3.edges().all(|(u, v)| colors[u] != colors[v]));
        }
    }

    #[test]
    fn product_diameter_adds() {
        let shapes = [
            FamilySpec::Cycle(5),
            FamilySpec::Path(4),
            FamilySpec::Petersen,
            FamilySpec::Hypercube(3),
            FamilySpec::Cycle(6),
        ];
        for a in &shapes {
            for b in &shapes {
                let (x, y) = (family(a.clone()), family(b.clone()));
                let p = cartesian_product(&x, &y);
                assert_eq!(
                    diameter(&p).unwrap(),
                    diameter(&x).unwrap() + diameter(&y).unwrap()
                );
            }
        }
    }

    #[test]
    fn moore_bound_holds_on_families() {
        for spec in [
            FamilySpec::Petersen,
            FamilySpec::Hypercube(5),
            FamilySpec::Star(5),
            FamilySpec::Folded(5),
            FamilySpec::Torus(vec![5, 6]),
            FamilySpec::Mesh(vec![3, 4]),
            FamilySpec::Complete(7),
        ] {
            let g = family(spec);
            let bound = moore_bound(degree_stats(&g).max as u64, diameter(&g).unwrap() as u32);
            assert!(BigUint::from(g.vertex_count()) <= bound);
        }
    }
}
