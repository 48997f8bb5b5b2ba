//! Vertex and edge connectivity, Menger path systems and atoms.
//!
//! Vertex problems run unit-capacity augmenting paths on the split digraph:
//! vertex `v` becomes `v_in → v_out` with capacity 1, and every edge `uw`
//! becomes `u_out → w_in` and `w_out → u_in` with unbounded capacity.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::containers::Container;
use crate::error::{Error, Result};
use crate::graph::{CayleyGraph, Graph};
use crate::groups::{compose, GroupElement};
use crate::metrics::degree_stats;

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: u32,
    flow: u32,
}

/// Residual network with paired arcs (`i ^ 1` is the reverse of `i`).
#[derive(Clone, Debug)]
struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            flow: 0,
        });
    }

    fn residual(&self, a: usize) -> u32 {
        let arc = &self.arcs[a];
        if a % 2 == 0 {
            arc.cap - arc.flow
        } else {
            self.arcs[a ^ 1].flow
        }
    }

    fn push(&mut self, a: usize) {
        if a % 2 == 0 {
            self.arcs[a].flow += 1;
        } else {
            self.arcs[a ^ 1].flow -= 1;
        }
    }

    /// Augments unit flow from `s` to `t` until no path remains or `limit`
    /// units have been sent.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut value = 0;
        let mut via = vec![usize::MAX; self.out.len()];
        while value < limit {
            via.iter_mut().for_each(|x| *x = usize::MAX);
            via[s] = usize::MAX - 1;
            let mut queue = VecDeque::from([s]);
            'search: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let w = self.arcs[a].to;
                    if via[w] == usize::MAX && self.residual(a) > 0 {
                        via[w] = a;
                        if w == t {
                            break 'search;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if via[t] == usize::MAX {
                break;
            }
            let mut w = t;
            while w != s {
                let a = via[w];
                self.push(a);
                w = self.arcs[a ^ 1].to;
            }
            value += 1;
        }
        value
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let w = self.arcs[a].to;
                if !seen[w] && self.residual(a) > 0 {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

fn v_in(v: usize) -> usize {
    2 * v
}

fn v_out(v: usize) -> usize {
    2 * v + 1
}

/// Split network for s–t vertex problems, optionally without the edge `skip`.
fn split_network(graph: &Graph, s: usize, t: usize, skip: Option<(usize, usize)>) -> FlowNetwork {
    let n = graph.vertex_count();
    let big = n as u32 + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(v_in(v), v_out(v), cap);
    }
    for (u, w) in graph.edges() {
        if skip == Some((u, w)) || skip == Some((w, u)) {
            continue;
        }
        net.add_arc(v_out(u), v_in(w), big);
        net.add_arc(v_out(w), v_in(u), big);
    }
    net
}

/// Size of a minimum s–t vertex separator for non-adjacent `s`, `t`, capped at
/// `limit`, together with the separator when the cap was not reached.
fn local_vertex_cut(
    graph: &Graph,
    s: usize,
    t: usize,
    limit: usize,
) -> (usize, Option<Vec<usize>>) {
    let mut net = split_network(graph, s, t, None);
    let value = net.max_flow(v_out(s), v_in(t), limit);
    if value >= limit {
        return (value, None);
    }
    let seen = net.reachable(v_out(s));
    let cut = (0..graph.vertex_count())
        .filter(|&v| v != s && v != t && seen[v_in(v)] && !seen[v_out(v)])
        .collect();
    (value, Some(cut))
}

/// Minimum vertex separator certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexCertificate {
    /// κ = n − 1 by convention; no separator exists.
    Complete,
    Separator(Vec<usize>),
}

/// Exact vertex connectivity with a minimum separator.
///
/// Uses a minimum-degree vertex `v`: every minimum separator either misses
/// `v` (then it separates `v` from a non-neighbour) or contains it (then it
/// separates two non-adjacent neighbours of `v`).
pub fn vertex_connectivity(graph: &Graph) -> (usize, VertexCertificate) {
    let n = graph.vertex_count();
    if n < 2 {
        return (0, VertexCertificate::Separator(Vec::new()));
    }
    if graph.is_complete() {
        return (n - 1, VertexCertificate::Complete);
    }
    let comps = graph.components();
    if comps.len() > 1 {
        return (0, VertexCertificate::Separator(Vec::new()));
    }
    let v = (0..n)
        .min_by_key(|&u| (graph.degree(u), u))
        .expect("nonempty");
    let mut best = graph.degree(v);
    // N(v) separates v from any non-neighbour
    let mut best_cut = graph.neighbors(v).to_vec();
    let consider = |s: usize, t: usize, best: &mut usize, best_cut: &mut Vec<usize>| {
        let (value, cut) = local_vertex_cut(graph, s, t, *best);
        if value < *best {
            *best = value;
            *best_cut = cut.expect("below limit");
        }
    };
    for t in 0..n {
        if t != v && !graph.has_edge(v, t) {
            consider(v, t, &mut best, &mut best_cut);
        }
    }
    let nbrs = graph.neighbors(v);
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !graph.has_edge(x, y) {
                consider(x, y, &mut best, &mut best_cut);
            }
        }
    }
    best_cut.sort_unstable();
    (best, VertexCertificate::Separator(best_cut))
}

/// Exact edge connectivity with a minimum cut `E(S, V∖S)`.
pub fn edge_connectivity(graph: &Graph) -> (usize, Vec<(usize, usize)>) {
    let n = graph.vertex_count();
    if n < 2 {
        return (0, Vec::new());
    }
    if !graph.is_connected() {
        return (0, Vec::new());
    }
    let mut best = usize::MAX;
    let mut best_side = Vec::new();
    for t in 1..n {
        let mut net = FlowNetwork::new(n);
        for (u, w) in graph.edges() {
            net.add_arc(u, w, 1);
            net.add_arc(w, u, 1);
        }
        let limit = if best == usize::MAX { n } else { best };
        let value = net.max_flow(0, t, limit);
        if value < best {
            best = value;
            best_side = net.reachable(0);
        }
    }
    let cut = graph
        .edges()
        .filter(|&(u, w)| best_side[u] != best_side[w])
        .collect();
    (best, cut)
}

/// Follows unit flow from `from` to `to`, consuming it and always taking
/// the lowest-numbered flow-carrying successor. Revisited nodes are cut out.
fn extract_walk(net: &mut FlowNetwork, from: usize, to: usize) -> Vec<usize> {
    let mut walk = vec![from];
    let mut u = from;
    while u != to {
        let a = net.out[u]
            .iter()
            .copied()
            .filter(|&a| a % 2 == 0 && net.arcs[a].flow > 0)
            .min_by_key(|&a| net.arcs[a].to)
            .expect("flow conservation");
        net.arcs[a].flow -= 1;
        u = net.arcs[a].to;
        if let Some(pos) = walk.iter().position(|&x| x == u) {
            walk.truncate(pos + 1);
        } else {
            walk.push(u);
        }
    }
    walk
}

/// A maximum set of internally disjoint s–t paths.
///
/// For adjacent `s`, `t` the direct edge is the first path and the rest come
/// from a flow with that edge removed.
pub fn max_independent_paths(graph: &Graph, s: usize, t: usize) -> Result<Container> {
    if s == t {
        return Err(Error::InvalidParameter("source equals target".into()));
    }
    let n = graph.vertex_count();
    if s >= n || t >= n {
        return Err(Error::InvalidParameter(format!("vertex outside 0..{n}")));
    }
    let adjacent = graph.has_edge(s, t);
    let mut net = split_network(graph, s, t, adjacent.then_some((s, t)));
    let value = net.max_flow(v_out(s), v_in(t), n);
    let mut paths = Vec::with_capacity(value + 1);
    if adjacent {
        paths.push(vec![s, t]);
    }
    for _ in 0..value {
        let walk = extract_walk(&mut net, v_out(s), v_in(t));
        // split nodes: keep each vertex once, in order
        let mut path: Vec<usize> = Vec::with_capacity(walk.len() / 2 + 1);
        for node in walk {
            let v = node / 2;
            if path.last() != Some(&v) {
                path.push(v);
            }
        }
        paths.push(path);
    }
    Ok(Container::new(s, t, paths))
}

/// A smallest part left by a minimum separator, with that separator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub vertices: Vec<usize>,
    pub separator: Vec<usize>,
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All atoms, found by removing every κ-subset. Exponential; guarded.
pub fn atoms(graph: &Graph, max_vertices: usize, max_kappa: usize) -> Result<Vec<Atom>> {
    let n = graph.vertex_count();
    if n > max_vertices {
        return Err(Error::GuardExceeded {
            what: "atom enumeration vertex count",
            limit: max_vertices,
        });
    }
    if graph.is_complete() {
        return Err(Error::Unsupported(
            "complete graphs have no separating sets".into(),
        ));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let (kappa, _) = vertex_connectivity(graph);
    if kappa > max_kappa {
        return Err(Error::GuardExceeded {
            what: "atom enumeration connectivity",
            limit: max_kappa,
        });
    }
    let mut parts: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut comb: Vec<usize> = (0..kappa).collect();
    loop {
        let (rest, old) = graph.remove_vertices(&comb);
        let comps = rest.components();
        if comps.len() > 1 {
            for comp in comps {
                let part: Vec<usize> = comp.into_iter().map(|i| old[i]).collect();
                parts.insert((part, comb.clone()));
            }
        }
        if !next_combination(&mut comb, n) {
            break;
        }
    }
    let smallest = parts.iter().map(|(p, _)| p.len()).min().unwrap_or(0);
    Ok(parts
        .into_iter()
        .filter(|(p, _)| p.len() == smallest)
        .map(|(vertices, separator)| Atom {
            vertices,
            separator,
        })
        .collect())
}

/// The atomic-part size p(X).
pub fn atom_size(atoms: &[Atom]) -> Option<usize> {
    atoms.first().map(|a| a.vertices.len())
}

/// Whether some three vertices plus a fourth form a K₄.
pub fn contains_k4(graph: &Graph) -> bool {
    for (u, v) in graph.edges() {
        let common: Vec<usize> = graph
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| w > v && graph.has_edge(v, w))
            .collect();
        for (i, &a) in common.iter().enumerate() {
            if common[i + 1..].iter().any(|&b| graph.has_edge(a, b)) {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub kappa: usize,
    pub lambda: usize,
    pub delta: usize,
    pub min_vertex_separator: Option<Vec<usize>>,
    pub min_edge_cut: Vec<(usize, usize)>,
    pub optimal_fault_tolerance: bool,
    /// κ − 1; −1 for disconnected graphs.
    pub fault_tolerance: i64,
    pub is_hypo_connected: bool,
    /// Watkins' κ ≥ ⌈2(δ+1)/3⌉, evaluated only when the caller asserts
    /// vertex-transitivity.
    pub watkins_lower_bound_ok: Option<bool>,
}

pub fn connectivity_report(graph: &Graph, vertex_transitive: bool) -> ConnectivityReport {
    let (kappa, cert) = vertex_connectivity(graph);
    let (lambda, cut) = edge_connectivity(graph);
    let delta = degree_stats(graph).min;
    ConnectivityReport {
        kappa,
        lambda,
        delta,
        min_vertex_separator: match cert {
            VertexCertificate::Complete => None,
            VertexCertificate::Separator(s) => Some(s),
        },
        min_edge_cut: cut,
        optimal_fault_tolerance: kappa == delta,
        fault_tolerance: kappa as i64 - 1,
        is_hypo_connected: kappa < delta,
        watkins_lower_bound_ok: vertex_transitive.then(|| 3 * kappa >= 2 * (delta + 1)),
    }
}

/// Checks on the atom containing the identity of a Cayley graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomStructure {
    pub atom: Vec<usize>,
    pub is_subgroup: bool,
    pub generated_by_atom_generators: bool,
    pub within_s_squared: bool,
}

/// Finds the atom through the identity vertex and checks that it is a
/// subgroup, is generated by the generators it contains, and lies in S·S.
pub fn identity_atom_structure(cayley: &CayleyGraph, atom_list: &[Atom]) -> Result<AtomStructure> {
    let e = cayley.identity_vertex();
    let atom = atom_list
        .iter()
        .find(|a| a.vertices.contains(&e))
        .ok_or_else(|| Error::InvalidParameter("no atom contains the identity".into()))?
        .vertices
        .clone();
    let members: BTreeSet<usize> = atom.iter().copied().collect();
    let elements = cayley.elements();
    let is_subgroup = atom.iter().all(|&a| {
        atom.iter()
            .all(|&b| members.contains(&cayley.multiply(a, b)))
    });

    let inside: Vec<&GroupElement> = cayley
        .generators()
        .elements()
        .iter()
        .filter(|s| cayley.index_of(s).is_some_and(|i| members.contains(&i)))
        .collect();
    let mut generated: BTreeSet<usize> = BTreeSet::from([e]);
    let mut frontier = vec![e];
    while let Some(x) = frontier.pop() {
        for s in &inside {
            let y = cayley.index_of(&compose(s, &elements[x])?).expect("closed");
            if generated.insert(y) {
                frontier.push(y);
            }
        }
    }
    let gens = cayley.generators().elements();
    let mut square = BTreeSet::new();
    for a in gens {
        for b in gens {
            square.insert(cayley.index_of(&compose(a, b)?).expect("closed"));
        }
    }
    Ok(AtomStructure {
        within_s_squared: members.is_subset(&square),
        generated_by_atom_generators: generated == members,
        is_subgroup,
        atom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn family(spec: FamilySpec) -> Graph {
        build_family(&spec, 1_000_000).unwrap()
    }

    fn separates(graph: &Graph, set: &[usize]) -> bool {
        graph.remove_vertices(set).0.components().len() > 1
    }

    #[test]
    fn kappa_examples() {
        let q5 = family(FamilySpec::Hypercube(5));
        let (k, cert) = vertex_connectivity(&q5);
        assert_eq!(k, 5);
        match cert {
            VertexCertificate::Separator(s) => assert!(s.len() == 5 && separates(&q5, &s)),
            _ => panic!(),
        }
        let star = family(FamilySpec::CompleteBipartite(1, 4));
        assert_eq!(
            vertex_connectivity(&star),
            (1, VertexCertificate::Separator(vec![0]))
        );
        assert_eq!(
            vertex_connectivity(&family(FamilySpec::Harary { k: 4, n: 10 })).0,
            4
        );
        assert_eq!(
            vertex_connectivity(&family(FamilySpec::Complete(5))),
            (4, VertexCertificate::Complete)
        );
        assert_eq!(vertex_connectivity(&family(FamilySpec::Complete(2))).0, 1);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&two).0, 0);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(edge_connectivity(&family(FamilySpec::Complete(6))).0, 5);
        let barbell =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert_eq!(edge_connectivity(&barbell), (1, vec![(2, 3)]));
        for spec in [
            FamilySpec::Petersen,
            FamilySpec::Star(4),
            FamilySpec::Torus(vec![3, 5]),
        ] {
            let g = family(spec);
            assert_eq!(edge_connectivity(&g).0, degree_stats(&g).min);
        }
    }

    #[test]
    fn menger_paths() {
        let q3 = family(FamilySpec::Hypercube(3));
        let t = q3.vertex_of_label("111").unwrap();
        let c = max_independent_paths(&q3, 0, t).unwrap();
        assert_eq!(c.width(), 3);
        assert!(c.verify(&q3).valid);

        let p = family(FamilySpec::Path(5));
        assert_eq!(
            max_independent_paths(&p, 0, 4).unwrap().paths,
            vec![vec![0, 1, 2, 3, 4]]
        );

        let pet = family(FamilySpec::Petersen);
        for s in 0..10 {
            for t in 0..10 {
                if s != t && !pet.has_edge(s, t) {
                    let c = max_independent_paths(&pet, s, t).unwrap();
                    assert_eq!(c.width(), 3);
                    assert!(c.verify(&pet).valid);
                }
            }
        }
        let adj = max_independent_paths(&q3, 0, q3.neighbors(0)[0]).unwrap();
        assert_eq!(adj.width(), 3);
        assert_eq!(adj.paths[0].len(), 2);
        assert!(adj.verify(&q3).valid);
        assert!(max_independent_paths(&q3, 1, 1).is_err());
    }

    #[test]
    fn atom_examples() {
        let star = family(FamilySpec::CompleteBipartite(1, 4));
        let a = atoms(&star, 24, 5).unwrap();
        assert_eq!(a.len(), 4);
        assert!(a
            .iter()
            .all(|x| x.vertices.len() == 1 && x.separator == vec![0]));

        let c6 = family(FamilySpec::Cycle(6));
        let a = atoms(&c6, 24, 5).unwrap();
        assert_eq!(a.len(), 6);
        assert_eq!(atom_size(&a), Some(1));

        // two K4's glued along an edge {0,1}: κ = 2 < δ = 3
        let mut edges = Vec::new();
        for block in [[0, 1, 2, 3], [0, 1, 4, 5]] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((block[i], block[j]));
                }
            }
        }
        let glued = Graph::from_edges(6, edges).unwrap();
        let a = atoms(&glued, 24, 5).unwrap();
        assert_eq!(
            a.iter().map(|x| x.vertices.clone()).collect::<Vec<_>>(),
            vec![vec![2, 3], vec![4, 5]]
        );
        assert!(a.iter().all(|x| x.separator == vec![0, 1]));

        assert!(atoms(&family(FamilySpec::Complete(4)), 24, 5).is_err());
        assert!(matches!(
            atoms(&family(FamilySpec::Hypercube(5)), 24, 5),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn reports() {
        let r = connectivity_report(&family(FamilySpec::Hypercube(4)), true);
        assert_eq!((r.kappa, r.lambda, r.delta), (4, 4, 4));
        assert!(r.optimal_fault_tolerance);
        assert_eq!(r.watkins_lower_bound_ok, Some(true));
        let r = connectivity_report(&family(FamilySpec::Folded(5)), true);
        assert_eq!((r.kappa, r.lambda, r.delta), (6, 6, 6));
        let r = connectivity_report(&family(FamilySpec::CompleteBipartite(1, 5)), false);
        assert_eq!(
            (r.kappa, r.lambda, r.delta, r.fault_tolerance),
            (1, 1, 1, 0)
        );
        assert!(r.optimal_fault_tolerance);
        assert_eq!(r.watkins_lower_bound_ok, None);
    }

    #[test]
    fn k4_detection() {
        assert!(contains_k4(&family(FamilySpec::Complete(4))));
        assert!(!contains_k4(&family(FamilySpec::Hypercube(4))));
        assert!(contains_k4(&family(FamilySpec::Augmented(4))));
        assert!(!contains_k4(&family(FamilySpec::Folded(4))));
    }
}
