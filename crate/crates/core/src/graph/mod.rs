//! Immutable simple graphs, the Cayley construction and graph derivations.

mod families;

pub use families::{build_cayley_family, build_family, cayley_family_generators, FamilySpec};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{self, compose, GeneratingSet, GroupElement, GroupSpec};

/// Where a graph came from: a family name plus its parameters.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyMeta {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

impl FamilyMeta {
    pub fn new(family: impl Into<String>) -> Self {
        FamilyMeta {
            family: family.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    vertex_labels: Option<Vec<String>>,
    edge_labels: Option<BTreeMap<(usize, usize), usize>>,
    family_meta: Option<FamilyMeta>,
}

impl Graph {
    /// Graph on `n` vertices. Repeated edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            adj,
            vertex_labels: None,
            edge_labels: None,
            family_meta: None,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            vertex_labels: None,
            edge_labels: None,
            family_meta: None,
        }
    }

    pub fn with_vertex_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.vertex_labels = Some(labels);
        Ok(self)
    }

    pub fn with_edge_labels(mut self, labels: BTreeMap<(usize, usize), usize>) -> Result<Self> {
        if labels.len() != self.edge_count()
            || labels.keys().any(|&(u, v)| u >= v || !self.has_edge(u, v))
        {
            return Err(Error::InvalidGraph(
                "edge labels do not cover the edge set".into(),
            ));
        }
        self.edge_labels = Some(labels);
        Ok(self)
    }

    pub fn with_meta(mut self, meta: FamilyMeta) -> Self {
        self.family_meta = Some(meta);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.vertex_labels = None;
        self.edge_labels = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertex_labels(&self) -> Option<&[String]> {
        self.vertex_labels.as_deref()
    }

    pub fn edge_labels(&self) -> Option<&BTreeMap<(usize, usize), usize>> {
        self.edge_labels.as_ref()
    }

    pub fn family_meta(&self) -> Option<&FamilyMeta> {
        self.family_meta.as_ref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.vertex_labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_of_label(&self, label: &str) -> Option<usize> {
        self.vertex_labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "neighbors of {u} not strictly sorted"
                )));
            }
            for &v in list {
                if v == u {
                    return Err(Error::InvalidGraph(format!("loop at {u}")));
                }
                if v >= self.adj.len() || self.adj[v].binary_search(&u).is_err() {
                    return Err(Error::InvalidGraph(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        if let Some(labels) = &self.vertex_labels {
            if labels.len() != self.adj.len() {
                return Err(Error::InvalidGraph("vertex labels incomplete".into()));
            }
        }
        if let Some(labels) = &self.edge_labels {
            if labels.len() != self.edge_count()
                || labels.keys().any(|&(u, v)| !self.has_edge(u, v))
            {
                return Err(Error::InvalidGraph("edge labels incomplete".into()));
            }
        }
        Ok(())
    }

    /// Subgraph induced on the vertices not in `removed`, with the surviving
    /// vertices renumbered in order. Returns the graph and the old indices.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep = vec![true; self.vertex_count()];
        for &v in removed {
            keep[v] = false;
        }
        let old: Vec<usize> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in old.iter().enumerate() {
            new_index[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| keep[w])
                    .map(|&w| new_index[w])
                    .collect()
            })
            .collect();
        (
            Graph {
                adj,
                vertex_labels: None,
                edge_labels: None,
                family_meta: None,
            },
            old,
        )
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }
}

/// A Cayley graph together with the group data behind it.
///
/// Vertex `i` is `elements[i]`, listed in closure order, so vertex 0 is the
/// identity.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    graph: Graph,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    generators: GeneratingSet,
}

impl CayleyGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.generators
    }

    pub fn index_of(&self, el: &GroupElement) -> Option<usize> {
        self.index.get(el).copied()
    }

    pub fn identity_vertex(&self) -> usize {
        0
    }

    /// Vertex of the product `elements[a] · elements[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let prod = compose(&self.elements[a], &self.elements[b]).expect("same group");
        self.index[&prod]
    }

    pub(crate) fn map_graph(mut self, f: impl FnOnce(Graph) -> Graph) -> Self {
        self.graph = f(self.graph);
        self
    }

    /// Rebuilds the group structure of a graph whose family metadata
    /// records `group` and `generators` (as written by [`cayley_graph`]).
    ///
    /// Vertices are matched to group elements by label, so the graph may use
    /// a different vertex order than the closure order.
    pub fn recover(graph: &Graph, closure_guard: usize) -> Result<CayleyGraph> {
        let meta = graph
            .family_meta()
            .ok_or_else(|| Error::Unsupported("graph has no Cayley metadata".into()))?;
        let spec: GroupSpec = meta
            .params
            .get("group")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Unsupported("graph metadata lacks `group`".into()))?
            .parse()?;
        let gens: Vec<&str> = meta
            .params
            .get("generators")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Unsupported("graph metadata lacks `generators`".into()))?
            .iter()
            .filter_map(|v| v.as_str())
            .collect();
        let set = GeneratingSet::parse(spec.clone(), &gens)?;
        let rebuilt = cayley_graph(&set, closure_guard)?;
        let labels = graph
            .vertex_labels()
            .ok_or_else(|| Error::Unsupported("Cayley graph without vertex labels".into()))?;
        if labels.len() != rebuilt.elements.len() {
            return Err(Error::InvalidGraph(
                "vertex count differs from the group order".into(),
            ));
        }
        let mut elements = Vec::with_capacity(labels.len());
        let mut index = HashMap::new();
        for (i, label) in labels.iter().enumerate() {
            let el = groups::parse_element(label, &spec)?;
            if !rebuilt.index.contains_key(&el) || index.insert(el.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "label `{label}` is not a group element"
                )));
            }
            elements.push(el);
        }
        for (u, v) in rebuilt.graph.edges() {
            let (a, b) = (index[&rebuilt.elements[u]], index[&rebuilt.elements[v]]);
            if !graph.has_edge(a, b) {
                return Err(Error::InvalidGraph(
                    "edges disagree with the Cayley metadata".into(),
                ));
            }
        }
        if rebuilt.graph.edge_count() != graph.edge_count() {
            return Err(Error::InvalidGraph(
                "edges disagree with the Cayley metadata".into(),
            ));
        }
        Ok(CayleyGraph {
            graph: graph.clone(),
            elements,
            index,
            generators: set,
        })
    }
}

fn cayley_meta(set: &GeneratingSet) -> FamilyMeta {
    let gens: Vec<serde_json::Value> = set
        .elements()
        .iter()
        .map(|g| serde_json::Value::String(g.to_string()))
        .collect();
    FamilyMeta::new("cayley")
        .with("group", set.spec().to_string())
        .with("generators", gens)
}

/// Cay(⟨S⟩, S): vertices are the closure of `S`, edges `{h, s·h}`.
///
/// Each edge is labeled with the index of its generator's class {s, s⁻¹}.
pub fn cayley_graph(set: &GeneratingSet, closure_guard: usize) -> Result<CayleyGraph> {
    let report = groups::validate_generating_set(set, 0);
    if !report.identity_free {
        return Err(Error::InvalidGeneratingSet(
            "generating set contains the identity".into(),
        ));
    }
    if !report.symmetric {
        return Err(Error::InvalidGeneratingSet(
            "generating set is not closed under inverses".into(),
        ));
    }
    let (elements, index) = groups::closure_indexed(set, closure_guard)?;
    let classes = set.pair_classes();
    let mut adj = vec![Vec::with_capacity(set.len()); elements.len()];
    let mut edge_labels = BTreeMap::new();
    for (h, el) in elements.iter().enumerate() {
        for (s, gen) in set.elements().iter().enumerate() {
            let j = index[&compose(gen, el)?];
            adj[h].push(j);
            if h < j {
                edge_labels.insert((h, j), classes[s]);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let labels = elements.iter().map(GroupElement::to_string).collect();
    let graph = Graph {
        adj,
        vertex_labels: Some(labels),
        edge_labels: Some(edge_labels),
        family_meta: None,
    }
    .with_meta(cayley_meta(set));
    Ok(CayleyGraph {
        graph,
        elements,
        index,
        generators: set.clone(),
    })
}

/// Cayley graph of the subgroup of Sₙ generated by the given transpositions
/// (1-based pairs).
pub fn from_transpositions(
    n: usize,
    pairs: &[(usize, usize)],
    closure_guard: usize,
) -> Result<CayleyGraph> {
    let mut seen = std::collections::HashSet::new();
    let mut gens = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::InvalidParameter(format!(
                "transposition ({i},{j}) needs 1 ≤ i < j ≤ {n}"
            )));
        }
        if !seen.insert((i, j)) {
            return Err(Error::InvalidParameter(format!(
                "duplicate transposition ({i},{j})"
            )));
        }
        gens.push(GroupElement::transposition(n, i, j)?);
    }
    let set = GeneratingSet::new(GroupSpec::PermSubgroup(n), gens)?;
    cayley_graph(&set, closure_guard)
}

/// X □ Y with vertex `(u, u')` at index `u·|V(Y)| + u'`.
pub fn cartesian_product(x: &Graph, y: &Graph) -> Graph {
    let ny = y.vertex_count();
    let mut adj = vec![Vec::new(); x.vertex_count() * ny];
    for u in 0..x.vertex_count() {
        for u2 in 0..ny {
            let list = &mut adj[u * ny + u2];
            list.extend(x.neighbors(u).iter().map(|&v| v * ny + u2));
            list.extend(y.neighbors(u2).iter().map(|&v2| u * ny + v2));
            list.sort_unstable();
        }
    }
    let vertex_labels = match (x.vertex_labels(), y.vertex_labels()) {
        (Some(lx), Some(ly)) => Some(
            lx.iter()
                .flat_map(|a| ly.iter().map(move |b| format!("{a},{b}")))
                .collect(),
        ),
        _ => None,
    };
    Graph {
        adj,
        vertex_labels,
        edge_labels: None,
        family_meta: None,
    }
}

/// L(X): one vertex per edge of X (in sorted edge order), adjacent when the
/// edges share an endpoint.
pub fn line_graph(x: &Graph) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = x.edges().collect();
    if edges.is_empty() {
        return Err(Error::InvalidParameter(
            "line graph of an edgeless graph".into(),
        ));
    }
    let mut incident = vec![Vec::new(); x.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut pairs = Vec::new();
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                pairs.push((i, j));
            }
        }
    }
    let labels = edges
        .iter()
        .map(|&(u, v)| format!("{}-{}", x.label(u), x.label(v)))
        .collect();
    Graph::from_edges(edges.len(), pairs)?.with_vertex_labels(labels)
}

pub fn complement(x: &Graph) -> Graph {
    let n = x.vertex_count();
    let adj = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && !x.has_edge(u, v)).collect())
        .collect();
    Graph {
        adj,
        vertex_labels: x.vertex_labels.clone(),
        edge_labels: None,
        family_meta: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    fn perm_set(n: usize, gens: &[&str]) -> GeneratingSet {
        GeneratingSet::parse(GroupSpec::Symmetric(n), gens).unwrap()
    }

    fn degrees(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn cayley_s3_transpositions() {
        let c6 = cayley_graph(&perm_set(3, &["(12)", "(23)"]), 100).unwrap();
        let g = c6.graph();
        g.validate().unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
        assert!(g.is_connected());
        assert_eq!(degrees(g), vec![2; 6]);

        let k33 = cayley_graph(&perm_set(3, &["(12)", "(23)", "(13)"]), 100).unwrap();
        assert_eq!(
            (k33.graph().vertex_count(), k33.graph().edge_count()),
            (6, 9)
        );
        // K3,3: every even permutation is adjacent to every odd one
        let parity = |e: &GroupElement| usize::from(e.support().len() == 2);
        for (u, v) in k33.graph().edges() {
            assert_ne!(parity(&k33.elements()[u]), parity(&k33.elements()[v]));
        }
    }

    #[test]
    fn cayley_single_edge() {
        let set = GeneratingSet::parse(GroupSpec::Binary(1), &["1"]).unwrap();
        let k2 = cayley_graph(&set, 10).unwrap();
        assert_eq!(k2.graph().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(k2.graph().edge_labels().unwrap()[&(0, 1)], 0);
    }

    #[test]
    fn cayley_rejects_invalid_sets() {
        assert!(cayley_graph(&perm_set(3, &["(123)"]), 10).is_err());
        assert!(cayley_graph(&perm_set(3, &["()", "(12)"]), 10).is_err());
    }

    #[test]
    fn edge_labels_follow_inverse_pairs() {
        let set =
            GeneratingSet::parse(GroupSpec::CyclicProduct(vec![7]), &["1", "6", "2", "5"]).unwrap();
        let g = cayley_graph(&set, 100).unwrap();
        let labels: std::collections::BTreeSet<usize> =
            g.graph().edge_labels().unwrap().values().copied().collect();
        assert_eq!(labels.into_iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(g.graph().edge_count(), 14);
    }

    #[test]
    fn products() {
        let c4 = build_family(&FamilySpec::Cycle(4), 100).unwrap();
        let c5 = build_family(&FamilySpec::Cycle(5), 100).unwrap();
        let t = cartesian_product(&c4, &c5);
        t.validate().unwrap();
        assert_eq!(t.vertex_count(), 20);
        assert_eq!(degrees(&t), vec![4; 20]);
        assert_eq!(t.label(7), "1,2");

        let k1 = Graph::empty(1);
        assert_eq!(
            cartesian_product(&c5, &k1).without_labels(),
            c5.clone().without_labels().clone_without_meta()
        );

        let k2 = build_family(&FamilySpec::Complete(2), 10).unwrap();
        let q3 = cartesian_product(&cartesian_product(&k2, &k2), &k2);
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
    }

    #[test]
    fn line_graphs_and_complements() {
        let k5 = build_family(&FamilySpec::Complete(5), 10).unwrap();
        assert_eq!(complement(&k5).edge_count(), 0);
        let l = line_graph(&k5).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (10, 30));
        let kneser = complement(&l);
        assert_eq!(degrees(&kneser), vec![3; 10]);
        assert_eq!(
            complement(&kneser).without_labels(),
            l.clone().without_labels()
        );

        let c7 = build_family(&FamilySpec::Cycle(7), 10).unwrap();
        let lc = line_graph(&c7).unwrap();
        assert_eq!(degrees(&lc), vec![2; 7]);
        assert!(lc.is_connected());
        assert!(line_graph(&Graph::empty(3)).is_err());
    }

    #[test]
    fn transposition_cayley_graphs() {
        let q3 = from_transpositions(6, &[(1, 2), (3, 4), (5, 6)], 1000).unwrap();
        assert_eq!(
            (q3.graph().vertex_count(), q3.graph().edge_count()),
            (8, 12)
        );
        let all: Vec<(usize, usize)> = (1..=4)
            .flat_map(|i| (i + 1..=4).map(move |j| (i, j)))
            .collect();
        let ct = from_transpositions(4, &all, 1000).unwrap();
        assert_eq!(ct.graph().vertex_count(), 24);
        assert_eq!(degrees(ct.graph()), vec![6; 24]);
        let mbs = from_transpositions(4, &[(1, 2), (2, 3), (3, 4), (1, 4)], 1000).unwrap();
        assert_eq!(mbs.graph().vertex_count(), 24);
        assert!(from_transpositions(4, &[(2, 1)], 100).is_err());
        assert!(from_transpositions(4, &[(1, 2), (1, 2)], 100).is_err());
    }

    #[test]
    fn recover_roundtrip() {
        let g = build_family(&FamilySpec::Folded(4), 1000).unwrap();
        let c = CayleyGraph::recover(&g, 1000).unwrap();
        assert_eq!(c.elements().len(), 16);
        assert_eq!(c.generators().len(), 5);
        assert!(
            CayleyGraph::recover(&build_family(&FamilySpec::Petersen, 10).unwrap(), 100).is_err()
        );
    }

    impl Graph {
        fn clone_without_meta(mut self) -> Graph {
            self.family_meta = None;
            self
        }
    }
}
