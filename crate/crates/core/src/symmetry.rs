//! Automorphism groups, orbits, isomorphism and normality of Cayley graphs.
//!
//! Automorphisms are enumerated by individualization and refinement: colour
//! refinement (1-dimensional Weisfeiler–Leman) is run on a "left" and a
//! "right" copy of the partition, the left copy follows a fixed base path
//! and the right copy branches over every vertex of the target cell. Each
//! discrete leaf is an isomorphism candidate and is re-verified on the edge
//! set before it is kept.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CayleyGraph, Graph};
use crate::groups::{closure_indexed, compose, inverse, GeneratingSet, GroupElement, GroupSpec};
use crate::guard::Guards;
use crate::metrics::distance_layers;

/// A permutation of `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexPermutation {
    images: Vec<u32>,
}

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(VertexPermutation {
            images: images.into_iter().map(|v| v as u32).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation {
            images: self
                .images
                .iter()
                .map(|&v| other.images[v as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut images = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            images[w as usize] = v as u32;
        }
        VertexPermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &w)| v as u32 == w)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(v, &w)| v as u32 == w)
            .count()
    }

    /// True when the map preserves adjacency and non-adjacency of `graph`.
    pub fn is_automorphism(&self, graph: &Graph) -> bool {
        self.is_isomorphism(graph, graph)
    }

    /// True when the map is an isomorphism from `x` onto `y`.
    pub fn is_isomorphism(&self, x: &Graph, y: &Graph) -> bool {
        x.vertex_count() == self.len()
            && y.vertex_count() == self.len()
            && x.edge_count() == y.edge_count()
            && x.edges()
                .all(|(u, v)| y.has_edge(self.image(u), self.image(v)))
    }
}

/// The full automorphism group of a graph as an explicit element list.
#[derive(Clone, Debug)]
pub struct AutGroup {
    degree: usize,
    elements: Vec<VertexPermutation>,
    generators: Vec<VertexPermutation>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[VertexPermutation] {
        &self.elements
    }

    /// Generators from the stabilizer-chain search.
    pub fn generators(&self) -> &[VertexPermutation] {
        &self.generators
    }

    pub fn contains(&self, p: &VertexPermutation) -> bool {
        self.elements.contains(p)
    }

    /// Orbits on vertices, each sorted, ordered by least element.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, &self.generators, |g, v| g.image(v))
    }

    /// The stabilizer `G_v` as an element list.
    pub fn stabilizer(&self, v: usize) -> Vec<VertexPermutation> {
        self.elements
            .iter()
            .filter(|g| g.image(v) == v)
            .cloned()
            .collect()
    }

    /// Orbits of `G_v` on the vertex set.
    pub fn stabilizer_orbits(&self, v: usize) -> Vec<Vec<usize>> {
        let stab = self.stabilizer(v);
        let gens = greedy_generators(self.degree, &stab);
        orbits(self.degree, &gens, |g, w| g.image(w))
    }
}

fn greedy_generators(degree: usize, elements: &[VertexPermutation]) -> Vec<VertexPermutation> {
    let mut gens: Vec<VertexPermutation> = Vec::new();
    let mut span: HashSet<VertexPermutation> = HashSet::from([VertexPermutation::identity(degree)]);
    for g in elements {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        let mut queue: VecDeque<VertexPermutation> = span.iter().cloned().collect();
        while let Some(h) = queue.pop_front() {
            for s in &gens {
                let next = h.then(s);
                if span.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    gens
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

/// Orbits of the group generated by `gens` on `0..points` under `act`.
fn orbits<F>(points: usize, gens: &[VertexPermutation], act: F) -> Vec<Vec<usize>>
where
    F: Fn(&VertexPermutation, usize) -> usize,
{
    let mut sets = DisjointSets::new(points);
    for g in gens {
        for x in 0..points {
            sets.union(x, act(g, x));
        }
    }
    sets.classes()
}

// ---------------------------------------------------------------------------
// refinement search

/// Refines `colors` to the coarsest equitable partition below it.
///
/// New colours are ranks of the signature (old colour, sorted neighbour
/// colours), so the result is invariant under isomorphism. The returned
/// hash summarizes every round and is equal for two colourings related by
/// an isomorphism.
fn refine(graph: &Graph, colors: &mut [u32]) -> u64 {
    let n = graph.vertex_count();
    let mut hasher = DefaultHasher::new();
    let mut count = distinct(colors);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = graph.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                next += 1;
            }
            colors[sigs[i].2] = next;
            (&sigs[i].0, &sigs[i].1).hash(&mut hasher);
        }
        let new_count = if n == 0 { 0 } else { next as usize + 1 };
        if new_count == count {
            new_count.hash(&mut hasher);
            return hasher.finish();
        }
        count = new_count;
    }
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let mut out = colors.to_vec();
    out[v] = colors.iter().copied().max().unwrap_or(0) + 1;
    out
}

struct Search<'a> {
    left: &'a Graph,
    right: &'a Graph,
    first_only: bool,
    nodes: usize,
    node_limit: usize,
    found_limit: usize,
    found: Vec<VertexPermutation>,
}

impl Search<'_> {
    fn descend(&mut self, left: &[u32], right: &[u32]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::GuardExceeded {
                what: "automorphism search nodes",
                limit: self.node_limit,
            });
        }
        let n = left.len();
        let mut sizes: HashMap<u32, usize> = HashMap::new();
        for &c in left {
            *sizes.entry(c).or_default() += 1;
        }
        if sizes.len() == n {
            let mut by_color = vec![0usize; n];
            for (w, &c) in right.iter().enumerate() {
                by_color[c as usize] = w;
            }
            let map = VertexPermutation {
                images: left.iter().map(|&c| by_color[c as usize] as u32).collect(),
            };
            if map.is_isomorphism(self.left, self.right) {
                if self.found.len() >= self.found_limit {
                    return Err(Error::GuardExceeded {
                        what: "automorphism group order",
                        limit: self.found_limit,
                    });
                }
                self.found.push(map);
                return Ok(self.first_only);
            }
            return Ok(false);
        }
        // smallest non-trivial cell, lowest colour on ties
        let (&target, _) = sizes
            .iter()
            .filter(|&(_, &s)| s > 1)
            .min_by_key(|&(&c, &s)| (s, c))
            .expect("non-discrete partition");
        let v = left
            .iter()
            .position(|&c| c == target)
            .expect("cell is nonempty");
        let mut next_left = individualize(left, v);
        let trace = refine(self.left, &mut next_left);
        for w in 0..n {
            if right[w] != target {
                continue;
            }
            let mut next_right = individualize(right, w);
            if refine(self.right, &mut next_right) != trace {
                continue;
            }
            if self.descend(&next_left, &next_right)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn check_size(graph: &Graph, guards: &Guards) -> Result<()> {
    if graph.vertex_count() > guards.aut_vertices {
        return Err(Error::GuardExceeded {
            what: "automorphism search vertices",
            limit: guards.aut_vertices,
        });
    }
    Ok(())
}

/// `Aut(X)` given by its order and a generating set, without listing
/// elements.
///
/// Built along the leftmost path of the search tree: at level `i` the
/// pointwise stabilizer `G_i` of the base points `b_0, …, b_{i−1}` moves
/// `b_i` around an orbit inside the target cell, and `|G_i| = |b_i^{G_i}| ·
/// |G_{i+1}|`. One automorphism is searched for per orbit representative;
/// those found at levels `≥ i` generate `G_i`.
#[derive(Clone, Debug)]
pub struct AutSummary {
    degree: usize,
    order: u128,
    base: Vec<usize>,
    orbit_sizes: Vec<usize>,
    /// Generators with the level at which each was found.
    generators: Vec<(usize, VertexPermutation)>,
}

impl AutSummary {
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points `b_0, b_1, …` of the stabilizer chain.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// `|b_i^{G_i}|` for each base point; their product is the order.
    pub fn orbit_sizes(&self) -> &[usize] {
        &self.orbit_sizes
    }

    pub fn generators(&self) -> Vec<VertexPermutation> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }

    /// Generators of the pointwise stabilizer of the first `level` base
    /// points.
    pub fn stabilizer_generators(&self, level: usize) -> Vec<VertexPermutation> {
        self.generators
            .iter()
            .filter(|(l, _)| *l >= level)
            .map(|(_, g)| g.clone())
            .collect()
    }

    /// Orbits on vertices, each sorted, ordered by least element.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, &self.generators(), |g, v| g.image(v))
    }
}

fn orbit_of(point: usize, gens: &[VertexPermutation], degree: usize) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

fn smallest_cell(colors: &[u32]) -> Option<u32> {
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *sizes.entry(c).or_default() += 1;
    }
    sizes
        .into_iter()
        .filter(|&(_, s)| s > 1)
        .min_by_key(|&(c, s)| (s, c))
        .map(|(c, _)| c)
}

/// Order and generators of `Aut(graph)` by a stabilizer-chain search.
pub fn automorphism_summary(graph: &Graph, guards: &Guards) -> Result<AutSummary> {
    check_size(graph, guards)?;
    let n = graph.vertex_count();
    let mut colors = vec![0u32; n];
    refine(graph, &mut colors);
    // leftmost path: (partition, base point, target colour, child, child trace)
    let mut path: Vec<(Vec<u32>, usize, u32, Vec<u32>, u64)> = Vec::new();
    while let Some(target) = smallest_cell(&colors) {
        let v = colors
            .iter()
            .position(|&c| c == target)
            .expect("cell is nonempty");
        let mut child = individualize(&colors, v);
        let trace = refine(graph, &mut child);
        path.push((colors, v, target, child.clone(), trace));
        colors = child;
    }
    let mut generators: Vec<(usize, VertexPermutation)> = Vec::new();
    let mut orbit_sizes = vec![0; path.len()];
    let mut nodes = 0;
    for (level, (partition, v, target, child, trace)) in path.iter().enumerate().rev() {
        let mut gens: Vec<VertexPermutation> = generators.iter().map(|(_, g)| g.clone()).collect();
        let mut orbit = orbit_of(*v, &gens, n);
        for w in (0..n).filter(|&w| partition[w] == *target) {
            if orbit[w] {
                continue;
            }
            let mut right = individualize(partition, w);
            if refine(graph, &mut right) != *trace {
                continue;
            }
            let mut search = Search {
                left: graph,
                right: graph,
                first_only: true,
                nodes,
                node_limit: guards.search_nodes,
                found_limit: 1,
                found: Vec::new(),
            };
            search.descend(child, &right)?;
            nodes = search.nodes;
            if let Some(g) = search.found.pop() {
                gens.push(g.clone());
                generators.push((level, g));
                orbit = orbit_of(*v, &gens, n);
            }
        }
        orbit_sizes[level] = orbit.iter().filter(|&&x| x).count();
    }
    let order = orbit_sizes
        .iter()
        .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128));
    let order = order.ok_or(Error::GuardExceeded {
        what: "automorphism group order",
        limit: usize::MAX,
    })?;
    generators.sort_by_key(|(level, _)| *level);
    Ok(AutSummary {
        degree: n,
        order,
        base: path.iter().map(|p| p.1).collect(),
        orbit_sizes,
        generators,
    })
}

/// All automorphisms of `graph`; the identity is listed first.
///
/// The order is known from [`automorphism_summary`] before any element is
/// listed, so the `aut_order` guard refuses large groups up front.
pub fn automorphism_group(graph: &Graph, guards: &Guards) -> Result<AutGroup> {
    let summary = automorphism_summary(graph, guards)?;
    if summary.order > guards.aut_order as u128 {
        return Err(Error::GuardExceeded {
            what: "automorphism group order",
            limit: guards.aut_order,
        });
    }
    let n = summary.degree;
    let generators = summary.generators();
    let identity = VertexPermutation::identity(n);
    let mut seen: HashSet<VertexPermutation> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity];
    let mut next = 0;
    while next < elements.len() {
        for g in &generators {
            let h = elements[next].then(g);
            if seen.insert(h.clone()) {
                elements.push(h);
            }
        }
        next += 1;
    }
    debug_assert_eq!(elements.len() as u128, summary.order);
    Ok(AutGroup {
        degree: n,
        elements,
        generators,
    })
}

/// An isomorphism `x → y` as an image array, or `None` when the exhausted
/// search proves there is none.
pub fn graph_isomorphic(x: &Graph, y: &Graph, guards: &Guards) -> Result<Option<Vec<usize>>> {
    check_size(x, guards)?;
    check_size(y, guards)?;
    if x.vertex_count() != y.vertex_count() || x.edge_count() != y.edge_count() {
        return Ok(None);
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(x) != degrees(y) {
        return Ok(None);
    }
    let n = x.vertex_count();
    let (mut cx, mut cy) = (vec![0u32; n], vec![0u32; n]);
    if refine(x, &mut cx) != refine(y, &mut cy) {
        return Ok(None);
    }
    let mut search = Search {
        left: x,
        right: y,
        first_only: true,
        nodes: 0,
        node_limit: guards.search_nodes,
        found_limit: 1,
        found: Vec::new(),
    };
    search.descend(&cx, &cy)?;
    Ok(search.found.pop().map(|p| p.images()))
}

// ---------------------------------------------------------------------------
// transitivity

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub distance_transitive: bool,
    /// Largest `k ≤ k_cap` such that the graph is `j`-arc-transitive for all
    /// `j ≤ k` (0 meaning vertex-transitive only); `None` when not
    /// vertex-transitive.
    pub k_arc_transitive_max: Option<usize>,
    pub vertex_orbit_count: usize,
    pub edge_orbit_count: usize,
}

/// Enumerates the `k`-arcs `(v_0, …, v_k)`: consecutive vertices adjacent,
/// `v_{i+1} ≠ v_{i−1}`.
fn k_arcs(graph: &Graph, k: usize, limit: usize) -> Result<Vec<Vec<u32>>> {
    let mut arcs: Vec<Vec<u32>> = (0..graph.vertex_count() as u32).map(|v| vec![v]).collect();
    for _ in 0..k {
        let mut next = Vec::new();
        for arc in &arcs {
            let last = *arc.last().expect("nonempty") as usize;
            let back = (arc.len() >= 2).then(|| arc[arc.len() - 2] as usize);
            for &w in graph.neighbors(last) {
                if Some(w) == back {
                    continue;
                }
                let mut ext = arc.clone();
                ext.push(w as u32);
                next.push(ext);
                if next.len() > limit {
                    return Err(Error::GuardExceeded {
                        what: "k-arc enumeration",
                        limit,
                    });
                }
            }
        }
        arcs = next;
    }
    Ok(arcs)
}

fn arc_orbit_count(
    graph: &Graph,
    gens: &[VertexPermutation],
    k: usize,
    limit: usize,
) -> Result<Option<usize>> {
    let arcs = k_arcs(graph, k, limit)?;
    if arcs.is_empty() {
        return Ok(None);
    }
    let index: HashMap<&[u32], usize> = arcs
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i))
        .collect();
    let count = orbits(arcs.len(), gens, |g, i| {
        let image: Vec<u32> = arcs[i].iter().map(|&v| g.images[v as usize]).collect();
        index[image.as_slice()]
    })
    .len();
    Ok(Some(count))
}

impl TransitivityReport {
    /// Classifies `graph` under a precomputed automorphism group.
    pub fn from_group(
        graph: &Graph,
        aut: &AutGroup,
        k_cap: usize,
        guards: &Guards,
    ) -> Result<Self> {
        Self::classify(
            graph,
            aut.generators(),
            0,
            || aut.stabilizer_orbits(0),
            k_cap,
            guards,
        )
    }

    /// Classifies `graph` from the generators of a stabilizer chain.
    pub fn from_summary(
        graph: &Graph,
        aut: &AutSummary,
        k_cap: usize,
        guards: &Guards,
    ) -> Result<Self> {
        let point = aut.base().first().copied().unwrap_or(0);
        let stab_orbits = || {
            orbits(aut.degree(), &aut.stabilizer_generators(1), |g, v| {
                g.image(v)
            })
        };
        Self::classify(graph, &aut.generators(), point, stab_orbits, k_cap, guards)
    }

    /// `stab_orbits` gives the orbits of the stabilizer of `point`.
    fn classify(
        graph: &Graph,
        gens: &[VertexPermutation],
        point: usize,
        stab_orbits: impl FnOnce() -> Vec<Vec<usize>>,
        k_cap: usize,
        guards: &Guards,
    ) -> Result<Self> {
        let vertex_orbit_count = orbits(graph.vertex_count(), gens, |g, v| g.image(v)).len();
        let vertex_transitive = vertex_orbit_count <= 1;
        let edges: Vec<(usize, usize)> = graph.edges().collect();
        let edge_index: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let edge_orbit_count = orbits(edges.len(), gens, |g, i| {
            let (u, v) = edges[i];
            let (a, b) = (g.image(u), g.image(v));
            edge_index[&(a.min(b), a.max(b))]
        })
        .len();
        let arc_orbits = arc_orbit_count(graph, gens, 1, guards.arc_count)?;
        let arc_transitive = arc_orbits.map_or(true, |c| c == 1);

        let mut k_arc_transitive_max = None;
        if vertex_transitive {
            k_arc_transitive_max = Some(0);
            for k in 1..=k_cap {
                match arc_orbit_count(graph, gens, k, guards.arc_count) {
                    Ok(Some(1)) => k_arc_transitive_max = Some(k),
                    _ => break,
                }
            }
        }

        let distance_transitive =
            vertex_transitive && graph.vertex_count() > 0 && graph.is_connected() && {
                let layers = distance_layers(graph, point);
                let stab_orbits = stab_orbits();
                let mut orbit_of = vec![0usize; graph.vertex_count()];
                for (i, orbit) in stab_orbits.iter().enumerate() {
                    for &v in orbit {
                        orbit_of[v] = i;
                    }
                }
                layers
                    .layers
                    .iter()
                    .all(|layer| layer.iter().all(|&v| orbit_of[v] == orbit_of[layer[0]]))
            };

        Ok(TransitivityReport {
            vertex_transitive,
            edge_transitive: edge_orbit_count <= 1,
            arc_transitive,
            distance_transitive,
            k_arc_transitive_max,
            vertex_orbit_count,
            edge_orbit_count,
        })
    }
}

pub fn transitivity_report(
    graph: &Graph,
    k_cap: usize,
    guards: &Guards,
) -> Result<TransitivityReport> {
    let aut = automorphism_summary(graph, guards)?;
    TransitivityReport::from_summary(graph, &aut, k_cap, guards)
}

/// Orbit sizes of the stabilizer `G_v`, sorted ascending.
pub fn stabilizer_orbits(graph: &Graph, v: usize, guards: &Guards) -> Result<Vec<usize>> {
    if v >= graph.vertex_count() {
        return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
    }
    let aut = automorphism_group(graph, guards)?;
    let mut sizes: Vec<usize> = aut.stabilizer_orbits(v).iter().map(Vec::len).collect();
    sizes.sort_unstable();
    Ok(sizes)
}

// ---------------------------------------------------------------------------
// Cayley-specific symmetry

/// The right translations `r_h : x ↦ x·h`, in vertex order of `h`, each
/// checked to be an automorphism.
pub fn right_regular_action(cayley: &CayleyGraph) -> Result<Vec<VertexPermutation>> {
    let n = cayley.elements().len();
    (0..n)
        .map(|h| {
            let p = VertexPermutation {
                images: (0..n).map(|x| cayley.multiply(x, h) as u32).collect(),
            };
            if p.is_automorphism(cayley.graph()) {
                Ok(p)
            } else {
                Err(Error::InvalidGraph(format!(
                    "right translation by vertex {h} is not an automorphism"
                )))
            }
        })
        .collect()
}

/// Result of [`find_regular_subgroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularSubgroupSearch {
    /// The elements of a regular subgroup, identity first.
    Found(Vec<VertexPermutation>),
    /// The search was exhaustive and found nothing.
    NoneExists,
    /// The node budget ran out first.
    Unknown { nodes: usize },
}

/// Searches `aut` for a subgroup acting regularly on its points
/// (Sabidussi: the graph is a Cayley graph iff one exists).
///
/// The search grows a semiregular subgroup `K` one element at a time. If a
/// regular `R ⊇ K` exists, `R` holds exactly one element sending vertex 0 to
/// the least vertex `w` outside `K·0`, and that element is fixed-point-free,
/// so branching over the fixed-point-free `g` with `g(0) = w` is complete.
pub fn find_regular_subgroup(aut: &AutGroup, node_limit: usize) -> RegularSubgroupSearch {
    let n = aut.degree();
    if n <= 1 {
        return RegularSubgroupSearch::Found(vec![VertexPermutation::identity(n)]);
    }
    let mut by_target: Vec<Vec<&VertexPermutation>> = vec![Vec::new(); n];
    for g in aut.elements() {
        if g.fixed_points() == 0 {
            by_target[g.image(0)].push(g);
        }
    }
    let mut state = RegularSearch {
        n,
        by_target,
        seen: HashSet::new(),
        nodes: 0,
        node_limit,
    };
    let start = vec![VertexPermutation::identity(n)];
    match state.grow(&start, &[]) {
        Some(Some(found)) => RegularSubgroupSearch::Found(found),
        Some(None) => RegularSubgroupSearch::NoneExists,
        None => RegularSubgroupSearch::Unknown { nodes: state.nodes },
    }
}

struct RegularSearch<'a> {
    n: usize,
    by_target: Vec<Vec<&'a VertexPermutation>>,
    seen: HashSet<Vec<VertexPermutation>>,
    nodes: usize,
    node_limit: usize,
}

impl RegularSearch<'_> {
    /// `None` when out of budget, `Some(None)` when exhausted.
    fn grow(
        &mut self,
        group: &[VertexPermutation],
        gens: &[VertexPermutation],
    ) -> Option<Option<Vec<VertexPermutation>>> {
        if group.len() == self.n {
            return Some(Some(group.to_vec()));
        }
        let mut covered = vec![false; self.n];
        for g in group {
            covered[g.image(0)] = true;
        }
        let w = covered
            .iter()
            .position(|&c| !c)
            .expect("group smaller than n");
        for &g in &self.by_target[w].clone() {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return None;
            }
            let mut next_gens = gens.to_vec();
            next_gens.push(g.clone());
            let Some(mut next) = semiregular_closure(group, &next_gens, self.n) else {
                continue;
            };
            next.sort();
            if !self.seen.insert(next.clone()) {
                continue;
            }
            // identity back in front
            let id = next
                .iter()
                .position(VertexPermutation::is_identity)
                .expect("identity");
            next.swap(0, id);
            match self.grow(&next, &next_gens)? {
                Some(found) => return Some(Some(found)),
                None => {}
            }
        }
        Some(None)
    }
}

/// Closure of `start ∪ gens`, or `None` once it exceeds `limit` elements or
/// contains a non-identity element with a fixed point.
fn semiregular_closure(
    start: &[VertexPermutation],
    gens: &[VertexPermutation],
    limit: usize,
) -> Option<Vec<VertexPermutation>> {
    let mut set: HashSet<VertexPermutation> = start.iter().cloned().collect();
    let mut list: Vec<VertexPermutation> = start.to_vec();
    let mut queue: VecDeque<VertexPermutation> = start.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for s in gens {
            let next = h.then(s);
            if set.contains(&next) {
                continue;
            }
            if !next.is_identity() && next.fixed_points() > 0 {
                return None;
            }
            set.insert(next.clone());
            list.push(next.clone());
            if list.len() > limit {
                return None;
            }
            queue.push_back(next);
        }
    }
    Some(list)
}

/// How [`aut_group_fixing_s`] computed its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutHsMethod {
    /// Linear maps of `Z₂ʳ` fixed by their images on a basis inside `S`.
    Linear,
    /// Conjugation by automorphisms of the transposition graph `T(S)`.
    TranspositionGraph,
    /// Search over images of the generators, checked on the whole group.
    GeneratorImages,
}

/// `Aut(H, S)`: the group automorphisms of `H = ⟨S⟩` mapping `S` onto itself.
///
/// Since `S` generates `H`, an automorphism is determined by how it permutes
/// `S`; each element is stored as that permutation of generator indices.
#[derive(Clone, Debug)]
pub struct AutHs {
    pub method: AutHsMethod,
    maps: Vec<Vec<usize>>,
}

impl AutHs {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// Each element as the permutation it induces on generator indices.
    pub fn generator_maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// The automorphism `i` as a permutation of the vertices of `cayley`,
    /// which must be built from the same generating set.
    pub fn vertex_permutation(&self, cayley: &CayleyGraph, i: usize) -> Result<VertexPermutation> {
        let sigma = &self.maps[i];
        let gens = cayley.generators().elements();
        let steps: Vec<(usize, usize)> = (0..gens.len())
            .map(|k| {
                let a = cayley
                    .index_of(&gens[k])
                    .ok_or_else(|| Error::Mismatch("generator not in graph".into()))?;
                let b = cayley
                    .index_of(&gens[sigma[k]])
                    .ok_or_else(|| Error::Mismatch("generator not in graph".into()))?;
                Ok((a, b))
            })
            .collect::<Result<_>>()?;
        let n = cayley.elements().len();
        let mut image = vec![usize::MAX; n];
        image[cayley.identity_vertex()] = cayley.identity_vertex();
        let mut queue = VecDeque::from([cayley.identity_vertex()]);
        while let Some(x) = queue.pop_front() {
            for &(s, t) in &steps {
                let y = cayley.multiply(s, x);
                let fy = cayley.multiply(t, image[x]);
                if image[y] == usize::MAX {
                    image[y] = fy;
                    queue.push_back(y);
                } else if image[y] != fy {
                    return Err(Error::Mismatch(
                        "generator map does not extend to a homomorphism".into(),
                    ));
                }
            }
        }
        VertexPermutation::from_images(image)
    }
}

/// `Aut(H, S)` for a generating set `S` of `H`.
///
/// Binary groups use linear algebra, symmetric groups with transposition
/// generators use `Aut(T(S))` (for `n ≥ 3` every automorphism fixing a set of
/// transpositions is a conjugation), and anything else falls back to
/// [`aut_group_fixing_s_by_search`].
pub fn aut_group_fixing_s(set: &GeneratingSet, guards: &Guards) -> Result<AutHs> {
    match set.spec() {
        GroupSpec::Binary(r) if binary_rank(set) == *r as usize => Ok(linear_aut_hs(set)),
        GroupSpec::Symmetric(n) | GroupSpec::PermSubgroup(n)
            if *n >= 3
                && !set.is_empty()
                && set.elements().iter().all(GroupElement::is_transposition) =>
        {
            match transposition_aut_hs(set, *n as usize, guards)? {
                Some(found) => Ok(found),
                None => aut_group_fixing_s_by_search(set, guards),
            }
        }
        _ => aut_group_fixing_s_by_search(set, guards),
    }
}

fn word_bits(el: &GroupElement) -> u64 {
    match el {
        GroupElement::Word { bits, .. } => *bits,
        _ => unreachable!("binary group element"),
    }
}

fn binary_rank(set: &GeneratingSet) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for s in set.elements() {
        let mut v = word_bits(s);
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

fn linear_aut_hs(set: &GeneratingSet) -> AutHs {
    let words: Vec<u64> = set.elements().iter().map(word_bits).collect();
    let position: HashMap<u64, usize> = words.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    // greedy basis inside S; coords[i] expresses words[i] in that basis
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut reduced: Vec<(u64, u64)> = Vec::new(); // (reduced vector, combination of basis positions)
    let mut coords = vec![0u64; words.len()];
    for (i, &w) in words.iter().enumerate() {
        let (mut v, mut combo) = (w, 0u64);
        for &(b, c) in &reduced {
            if v ^ b < v {
                v ^= b;
                combo ^= c;
            }
        }
        if v != 0 {
            let k = basis_idx.len();
            basis_idx.push(i);
            reduced.push((v, combo | 1 << k));
            reduced.sort_by(|a, b| b.0.cmp(&a.0));
            coords[i] = 1 << k;
        } else {
            coords[i] = combo;
        }
    }
    let r = basis_idx.len();
    // generators whose expression only uses the first k basis vectors
    let check_at: Vec<Vec<usize>> = (0..=r)
        .map(|k| {
            (0..words.len())
                .filter(|&i| k > 0 && 64 - coords[i].leading_zeros() as usize == k)
                .collect()
        })
        .collect();
    let mut maps = Vec::new();
    let mut images = vec![0u64; r];
    fn rec(
        k: usize,
        r: usize,
        images: &mut Vec<u64>,
        words: &[u64],
        coords: &[u64],
        check_at: &[Vec<usize>],
        position: &HashMap<u64, usize>,
        maps: &mut Vec<Vec<usize>>,
    ) {
        if k == r {
            let sigma: Vec<usize> = coords
                .iter()
                .map(|&c| {
                    let img = (0..r)
                        .filter(|&j| c >> j & 1 == 1)
                        .fold(0, |acc, j| acc ^ images[j]);
                    position[&img]
                })
                .collect();
            maps.push(sigma);
            return;
        }
        for &candidate in words {
            images[k] = candidate;
            let ok = check_at[k + 1].iter().all(|&i| {
                let img = (0..=k)
                    .filter(|&j| coords[i] >> j & 1 == 1)
                    .fold(0, |acc, j| acc ^ images[j]);
                position.contains_key(&img)
            });
            // images of the basis must stay independent
            if ok && independent(&images[..=k]) {
                rec(k + 1, r, images, words, coords, check_at, position, maps);
            }
        }
    }
    rec(
        0,
        r,
        &mut images,
        &words,
        &coords,
        &check_at,
        &position,
        &mut maps,
    );
    maps.sort();
    AutHs {
        method: AutHsMethod::Linear,
        maps,
    }
}

fn independent(vectors: &[u64]) -> bool {
    let mut basis: Vec<u64> = Vec::new();
    for &w in vectors {
        let mut v = w;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
    }
    true
}

/// `Some` when `T(S)` is connected (so `S` generates `Sₙ`).
fn transposition_aut_hs(set: &GeneratingSet, n: usize, guards: &Guards) -> Result<Option<AutHs>> {
    let pairs: Vec<(usize, usize)> = set
        .elements()
        .iter()
        .map(|t| {
            let s = t.support();
            (s[0], s[1])
        })
        .collect();
    let tgraph = Graph::from_edges(n, pairs.iter().copied())?;
    if !tgraph.is_connected() {
        return Ok(None);
    }
    let position: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let aut = automorphism_group(&tgraph, guards)?;
    let mut maps: Vec<Vec<usize>> = aut
        .elements()
        .iter()
        .map(|pi| {
            pairs
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (pi.image(i), pi.image(j));
                    position[&(a.min(b), a.max(b))]
                })
                .collect()
        })
        .collect();
    maps.sort();
    Ok(Some(AutHs {
        method: AutHsMethod::TranspositionGraph,
        maps,
    }))
}

/// `Aut(H, S)` by backtracking over bijections `σ : S → S` that respect
/// element orders and inverses, keeping those that extend to an
/// automorphism of `H` (checked on the whole Cayley digraph).
pub fn aut_group_fixing_s_by_search(set: &GeneratingSet, guards: &Guards) -> Result<AutHs> {
    let (elements, index) = closure_indexed(set, guards.aut_hs_group).map_err(|e| match e {
        Error::GuardExceeded { limit, .. } => Error::GuardExceeded {
            what: "Aut(H,S) group size",
            limit,
        },
        other => other,
    })?;
    let gens = set.elements();
    let k = gens.len();
    // left multiplication tables x ↦ s·x
    let tables: Vec<Vec<usize>> = gens
        .iter()
        .map(|s| {
            elements
                .iter()
                .map(|x| Ok(index[&compose(s, x)?]))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let orders: Vec<usize> = gens.iter().map(|s| element_order(s)).collect();
    let inv: Vec<Option<usize>> = gens
        .iter()
        .map(|s| gens.iter().position(|t| *t == inverse(s)))
        .collect();

    let mut state = GenImageSearch {
        tables: &tables,
        orders: &orders,
        inv: &inv,
        n: elements.len(),
        sigma: vec![usize::MAX; k],
        used: vec![false; k],
        maps: Vec::new(),
        nodes: 0,
        limit: guards.search_nodes,
    };
    state.assign(0)?;
    let mut maps = state.maps;
    maps.sort();
    Ok(AutHs {
        method: AutHsMethod::GeneratorImages,
        maps,
    })
}

fn element_order(s: &GroupElement) -> usize {
    let mut power = s.clone();
    let mut order = 1;
    while !power.is_identity() {
        power = compose(&power, s).expect("same group");
        order += 1;
    }
    order
}

struct GenImageSearch<'a> {
    tables: &'a [Vec<usize>],
    orders: &'a [usize],
    inv: &'a [Option<usize>],
    n: usize,
    sigma: Vec<usize>,
    used: Vec<bool>,
    maps: Vec<Vec<usize>>,
    nodes: usize,
    limit: usize,
}

impl GenImageSearch<'_> {
    fn assign(&mut self, i: usize) -> Result<()> {
        let k = self.sigma.len();
        if i == k {
            if self.extends() {
                self.maps.push(self.sigma.clone());
            }
            return Ok(());
        }
        for j in 0..k {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::GuardExceeded {
                    what: "Aut(H,S) search nodes",
                    limit: self.limit,
                });
            }
            if self.used[j] || self.orders[j] != self.orders[i] {
                continue;
            }
            // σ(s⁻¹) = σ(s)⁻¹ whenever both sides are already known
            if let Some(ii) = self.inv[i] {
                if ii < i && self.inv[self.sigma[ii]] != Some(j) {
                    continue;
                }
                if ii == i && self.inv[j] != Some(j) {
                    continue;
                }
            }
            self.sigma[i] = j;
            self.used[j] = true;
            self.assign(i + 1)?;
            self.used[j] = false;
            self.sigma[i] = usize::MAX;
        }
        Ok(())
    }

    /// Defines φ by φ(s·x) = σ(s)·φ(x) from φ(e) = e and checks that it is
    /// well defined and bijective.
    fn extends(&self) -> bool {
        let mut image = vec![usize::MAX; self.n];
        let mut hit = vec![false; self.n];
        image[0] = 0;
        hit[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, table) in self.tables.iter().enumerate() {
                let y = table[x];
                let fy = self.tables[self.sigma[s]][image[x]];
                if image[y] == usize::MAX {
                    if std::mem::replace(&mut hit[fy], true) {
                        return false;
                    }
                    image[y] = fy;
                    queue.push_back(y);
                } else if image[y] != fy {
                    return false;
                }
            }
        }
        true
    }
}

/// Normality and GRR verdict for a Cayley graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityVerdict {
    pub normal: bool,
    /// `|Aut(X)| = |H|`: the graph is a graphical regular representation.
    pub grr: bool,
    pub aut_order: u128,
    pub group_order: usize,
    pub aut_hs_order: usize,
    /// `|H| · |Aut(H, S)|`, the order of `R(H) ⋊ Aut(H, S)`.
    pub predicted_order: u128,
}

/// `X` is normal iff `|Aut(X)| = |H|·|Aut(H,S)|`: `R(H) ⋊ Aut(H,S)` always
/// sits inside `Aut(X)`, and equality of orders forces equality.
pub fn normality_verdict(cayley: &CayleyGraph, guards: &Guards) -> Result<NormalityVerdict> {
    let aut = automorphism_summary(cayley.graph(), guards)?;
    normality_from_order(cayley, aut.order(), guards)
}

/// The verdict for a Cayley graph whose automorphism group order is known.
pub fn normality_from_order(
    cayley: &CayleyGraph,
    aut_order: u128,
    guards: &Guards,
) -> Result<NormalityVerdict> {
    let aut_hs = aut_group_fixing_s(cayley.generators(), guards)?;
    let group_order = cayley.elements().len();
    let predicted_order = group_order as u128 * aut_hs.order() as u128;
    Ok(NormalityVerdict {
        normal: aut_order == predicted_order,
        grr: aut_order == group_order as u128,
        aut_order,
        group_order,
        aut_hs_order: aut_hs.order(),
        predicted_order,
    })
}
