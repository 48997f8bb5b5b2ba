//! Transposition graphs `T(S)` and what they predict about `Cay(Sₙ, S)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_family, from_transpositions, CayleyGraph, FamilySpec, Graph};
use crate::guard::Guards;
use crate::metrics::girth;
use crate::symmetry::{automorphism_summary, graph_isomorphic, TransitivityReport};

/// A set of transpositions of `{1, …, n}`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TranspositionSet {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl TranspositionSet {
    /// Pairs are 1-based and may be given in either orientation.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 || n > 256 {
            return Err(Error::InvalidParameter(format!(
                "transposition degree {n} outside 1..=256"
            )));
        }
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            let (i, j) = (a.min(b), a.max(b));
            if i == j || i == 0 || j > n {
                return Err(Error::InvalidParameter(format!(
                    "({a},{b}) is not a transposition of 1..={n}"
                )));
            }
            if !set.insert((i, j)) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate transposition ({i},{j})"
                )));
            }
        }
        Ok(TranspositionSet {
            n,
            pairs: set.into_iter().collect(),
        })
    }

    /// Parses `n` on the first content line, then one `i j` pair per line.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty transposition file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the degree n".into()))?;
        let mut pairs = Vec::new();
        for line in lines {
            let nums: Vec<usize> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad pair `{line}`")))
                })
                .collect::<Result<_>>()?;
            match nums[..] {
                [i, j] => pairs.push((i, j)),
                _ => return Err(Error::Parse(format!("expected two numbers in `{line}`"))),
            }
        }
        TranspositionSet::new(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `Cay(⟨S⟩, S)`; the whole of `Sₙ` exactly when `T(S)` is connected.
    pub fn cayley(&self, closure_guard: usize) -> Result<CayleyGraph> {
        from_transpositions(self.n, &self.pairs, closure_guard)
    }

    /// Every transposition set on `{1, …, n}`, in subset order of the
    /// lexicographically listed pairs.
    pub fn all(n: usize) -> impl Iterator<Item = TranspositionSet> {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        assert!(pairs.len() < 32, "too many subsets to enumerate");
        (0u32..1 << pairs.len()).map(move |mask| TranspositionSet {
            n,
            pairs: pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect(),
        })
    }
}

impl fmt::Display for TranspositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

/// `T(S)`: vertex `i − 1` for point `i`, one edge per transposition.
pub fn transposition_graph(set: &TranspositionSet) -> Graph {
    Graph::from_edges(set.n, set.pairs.iter().map(|&(i, j)| (i - 1, j - 1)))
        .expect("pairs validated on construction")
        .with_vertex_labels((1..=set.n).map(|i| i.to_string()).collect())
        .expect("one label per vertex")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub size: usize,
    /// `T(S)` connected.
    pub generates_sn: bool,
    /// `T(S)` a tree.
    pub minimal: bool,
    /// `star`, `path`, `cycle`, `complete`, `complete-bipartite` or `general`.
    pub shape: String,
    pub transposition_graph_girth: Option<usize>,
    /// `|Aut(T(S))|`; `None` when the search is refused by a guard.
    pub aut_t_order: Option<u128>,
    /// `T(S)` edge-transitive, hence so is `Cay(Sₙ, S)`.
    pub predicted_edge_transitive: Option<bool>,
    /// `n!·|Aut(T(S))|`, given only where the normal-Cayley theorems apply:
    /// `T(S)` a tree or of girth at least 5, `S` generating, `n ≥ 3`.
    pub predicted_aut_order: Option<u128>,
}

fn shape_of(t: &Graph, guards: &Guards) -> String {
    let n = t.vertex_count();
    let m = t.edge_count();
    let mut candidates: Vec<(&str, FamilySpec)> = Vec::new();
    if n >= 2 && m == n * (n - 1) / 2 {
        return "complete".into();
    }
    if n >= 3 && m == n - 1 {
        candidates.push(("star", FamilySpec::CompleteBipartite(1, n - 1)));
        candidates.push(("path", FamilySpec::Path(n)));
    }
    if n >= 3 && m == n {
        candidates.push(("cycle", FamilySpec::Cycle(n)));
    }
    for a in 2..=n / 2 {
        if a * (n - a) == m {
            candidates.push((
                "complete-bipartite",
                FamilySpec::CompleteBipartite(a, n - a),
            ));
        }
    }
    for (name, spec) in candidates {
        let Ok(model) = build_family(&spec, guards.closure) else {
            continue;
        };
        if matches!(graph_isomorphic(t, &model, guards), Ok(Some(_))) {
            return name.into();
        }
    }
    "general".into()
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Reads the generation, minimality, shape and symmetry predictions of
/// `Cay(Sₙ, S)` off the transposition graph.
pub fn classify(set: &TranspositionSet, guards: &Guards) -> ClassificationReport {
    let t = transposition_graph(set);
    let generates_sn = t.is_connected();
    let minimal = generates_sn && t.edge_count() + 1 == t.vertex_count();
    let aut = automorphism_summary(&t, guards).ok();
    let aut_t_order = aut.as_ref().map(|a| a.order());
    let predicted_edge_transitive = aut
        .as_ref()
        .and_then(|a| TransitivityReport::from_summary(&t, a, 0, guards).ok())
        .map(|r| r.edge_transitive);
    let t_girth = girth(&t);
    let normal_case = generates_sn && set.n >= 3 && (minimal || t_girth.is_some_and(|g| g >= 5));
    let predicted_aut_order = match (normal_case, aut_t_order) {
        (true, Some(order)) => factorial(set.n).and_then(|f| f.checked_mul(order)),
        _ => None,
    };
    ClassificationReport {
        n: set.n,
        size: set.len(),
        generates_sn,
        minimal,
        shape: shape_of(&t, guards),
        transposition_graph_girth: t_girth,
        aut_t_order,
        predicted_edge_transitive,
        predicted_aut_order,
    }
}
