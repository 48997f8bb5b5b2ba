//! Containers: sets of internally disjoint paths between two vertices.
//!
//! [`hypercube_container`] and [`folded_container`] build maximum-width
//! containers in Qₙ and FQₙ directly from edge-label sequences. Both work in
//! a normal form where `x` is the zero word and `y`'s ones occupy a block of
//! coordinates; the normal form is undone by relabeling generators, since
//! translations and coordinate permutations are automorphisms of both
//! graphs.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Container {
    pub source: usize,
    pub target: usize,
    pub paths: Vec<Vec<usize>>,
}

fn ratio_str<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl Container {
    pub fn new(source: usize, target: usize, paths: Vec<Vec<usize>>) -> Self {
        Container {
            source,
            target,
            paths,
        }
    }

    pub fn width(&self) -> usize {
        self.paths.len()
    }

    /// Length (edge count) of the longest path.
    pub fn length(&self) -> usize {
        self.paths
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    pub fn path_lengths(&self) -> Vec<usize> {
        self.paths
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .collect()
    }

    fn total_length(&self) -> u64 {
        self.path_lengths().iter().sum::<usize>() as u64
    }

    pub fn avg_length(&self) -> Ratio<u64> {
        Ratio::new(self.total_length(), (self.width() as u64).max(1))
    }

    /// Width divided by average length.
    pub fn quality(&self) -> Ratio<u64> {
        let w = self.width() as u64;
        Ratio::new(w * w, self.total_length().max(1))
    }

    /// Relabels every vertex through `map`.
    pub fn map_vertices(&self, map: impl Fn(usize) -> usize) -> Container {
        Container {
            source: map(self.source),
            target: map(self.target),
            paths: self
                .paths
                .iter()
                .map(|p| p.iter().map(|&v| map(v)).collect())
                .collect(),
        }
    }

    pub fn verify(&self, graph: &Graph) -> VerificationReport {
        verify_container(graph, self)
    }

    /// DOT drawing of the container's paths, one colour per path.
    pub fn to_dot(&self, graph: &Graph) -> String {
        const COLORS: [&str; 8] = [
            "red",
            "blue",
            "darkgreen",
            "orange",
            "purple",
            "brown",
            "magenta",
            "cyan",
        ];
        let mut out = String::from("graph container {\n");
        let mut vertices: Vec<usize> = self.paths.iter().flatten().copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        for v in vertices {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", graph.label(v));
        }
        for (i, path) in self.paths.iter().enumerate() {
            for w in path.windows(2) {
                let _ = writeln!(
                    out,
                    "  {} -- {} [color={}, label=\"p{i}\"];",
                    w[0],
                    w[1],
                    COLORS[i % COLORS.len()]
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub width: usize,
    pub length: usize,
    #[serde(serialize_with = "ratio_str")]
    pub avg_length: Ratio<u64>,
    #[serde(serialize_with = "ratio_str")]
    pub quality: Ratio<u64>,
    /// Per-path problems as `(path index, description)`.
    pub path_errors: Vec<(usize, String)>,
    /// First pair of paths sharing an internal vertex: `(i, j, vertex)`.
    pub conflict: Option<(usize, usize, usize)>,
}

/// Checks every path and pairwise internal disjointness.
pub fn verify_container(graph: &Graph, c: &Container) -> VerificationReport {
    let n = graph.vertex_count();
    let mut path_errors = Vec::new();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut conflict = None;
    let mut direct = 0;
    for (i, path) in c.paths.iter().enumerate() {
        if path.len() < 2 || path[0] != c.source || *path.last().unwrap() != c.target {
            path_errors.push((i, "does not run from source to target".to_string()));
            continue;
        }
        if path.iter().any(|&v| v >= n) {
            path_errors.push((i, "vertex out of range".to_string()));
            continue;
        }
        if let Some(w) = path.windows(2).find(|w| !graph.has_edge(w[0], w[1])) {
            path_errors.push((i, format!("{} and {} are not adjacent", w[0], w[1])));
        }
        if path.len() == 2 {
            direct += 1;
            if direct > 1 {
                path_errors.push((i, "repeats the direct edge".to_string()));
            }
        }
        let inner = &path[1..path.len() - 1];
        let mut seen = std::collections::HashSet::new();
        for &v in inner {
            if v == c.source || v == c.target || !seen.insert(v) {
                path_errors.push((i, format!("revisits vertex {v}")));
                break;
            }
            if let Some(&j) = owner.get(&v) {
                if conflict.is_none() {
                    conflict = Some((j, i, v));
                }
            } else {
                owner.insert(v, i);
            }
        }
    }
    VerificationReport {
        valid: path_errors.is_empty() && conflict.is_none() && !c.paths.is_empty(),
        width: c.width(),
        length: c.length(),
        avg_length: c.avg_length(),
        quality: c.quality(),
        path_errors,
        conflict,
    }
}

/// Edge label in the normal form: a unit vector `e_k` (1-based) or `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Unit(usize),
    All,
}

fn check_words(n: usize, x: u64, y: u64) -> Result<()> {
    if n == 0 || n > 63 {
        return Err(Error::InvalidParameter(format!(
            "word length {n} outside 1..=63"
        )));
    }
    if x >> n != 0 || y >> n != 0 {
        return Err(Error::InvalidParameter(format!("words exceed length {n}")));
    }
    if x == y {
        return Err(Error::InvalidParameter("source equals target".into()));
    }
    Ok(())
}

/// Walks each label sequence from `x`, where normal-form coordinate `k` is
/// the actual coordinate `order[k-1]` (1-based, leftmost = 1).
fn realize(n: usize, x: u64, y: u64, order: &[usize], sequences: Vec<Vec<Step>>) -> Container {
    let all = (1u64 << n) - 1;
    let mask = |step: Step| match step {
        Step::Unit(k) => 1u64 << (n - order[k - 1]),
        Step::All => all,
    };
    let paths = sequences
        .into_iter()
        .map(|seq| {
            let mut v = x;
            let mut path = vec![v as usize];
            for step in seq {
                v ^= mask(step);
                path.push(v as usize);
            }
            debug_assert_eq!(v, y);
            path
        })
        .collect();
    Container::new(x as usize, y as usize, paths)
}

/// Coordinates (1-based) where `x` and `y` differ, then the rest; stable.
fn ones_first(n: usize, diff: u64) -> Vec<usize> {
    let bit = |i: usize| diff >> (n - i) & 1 == 1;
    (1..=n)
        .filter(|&i| bit(i))
        .chain((1..=n).filter(|&i| !bit(i)))
        .collect()
}

fn cyclic_shifts(base: &[Step]) -> Vec<Vec<Step>> {
    (0..base.len())
        .map(|j| base[j..].iter().chain(&base[..j]).copied().collect())
        .collect()
}

/// Width-n container in Qₙ between words `x` and `y` (vertex ids are word
/// values): r paths of length r and n−r of length r+2, r the Hamming distance.
pub fn hypercube_container(n: usize, x: u64, y: u64) -> Result<Container> {
    check_words(n, x, y)?;
    let diff = x ^ y;
    let r = diff.count_ones() as usize;
    let order = ones_first(n, diff);
    let base: Vec<Step> = (1..=r).map(Step::Unit).collect();
    let mut sequences = cyclic_shifts(&base);
    for i in r + 1..=n {
        let mut seq = vec![Step::Unit(i)];
        seq.extend(&base);
        seq.push(Step::Unit(i));
        sequences.push(seq);
    }
    Ok(realize(n, x, y, &order, sequences))
}

/// Width-(n+1) container in FQₙ (n ≥ 4) between words `x` and `y`.
///
/// For r ≤ ⌈n/2⌉ the paths have length r or r+2; otherwise the antipodal
/// generator shortcuts to length at most ⌊n/2⌋+2.
pub fn folded_container(n: usize, x: u64, y: u64) -> Result<Container> {
    if n < 4 {
        return Err(Error::InvalidParameter(
            "folded containers need n ≥ 4".into(),
        ));
    }
    check_words(n, x, y)?;
    let diff = x ^ y;
    let r = diff.count_ones() as usize;
    if r <= n.div_ceil(2) {
        let order = ones_first(n, diff);
        let base: Vec<Step> = (1..=r).map(Step::Unit).collect();
        let mut sequences = cyclic_shifts(&base);
        for i in r + 1..=n {
            let mut seq = vec![Step::Unit(i)];
            seq.extend(&base);
            seq.push(Step::Unit(i));
            sequences.push(seq);
        }
        let mut via_all = vec![Step::All];
        via_all.extend(&base);
        via_all.push(Step::All);
        sequences.push(via_all);
        Ok(realize(n, x, y, &order, sequences))
    } else {
        // normal form 0…0 1…1: the n−r agreeing coordinates come first
        let m = n - r;
        let order = ones_first(n, !diff & ((1u64 << n) - 1));
        let mut base = vec![Step::All];
        base.extend((1..=m).map(Step::Unit));
        let mut sequences = cyclic_shifts(&base);
        for i in m + 1..=n {
            let mut seq = vec![Step::Unit(i)];
            seq.extend(&base);
            seq.push(Step::Unit(i));
            sequences.push(seq);
        }
        Ok(realize(n, x, y, &order, sequences))
    }
}

/// Maps word-valued container vertices onto a graph whose vertex labels
/// are the words as bit strings (as produced for Qₙ and FQₙ).
pub fn embed_word_container(c: &Container, graph: &Graph, n: usize) -> Result<Container> {
    let map = word_vertex_map(graph, n)?;
    Ok(c.map_vertices(|w| map[w]))
}

/// `map[w]` is the vertex labelled by the n-bit word `w`.
pub fn word_vertex_map(graph: &Graph, n: usize) -> Result<Vec<usize>> {
    let labels = graph
        .vertex_labels()
        .ok_or_else(|| Error::Unsupported("graph has no word labels".into()))?;
    if labels.len() != 1usize << n {
        return Err(Error::InvalidParameter(format!(
            "graph does not have 2^{n} vertices"
        )));
    }
    let mut map = vec![usize::MAX; labels.len()];
    for (v, label) in labels.iter().enumerate() {
        let w = u64::from_str_radix(label, 2)
            .map_err(|_| Error::Parse(format!("label `{label}` is not a word")))?;
        if label.len() != n || w as usize >= map.len() {
            return Err(Error::Parse(format!(
                "label `{label}` is not a {n}-bit word"
            )));
        }
        map[w as usize] = v;
    }
    Ok(map)
}

pub fn parse_word(text: &str, n: usize) -> Result<u64> {
    let text = text.trim();
    if text.len() != n || !text.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parse(format!("`{text}` is not a {n}-bit word")));
    }
    Ok(u64::from_str_radix(text, 2).expect("checked"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn graph_for(folded: bool, n: usize) -> Graph {
        let spec = if folded {
            FamilySpec::Folded(n)
        } else {
            FamilySpec::Hypercube(n)
        };
        build_family(&spec, 1 << 20).unwrap()
    }

    fn sorted_lengths(c: &Container) -> Vec<usize> {
        let mut l = c.path_lengths();
        l.sort_unstable();
        l
    }

    fn check(c: &Container, folded: bool, n: usize) -> VerificationReport {
        let g = graph_for(folded, n);
        embed_word_container(c, &g, n).unwrap().verify(&g)
    }

    #[test]
    fn hypercube_examples() {
        let c = hypercube_container(3, 0b000, 0b111).unwrap();
        assert_eq!(sorted_lengths(&c), vec![3, 3, 3]);
        assert!(check(&c, false, 3).valid);

        let c = hypercube_container(6, 0, 0b011111).unwrap();
        assert_eq!(sorted_lengths(&c), vec![5, 5, 5, 5, 5, 7]);
        assert_eq!(c.quality(), Ratio::new(36, 32));
        assert!(check(&c, false, 6).valid);

        let c = hypercube_container(3, 0, 0b001).unwrap();
        assert_eq!(sorted_lengths(&c), vec![1, 3, 3]);
        assert!(check(&c, false, 3).valid);
        assert!(hypercube_container(3, 5, 5).is_err());
        assert!(hypercube_container(3, 8, 1).is_err());
    }

    #[test]
    fn folded_examples() {
        let c = folded_container(6, 0, 0b011111).unwrap();
        assert_eq!(sorted_lengths(&c), vec![2, 2, 4, 4, 4, 4, 4]);
        assert!(check(&c, true, 6).valid);

        let c = folded_container(4, 0, 0b0011).unwrap();
        assert_eq!(sorted_lengths(&c), vec![2, 2, 4, 4, 4]);
        assert!(check(&c, true, 4).valid);

        let c = folded_container(4, 0, 0b1111).unwrap();
        assert_eq!(c.width(), 5);
        assert!(c.length() <= 4);
        assert!(check(&c, true, 4).valid);
        assert!(folded_container(3, 0, 1).is_err());
    }

    /// Brute-force independence for n = 4, r = 2: no internal vertex of any
    /// path appears in another path, checked without the verifier.
    #[test]
    fn folded_r2_independence_by_brute_force() {
        for y in (0u64..16).filter(|y| y.count_ones() == 2) {
            let c = folded_container(4, 0, y).unwrap();
            for (i, p) in c.paths.iter().enumerate() {
                for (j, q) in c.paths.iter().enumerate() {
                    if i != j {
                        for v in &p[1..p.len() - 1] {
                            assert!(!q.contains(v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn verifier_pinpoints_conflicts() {
        let q3 = graph_for(false, 3);
        let t = q3.vertex_of_label("011").unwrap();
        let a = q3.vertex_of_label("001").unwrap();
        let b = q3.vertex_of_label("010").unwrap();
        let shared = Container::new(0, t, vec![vec![0, a, t], vec![0, b, t], vec![0, a, t]]);
        let report = shared.verify(&q3);
        assert!(!report.valid);
        assert_eq!(report.conflict, Some((0, 2, a)));

        let broken = Container::new(0, t, vec![vec![0, t]]);
        let report = broken.verify(&q3);
        assert!(!report.valid);
        assert_eq!(report.path_errors.len(), 1);
    }

    #[test]
    fn width_bounded_by_endpoint_degrees() {
        for spec in [
            FamilySpec::Petersen,
            FamilySpec::Hypercube(4),
            FamilySpec::Star(4),
        ] {
            let g = build_family(&spec, 1000).unwrap();
            for t in 1..g.vertex_count() {
                let c = crate::connectivity::max_independent_paths(&g, 0, t).unwrap();
                assert!(c.width() <= g.degree(0).min(g.degree(t)));
            }
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("011111", 6).unwrap(), 31);
        assert!(parse_word("0112", 4).is_err());
        assert!(parse_word("01", 3).is_err());
    }
}
