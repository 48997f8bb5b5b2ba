//! Cayley graphs of `Z₂ʳ` generated by the columns of a binary matrix.
//!
//! Row `i` of an `r × n` matrix is word coordinate `i + 1`, so column `j`
//! becomes the generator whose leftmost bit is the top entry.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{cayley_graph, CayleyGraph};
use crate::groups::{GeneratingSet, GroupElement, GroupSpec};

/// A dense `rows × cols` matrix over F₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BinaryMatrix {
    /// Builds from row-major entries.
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{} entries for a {rows}×{cols} matrix",
                bits.len()
            )));
        }
        Ok(BinaryMatrix { rows, cols, bits })
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("rows of unequal length".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn identity(r: usize) -> Self {
        let bits = (0..r * r).map(|k| k / r == k % r).collect();
        BinaryMatrix {
            rows: r,
            cols: r,
            bits,
        }
    }

    /// One row per line of `0`/`1` characters; blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Parse(format!(
                            "unexpected character `{other}` in matrix row"
                        ))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("matrix has no rows".into()));
        }
        Self::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    /// Column `j` as a word of length `rows` (top entry leftmost).
    pub fn column(&self, j: usize) -> u64 {
        (0..self.rows).fold(0u64, |acc, i| acc << 1 | u64::from(self.get(i, j)))
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Rank over F₂ by elimination on the rows.
pub fn rank_f2(m: &BinaryMatrix) -> usize {
    // rows packed into words, one bit per column (cols may exceed 64)
    let words = m.cols.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..m.cols {
                if m.get(i, j) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `[I_{n−1} | 1]`, the parity-check matrix of the length-`n` repetition code.
pub fn repetition_check_matrix(n: usize) -> Result<BinaryMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "repetition code needs n ≥ 2".into(),
        ));
    }
    let r = n - 1;
    let bits = (0..r)
        .flat_map(|i| (0..n).map(move |j| j == i || j == r))
        .collect();
    BinaryMatrix::new(r, n, bits)
}

/// The `r × (2ʳ − 1)` matrix whose columns are all nonzero words, in
/// increasing order.
pub fn hamming_check_matrix(r: usize) -> Result<BinaryMatrix> {
    if !(1..=16).contains(&r) {
        return Err(Error::InvalidParameter(
            "Hamming check matrix needs 1 ≤ r ≤ 16".into(),
        ));
    }
    let cols = (1usize << r) - 1;
    let bits = (0..r)
        .flat_map(|i| (1..=cols).map(move |c| c >> (r - 1 - i) & 1 == 1))
        .collect();
    BinaryMatrix::new(r, cols, bits)
}

/// A Cayley graph built from a matrix, with what had to be adjusted.
#[derive(Clone, Debug)]
pub struct MatrixCayley {
    pub cayley: CayleyGraph,
    pub rank: usize,
    /// Rank below `r`: the graph lives on the column span, a proper
    /// subgroup of `Z₂ʳ`.
    pub subgroup_graph: bool,
    pub warnings: Vec<String>,
}

/// `Cay(Z₂ʳ, columns of M)`.
///
/// Zero columns are rejected. Repeated columns are kept once, with a warning.
pub fn cayley_from_matrix(m: &BinaryMatrix, closure_guard: usize) -> Result<MatrixCayley> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    if m.rows > m.cols {
        return Err(Error::InvalidParameter(format!(
            "{}×{} matrix has more rows than columns",
            m.rows, m.cols
        )));
    }
    if m.rows > 63 {
        return Err(Error::InvalidParameter("at most 63 rows supported".into()));
    }
    let mut warnings = Vec::new();
    let mut gens: Vec<GroupElement> = Vec::new();
    let mut seen: Vec<u64> = Vec::new();
    for (j, c) in m.columns().into_iter().enumerate() {
        if c == 0 {
            return Err(Error::InvalidParameter(format!("column {} is zero", j + 1)));
        }
        if let Some(first) = seen.iter().position(|&d| d == c) {
            warnings.push(format!(
                "column {} repeats column {}; kept once",
                j + 1,
                first + 1
            ));
            continue;
        }
        seen.push(c);
        gens.push(GroupElement::word(c, m.rows)?);
    }
    let rank = rank_f2(m);
    let subgroup_graph = rank < m.rows;
    if subgroup_graph {
        warnings.push(format!(
            "rank {rank} < {}: graph spans a subgroup of order 2^{rank}",
            m.rows
        ));
    }
    let set = GeneratingSet::new(GroupSpec::Binary(m.rows), gens)?;
    let cayley = cayley_graph(&set, closure_guard)?;
    Ok(MatrixCayley {
        cayley,
        rank,
        subgroup_graph,
        warnings,
    })
}

/// Outcome of [`column_sum_condition`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnSumCheck {
    pub holds: bool,
    /// Column indices `(a, b, c)` with `a < b` and `col_a + col_b = col_c`.
    pub witness: Option<(usize, usize, usize)>,
}

/// Whether no column is the sum of two other columns.
///
/// Pairs are of distinct column positions; the third column must sit at a
/// position different from both.
pub fn column_sum_condition(m: &BinaryMatrix) -> ColumnSumCheck {
    let cols = m.columns();
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            let sum = cols[a] ^ cols[b];
            if let Some(c) = (0..cols.len()).find(|&c| c != a && c != b && cols[c] == sum) {
                return ColumnSumCheck {
                    holds: false,
                    witness: Some((a, b, c)),
                };
            }
        }
    }
    ColumnSumCheck {
        holds: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::vertex_connectivity;
    use crate::graph::{build_family, FamilySpec};
    use crate::guard::Guards;
    use crate::metrics::degree_stats;
    use crate::symmetry::graph_isomorphic;
    use proptest::prelude::*;

    fn matrix(text: &str) -> BinaryMatrix {
        BinaryMatrix::parse(text).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let m = matrix("# check matrix\n1 0 1\n011 # second row\n");
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.to_string(), "101\n011\n");
        assert_eq!(m.column(0), 0b10);
        assert_eq!(m.column(2), 0b11);
        assert!(BinaryMatrix::parse("10\n1\n").is_err());
        assert!(BinaryMatrix::parse("12\n").is_err());
        assert!(BinaryMatrix::parse("# nothing\n").is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_f2(&BinaryMatrix::identity(5)), 5);
        assert_eq!(rank_f2(&repetition_check_matrix(5).unwrap()), 4);
        assert_eq!(rank_f2(&matrix("111\n111\n111")), 1);
        assert_eq!(rank_f2(&matrix("110\n011\n101")), 2);
        assert_eq!(rank_f2(&hamming_check_matrix(3).unwrap()), 3);
        let wide =
            BinaryMatrix::new(2, 70, (0..140).map(|k| k == 69 || k == 70).collect()).unwrap();
        assert_eq!(rank_f2(&wide), 2);
        for n in 2..12 {
            assert_eq!(rank_f2(&repetition_check_matrix(n).unwrap()), n - 1);
        }
    }

    #[test]
    fn repetition_matrix_layout() {
        assert_eq!(repetition_check_matrix(2).unwrap().to_string(), "11\n");
        assert_eq!(
            repetition_check_matrix(5).unwrap().to_string(),
            "10001\n01001\n00101\n00011\n"
        );
        assert!(repetition_check_matrix(1).is_err());
    }

    #[test]
    fn matrix_cayley_special_cases() {
        let g = Guards::default();
        let q4 = cayley_from_matrix(&BinaryMatrix::identity(4), 100).unwrap();
        let model = build_family(&FamilySpec::Hypercube(4), 100).unwrap();
        assert!(graph_isomorphic(q4.cayley.graph(), &model, &g)
            .unwrap()
            .is_some());

        let fq4 = cayley_from_matrix(&repetition_check_matrix(5).unwrap(), 100).unwrap();
        assert_eq!(
            (
                fq4.cayley.graph().vertex_count(),
                fq4.cayley.graph().edge_count()
            ),
            (16, 40)
        );
        let model = build_family(&FamilySpec::Folded(4), 100).unwrap();
        assert!(graph_isomorphic(fq4.cayley.graph(), &model, &g)
            .unwrap()
            .is_some());

        let k8 = cayley_from_matrix(&hamming_check_matrix(3).unwrap(), 100).unwrap();
        assert!(k8.cayley.graph().is_complete());
        assert_eq!(k8.cayley.graph().vertex_count(), 8);
    }

    #[test]
    fn matrix_cayley_flags() {
        assert!(cayley_from_matrix(&matrix("10\n00"), 100).is_err());
        assert!(cayley_from_matrix(&matrix("1\n1"), 100).is_err());

        let dup = cayley_from_matrix(&matrix("1001\n0110"), 100).unwrap();
        assert_eq!(dup.warnings.len(), 2);
        assert_eq!(dup.cayley.generators().len(), 2);
        assert!(!dup.subgroup_graph);

        let sub = cayley_from_matrix(&matrix("111\n111"), 100).unwrap();
        assert!(sub.subgroup_graph);
        assert_eq!(sub.rank, 1);
        assert_eq!(sub.cayley.graph().vertex_count(), 2);
    }

    #[test]
    fn column_sums() {
        assert!(column_sum_condition(&BinaryMatrix::identity(4)).holds);
        let hamming = column_sum_condition(&hamming_check_matrix(3).unwrap());
        assert!(!hamming.holds);
        // 001 + 010 = 011
        assert_eq!(hamming.witness, Some((0, 1, 2)));
        for n in 4..10 {
            assert!(column_sum_condition(&repetition_check_matrix(n).unwrap()).holds);
        }
        // n = 3: 10 + 01 = 11
        assert!(!column_sum_condition(&repetition_check_matrix(3).unwrap()).holds);
    }

    fn arb_matrix() -> impl Strategy<Value = BinaryMatrix> {
        (1usize..=6, 0usize..=4).prop_flat_map(|(r, extra)| {
            let n = (r + extra).min(10);
            proptest::collection::vec(1u64..(1 << r), n).prop_map(move |cols| {
                let bits = (0..r)
                    .flat_map(|i| cols.iter().map(move |c| c >> (r - 1 - i) & 1 == 1))
                    .collect();
                BinaryMatrix::new(r, n, bits).unwrap()
            })
        })
    }

    fn random_invertible(r: usize, seed: u64) -> Vec<u64> {
        // columns of an invertible r×r matrix, retried until independent
        let mut state = seed | 1;
        loop {
            let cols: Vec<u64> = (0..r)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    state % (1 << r)
                })
                .collect();
            let m = BinaryMatrix::new(
                r,
                r,
                (0..r)
                    .flat_map(|i| cols.iter().map(move |c| c >> (r - 1 - i) & 1 == 1))
                    .collect(),
            )
            .unwrap();
            if rank_f2(&m) == r {
                return cols;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn column_condition_gives_optimal_connectivity(m in arb_matrix()) {
            prop_assume!(rank_f2(&m) == m.rows());
            let built = cayley_from_matrix(&m, 1000).unwrap();
            if column_sum_condition(&m).holds {
                let g = built.cayley.graph();
                prop_assert_eq!(vertex_connectivity(g).0, degree_stats(g).min);
            }
        }

        #[test]
        fn full_rank_square_is_hypercube(seed in any::<u64>(), r in 1usize..=4) {
            let cols = random_invertible(r, seed);
            let bits = (0..r).flat_map(|i| cols.iter().map(move |c| c >> (r - 1 - i) & 1 == 1)).collect();
            let m = BinaryMatrix::new(r, r, bits).unwrap();
            let built = cayley_from_matrix(&m, 100).unwrap();
            let model = build_family(&FamilySpec::Hypercube(r), 100).unwrap();
            prop_assert!(graph_isomorphic(built.cayley.graph(), &model, &Guards::default()).unwrap().is_some());
        }

        #[test]
        fn linear_image_is_isomorphic(m in arb_matrix(), seed in any::<u64>()) {
            prop_assume!(m.rows() <= 4 && rank_f2(&m) == m.rows());
            let r = m.rows();
            let theta = random_invertible(r, seed);
            // θ(c) = Σ c_i θ_i over the set bits of c
            let apply = |c: u64| (0..r).filter(|&i| c >> (r - 1 - i) & 1 == 1).fold(0, |acc, i| acc ^ theta[i]);
            let image: Vec<u64> = m.columns().into_iter().map(apply).collect();
            let bits = (0..r).flat_map(|i| image.iter().map(move |c| c >> (r - 1 - i) & 1 == 1)).collect();
            let m2 = BinaryMatrix::new(r, m.cols(), bits).unwrap();
            let a = cayley_from_matrix(&m, 100).unwrap();
            let b = cayley_from_matrix(&m2, 100).unwrap();
            prop_assert!(graph_isomorphic(a.cayley.graph(), b.cayley.graph(), &Guards::default()).unwrap().is_some());
        }
    }
}
