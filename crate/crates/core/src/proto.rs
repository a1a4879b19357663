//! Base matrices and protographs.
//!
//! A protograph is a small bipartite multigraph between check nodes and
//! variable nodes, stored as a base matrix `B` whose entry `B(i, j)` counts
//! the parallel edges between check `i` and variable `j`. Density evolution
//! and the graph lift both operate on the expanded edge list, so the
//! expansion order is fixed here once and for all: row-major by
//! `(check, variable)`, multiplicity index ascending. All indices are
//! 0-based.

use alloc::vec::Vec;
use core::fmt;

/// Errors from matrix construction and protograph expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProtoError {
    /// Zero rows or zero columns.
    EmptyShape,
    /// Entry vector length does not equal `rows * cols`.
    EntryCount { expected: usize, got: usize },
    /// The matrix has no edges at all; no protograph exists.
    NoEdges,
}

impl fmt::Display for ProtoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProtoError::EmptyShape => write!(f, "matrix must have at least one row and one column"),
            ProtoError::EntryCount { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            ProtoError::NoEdges => write!(f, "matrix has no edges"),
        }
    }
}

impl core::error::Error for ProtoError {}

/// Integer matrix of parallel-edge counts: rows are check nodes, columns are
/// variable nodes.
///
/// An all-zero matrix is representable (the differential-evolution optimizer
/// produces such candidates transiently); turning a matrix into a
/// [`Protograph`] is the point where at least one edge is required.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl BaseMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self, ProtoError> {
        if rows == 0 || cols == 0 {
            return Err(ProtoError::EmptyShape);
        }
        if entries.len() != rows * cols {
            return Err(ProtoError::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(BaseMatrix { rows, cols, entries })
    }

    /// Convenience constructor from row slices; panics on ragged input.
    pub fn from_rows(rows: &[&[u32]]) -> Self {
        assert!(!rows.is_empty(), "at least one row required");
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend_from_slice(row);
        }
        BaseMatrix::new(rows.len(), cols, entries).expect("shape checked above")
    }

    /// Number of check nodes.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of variable nodes.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Parallel-edge count between check `i` and variable `j`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    /// Overwrites one entry.
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.entries[i * self.cols + j] = value;
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Total edge count `d`.
    pub fn total_edges(&self) -> usize {
        self.entries.iter().map(|&e| e as usize).sum()
    }

    /// Degree of check `i` (row sum).
    pub fn check_degree(&self, i: usize) -> usize {
        (0..self.cols).map(|j| self.get(i, j) as usize).sum()
    }

    /// Degree of variable `j` (column sum).
    pub fn variable_degree(&self, j: usize) -> usize {
        (0..self.rows).map(|i| self.get(i, j) as usize).sum()
    }
}

/// One protograph edge: endpoints in the base matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProtoEdge {
    pub check: u32,
    pub variable: u32,
}

/// Base matrix plus expanded edge list and per-edge neighbor sets.
///
/// For edge `e`, `check_adjacency(e)` is the set `E_c(e)` of other edges
/// sharing `e`'s check node, and `variable_adjacency(e)` the set `E_v(e)` of
/// other edges sharing `e`'s variable node. The edge itself is excluded from
/// both sets; parallel edges between the same pair are distinct edges.
#[derive(Clone, Debug)]
pub struct Protograph {
    base: BaseMatrix,
    edges: Vec<ProtoEdge>,
    check_adjacency: Vec<Vec<u32>>,
    variable_adjacency: Vec<Vec<u32>>,
    edges_at_check: Vec<Vec<u32>>,
    edges_at_variable: Vec<Vec<u32>>,
}

impl Protograph {
    /// Expands a base matrix into its edge list, row-major by
    /// `(check, variable)` with multiplicity index ascending.
    pub fn from_matrix(base: &BaseMatrix) -> Result<Self, ProtoError> {
        if base.total_edges() == 0 {
            return Err(ProtoError::NoEdges);
        }
        let mut edges = Vec::with_capacity(base.total_edges());
        let mut edges_at_check = alloc::vec![Vec::new(); base.rows];
        let mut edges_at_variable = alloc::vec![Vec::new(); base.cols];
        for i in 0..base.rows {
            for j in 0..base.cols {
                for _ in 0..base.get(i, j) {
                    let id = edges.len() as u32;
                    edges.push(ProtoEdge {
                        check: i as u32,
                        variable: j as u32,
                    });
                    edges_at_check[i].push(id);
                    edges_at_variable[j].push(id);
                }
            }
        }
        let check_adjacency = edges
            .iter()
            .enumerate()
            .map(|(id, e)| {
                edges_at_check[e.check as usize]
                    .iter()
                    .copied()
                    .filter(|&other| other != id as u32)
                    .collect()
            })
            .collect();
        let variable_adjacency = edges
            .iter()
            .enumerate()
            .map(|(id, e)| {
                edges_at_variable[e.variable as usize]
                    .iter()
                    .copied()
                    .filter(|&other| other != id as u32)
                    .collect()
            })
            .collect();
        Ok(Protograph {
            base: base.clone(),
            edges,
            check_adjacency,
            variable_adjacency,
            edges_at_check,
            edges_at_variable,
        })
    }

    pub fn base(&self) -> &BaseMatrix {
        &self.base
    }

    /// Number of check nodes `|C|`.
    pub fn check_count(&self) -> usize {
        self.base.rows
    }

    /// Number of variable nodes `|V|`.
    pub fn variable_count(&self) -> usize {
        self.base.cols
    }

    /// Expanded edge list; `edges()[e]` is edge `e`.
    pub fn edges(&self) -> &[ProtoEdge] {
        &self.edges
    }

    /// Edge count `d = |E|`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `E_c(e)`: edges sharing edge `e`'s check node, excluding `e`.
    pub fn check_adjacency(&self, e: usize) -> &[u32] {
        &self.check_adjacency[e]
    }

    /// `E_v(e)`: edges sharing edge `e`'s variable node, excluding `e`.
    pub fn variable_adjacency(&self, e: usize) -> &[u32] {
        &self.variable_adjacency[e]
    }

    /// All edges incident to check `i`, in global edge order.
    pub fn edges_at_check(&self, i: usize) -> &[u32] {
        &self.edges_at_check[i]
    }

    /// All edges incident to variable `j`, in global edge order.
    pub fn edges_at_variable(&self, j: usize) -> &[u32] {
        &self.edges_at_variable[j]
    }

    /// Design rate `1 - |C| / |V|` as an exact rational.
    pub fn design_rate(&self) -> Rational {
        Rational::new(self.base.cols as i64 - self.base.rows as i64, self.base.cols as i64)
    }

    /// Per-node degree sums and the extremes used by the decay bound.
    pub fn degree_profile(&self) -> DegreeProfile {
        let variable_degrees: Vec<usize> =
            (0..self.base.cols).map(|j| self.base.variable_degree(j)).collect();
        let check_degrees: Vec<usize> =
            (0..self.base.rows).map(|i| self.base.check_degree(i)).collect();
        let l_min = variable_degrees.iter().copied().min().unwrap_or(0);
        let d_max_check = check_degrees.iter().copied().max().unwrap_or(0);
        DegreeProfile {
            variable_degrees,
            check_degrees,
            l_min,
            d_max_check,
        }
    }

    /// Checks that every check node is adjacent, counting multiplicity, to at
    /// most one edge incident to a degree-two variable node.
    ///
    /// A degree-two variable joined to a check by a double edge counts as two
    /// and fails: both edges land on one check, which forms a short cycle in
    /// every lifting and defeats the decay argument.
    pub fn check_chain_constraint(&self) -> ChainReport {
        let profile_cols: Vec<usize> =
            (0..self.base.cols).map(|j| self.base.variable_degree(j)).collect();
        let mut offending_checks = Vec::new();
        for i in 0..self.base.rows {
            let touches: u32 = (0..self.base.cols)
                .filter(|&j| profile_cols[j] == 2)
                .map(|j| self.base.get(i, j))
                .sum();
            if touches >= 2 {
                offending_checks.push(i);
            }
        }
        ChainReport {
            pass: offending_checks.is_empty(),
            offending_checks,
        }
    }
}

/// Result of the degree-two chain-constraint check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub pass: bool,
    /// Checks adjacent to two or more degree-two variable edges.
    pub offending_checks: Vec<usize>,
}

/// Column and row degree sums of a base matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub variable_degrees: Vec<usize>,
    pub check_degrees: Vec<usize>,
    /// Minimum variable degree (0 if some column is empty).
    pub l_min: usize,
    /// Maximum check degree, the `d` of the decay bound.
    pub d_max_check: usize,
}

/// Exact rational with reduced terms and positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let sign = if den < 0 { -1 } else { 1 };
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}
