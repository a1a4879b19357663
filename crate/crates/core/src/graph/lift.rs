//! Node splitting: lifting a colored bipartite graph into a Tanner graph.
//!
//! A proper d-edge-coloring gives every vertex one socket per color.
//! Splitting left vertices by a partition P of the colors and right
//! vertices by a partition Q turns each colored edge into a Tanner edge
//! between the sub-vertices owning its color; the protograph realized this
//! way has base matrix B(j,i) = |P_i and Q_j| and is copied once per left
//! vertex of the source graph.

use super::{girth, Girth, GraphError, RegularGraph, Side};
use crate::proto::{BaseMatrix, Protograph};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Disjoint color classes for the two sides of a node split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocketPartition {
    d: u32,
    variable_classes: Vec<Vec<u32>>,
    check_classes: Vec<Vec<u32>>,
    variable_class_of: Vec<u32>,
    check_class_of: Vec<u32>,
}

impl SocketPartition {
    /// Validates that each side partitions the colors `1..=d` into
    /// non-empty classes.
    pub fn new(
        d: u32,
        variable_classes: Vec<Vec<u32>>,
        check_classes: Vec<Vec<u32>>,
    ) -> Result<Self, GraphError> {
        let variable_class_of = index_classes(d, &variable_classes, Side::Variable)?;
        let check_class_of = index_classes(d, &check_classes, Side::Check)?;
        Ok(SocketPartition {
            d,
            variable_classes,
            check_classes,
            variable_class_of,
            check_class_of,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of variable-side classes (sub-vertices per left vertex).
    pub fn l(&self) -> usize {
        self.variable_classes.len()
    }

    /// Number of check-side classes (sub-vertices per right vertex).
    pub fn r(&self) -> usize {
        self.check_classes.len()
    }

    pub fn variable_classes(&self) -> &[Vec<u32>] {
        &self.variable_classes
    }

    pub fn check_classes(&self) -> &[Vec<u32>] {
        &self.check_classes
    }

    /// Index of the variable-side class containing color `s`.
    pub fn variable_class_of(&self, s: u32) -> usize {
        self.variable_class_of[(s - 1) as usize] as usize
    }

    /// Index of the check-side class containing color `s`.
    pub fn check_class_of(&self, s: u32) -> usize {
        self.check_class_of[(s - 1) as usize] as usize
    }
}

fn index_classes(
    d: u32,
    classes: &[Vec<u32>],
    side: Side,
) -> Result<Vec<u32>, GraphError> {
    let mut class_of = vec![u32::MAX; d as usize];
    for (idx, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(GraphError::PartitionEmptyClass { side, index: idx });
        }
        for &s in class {
            if s == 0 || s > d {
                return Err(GraphError::PartitionColorMissing { side, color: s });
            }
            if class_of[(s - 1) as usize] != u32::MAX {
                return Err(GraphError::PartitionColorRepeat { side, color: s });
            }
            class_of[(s - 1) as usize] = idx as u32;
        }
    }
    for (s0, &c) in class_of.iter().enumerate() {
        if c == u32::MAX {
            return Err(GraphError::PartitionColorMissing { side, color: s0 as u32 + 1 });
        }
    }
    Ok(class_of)
}

/// Colors the protograph's edges 1..d in their deterministic order and
/// reads off the partitions: P_i holds the colors at variable i, Q_j those
/// at check j. Fails only when a node has degree 0 (its class would be
/// empty).
pub fn protograph_to_partitions(p: &Protograph) -> Result<SocketPartition, GraphError> {
    let variable_classes: Vec<Vec<u32>> = (0..p.base().cols())
        .map(|i| p.edges_at_variable(i).iter().map(|&e| e as u32 + 1).collect())
        .collect();
    let check_classes: Vec<Vec<u32>> = (0..p.base().rows())
        .map(|j| p.edges_at_check(j).iter().map(|&e| e as u32 + 1).collect())
        .collect();
    SocketPartition::new(p.edges().len() as u32, variable_classes, check_classes)
}

/// Intersection-count matrix: B(j,i) = |P_i and Q_j|.
pub fn partitions_to_matrix(sp: &SocketPartition) -> BaseMatrix {
    let rows = sp.r();
    let cols = sp.l();
    let mut entries = vec![0u32; rows * cols];
    for s in 1..=sp.d() {
        let i = sp.variable_class_of(s);
        let j = sp.check_class_of(s);
        entries[j * cols + i] += 1;
    }
    BaseMatrix::new(rows, cols, entries).expect("partition sides are non-empty")
}

/// One lifted edge; `edge_type` is the socket color it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TannerEdge {
    pub variable: u32,
    pub check: u32,
    pub edge_type: u32,
}

/// Where a Tanner graph came from.
#[derive(Clone, Debug)]
pub struct Lineage {
    /// Human-readable source graph description.
    pub source: String,
    pub partition: SocketPartition,
}

/// Bipartite variable/check graph produced by node splitting.
///
/// Variable `id` encodes protograph variable `id % l` in copy `id / l`,
/// and likewise for checks with `r`; the copy index is the source-graph
/// vertex the sub-vertex came from.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    variable_count: usize,
    check_count: usize,
    edges: Vec<TannerEdge>,
    girth_lower_bound: Girth,
    copies: usize,
    lineage: Option<Lineage>,
}

impl TannerGraph {
    pub fn new(
        variable_count: usize,
        check_count: usize,
        edges: Vec<TannerEdge>,
        girth_lower_bound: Girth,
        copies: usize,
        lineage: Option<Lineage>,
    ) -> Result<Self, GraphError> {
        for (e, edge) in edges.iter().enumerate() {
            if edge.variable as usize >= variable_count
                || edge.check as usize >= check_count
            {
                return Err(GraphError::EndpointOutOfRange { edge: e });
            }
        }
        Ok(TannerGraph {
            variable_count,
            check_count,
            edges,
            girth_lower_bound,
            copies,
            lineage,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn check_count(&self) -> usize {
        self.check_count
    }

    pub fn edges(&self) -> &[TannerEdge] {
        &self.edges
    }

    /// Girth of the source graph; node splitting cannot go below it.
    pub fn girth_lower_bound(&self) -> Girth {
        self.girth_lower_bound
    }

    /// Number of protograph copies in this lifting.
    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Split provenance, if this graph was produced by `node_split`.
    pub fn lineage(&self) -> Option<&Lineage> {
        self.lineage.as_ref()
    }

    /// Edge ids at each variable, ascending.
    pub fn variable_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.variable_count];
        for (e, edge) in self.edges.iter().enumerate() {
            adj[edge.variable as usize].push(e as u32);
        }
        adj
    }

    /// Edge ids at each check, ascending.
    pub fn check_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.check_count];
        for (e, edge) in self.edges.iter().enumerate() {
            adj[edge.check as usize].push(e as u32);
        }
        adj
    }
}

/// Splits the colored bipartite graph `g` by the partition `sp`.
///
/// Left vertex `u` becomes sub-vertices `u*l .. u*l+l`, right vertex `w`
/// becomes `(w - left)*r ..`, and the edge of color `s` joins the
/// sub-vertices whose classes contain `s`, with `edge_type = s`. The
/// result is a lifting of `partitions_to_matrix(sp)` with one copy per
/// left vertex.
pub fn node_split(
    g: &RegularGraph,
    sp: &SocketPartition,
    source: &str,
) -> Result<TannerGraph, GraphError> {
    let Some(left) = g.left_count() else {
        return Err(GraphError::NotBipartite);
    };
    let Some(colors) = g.socket_colors() else {
        return Err(GraphError::MissingColors);
    };
    if sp.d() as usize != g.degree() {
        return Err(GraphError::PartitionMismatch {
            graph_degree: g.degree(),
            partition_d: sp.d(),
        });
    }
    let right = g.vertex_count() - left;
    debug_assert_eq!(left, right, "regular bipartite graphs have equal sides");
    let (l, r) = (sp.l(), sp.r());
    let edges = g
        .edges()
        .iter()
        .zip(colors)
        .map(|(&(u, w), &s)| TannerEdge {
            variable: u * l as u32 + sp.variable_class_of(s) as u32,
            check: (w - left as u32) * r as u32 + sp.check_class_of(s) as u32,
            edge_type: s,
        })
        .collect();
    TannerGraph::new(
        left * l,
        right * r,
        edges,
        girth(g),
        left,
        Some(Lineage { source: String::from(source), partition: sp.clone() }),
    )
}

/// Exact girth of a Tanner graph, measured on the bipartite
/// variable/check graph itself.
pub fn tanner_girth(t: &TannerGraph) -> Girth {
    let nv = t.variable_count();
    let mut adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nv + t.check_count()];
    for (e, edge) in t.edges().iter().enumerate() {
        adjacency[edge.variable as usize].push((nv as u32 + edge.check, e as u32));
        adjacency[nv + edge.check as usize].push((edge.variable, e as u32));
    }
    super::girth_over(&adjacency)
}

/// Checks that `t` is a copy-and-permute lifting of `b`.
///
/// Variables group by `id % cols`, checks by `id % rows`. Between variable
/// group i and check group j there must be exactly `B(j,i) * copies`
/// edges, split into `B(j,i)` edge types, each type pairing the copies on
/// both sides bijectively (one permutation per protograph edge).
pub fn verify_lifting(t: &TannerGraph, b: &BaseMatrix) -> bool {
    let (rows, cols) = (b.rows(), b.cols());
    if rows == 0 || cols == 0 {
        return false;
    }
    if t.variable_count() % cols != 0 || t.check_count() % rows != 0 {
        return false;
    }
    let copies = t.variable_count() / cols;
    if copies == 0 || t.check_count() / rows != copies {
        return false;
    }
    use alloc::collections::BTreeMap;
    let mut groups: BTreeMap<(u32, u32), BTreeMap<u32, Vec<(u32, u32)>>> = BTreeMap::new();
    for edge in t.edges() {
        let i = edge.variable % cols as u32;
        let copy_v = edge.variable / cols as u32;
        let j = edge.check % rows as u32;
        let copy_c = edge.check / rows as u32;
        groups
            .entry((i, j))
            .or_default()
            .entry(edge.edge_type)
            .or_default()
            .push((copy_v, copy_c));
    }
    for i in 0..cols as u32 {
        for j in 0..rows as u32 {
            let expected = b.get(j as usize, i as usize) as usize;
            let Some(types) = groups.get(&(i, j)) else {
                if expected != 0 {
                    return false;
                }
                continue;
            };
            if types.len() != expected {
                return false;
            }
            for pairs in types.values() {
                if pairs.len() != copies {
                    return false;
                }
                let mut seen_v = vec![false; copies];
                let mut seen_c = vec![false; copies];
                for &(cv, cc) in pairs {
                    if seen_v[cv as usize] || seen_c[cc as usize] {
                        return false;
                    }
                    seen_v[cv as usize] = true;
                    seen_c[cc as usize] = true;
                }
            }
        }
    }
    true
}
