//! Regular-graph machinery for deterministic large-girth constructions.
//!
//! The pipeline proceeds from a regular source graph (an algebraic Cayley
//! graph or a seeded random bipartite one) through girth-preserving
//! transforms: bipartite double cover, degree splitting, and the
//! node-splitting lift that turns a colored bipartite graph into a Tanner
//! graph for a given protograph. Girth is computed exactly, so every
//! preservation claim in this module is checked rather than assumed.
//!
//! Vertices are `u32` ids. Bipartite graphs keep their left class in the
//! id prefix `0..left_count` and store every edge as (left, right).

mod lift;
mod lps;
mod random;

pub use lift::{
    node_split, partitions_to_matrix, protograph_to_partitions, tanner_girth,
    verify_lifting, Lineage, SocketPartition, TannerEdge, TannerGraph,
};
pub use lps::{lps_bipartite, lps_generate, LpsError, LpsParams};
pub use random::{edge_coloring, random_regular_bipartite};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Length of the shortest cycle. `Finite` orders below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Structural and operational failures of graph construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    EndpointOutOfRange { edge: usize },
    DegreeMismatch { vertex: u32, got: usize, expected: usize },
    SidesNotDisjoint { edge: usize },
    BadLeftCount { left_count: usize, vertex_count: usize },
    ColorCountMismatch { got: usize, expected: usize },
    ColorOutOfRange { edge: usize },
    ColorClash { vertex: u32 },
    NotBipartite,
    MissingColors,
    NonDivisorDegree { degree: usize, d: usize },
    PartitionMismatch { graph_degree: usize, partition_d: u32 },
    PartitionEmptyClass { side: Side, index: usize },
    PartitionColorRepeat { side: Side, color: u32 },
    PartitionColorMissing { side: Side, color: u32 },
    DegreeTooSmall { d: usize },
    ZeroHalfSize,
    GirthBudgetExhausted { attempts: usize, girth_floor: u32 },
}

/// Which side of a socket partition a diagnostic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Variable,
    Check,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Variable => write!(f, "variable"),
            Side::Check => write!(f, "check"),
        }
    }
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::EndpointOutOfRange { edge } => {
                write!(f, "edge {edge} has an endpoint outside the vertex range")
            }
            GraphError::DegreeMismatch { vertex, got, expected } => {
                write!(f, "vertex {vertex} has degree {got}, expected {expected}")
            }
            GraphError::SidesNotDisjoint { edge } => {
                write!(f, "edge {edge} does not join the left class to the right class")
            }
            GraphError::BadLeftCount { left_count, vertex_count } => {
                write!(
                    f,
                    "left class size {left_count} must be positive and below {vertex_count}"
                )
            }
            GraphError::ColorCountMismatch { got, expected } => {
                write!(f, "{got} socket colors for {expected} edges")
            }
            GraphError::ColorOutOfRange { edge } => {
                write!(f, "edge {edge} color outside 1..=degree")
            }
            GraphError::ColorClash { vertex } => {
                write!(f, "vertex {vertex} sees a socket color twice")
            }
            GraphError::NotBipartite => write!(f, "operation requires a bipartite graph"),
            GraphError::MissingColors => {
                write!(f, "operation requires socket colors; run edge coloring first")
            }
            GraphError::NonDivisorDegree { degree, d } => {
                write!(f, "split degree {d} does not divide graph degree {degree}")
            }
            GraphError::PartitionMismatch { graph_degree, partition_d } => {
                write!(
                    f,
                    "partition covers {partition_d} colors but the graph is {graph_degree}-regular"
                )
            }
            GraphError::PartitionEmptyClass { side, index } => {
                write!(f, "{side}-side partition class {index} is empty")
            }
            GraphError::PartitionColorRepeat { side, color } => {
                write!(f, "color {color} appears in two {side}-side classes")
            }
            GraphError::PartitionColorMissing { side, color } => {
                write!(f, "color {color} is not covered on the {side} side")
            }
            GraphError::DegreeTooSmall { d } => {
                write!(f, "degree {d} is below the minimum of 2")
            }
            GraphError::ZeroHalfSize => write!(f, "half size must be positive"),
            GraphError::GirthBudgetExhausted { attempts, girth_floor } => {
                write!(
                    f,
                    "no graph of girth >= {girth_floor} found within {attempts} attempts"
                )
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// An undirected `degree`-regular multigraph, optionally bipartite and
/// optionally carrying a proper edge coloring on its sockets.
#[derive(Clone, Debug)]
pub struct RegularGraph {
    vertex_count: usize,
    degree: usize,
    /// Endpoint pairs; (left, right) when bipartite.
    edges: Vec<(u32, u32)>,
    /// Per-vertex (neighbor, edge id) in edge insertion order.
    adjacency: Vec<Vec<(u32, u32)>>,
    /// Vertices `0..left_count` form the left class when set.
    left_count: Option<usize>,
    /// Per-edge color in `1..=degree`; distinct at every vertex.
    socket_colors: Option<Vec<u32>>,
}

impl RegularGraph {
    /// Validating constructor. Every vertex must have exactly `degree`
    /// incident edge slots (a self-loop occupies two).
    pub fn from_edges(
        vertex_count: usize,
        degree: usize,
        edges: Vec<(u32, u32)>,
        left_count: Option<usize>,
        socket_colors: Option<Vec<u32>>,
    ) -> Result<Self, GraphError> {
        if let Some(lc) = left_count {
            if lc == 0 || lc >= vertex_count {
                return Err(GraphError::BadLeftCount { left_count: lc, vertex_count });
            }
        }
        let mut adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return Err(GraphError::EndpointOutOfRange { edge: e });
            }
            if let Some(lc) = left_count {
                if (u as usize) >= lc || (v as usize) < lc {
                    return Err(GraphError::SidesNotDisjoint { edge: e });
                }
            }
            adjacency[u as usize].push((v, e as u32));
            adjacency[v as usize].push((u, e as u32));
        }
        for (v, slots) in adjacency.iter().enumerate() {
            if slots.len() != degree {
                return Err(GraphError::DegreeMismatch {
                    vertex: v as u32,
                    got: slots.len(),
                    expected: degree,
                });
            }
        }
        if let Some(colors) = &socket_colors {
            if colors.len() != edges.len() {
                return Err(GraphError::ColorCountMismatch {
                    got: colors.len(),
                    expected: edges.len(),
                });
            }
            for (e, &c) in colors.iter().enumerate() {
                if c == 0 || c as usize > degree {
                    return Err(GraphError::ColorOutOfRange { edge: e });
                }
            }
            for (v, slots) in adjacency.iter().enumerate() {
                let mut cs: Vec<u32> =
                    slots.iter().map(|&(_, e)| colors[e as usize]).collect();
                cs.sort_unstable();
                if cs.windows(2).any(|w| w[0] == w[1]) {
                    return Err(GraphError::ColorClash { vertex: v as u32 });
                }
            }
        }
        Ok(RegularGraph {
            vertex_count,
            degree,
            edges,
            adjacency,
            left_count,
            socket_colors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// (neighbor, edge id) pairs at `v`, in edge insertion order.
    pub fn adjacency(&self, v: u32) -> &[(u32, u32)] {
        &self.adjacency[v as usize]
    }

    pub fn is_bipartite(&self) -> bool {
        self.left_count.is_some()
    }

    /// Size of the left class, when bipartite.
    pub fn left_count(&self) -> Option<usize> {
        self.left_count
    }

    pub fn socket_colors(&self) -> Option<&[u32]> {
        self.socket_colors.as_deref()
    }

    /// Replaces the coloring, re-running the properness validation.
    pub fn with_colors(self, colors: Vec<u32>) -> Result<Self, GraphError> {
        RegularGraph::from_edges(
            self.vertex_count,
            self.degree,
            self.edges,
            self.left_count,
            Some(colors),
        )
    }
}

/// Exact girth by breadth-first search from every vertex.
///
/// Each search skips the edge it arrived on, so a self-loop yields 1, a
/// parallel pair yields 2, and the shortest cycle through the start vertex
/// is found at its true length. Searches stop expanding once they can no
/// longer beat the best cycle seen.
pub fn girth(g: &RegularGraph) -> Girth {
    girth_over(&g.adjacency)
}

/// Girth over a raw (neighbor, edge id) adjacency structure; shared by the
/// regular-graph and Tanner-graph entry points.
pub(crate) fn girth_over(adjacency: &[Vec<(u32, u32)>]) -> Girth {
    let n = adjacency.len();
    let mut best: u32 = u32::MAX;
    let mut dist: Vec<u32> = vec![u32::MAX; n];
    let mut parent_edge: Vec<u32> = vec![u32::MAX; n];
    let mut queue: Vec<u32> = Vec::with_capacity(n);
    for s in 0..n as u32 {
        if best == 1 {
            break;
        }
        dist.fill(u32::MAX);
        parent_edge.fill(u32::MAX);
        queue.clear();
        dist[s as usize] = 0;
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let du = dist[u as usize];
            // A cycle through an edge scanned from depth du has length at
            // least 2 du + 1; deeper vertices cannot improve on `best`.
            if 2 * du + 1 >= best {
                continue;
            }
            for &(w, e) in &adjacency[u as usize] {
                if e == parent_edge[u as usize] {
                    continue;
                }
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    parent_edge[w as usize] = e;
                    queue.push(w);
                } else {
                    let cycle = du + dist[w as usize] + 1;
                    if cycle < best {
                        best = cycle;
                    }
                }
            }
        }
    }
    if best == u32::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// True when every vertex is reachable from vertex 0 (vacuously true for
/// the empty graph).
pub fn is_connected(g: &RegularGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0u32];
    seen[0] = true;
    let mut count = 1usize;
    while let Some(u) = stack.pop() {
        for &(w, _) in g.adjacency(u) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Bipartite double cover: vertices split into copies 0 and 1, and each
/// edge {x, y} becomes the pair {x0, y1}, {y0, x1}.
///
/// The cover's girth never drops below the input's. A proper coloring
/// carries over unchanged per edge; a bipartite input yields two disjoint
/// copies of itself.
pub fn double_cover(g: &RegularGraph) -> RegularGraph {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    let mut colors = g.socket_colors().map(|_| Vec::with_capacity(2 * g.edge_count()));
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, v + n as u32));
        edges.push((v, u + n as u32));
        if let (Some(cs), Some(input)) = (&mut colors, g.socket_colors()) {
            cs.push(input[e]);
            cs.push(input[e]);
        }
    }
    RegularGraph::from_edges(2 * n, g.degree(), edges, Some(n), colors)
        .expect("cover of a valid graph is valid")
}

/// Splits every vertex of a colored `degree`-regular graph into
/// `degree / d` vertices of degree `d`.
///
/// Sockets are grouped into blocks of `d` consecutive colors; the edge of
/// color `s` lands on sub-vertex `(s-1)/d` at both endpoints (a proper
/// coloring of a regular graph uses every color exactly once per vertex)
/// and keeps color `((s-1) mod d) + 1`. Sub-vertex `i` of vertex `v` gets
/// id `v * (degree/d) + i`, so bipartite classes stay contiguous. Girth
/// never decreases.
pub fn split_to_degree(g: &RegularGraph, d: usize) -> Result<RegularGraph, GraphError> {
    if d == 0 || g.degree() % d != 0 {
        return Err(GraphError::NonDivisorDegree { degree: g.degree(), d });
    }
    let Some(colors) = g.socket_colors() else {
        return Err(GraphError::MissingColors);
    };
    let k = g.degree() / d;
    if k == 1 {
        return Ok(g.clone());
    }
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut new_colors = Vec::with_capacity(g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let s = colors[e];
        let block = (s - 1) / d as u32;
        edges.push((u * k as u32 + block, v * k as u32 + block));
        new_colors.push(((s - 1) % d as u32) + 1);
    }
    RegularGraph::from_edges(
        g.vertex_count() * k,
        d,
        edges,
        g.left_count().map(|lc| lc * k),
        Some(new_colors),
    )
}
