//! Seeded random regular bipartite graphs and matching-based edge coloring.
//!
//! The random source is the union of d permutations, which is d-regular by
//! construction and carries a free proper coloring (color k = permutation
//! k). Each permutation is swap-repaired to disagree with the earlier ones
//! everywhere, so outputs are always simple; whole graphs are resampled
//! until they meet a girth floor. Everything is driven by per-attempt
//! ChaCha8 streams, so results depend only on the seed.

use super::{girth, GraphError, RegularGraph};
use crate::rng::{stream, StreamKind};
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

/// Resampling budget before girth_floor is declared unattainable.
const ATTEMPT_BUDGET: usize = 1000;

/// d-regular simple bipartite graph on `half_size + half_size` vertices
/// with girth at least `girth_floor`, deterministic given `seed`.
pub fn random_regular_bipartite(
    d: usize,
    half_size: usize,
    girth_floor: u32,
    seed: u64,
) -> Result<RegularGraph, GraphError> {
    if d < 2 {
        return Err(GraphError::DegreeTooSmall { d });
    }
    if half_size == 0 {
        return Err(GraphError::ZeroHalfSize);
    }
    for attempt in 0..ATTEMPT_BUDGET {
        let mut rng = stream(seed, StreamKind::GraphAttempt, attempt as u64, 0);
        let Some(perms) = sample_disjoint_permutations(d, half_size, &mut rng) else {
            continue;
        };
        let mut edges = Vec::with_capacity(d * half_size);
        let mut colors = Vec::with_capacity(d * half_size);
        for (k, perm) in perms.iter().enumerate() {
            for (i, &t) in perm.iter().enumerate() {
                edges.push((i as u32, half_size as u32 + t));
                colors.push(k as u32 + 1);
            }
        }
        let g = RegularGraph::from_edges(
            2 * half_size,
            d,
            edges,
            Some(half_size),
            Some(colors),
        )
        .expect("permutation union is d-regular and properly colored");
        if girth(&g).at_least(girth_floor) {
            return Ok(g);
        }
    }
    Err(GraphError::GirthBudgetExhausted { attempts: ATTEMPT_BUDGET, girth_floor })
}

/// d permutations of 0..n that pairwise disagree at every position, so
/// their union has no parallel edges. Each one starts as a uniform shuffle
/// and colliding positions are repaired by random swaps; None when the
/// swap budget runs out (d close to or above n makes the constraint
/// infeasible).
fn sample_disjoint_permutations(
    d: usize,
    n: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Option<Vec<Vec<u32>>> {
    let mut perms: Vec<Vec<u32>> = Vec::with_capacity(d);
    for _ in 0..d {
        let mut perm: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        let collides = |perm: &[u32], v: usize, prev: &[Vec<u32>]| {
            prev.iter().any(|p| p[v] == perm[v])
        };
        let mut stack: Vec<usize> =
            (0..n).filter(|&v| collides(&perm, v, &perms)).collect();
        let mut budget = 50 * n.max(8);
        while let Some(v) = stack.pop() {
            if !collides(&perm, v, &perms) {
                continue;
            }
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let w = rng.random_range(0..n);
            perm.swap(v, w);
            for u in [v, w] {
                if collides(&perm, u, &perms) {
                    stack.push(u);
                }
            }
        }
        perms.push(perm);
    }
    Some(perms)
}

/// Proper d-edge-coloring of a d-regular bipartite graph.
///
/// An existing coloring is kept as is. Otherwise each color class is a
/// perfect matching extracted with augmenting paths; after removing it the
/// graph is (d-1)-regular bipartite, so by Hall's condition the next
/// extraction cannot fail.
pub fn edge_coloring(g: &RegularGraph) -> Result<RegularGraph, GraphError> {
    if g.socket_colors().is_some() {
        return Ok(g.clone());
    }
    let Some(left) = g.left_count() else {
        return Err(GraphError::NotBipartite);
    };
    let right = g.vertex_count() - left;
    let mut colors = vec![0u32; g.edge_count()];
    let mut match_right: Vec<u32> = vec![u32::MAX; right];
    let mut visited = vec![false; right];
    for c in 1..=g.degree() as u32 {
        match_right.fill(u32::MAX);
        for v in 0..left {
            visited.fill(false);
            let matched = augment(v, g, left, &colors, &mut match_right, &mut visited);
            assert!(matched, "regular bipartite graphs always admit a perfect matching");
        }
        for &e in match_right.iter() {
            colors[e as usize] = c;
        }
    }
    g.clone().with_colors(colors)
}

fn augment(
    v: usize,
    g: &RegularGraph,
    left: usize,
    colors: &[u32],
    match_right: &mut [u32],
    visited: &mut [bool],
) -> bool {
    for &(w, e) in g.adjacency(v as u32) {
        if colors[e as usize] != 0 {
            continue;
        }
        let wi = w as usize - left;
        if visited[wi] {
            continue;
        }
        visited[wi] = true;
        let taken = match_right[wi];
        if taken == u32::MAX || {
            let owner = g.edges()[taken as usize].0 as usize;
            augment(owner, g, left, colors, match_right, visited)
        } {
            match_right[wi] = e;
            return true;
        }
    }
    false
}
