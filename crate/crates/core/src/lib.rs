//! Protograph LDPC analysis toolkit for the binary erasure channel.
//!
//! The crate is split along the pipeline:
//!
//! * [`proto`]: base matrices, protographs, degree profiles, and the
//!   degree-two chain constraint.
//! * [`de`]: multi-edge-type density evolution, threshold bisection, and
//!   empirical verification of the double-exponential decay bound.
//! * [`opt`]: differential evolution over base matrices with the density
//!   evolution threshold as fitness.
//! * [`graph`]: deterministic large-girth graph sources (LPS Cayley graphs,
//!   seeded random regular bipartite graphs), bipartite double cover, girth,
//!   edge coloring, degree splitting, and the node-splitting lift that turns
//!   a colored regular bipartite graph into a Tanner graph.
//! * [`sim`]: BEC transmission, peeling decoding, flooding message passing,
//!   and Monte Carlo error statistics.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command-line
//! front end live in the companion `protoldpc-cli` crate.
//!
//! All indices (checks, variables, edges) are 0-based throughout the API;
//! socket colors are the exception and run `1..=degree`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod de;
pub mod graph;
pub mod opt;
pub mod proto;
pub mod rng;
pub mod sim;

#[cfg(test)]
mod fixtures;
