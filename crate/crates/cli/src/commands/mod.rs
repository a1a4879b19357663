//! Subcommand implementations. Each command validates its flags, does
//! the work through `protoldpc-core`, writes its artifacts, and finishes
//! with a manifest naming them.

pub mod construct;
pub mod girth;
pub mod optimize;
pub mod simulate;
pub mod threshold;
pub mod verify_decay;

use protoldpc_core::graph::Girth;

/// JSON form of a girth: a number, or null for an acyclic graph.
pub(crate) fn girth_json(g: Girth) -> serde_json::Value {
    match g {
        Girth::Finite(v) => serde_json::Value::from(v),
        Girth::Infinite => serde_json::Value::Null,
    }
}
