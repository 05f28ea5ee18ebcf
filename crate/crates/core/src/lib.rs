//! In-memory dynamic shortest-path-counting engine.
//!
//! Builds a 2-hop hub-labeling index over undirected unweighted graphs,
//! answers exact `(distance, count)` shortest-path queries by label scans,
//! and maintains the index under edge and vertex insertions and deletions
//! without full rebuilds. A brute-force oracle backs validation.
//!
//! Concurrency model: one writer. Queries are read-only and may run
//! concurrently with each other, but no mutation may overlap any read.

mod bfs;
pub mod build;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod index;
pub mod io;
pub mod label;
pub mod oracle;
pub mod order;
pub mod update;

pub use build::build;
pub use error::{Error, Result};
pub use graph::{parse_edge_list, write_edge_list, DynamicGraph, VertexId, MAX_VERTICES};
pub use index::{QueryResult, SpcIndex, INF_DIST};
pub use io::{load, save, save_bounded};
pub use label::{pack_entry, unpack_entry, LabelEntry};
pub use oracle::{
    bfs_spc, bibfs_query, spc_hat, validate_index, ValidationMode, ValidationReport,
};
pub use order::VertexOrdering;
pub use update::{
    dec_spc, dec_spc_general, dec_update, delete_isolating_edge_fast_path, delete_vertex,
    inc_spc, inc_update, insert_vertex, srr_search, AffectedSets, BfsState, UpdateStats,
};
