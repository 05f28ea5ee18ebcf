//! Hand-checked reference graphs and labelings shared by the test and
//! acceptance suites.

use crate::graph::{DynamicGraph, VertexId};
use crate::index::SpcIndex;
use crate::label::LabelEntry;
use crate::order::VertexOrdering;

/// Edge list of the 12-vertex example graph used throughout the tests.
pub const EXAMPLE_EDGES: [(u32, u32); 17] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 8),
    (0, 11),
    (1, 2),
    (1, 5),
    (1, 6),
    (2, 3),
    (2, 5),
    (3, 7),
    (3, 8),
    (4, 5),
    (4, 7),
    (4, 9),
    (6, 10),
    (9, 10),
];

/// The 12-vertex example graph.
pub fn example_graph() -> DynamicGraph {
    let mut g = DynamicGraph::with_vertex_count(12).expect("small fixture");
    for (u, v) in EXAMPLE_EDGES {
        g.add_edge(VertexId::new(u), VertexId::new(v))
            .expect("fixture edges are simple");
    }
    g
}

/// The ordering the example labeling was computed under: vertex id equals
/// rank. This is supplied explicitly rather than recomputed from degrees,
/// because several degree ties would otherwise leave the order to the
/// tie-break rule.
pub fn example_ordering() -> VertexOrdering {
    VertexOrdering::identity(12)
}

/// The complete 50-entry labeling of the example graph under
/// [`example_ordering`], per-vertex and sorted by descending hub rank.
/// Verified in tests against the brute-force characterization oracle.
pub fn example_labels() -> Vec<Vec<LabelEntry>> {
    let raw: Vec<Vec<(u32, u32, u64)>> = vec![
        vec![(0, 0, 1)],
        vec![(0, 1, 1), (1, 0, 1)],
        vec![(0, 1, 1), (1, 1, 1), (2, 0, 1)],
        vec![(0, 1, 1), (1, 2, 1), (2, 1, 1), (3, 0, 1)],
        vec![(0, 3, 3), (1, 2, 1), (2, 2, 1), (3, 2, 1), (4, 0, 1)],
        vec![(0, 2, 2), (1, 1, 1), (2, 1, 1), (4, 1, 1), (5, 0, 1)],
        vec![(0, 2, 1), (1, 1, 1), (4, 3, 1), (6, 0, 1)],
        vec![(0, 2, 1), (1, 3, 2), (2, 2, 1), (3, 1, 1), (4, 1, 1), (7, 0, 1)],
        vec![(0, 1, 1), (2, 2, 1), (3, 1, 1), (8, 0, 1)],
        vec![
            (0, 4, 4),
            (1, 3, 2),
            (2, 3, 1),
            (3, 3, 1),
            (4, 1, 1),
            (6, 2, 1),
            (9, 0, 1),
        ],
        vec![
            (0, 3, 1),
            (1, 2, 1),
            (3, 4, 1),
            (4, 2, 1),
            (6, 1, 1),
            (9, 1, 1),
            (10, 0, 1),
        ],
        vec![(0, 1, 1), (11, 0, 1)],
    ];
    raw.into_iter()
        .map(|entries| {
            entries
                .into_iter()
                .map(|(h, d, c)| LabelEntry::new(VertexId::new(h), d, c))
                .collect()
        })
        .collect()
}

/// The example labeling assembled into a queryable index.
pub fn example_index() -> SpcIndex {
    let labels = example_labels().into_iter().map(Some).collect();
    let idx = SpcIndex::from_parts(labels, example_ordering());
    idx.check_invariants().expect("fixture labeling is well formed");
    idx
}
