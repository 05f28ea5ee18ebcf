//! From-scratch index construction by hub pushing.
//!
//! Vertices are processed from highest rank downward. Each runs a counting
//! BFS restricted to vertices ranked no higher than itself; a branch is
//! abandoned as soon as the partial index certifies a strictly shorter
//! distance, and every surviving visit appends one label.

use crate::bfs::{BfsState, HubCache};
use crate::graph::{DynamicGraph, VertexId};
use crate::index::{SpcIndex, INF_DIST};
use crate::label::LabelEntry;
use crate::order::VertexOrdering;

/// Builds the full index of `g` under `ordering`.
pub fn build(g: &DynamicGraph, ordering: VertexOrdering) -> SpcIndex {
    assert_eq!(
        ordering.len(),
        g.id_space(),
        "ordering must cover the graph's id space"
    );
    let n = g.id_space();
    let mut label_vecs: Vec<Vec<LabelEntry>> = vec![Vec::new(); n];
    let mut bfs = BfsState::new(n);
    let mut cache = HubCache::new(n);

    for root in ordering.ranks_descending() {
        if !g.is_live(root) {
            continue;
        }
        let root_rank = ordering.rank(root);
        cache.load(&label_vecs[root.index()], None);
        bfs.begin();
        bfs.visit(root, 0, 1);
        while let Some(v) = bfs.pop() {
            let dv = bfs.dist(v);
            let cv = bfs.count(v);
            if cache.query_dist(&label_vecs[v.index()]) < dv {
                continue;
            }
            // Appending keeps the sequence sorted: roots arrive in
            // descending rank order.
            label_vecs[v.index()].push(LabelEntry::new(root, dv, cv));
            for &w in g.neighbors(v) {
                let dw = bfs.dist(w);
                if dw == INF_DIST {
                    if ordering.rank(w) >= root_rank {
                        bfs.visit(w, dv + 1, cv);
                    }
                } else if dw == dv + 1 {
                    bfs.accumulate(w, cv);
                }
            }
        }
    }

    let labels = label_vecs
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            if g.is_live(VertexId::new(i as u32)) {
                Some(l)
            } else {
                None
            }
        })
        .collect();
    SpcIndex::from_parts(labels, ordering)
}
