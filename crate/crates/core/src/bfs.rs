//! Reusable scratch state for pruned BFS traversals.
//!
//! Both structures reset in amortized O(touched) by stamping slots with an
//! epoch instead of reinitializing whole arrays, which is what makes
//! per-update costs proportional to the affected region rather than to n.

use std::collections::VecDeque;

use crate::graph::VertexId;
use crate::index::INF_DIST;
use crate::label::LabelEntry;

/// Tentative distances, path counts, updated flags, and the FIFO frontier
/// of one traversal. A vertex is enqueued at most once per traversal; its
/// distance is set exactly when it is enqueued.
#[derive(Debug)]
pub struct BfsState {
    dist: Vec<u32>,
    count: Vec<u64>,
    updated: Vec<bool>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<VertexId>,
}

impl BfsState {
    pub fn new(n: usize) -> Self {
        BfsState {
            dist: vec![INF_DIST; n],
            count: vec![0; n],
            updated: vec![false; n],
            stamp: vec![0; n],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    /// Starts a fresh traversal; all slots read as unvisited again.
    pub fn begin(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.queue.clear();
    }

    fn current(&self, v: VertexId) -> bool {
        self.stamp[v.index()] == self.epoch
    }

    pub fn dist(&self, v: VertexId) -> u32 {
        if self.current(v) {
            self.dist[v.index()]
        } else {
            INF_DIST
        }
    }

    pub fn count(&self, v: VertexId) -> u64 {
        if self.current(v) {
            self.count[v.index()]
        } else {
            0
        }
    }

    /// Sets distance and count for a first visit and enqueues the vertex.
    pub fn visit(&mut self, v: VertexId, dist: u32, count: u64) {
        debug_assert!(!self.current(v), "vertex enqueued twice in one traversal");
        let i = v.index();
        self.stamp[i] = self.epoch;
        self.dist[i] = dist;
        self.count[i] = count;
        self.updated[i] = false;
        self.queue.push_back(v);
    }

    /// Adds newly found equal-length paths into an already-visited vertex.
    pub fn accumulate(&mut self, v: VertexId, count: u64) {
        debug_assert!(self.current(v));
        self.count[v.index()] += count;
    }

    pub fn pop(&mut self) -> Option<VertexId> {
        self.queue.pop_front()
    }

    pub fn mark_updated(&mut self, v: VertexId) {
        debug_assert!(self.current(v));
        self.updated[v.index()] = true;
    }

    pub fn is_updated(&self, v: VertexId) -> bool {
        self.current(v) && self.updated[v.index()]
    }
}

/// Distance/count lookup table for queries whose one side is fixed.
///
/// During a traversal rooted at hub `h`, every index query pairs `h`'s
/// labels against a visited vertex's labels. Loading `h`'s side once turns
/// each query into a single scan of the other side, with results identical
/// to the two-pointer merge. The fixed side's labels never change during
/// one traversal, which keeps the cache coherent.
#[derive(Debug)]
pub(crate) struct HubCache {
    dist: Vec<u32>,
    count: Vec<u64>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl HubCache {
    pub fn new(n: usize) -> Self {
        HubCache {
            dist: vec![INF_DIST; n],
            count: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    /// Loads one side's label entries, optionally skipping one hub (the
    /// scan-termination semantics of the pre-query).
    pub fn load(&mut self, labels: &[LabelEntry], skip_hub: Option<VertexId>) {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        for e in labels {
            if skip_hub == Some(e.hub) {
                continue;
            }
            let i = e.hub.index();
            self.stamp[i] = self.epoch;
            self.dist[i] = e.dist;
            self.count[i] = e.count;
        }
    }

    /// Minimum distance over hubs common to the loaded side and `labels`.
    pub fn query_dist(&self, labels: &[LabelEntry]) -> u32 {
        let mut best = INF_DIST;
        for e in labels {
            let i = e.hub.index();
            if self.stamp[i] == self.epoch {
                best = best.min(self.dist[i] + e.dist);
            }
        }
        best
    }

    /// Distance and count over common hubs, identical to the merge scan.
    pub fn query(&self, labels: &[LabelEntry]) -> (u32, u64) {
        let mut best = INF_DIST;
        let mut count = 0u64;
        for e in labels {
            let i = e.hub.index();
            if self.stamp[i] != self.epoch {
                continue;
            }
            let d = self.dist[i] + e.dist;
            if d < best {
                best = d;
                count = self.count[i] * e.count;
            } else if d == best {
                count += self.count[i] * e.count;
            }
        }
        (best, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::index::SpcIndex;

    #[test]
    fn epoch_reset_clears_previous_traversal() {
        let mut s = BfsState::new(4);
        s.begin();
        s.visit(VertexId::new(1), 2, 3);
        s.mark_updated(VertexId::new(1));
        assert_eq!(s.dist(VertexId::new(1)), 2);
        assert!(s.is_updated(VertexId::new(1)));
        s.begin();
        assert_eq!(s.dist(VertexId::new(1)), INF_DIST);
        assert_eq!(s.count(VertexId::new(1)), 0);
        assert!(!s.is_updated(VertexId::new(1)));
        assert!(s.pop().is_none());
    }

    #[test]
    fn hub_cache_matches_the_merge_scan() {
        let labels = fixtures::example_labels();
        let idx = SpcIndex::from_parts(
            labels.iter().cloned().map(Some).collect(),
            fixtures::example_ordering(),
        );
        let mut cache = HubCache::new(12);
        for s in 0..12u32 {
            let s = VertexId::new(s);
            cache.load(&labels[s.index()], None);
            for t in 0..12u32 {
                let t = VertexId::new(t);
                let merged = idx.spc_query(s, t).unwrap();
                let (d, c) = cache.query(&labels[t.index()]);
                assert_eq!((d, c), (merged.dist, merged.count), "pair ({s},{t})");
                assert_eq!(cache.query_dist(&labels[t.index()]), merged.dist);
            }
            cache.load(&labels[s.index()], Some(s));
            for t in 0..12u32 {
                let t = VertexId::new(t);
                let pre = idx.pre_query(s, t).unwrap();
                let (d, c) = cache.query(&labels[t.index()]);
                assert_eq!((d, c), (pre.dist, pre.count), "pre pair ({s},{t})");
            }
        }
    }
}
