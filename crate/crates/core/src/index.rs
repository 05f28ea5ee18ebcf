//! The SPC hub-labeling index: per-vertex label sequences plus the vertex
//! ordering they were built under, and the two label-scan query algorithms.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::label::LabelEntry;
use crate::order::VertexOrdering;

/// Sentinel distance for disconnected pairs.
pub const INF_DIST: u32 = u32::MAX;

/// Result of a shortest-path-counting query: hop distance and the number of
/// shortest paths. `dist == INF_DIST` exactly when `count == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryResult {
    pub dist: u32,
    pub count: u64,
}

impl QueryResult {
    pub const DISCONNECTED: QueryResult = QueryResult {
        dist: INF_DIST,
        count: 0,
    };

    pub fn is_connected(&self) -> bool {
        self.dist != INF_DIST
    }
}

impl fmt::Display for QueryResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_connected() {
            write!(f, "({},{})", self.dist, self.count)
        } else {
            write!(f, "(INF,0)")
        }
    }
}

/// 2-hop labeling for exact shortest-path counting.
///
/// Every live vertex owns a label sequence sorted by descending hub rank
/// (highest-ranked hub first) and ending in its self-label `(v, 0, 1)`.
/// Hubs never rank below their owner, and each hub appears at most once
/// per owner.
#[derive(Debug, Clone)]
pub struct SpcIndex {
    labels: Vec<Option<Vec<LabelEntry>>>,
    ordering: VertexOrdering,
}

impl SpcIndex {
    /// An index holding only self-labels for `n` vertices.
    pub fn with_self_labels(n: usize, ordering: VertexOrdering) -> Self {
        assert_eq!(ordering.len(), n, "ordering must cover the id space");
        SpcIndex {
            labels: (0..n as u32)
                .map(|v| Some(vec![LabelEntry::new(VertexId::new(v), 0, 1)]))
                .collect(),
            ordering,
        }
    }

    /// Assembles an index from raw parts without checking invariants.
    /// Callers that ingest untrusted data must run [`check_invariants`].
    ///
    /// [`check_invariants`]: SpcIndex::check_invariants
    pub fn from_parts(labels: Vec<Option<Vec<LabelEntry>>>, ordering: VertexOrdering) -> Self {
        assert_eq!(ordering.len(), labels.len());
        SpcIndex { labels, ordering }
    }

    pub fn ordering(&self) -> &VertexOrdering {
        &self.ordering
    }

    /// Total ids covered, live or tombstoned.
    pub fn id_space(&self) -> usize {
        self.labels.len()
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.labels
            .get(v.index())
            .map(Option::is_some)
            .unwrap_or(false)
    }

    fn check_live(&self, v: VertexId) -> Result<()> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(Error::DeadVertex(v))
        }
    }

    /// Label sequence of a live vertex, descending hub rank.
    pub fn labels(&self, v: VertexId) -> &[LabelEntry] {
        self.labels[v.index()]
            .as_deref()
            .expect("labels() requires a live vertex")
    }

    /// Total number of stored entries.
    pub fn entry_count(&self) -> usize {
        self.labels
            .iter()
            .filter_map(|l| l.as_ref().map(Vec::len))
            .sum()
    }

    /// Serialized size in bytes under the index file format.
    pub fn byte_size(&self) -> usize {
        crate::io::HEADER_BYTES + 4 * self.labels.len() + 8 * self.entry_count()
    }

    /// Registers a fresh vertex at the lowest rank with its self-label.
    pub fn add_vertex(&mut self, v: VertexId) {
        assert_eq!(v.index(), self.labels.len(), "index add_vertex out of step");
        self.ordering.append(v);
        self.labels.push(Some(vec![LabelEntry::new(v, 0, 1)]));
    }

    /// Drops a vertex's label set and tombstones its slot.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        self.check_live(v)?;
        self.labels[v.index()] = None;
        Ok(())
    }

    /// Resets a vertex to its self-label only.
    pub(crate) fn reset_to_self_label(&mut self, v: VertexId) {
        self.labels[v.index()] = Some(vec![LabelEntry::new(v, 0, 1)]);
    }

    fn position_of(ordering: &VertexOrdering, labels: &[LabelEntry], h: VertexId) ->
        std::result::Result<usize, usize>
    {
        let rank = ordering.rank(h);
        labels.binary_search_by_key(&rank, |e| ordering.rank(e.hub))
    }

    /// Looks up the entry with hub `h` in `v`'s labels.
    pub fn get_label(&self, v: VertexId, h: VertexId) -> Option<LabelEntry> {
        let labels = self.labels[v.index()].as_ref()?;
        Self::position_of(&self.ordering, labels, h)
            .ok()
            .map(|pos| labels[pos])
    }

    /// Inserts or replaces the entry with `entry.hub` in `v`'s labels,
    /// preserving sortedness, and returns the displaced entry if any.
    pub fn upsert_label(&mut self, v: VertexId, entry: LabelEntry) -> Option<LabelEntry> {
        let ordering = &self.ordering;
        let labels = self.labels[v.index()]
            .as_mut()
            .expect("upsert_label requires a live vertex");
        match Self::position_of(ordering, labels, entry.hub) {
            Ok(pos) => Some(std::mem::replace(&mut labels[pos], entry)),
            Err(pos) => {
                labels.insert(pos, entry);
                None
            }
        }
    }

    /// Removes the entry with hub `h` from `v`'s labels. Returns whether an
    /// entry was present. Removing the self-label is forbidden.
    pub fn remove_label(&mut self, v: VertexId, h: VertexId) -> Result<bool> {
        if h == v {
            return Err(Error::SelfLabelRemoval(v));
        }
        let ordering = &self.ordering;
        let labels = self.labels[v.index()]
            .as_mut()
            .ok_or(Error::DeadVertex(v))?;
        match Self::position_of(ordering, labels, h) {
            Ok(pos) => {
                labels.remove(pos);
                Ok(true)
            }
            Err(_) => Ok(false),
        }
    }

    /// True when any live vertex other than `h` itself carries a label with
    /// hub `h`.
    pub fn has_foreign_labels_with_hub(&self, h: VertexId) -> bool {
        self.labels.iter().enumerate().any(|(v, labels)| {
            if v == h.index() {
                return false;
            }
            labels
                .as_ref()
                .map(|l| Self::position_of(&self.ordering, l, h).is_ok())
                .unwrap_or(false)
        })
    }

    /// Exact `(distance, count)` between `s` and `t` by a single merge scan
    /// over the two rank-sorted label sequences. Disconnected pairs yield
    /// `(INF, 0)`.
    pub fn spc_query(&self, s: VertexId, t: VertexId) -> Result<QueryResult> {
        self.check_live(s)?;
        self.check_live(t)?;
        Ok(self.merge_scan(s, t, None))
    }

    /// Query variant whose scan terminates upon reaching hub `h` itself, so
    /// only common hubs ranked strictly higher than `h` contribute. The
    /// returned distance is an upper bound on the true distance from `h`
    /// to `v`.
    pub fn pre_query(&self, h: VertexId, v: VertexId) -> Result<QueryResult> {
        self.check_live(h)?;
        self.check_live(v)?;
        Ok(self.merge_scan(h, v, Some(h)))
    }

    fn merge_scan(&self, s: VertexId, t: VertexId, stop_at: Option<VertexId>) -> QueryResult {
        let ls = self.labels(s);
        let lt = self.labels(t);
        let mut best = QueryResult::DISCONNECTED;
        let (mut i, mut j) = (0, 0);
        while i < ls.len() && j < lt.len() {
            let (es, et) = (&ls[i], &lt[j]);
            let (rs, rt) = (self.ordering.rank(es.hub), self.ordering.rank(et.hub));
            if rs < rt {
                i += 1;
            } else if rt < rs {
                j += 1;
            } else {
                if stop_at == Some(es.hub) {
                    break;
                }
                let d = es.dist + et.dist;
                if d < best.dist {
                    best = QueryResult {
                        dist: d,
                        count: es.count * et.count,
                    };
                } else if d == best.dist {
                    best.count += es.count * et.count;
                }
                i += 1;
                j += 1;
            }
        }
        best
    }

    /// Validates the structural index invariants: self-labels, rank
    /// constraint, hub uniqueness and sortedness, positive counts, and no
    /// tombstoned hubs. Loader and test support; not on any hot path.
    pub fn check_invariants(&self) -> Result<()> {
        for (v, labels) in self.labels.iter().enumerate() {
            let v = VertexId::new(v as u32);
            let Some(labels) = labels else { continue };
            let own_rank = self.ordering.rank(v);
            let mut prev_rank: Option<u32> = None;
            for e in labels {
                if !self.is_live(e.hub) {
                    return Err(Error::InvalidIndex(format!(
                        "label of {v} references tombstoned hub {}",
                        e.hub
                    )));
                }
                let r = self.ordering.rank(e.hub);
                if r > own_rank {
                    return Err(Error::InvalidIndex(format!(
                        "hub {} ranks below its owner {v}",
                        e.hub
                    )));
                }
                if let Some(p) = prev_rank {
                    if r <= p {
                        return Err(Error::InvalidIndex(format!(
                            "labels of {v} not strictly descending by hub rank"
                        )));
                    }
                }
                if e.count == 0 {
                    return Err(Error::InvalidIndex(format!(
                        "zero-count entry ({},{},0) stored at {v}",
                        e.hub, e.dist
                    )));
                }
                if (e.hub == v) != (e.dist == 0) {
                    return Err(Error::InvalidIndex(format!(
                        "distance-zero entry mismatch at {v}: hub {}",
                        e.hub
                    )));
                }
                prev_rank = Some(r);
            }
            match labels.last() {
                Some(e) if e.hub == v && e.dist == 0 && e.count == 1 => {}
                _ => {
                    return Err(Error::InvalidIndex(format!(
                        "live vertex {v} lacks its self-label"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(id: u32) -> VertexId {
        VertexId::new(id)
    }

    /// The example labeling, assembled directly from fixture data.
    pub(crate) fn example_index() -> SpcIndex {
        let labels = fixtures::example_labels().into_iter().map(Some).collect();
        let idx = SpcIndex::from_parts(labels, fixtures::example_ordering());
        idx.check_invariants().unwrap();
        idx
    }

    #[test]
    fn spc_query_worked_examples() {
        let idx = example_index();
        assert_eq!(
            idx.spc_query(v(4), v(6)).unwrap(),
            QueryResult { dist: 3, count: 2 }
        );
        assert_eq!(
            idx.spc_query(v(0), v(9)).unwrap(),
            QueryResult { dist: 4, count: 4 }
        );
        for s in 0..12 {
            assert_eq!(
                idx.spc_query(v(s), v(s)).unwrap(),
                QueryResult { dist: 0, count: 1 }
            );
        }
    }

    #[test]
    fn disconnected_pairs_yield_infinity() {
        let ord = VertexOrdering::identity(2);
        let idx = SpcIndex::with_self_labels(2, ord);
        assert_eq!(
            idx.spc_query(v(0), v(1)).unwrap(),
            QueryResult::DISCONNECTED
        );
        assert_eq!(format!("{}", QueryResult::DISCONNECTED), "(INF,0)");
    }

    #[test]
    fn query_rejects_dead_vertices() {
        let mut idx = example_index();
        idx.remove_vertex(v(11)).unwrap();
        assert!(matches!(
            idx.spc_query(v(0), v(11)),
            Err(Error::DeadVertex(_))
        ));
        assert!(matches!(
            idx.pre_query(v(11), v(0)),
            Err(Error::DeadVertex(_))
        ));
    }

    #[test]
    fn pre_query_worked_examples() {
        let idx = example_index();
        assert_eq!(
            idx.pre_query(v(1), v(3)).unwrap(),
            QueryResult { dist: 2, count: 1 }
        );
        assert_eq!(
            idx.pre_query(v(1), v(2)).unwrap(),
            QueryResult { dist: 2, count: 1 }
        );
        // No hub outranks the top-ranked vertex.
        for t in 0..12 {
            assert_eq!(
                idx.pre_query(v(0), v(t)).unwrap(),
                QueryResult::DISCONNECTED
            );
        }
    }

    #[test]
    fn upsert_returns_displaced_entry() {
        let mut idx = example_index();
        let prior = idx.upsert_label(v(9), LabelEntry::new(v(0), 2, 1));
        assert_eq!(prior, Some(LabelEntry::new(v(0), 4, 4)));
        assert_eq!(idx.get_label(v(9), v(0)), Some(LabelEntry::new(v(0), 2, 1)));
        idx.check_invariants().unwrap();

        // Insert of an absent hub keeps sortedness.
        assert_eq!(idx.upsert_label(v(10), LabelEntry::new(v(2), 3, 1)), None);
        idx.check_invariants().unwrap();
    }

    #[test]
    fn get_label_finds_non_canonical_entry() {
        let idx = example_index();
        assert_eq!(idx.get_label(v(8), v(2)), Some(LabelEntry::new(v(2), 2, 1)));
        assert_eq!(idx.get_label(v(8), v(1)), None);
    }

    #[test]
    fn remove_label_flags_and_errors() {
        let mut idx = example_index();
        assert!(!idx.remove_label(v(5), v(7)).unwrap());
        assert!(idx.remove_label(v(5), v(4)).unwrap());
        assert_eq!(idx.get_label(v(5), v(4)), None);
        assert!(matches!(
            idx.remove_label(v(5), v(5)),
            Err(Error::SelfLabelRemoval(_))
        ));
    }

    #[test]
    fn foreign_hub_scan() {
        let idx = example_index();
        assert!(idx.has_foreign_labels_with_hub(v(0)));
        assert!(!idx.has_foreign_labels_with_hub(v(11)));
        assert!(!idx.has_foreign_labels_with_hub(v(10)));
    }

    #[test]
    fn invariant_checker_catches_corruption() {
        let mut idx = example_index();
        idx.upsert_label(v(9), LabelEntry::new(v(0), 4, 0));
        let err = idx.check_invariants().unwrap_err();
        assert!(err.to_string().contains("zero-count"), "{err}");

        let mut labels: Vec<_> = fixtures::example_labels().into_iter().map(Some).collect();
        labels[3].as_mut().unwrap().pop();
        let idx = SpcIndex::from_parts(labels, fixtures::example_ordering());
        let err = idx.check_invariants().unwrap_err();
        assert!(err.to_string().contains("self-label"), "{err}");
    }
}
