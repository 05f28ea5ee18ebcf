//! Index maintenance under edge and vertex insertions and deletions.
//!
//! Insertions repair the index with pruned BFS traversals rooted at the
//! hubs of the new edge's endpoints. Deletions first locate the affected
//! vertices, then re-derive labels by traversals from the affected hubs,
//! removing entries that lost their last supporting path. Updates are
//! strictly serial; queries may interleave only between whole operations.

use std::time::{Duration, Instant};

pub use crate::bfs::BfsState;
use crate::bfs::HubCache;
use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, VertexId};
use crate::index::{SpcIndex, INF_DIST};
use crate::label::LabelEntry;

/// Per-update change accounting.
///
/// `renew_d` counts label rewrites whose distance changed (the count may
/// have changed too); `renew_c` counts rewrites where only the count moved;
/// `inserted` and `removed` count entries created and deleted.
/// `visited_vertices` counts dequeue events across all traversals of the
/// update, including pruned ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateStats {
    pub renew_c: u64,
    pub renew_d: u64,
    pub inserted: u64,
    pub removed: u64,
    pub visited_vertices: u64,
    pub sr_a_size: u64,
    pub sr_b_size: u64,
    pub r_a_size: u64,
    pub r_b_size: u64,
    pub elapsed: Duration,
}

impl UpdateStats {
    /// Folds another operation's counters into this one.
    pub fn absorb(&mut self, other: &UpdateStats) {
        self.renew_c += other.renew_c;
        self.renew_d += other.renew_d;
        self.inserted += other.inserted;
        self.removed += other.removed;
        self.visited_vertices += other.visited_vertices;
        self.sr_a_size += other.sr_a_size;
        self.sr_b_size += other.sr_b_size;
        self.r_a_size += other.r_a_size;
        self.r_b_size += other.r_b_size;
        self.elapsed += other.elapsed;
    }
}

/// The four disjoint affected sets of an edge deletion. `sr_*` hold the
/// affected hubs (labels *with* these vertices as hubs may change), `r_*`
/// the affected ordinary vertices (only their own label sets may change),
/// split by which endpoint they are closer to.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AffectedSets {
    pub sr_a: Vec<VertexId>,
    pub sr_b: Vec<VertexId>,
    pub r_a: Vec<VertexId>,
    pub r_b: Vec<VertexId>,
}

fn check_live_pair(g: &DynamicGraph, a: VertexId, b: VertexId) -> Result<()> {
    if !g.is_live(a) {
        return Err(Error::DeadVertex(a));
    }
    if !g.is_live(b) {
        return Err(Error::DeadVertex(b));
    }
    Ok(())
}

/// Inserts edge `(a, b)` into the graph and repairs the index. The result
/// again answers every query exactly; distance-stale labels dominated by
/// the new edge may remain, which is harmless because queries minimize.
pub fn inc_spc(
    g: &mut DynamicGraph,
    idx: &mut SpcIndex,
    a: VertexId,
    b: VertexId,
) -> Result<UpdateStats> {
    let start = Instant::now();
    g.add_edge(a, b)?;

    // Affected hubs and their endpoint membership, snapshotted before any
    // label changes. Label sequences are rank-sorted already.
    let hubs_a: Vec<VertexId> = idx.labels(a).iter().map(|e| e.hub).collect();
    let hubs_b: Vec<VertexId> = idx.labels(b).iter().map(|e| e.hub).collect();
    let ord = idx.ordering();
    let rank_a = ord.rank(a);
    let rank_b = ord.rank(b);
    let mut aff: Vec<(VertexId, bool, bool)> = Vec::with_capacity(hubs_a.len() + hubs_b.len());
    let (mut i, mut j) = (0, 0);
    while i < hubs_a.len() || j < hubs_b.len() {
        let ra = hubs_a.get(i).map(|&h| ord.rank(h)).unwrap_or(u32::MAX);
        let rb = hubs_b.get(j).map(|&h| ord.rank(h)).unwrap_or(u32::MAX);
        if ra < rb {
            aff.push((hubs_a[i], true, false));
            i += 1;
        } else if rb < ra {
            aff.push((hubs_b[j], false, true));
            j += 1;
        } else {
            aff.push((hubs_a[i], true, true));
            i += 1;
            j += 1;
        }
    }

    let mut stats = UpdateStats::default();
    let mut bfs = BfsState::new(g.id_space());
    let mut cache = HubCache::new(g.id_space());
    for (h, in_a, in_b) in aff {
        let h_rank = idx.ordering().rank(h);
        if in_a && h_rank <= rank_b {
            inc_update_impl(h, a, b, g, idx, &mut bfs, &mut cache, &mut stats);
        }
        if in_b && h_rank <= rank_a {
            inc_update_impl(h, b, a, g, idx, &mut bfs, &mut cache, &mut stats);
        }
    }
    stats.elapsed = start.elapsed();
    Ok(stats)
}

/// One repair traversal for affected hub `h`, entering the new edge from
/// `v_a` towards `v_b`. Requires `(h, d, c)` in the labels of `v_a`, hub
/// rank no lower than `v_b`'s, and the edge already present.
pub fn inc_update(
    h: VertexId,
    v_a: VertexId,
    v_b: VertexId,
    g: &DynamicGraph,
    idx: &mut SpcIndex,
    stats: &mut UpdateStats,
) {
    let mut bfs = BfsState::new(g.id_space());
    let mut cache = HubCache::new(g.id_space());
    inc_update_impl(h, v_a, v_b, g, idx, &mut bfs, &mut cache, stats);
}

fn inc_update_impl(
    h: VertexId,
    v_a: VertexId,
    v_b: VertexId,
    g: &DynamicGraph,
    idx: &mut SpcIndex,
    bfs: &mut BfsState,
    cache: &mut HubCache,
    stats: &mut UpdateStats,
) {
    let seed = idx
        .get_label(v_a, h)
        .expect("inc_update requires h to be a hub of v_a");
    let h_rank = idx.ordering().rank(h);
    debug_assert!(h_rank <= idx.ordering().rank(v_b));
    debug_assert!(g.has_edge(v_a, v_b));

    // h's own labels cannot change during this traversal, so one load
    // serves every distance probe.
    cache.load(idx.labels(h), None);
    bfs.begin();
    bfs.visit(v_b, seed.dist + 1, seed.count);
    while let Some(v) = bfs.pop() {
        stats.visited_vertices += 1;
        let dv = bfs.dist(v);
        let cv = bfs.count(v);
        // Prune only on a strictly shorter certified distance: equal
        // distance can still mean new paths to account for.
        if cache.query_dist(idx.labels(v)) < dv {
            continue;
        }
        match idx.get_label(v, h) {
            Some(prior) => {
                if dv == prior.dist {
                    idx.upsert_label(v, LabelEntry::new(h, dv, cv + prior.count));
                    stats.renew_c += 1;
                } else {
                    idx.upsert_label(v, LabelEntry::new(h, dv, cv));
                    stats.renew_d += 1;
                }
            }
            None => {
                idx.upsert_label(v, LabelEntry::new(h, dv, cv));
                stats.inserted += 1;
            }
        }
        for &w in g.neighbors(v) {
            let dw = bfs.dist(w);
            if dw == INF_DIST {
                if idx.ordering().rank(w) >= h_rank {
                    bfs.visit(w, dv + 1, cv);
                }
            } else if dw == dv + 1 {
                bfs.accumulate(w, cv);
            }
        }
    }
}

/// Locates the affected sets of deleting edge `(a, b)`. Must run while the
/// edge is still present.
pub fn srr_search(
    g: &DynamicGraph,
    idx: &SpcIndex,
    a: VertexId,
    b: VertexId,
) -> Result<AffectedSets> {
    check_live_pair(g, a, b)?;
    if !g.has_edge(a, b) {
        return Err(Error::NoSuchEdge(a, b));
    }
    let mut bfs = BfsState::new(g.id_space());
    let mut cache = HubCache::new(g.id_space());
    let common = common_hubs(idx, a, b);
    let mut stats = UpdateStats::default();
    let (sr_a, r_a) = srr_pass(g, idx, a, b, &common, &mut bfs, &mut cache, &mut stats);
    let (sr_b, r_b) = srr_pass(g, idx, b, a, &common, &mut bfs, &mut cache, &mut stats);
    Ok(AffectedSets {
        sr_a,
        sr_b,
        r_a,
        r_b,
    })
}

/// Hubs common to both endpoints' label sets, in descending rank order.
fn common_hubs(idx: &SpcIndex, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let ord = idx.ordering();
    let (la, lb) = (idx.labels(a), idx.labels(b));
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < la.len() && j < lb.len() {
        let (ra, rb) = (ord.rank(la[i].hub), ord.rank(lb[j].hub));
        if ra < rb {
            i += 1;
        } else if rb < ra {
            j += 1;
        } else {
            out.push(la[i].hub);
            i += 1;
            j += 1;
        }
    }
    out
}

fn is_common_hub(idx: &SpcIndex, common: &[VertexId], v: VertexId) -> bool {
    let ord = idx.ordering();
    common
        .binary_search_by_key(&ord.rank(v), |&h| ord.rank(h))
        .is_ok()
}

/// One directional pass: BFS from `from` over the pre-deletion graph,
/// pruning vertices with no shortest path to `to` through the edge, and
/// classifying survivors as affected hubs or affected ordinary vertices.
#[allow(clippy::too_many_arguments)]
fn srr_pass(
    g: &DynamicGraph,
    idx: &SpcIndex,
    from: VertexId,
    to: VertexId,
    common: &[VertexId],
    bfs: &mut BfsState,
    cache: &mut HubCache,
    stats: &mut UpdateStats,
) -> (Vec<VertexId>, Vec<VertexId>) {
    let mut sr = Vec::new();
    let mut r = Vec::new();
    cache.load(idx.labels(to), None);
    bfs.begin();
    bfs.visit(from, 0, 1);
    while let Some(v) = bfs.pop() {
        stats.visited_vertices += 1;
        let dv = bfs.dist(v);
        let (d, c) = cache.query(idx.labels(v));
        // Only vertices one hop closer to `from` than to `to` can lose or
        // gain shortest paths through the edge.
        if d == INF_DIST || dv + 1 != d {
            continue;
        }
        if is_common_hub(idx, common, v) || bfs.count(v) == c {
            sr.push(v);
        } else {
            r.push(v);
        }
        for &w in g.neighbors(v) {
            let dw = bfs.dist(w);
            if dw == INF_DIST {
                bfs.visit(w, dv + 1, bfs.count(v));
            } else if dw == dv + 1 {
                bfs.accumulate(w, bfs.count(v));
            }
        }
    }
    (sr, r)
}

/// Membership view of one side's `SR ∪ R`, backed by a marker array.
struct SideSet<'a> {
    sr: &'a [VertexId],
    r: &'a [VertexId],
    marker: &'a [u8],
    tag: u8,
}

impl SideSet<'_> {
    fn contains(&self, v: VertexId) -> bool {
        self.marker[v.index()] == self.tag
    }

    fn members(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.sr.iter().chain(self.r.iter()).copied()
    }
}

/// Removes edge `(a, b)` and repairs the index. Takes the isolated-vertex
/// shortcut when one endpoint had degree one, otherwise runs the affected
/// set search followed by per-hub repair traversals.
pub fn dec_spc(
    g: &mut DynamicGraph,
    idx: &mut SpcIndex,
    a: VertexId,
    b: VertexId,
) -> Result<UpdateStats> {
    dec_spc_inner(g, idx, a, b, true)
}

/// `dec_spc` with the isolated-vertex shortcut disabled; the two paths
/// must produce query-identical indexes on eligible edges.
pub fn dec_spc_general(
    g: &mut DynamicGraph,
    idx: &mut SpcIndex,
    a: VertexId,
    b: VertexId,
) -> Result<UpdateStats> {
    dec_spc_inner(g, idx, a, b, false)
}

fn dec_spc_inner(
    g: &mut DynamicGraph,
    idx: &mut SpcIndex,
    a: VertexId,
    b: VertexId,
    allow_fast_path: bool,
) -> Result<UpdateStats> {
    let start = Instant::now();
    check_live_pair(g, a, b)?;
    if !g.has_edge(a, b) {
        return Err(Error::NoSuchEdge(a, b));
    }

    let mut stats = UpdateStats::default();
    if allow_fast_path && delete_isolating_edge_fast_path_stats(g, idx, a, b, &mut stats)? {
        stats.elapsed = start.elapsed();
        return Ok(stats);
    }

    // Search on the pre-deletion graph, then delete, then update.
    let sets = srr_search_with_stats(g, idx, a, b, &mut stats)?;
    g.remove_edge(a, b)?;
    let common = common_hubs(idx, a, b);

    let mut marker = vec![0u8; g.id_space()];
    for &v in sets.sr_a.iter().chain(&sets.r_a) {
        marker[v.index()] = 1;
    }
    for &v in sets.sr_b.iter().chain(&sets.r_b) {
        marker[v.index()] = 2;
    }

    // Affected hubs from both sides, highest rank first.
    let ord = idx.ordering();
    let mut hubs: Vec<(VertexId, bool)> = sets
        .sr_a
        .iter()
        .map(|&h| (h, true))
        .chain(sets.sr_b.iter().map(|&h| (h, false)))
        .collect();
    hubs.sort_by_key(|&(h, _)| ord.rank(h));

    let mut bfs = BfsState::new(g.id_space());
    let mut cache = HubCache::new(g.id_space());
    for (h, from_a) in hubs {
        let opposite = if from_a {
            SideSet {
                sr: &sets.sr_b,
                r: &sets.r_b,
                marker: &marker,
                tag: 2,
            }
        } else {
            SideSet {
                sr: &sets.sr_a,
                r: &sets.r_a,
                marker: &marker,
                tag: 1,
            }
        };
        let h_common = is_common_hub(idx, &common, h);
        dec_update_impl(h, &opposite, h_common, g, idx, &mut bfs, &mut cache, &mut stats)?;
    }

    stats.sr_a_size = sets.sr_a.len() as u64;
    stats.sr_b_size = sets.sr_b.len() as u64;
    stats.r_a_size = sets.r_a.len() as u64;
    stats.r_b_size = sets.r_b.len() as u64;
    stats.elapsed = start.elapsed();
    Ok(stats)
}

fn srr_search_with_stats(
    g: &DynamicGraph,
    idx: &SpcIndex,
    a: VertexId,
    b: VertexId,
    stats: &mut UpdateStats,
) -> Result<AffectedSets> {
    let mut bfs = BfsState::new(g.id_space());
    let mut cache = HubCache::new(g.id_space());
    let common = common_hubs(idx, a, b);
    let (sr_a, r_a) = srr_pass(g, idx, a, b, &common, &mut bfs, &mut cache, stats);
    let (sr_b, r_b) = srr_pass(g, idx, b, a, &common, &mut bfs, &mut cache, stats);
    Ok(AffectedSets {
        sr_a,
        sr_b,
        r_a,
        r_b,
    })
}

/// One repair traversal for affected hub `h` against the opposite side's
/// affected vertices, over the post-deletion graph. When `h_common` is set,
/// entries of unvisited affected vertices are removed afterwards: their
/// owner either got disconnected from `h` or is now dominated by
/// higher-ranked hubs.
pub fn dec_update(
    h: VertexId,
    opp_sr: &[VertexId],
    opp_r: &[VertexId],
    h_common: bool,
    g: &DynamicGraph,
    idx: &mut SpcIndex,
    stats: &mut UpdateStats,
) -> Result<()> {
    let mut marker = vec![0u8; g.id_space()];
    for &v in opp_sr.iter().chain(opp_r) {
        marker[v.index()] = 1;
    }
    let side = SideSet {
        sr: opp_sr,
        r: opp_r,
        marker: &marker,
        tag: 1,
    };
    let mut bfs = BfsState::new(g.id_space());
    let mut cache = HubCache::new(g.id_space());
    dec_update_impl(h, &side, h_common, g, idx, &mut bfs, &mut cache, stats)
}

#[allow(clippy::too_many_arguments)]
fn dec_update_impl(
    h: VertexId,
    opposite: &SideSet<'_>,
    h_common: bool,
    g: &DynamicGraph,
    idx: &mut SpcIndex,
    bfs: &mut BfsState,
    cache: &mut HubCache,
    stats: &mut UpdateStats,
) -> Result<()> {
    let h_rank = idx.ordering().rank(h);
    // Upper-bound distances come from hubs ranked strictly above h, all of
    // which are already correct when h is processed.
    cache.load(idx.labels(h), Some(h));
    bfs.begin();
    bfs.visit(h, 0, 1);
    while let Some(v) = bfs.pop() {
        stats.visited_vertices += 1;
        let dv = bfs.dist(v);
        let cv = bfs.count(v);
        if cache.query_dist(idx.labels(v)) < dv {
            continue;
        }
        if opposite.contains(v) {
            match idx.get_label(v, h) {
                None => {
                    idx.upsert_label(v, LabelEntry::new(h, dv, cv));
                    stats.inserted += 1;
                }
                Some(prior) if prior.dist != dv || prior.count != cv => {
                    if prior.dist != dv {
                        stats.renew_d += 1;
                    } else {
                        stats.renew_c += 1;
                    }
                    idx.upsert_label(v, LabelEntry::new(h, dv, cv));
                }
                Some(_) => {}
            }
            bfs.mark_updated(v);
        }
        for &w in g.neighbors(v) {
            let dw = bfs.dist(w);
            if dw == INF_DIST {
                if idx.ordering().rank(w) >= h_rank {
                    bfs.visit(w, dv + 1, cv);
                }
            } else if dw == dv + 1 {
                bfs.accumulate(w, cv);
            }
        }
    }
    if h_common {
        for u in opposite.members() {
            debug_assert_ne!(u, h, "affected sides are disjoint");
            if !bfs.is_updated(u) && idx.get_label(u, h).is_some() {
                idx.remove_label(u, h)?;
                stats.removed += 1;
            }
        }
    }
    Ok(())
}

/// Shortcut for deleting an edge whose removal isolates a vertex: reset the
/// isolated endpoint's labels to its self-label, with no traversals at all.
///
/// Applies when one endpoint has degree one (the lower-ranked one when both
/// do) and no other vertex carries a label with that endpoint as hub, which
/// is asserted by a scan before resetting. Returns whether it applied;
/// callers fall through to the general path on `false`.
pub fn delete_isolating_edge_fast_path(
    g: &mut DynamicGraph,
    idx: &mut SpcIndex,
    a: VertexId,
    b: VertexId,
) -> Result<bool> {
    let mut stats = UpdateStats::default();
    delete_isolating_edge_fast_path_stats(g, idx, a, b, &mut stats)
}

fn delete_isolating_edge_fast_path_stats(
    g: &mut DynamicGraph,
    idx: &mut SpcIndex,
    a: VertexId,
    b: VertexId,
    stats: &mut UpdateStats,
) -> Result<bool> {
    check_live_pair(g, a, b)?;
    if !g.has_edge(a, b) {
        return Err(Error::NoSuchEdge(a, b));
    }
    let ord = idx.ordering();
    let deg_a = g.degree(a)?;
    let deg_b = g.degree(b)?;
    let isolated = match (deg_a == 1, deg_b == 1) {
        (false, false) => return Ok(false),
        (true, false) => a,
        (false, true) => b,
        (true, true) => {
            if ord.rank(a) > ord.rank(b) {
                a
            } else {
                b
            }
        }
    };
    if idx.has_foreign_labels_with_hub(isolated) {
        return Ok(false);
    }
    g.remove_edge(a, b)?;
    stats.removed += idx.labels(isolated).len() as u64 - 1;
    idx.reset_to_self_label(isolated);
    Ok(true)
}

/// Adds a vertex to the graph and the index, at the lowest rank and with
/// only its self-label. No existing query result changes.
pub fn insert_vertex(g: &mut DynamicGraph, idx: &mut SpcIndex) -> Result<VertexId> {
    let v = g.add_vertex()?;
    idx.add_vertex(v);
    Ok(v)
}

/// Deletes a vertex by removing its incident edges one at a time through
/// [`dec_spc`], then tombstoning it. Stats aggregate over the sequence.
pub fn delete_vertex(
    g: &mut DynamicGraph,
    idx: &mut SpcIndex,
    v: VertexId,
) -> Result<UpdateStats> {
    let start = Instant::now();
    let mut stats = UpdateStats::default();
    for (x, w) in g.incident_edges(v)? {
        let s = dec_spc(g, idx, x, w)?;
        stats.absorb(&s);
    }
    stats.removed += idx.labels(v).len() as u64;
    g.remove_vertex(v)?;
    idx.remove_vertex(v)?;
    stats.elapsed = start.elapsed();
    Ok(stats)
}

/// Sanity helper for tests: the set of `(owner, hub)` pairs whose entry
/// differs between two indexes, with the entries involved.
#[cfg(test)]
pub(crate) fn label_diff(
    before: &SpcIndex,
    after: &SpcIndex,
) -> Vec<(VertexId, Option<LabelEntry>, Option<LabelEntry>)> {
    use std::collections::HashSet;
    let mut out = Vec::new();
    let n = before.id_space().max(after.id_space());
    for v in (0..n as u32).map(VertexId::new) {
        let old: Vec<LabelEntry> = if before.is_live(v) {
            before.labels(v).to_vec()
        } else {
            Vec::new()
        };
        let new: Vec<LabelEntry> = if after.is_live(v) {
            after.labels(v).to_vec()
        } else {
            Vec::new()
        };
        let hubs: HashSet<VertexId> = old.iter().chain(new.iter()).map(|e| e.hub).collect();
        for h in hubs {
            let oe = old.iter().find(|e| e.hub == h).copied();
            let ne = new.iter().find(|e| e.hub == h).copied();
            if oe != ne {
                out.push((v, oe, ne));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::build::build;
    use crate::fixtures;
    use crate::oracle::{validate_index, ValidationMode};

    fn v(id: u32) -> VertexId {
        VertexId::new(id)
    }

    fn ids(list: &[u32]) -> Vec<VertexId> {
        list.iter().copied().map(VertexId::new).collect()
    }

    fn example() -> (DynamicGraph, SpcIndex) {
        (fixtures::example_graph(), fixtures::example_index())
    }

    #[test]
    fn inc_spc_rejects_illegal_edges() {
        let (mut g, mut idx) = example();
        assert!(matches!(
            inc_spc(&mut g, &mut idx, v(0), v(1)),
            Err(Error::EdgeExists(_, _))
        ));
        assert!(matches!(
            inc_spc(&mut g, &mut idx, v(5), v(5)),
            Err(Error::SelfLoop(_))
        ));
    }

    #[test]
    fn golden_incremental_insertion() {
        let (mut g, mut idx) = example();
        let before = idx.clone();
        let stats = inc_spc(&mut g, &mut idx, v(3), v(9)).unwrap();

        assert_eq!(idx.get_label(v(9), v(0)), Some(LabelEntry::new(v(0), 2, 1)));
        assert_eq!(idx.get_label(v(9), v(1)), Some(LabelEntry::new(v(1), 3, 3)));
        assert_eq!(idx.get_label(v(9), v(2)), Some(LabelEntry::new(v(2), 2, 1)));
        assert_eq!(idx.get_label(v(4), v(0)).unwrap().count, 4);
        assert_eq!(idx.get_label(v(10), v(0)).unwrap().count, 2);
        assert_eq!(
            idx.get_label(v(10), v(2)),
            Some(LabelEntry::new(v(2), 3, 1))
        );

        let report = validate_index(&g, &idx, ValidationMode::AllPairs).unwrap();
        assert!(report.is_clean(), "{report}");
        idx.check_invariants().unwrap();

        // Change accounting, cross-checked against an independent diff of
        // the label sets.
        let diff = label_diff(&before, &idx);
        let inserted = diff.iter().filter(|(_, o, n)| o.is_none() && n.is_some()).count();
        let renew_d = diff
            .iter()
            .filter(|(_, o, n)| match (o, n) {
                (Some(o), Some(n)) => o.dist != n.dist,
                _ => false,
            })
            .count();
        let renew_c = diff
            .iter()
            .filter(|(_, o, n)| match (o, n) {
                (Some(o), Some(n)) => o.dist == n.dist && o.count != n.count,
                _ => false,
            })
            .count();
        assert_eq!(stats.inserted, inserted as u64);
        assert_eq!(stats.renew_d, renew_d as u64);
        assert_eq!(stats.renew_c, renew_c as u64);
        assert_eq!(stats.removed, 0);
        assert_eq!(
            (stats.renew_d, stats.renew_c, stats.inserted),
            (4, 4, 2),
            "replay over all affected hubs"
        );
    }

    #[test]
    fn incremental_insert_between_fresh_vertices() {
        let (mut g, mut idx) = example();
        let x = insert_vertex(&mut g, &mut idx).unwrap();
        let y = insert_vertex(&mut g, &mut idx).unwrap();
        let stats = inc_spc(&mut g, &mut idx, y, x).unwrap();
        // x is higher-ranked: y gains (x, 1, 1).
        assert_eq!(idx.get_label(y, x), Some(LabelEntry::new(x, 1, 1)));
        assert_eq!(idx.labels(x).len(), 1);
        assert_eq!(stats.inserted, 1);
        let report = validate_index(&g, &idx, ValidationMode::AllPairs).unwrap();
        assert!(report.is_clean(), "{report}");
    }

    #[test]
    fn label_distances_never_increase_under_insertion() {
        let (mut g, mut idx) = example();
        let before = idx.clone();
        inc_spc(&mut g, &mut idx, v(3), v(9)).unwrap();
        for u in g.vertices() {
            for e in before.labels(u) {
                let after = idx.get_label(u, e.hub).expect("insertions never drop labels");
                assert!(after.dist <= e.dist, "label ({}, {u})", e.hub);
            }
        }
    }

    #[test]
    fn srr_search_golden_sets() {
        let (g, idx) = example();
        let sets = srr_search(&g, &idx, v(1), v(2)).unwrap();
        assert_eq!(sets.sr_a, ids(&[1, 6, 10]));
        assert_eq!(sets.sr_b, ids(&[2]));
        assert_eq!(sets.r_a, ids(&[]));
        assert_eq!(sets.r_b, ids(&[3, 7]));
    }

    #[test]
    fn srr_search_requires_the_edge() {
        let (g, idx) = example();
        assert!(matches!(
            srr_search(&g, &idx, v(0), v(4)),
            Err(Error::NoSuchEdge(_, _))
        ));
    }

    #[test]
    fn golden_decremental_deletion() {
        let (mut g, mut idx) = example();
        let before = idx.clone();
        let stats = dec_spc(&mut g, &mut idx, v(1), v(2)).unwrap();

        assert_eq!((stats.sr_a_size, stats.sr_b_size), (3, 1));
        assert_eq!((stats.r_a_size, stats.r_b_size), (0, 2));

        // The four label changes, and nothing else.
        assert_eq!(idx.get_label(v(2), v(1)), Some(LabelEntry::new(v(1), 2, 1)));
        assert_eq!(idx.get_label(v(7), v(1)), Some(LabelEntry::new(v(1), 3, 1)));
        assert_eq!(idx.get_label(v(3), v(1)), None);
        assert_eq!(
            idx.get_label(v(10), v(2)),
            Some(LabelEntry::new(v(2), 4, 1))
        );
        let diff = label_diff(&before, &idx);
        assert_eq!(diff.len(), 4, "{diff:?}");
        assert_eq!(
            (stats.renew_d, stats.renew_c, stats.inserted, stats.removed),
            (1, 1, 1, 1)
        );

        let report = validate_index(&g, &idx, ValidationMode::AllPairs).unwrap();
        assert!(report.is_clean(), "{report}");
        idx.check_invariants().unwrap();
    }

    #[test]
    fn dec_spc_rejects_absent_edges() {
        let (mut g, mut idx) = example();
        assert!(matches!(
            dec_spc(&mut g, &mut idx, v(0), v(4)),
            Err(Error::NoSuchEdge(_, _))
        ));
    }

    #[test]
    fn deleting_the_only_edge_disconnects_cleanly() {
        let mut g = DynamicGraph::with_vertex_count(2).unwrap();
        g.add_edge(v(0), v(1)).unwrap();
        let ord = crate::order::VertexOrdering::by_degree(&g);
        let mut idx = build(&g, ord);
        dec_spc(&mut g, &mut idx, v(0), v(1)).unwrap();
        assert_eq!(idx.labels(v(0)), &[LabelEntry::new(v(0), 0, 1)]);
        assert_eq!(idx.labels(v(1)), &[LabelEntry::new(v(1), 0, 1)]);
        assert_eq!(
            idx.spc_query(v(0), v(1)).unwrap(),
            crate::index::QueryResult::DISCONNECTED
        );
    }

    #[test]
    fn fast_path_applies_only_to_isolating_edges() {
        let (mut g, mut idx) = example();
        // Both endpoints have degree > 1.
        assert!(!delete_isolating_edge_fast_path(&mut g, &mut idx, v(1), v(2)).unwrap());

        // Degree-one endpoint: applies and touches nothing else.
        let before = idx.clone();
        assert!(delete_isolating_edge_fast_path(&mut g, &mut idx, v(0), v(11)).unwrap());
        assert_eq!(idx.labels(v(11)), &[LabelEntry::new(v(11), 0, 1)]);
        let diff = label_diff(&before, &idx);
        assert!(diff.iter().all(|(owner, _, _)| *owner == v(11)), "{diff:?}");
        let report = validate_index(&g, &idx, ValidationMode::AllPairs).unwrap();
        assert!(report.is_clean(), "{report}");
    }

    #[test]
    fn fast_path_declines_when_the_leaf_is_a_foreign_hub() {
        // Path 0 - 1 - 2 with the leaf 0 ranked highest: 1 and 2 carry
        // labels with hub 0, so isolating 0 must fall back to the general
        // path, which also has to clean those labels out.
        let mut g = DynamicGraph::with_vertex_count(3).unwrap();
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        let ord = crate::order::VertexOrdering::identity(3);
        let mut idx = build(&g, ord);
        assert!(idx.has_foreign_labels_with_hub(v(0)));
        assert!(!delete_isolating_edge_fast_path(&mut g, &mut idx, v(0), v(1)).unwrap());
        dec_spc(&mut g, &mut idx, v(0), v(1)).unwrap();
        assert_eq!(idx.get_label(v(1), v(0)), None);
        assert_eq!(idx.get_label(v(2), v(0)), None);
        let report = validate_index(&g, &idx, ValidationMode::AllPairs).unwrap();
        assert!(report.is_clean(), "{report}");
        idx.check_invariants().unwrap();
    }

    #[test]
    fn fast_path_and_general_path_agree_on_the_example_leaf() {
        let (mut g1, mut idx1) = example();
        dec_spc(&mut g1, &mut idx1, v(0), v(11)).unwrap();
        let (mut g2, mut idx2) = example();
        dec_spc_general(&mut g2, &mut idx2, v(0), v(11)).unwrap();
        for s in g1.vertices() {
            for t in g1.vertices() {
                assert_eq!(
                    idx1.spc_query(s, t).unwrap(),
                    idx2.spc_query(s, t).unwrap(),
                    "pair ({s},{t})"
                );
            }
        }
    }

    #[test]
    fn insert_vertex_leaves_queries_unchanged() {
        let (mut g, mut idx) = example();
        let before = idx.clone();
        let nv = insert_vertex(&mut g, &mut idx).unwrap();
        assert_eq!(nv, v(12));
        assert_eq!(idx.labels(nv), &[LabelEntry::new(nv, 0, 1)]);
        assert_eq!(idx.ordering().rank(nv), 12);
        for s in 0..12 {
            for t in 0..12 {
                assert_eq!(
                    idx.spc_query(v(s), v(t)).unwrap(),
                    before.spc_query(v(s), v(t)).unwrap()
                );
            }
        }
    }

    #[test]
    fn delete_vertex_runs_edge_deletions_then_tombstones() {
        let (mut g, mut idx) = example();
        let before = idx.clone();
        delete_vertex(&mut g, &mut idx, v(11)).unwrap();
        assert!(!g.is_live(v(11)));
        assert!(!idx.is_live(v(11)));
        // Only v11's own labels went away.
        let diff = label_diff(&before, &idx);
        assert!(diff.iter().all(|(owner, _, _)| *owner == v(11)), "{diff:?}");
        let report = validate_index(&g, &idx, ValidationMode::AllPairs).unwrap();
        assert!(report.is_clean(), "{report}");

        let err = delete_vertex(&mut g, &mut idx, v(11)).unwrap_err();
        assert!(matches!(err, Error::DeadVertex(_)));
    }

    #[test]
    fn delete_vertex_with_several_edges_matches_the_oracle() {
        let (mut g, mut idx) = example();
        delete_vertex(&mut g, &mut idx, v(4)).unwrap();
        assert_eq!(g.vertex_count(), 11);
        let report = validate_index(&g, &idx, ValidationMode::AllPairs).unwrap();
        assert!(report.is_clean(), "{report}");
        idx.check_invariants().unwrap();
    }

    #[test]
    fn affected_sets_members_straddle_the_deleted_edge() {
        let (g, idx) = example();
        let sets = srr_search(&g, &idx, v(1), v(2)).unwrap();
        let da = crate::oracle::bfs_spc(&g, v(1)).unwrap();
        let db = crate::oracle::bfs_spc(&g, v(2)).unwrap();
        for &m in sets.sr_a.iter().chain(&sets.r_a) {
            assert_eq!(da.dist[m.index()] + 1, db.dist[m.index()]);
        }
        for &m in sets.sr_b.iter().chain(&sets.r_b) {
            assert_eq!(db.dist[m.index()] + 1, da.dist[m.index()]);
        }
        // Pairwise disjoint.
        let mut all: Vec<VertexId> = Vec::new();
        all.extend(&sets.sr_a);
        all.extend(&sets.sr_b);
        all.extend(&sets.r_a);
        all.extend(&sets.r_b);
        let unique: HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
    }
}
