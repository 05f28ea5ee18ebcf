//! Ground-truth engines: counting BFS, bidirectional BFS queries, and
//! rank-restricted path counting. These are independent of the index code
//! and back every golden fixture and validation check.

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, VertexId};
use crate::index::{QueryResult, SpcIndex, INF_DIST};
use crate::label::LabelEntry;
use crate::order::VertexOrdering;

/// Per-vertex distances and shortest-path counts from one source.
#[derive(Debug, Clone)]
pub struct SsspcResult {
    pub dist: Vec<u32>,
    pub count: Vec<u64>,
}

impl SsspcResult {
    pub fn query(&self, t: VertexId) -> QueryResult {
        QueryResult {
            dist: self.dist[t.index()],
            count: self.count[t.index()],
        }
    }
}

fn checked_add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::CountOverflow)
}

/// Counting BFS from `s`: exact distance and shortest-path count to every
/// vertex. Unreachable vertices keep `(INF, 0)`.
pub fn bfs_spc(g: &DynamicGraph, s: VertexId) -> Result<SsspcResult> {
    bfs_spc_filtered(g, s, |_| true)
}

/// Counting BFS restricted to vertices accepted by `admit`. The source must
/// be admitted by the caller.
fn bfs_spc_filtered(
    g: &DynamicGraph,
    s: VertexId,
    admit: impl Fn(VertexId) -> bool,
) -> Result<SsspcResult> {
    if !g.is_live(s) {
        return Err(Error::DeadVertex(s));
    }
    let n = g.id_space();
    let mut dist = vec![INF_DIST; n];
    let mut count = vec![0u64; n];
    dist[s.index()] = 0;
    count[s.index()] = 1;
    let mut queue = VecDeque::new();
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.index()];
        let cu = count[u.index()];
        for &w in g.neighbors(u) {
            if !admit(w) {
                continue;
            }
            if dist[w.index()] == INF_DIST {
                dist[w.index()] = du + 1;
                count[w.index()] = cu;
                queue.push_back(w);
            } else if dist[w.index()] == du + 1 {
                count[w.index()] = checked_add(count[w.index()], cu)?;
            }
        }
    }
    Ok(SsspcResult { dist, count })
}

/// Exact `(distance, count)` for one pair by bidirectional BFS, the online
/// baseline. Each iteration expands the side with the smaller frontier.
///
/// Counting discipline: once the radii certify the best distance `D`, every
/// shortest path crosses the source-side level `r = min(radius_s, D)` at
/// exactly one vertex, so summing `count_s(v) * count_t(v)` over vertices
/// with `dist_s(v) = r` and `dist_t(v) = D - r` counts each path once.
pub fn bibfs_query(g: &DynamicGraph, s: VertexId, t: VertexId) -> Result<QueryResult> {
    if !g.is_live(s) {
        return Err(Error::DeadVertex(s));
    }
    if !g.is_live(t) {
        return Err(Error::DeadVertex(t));
    }
    if s == t {
        return Ok(QueryResult { dist: 0, count: 1 });
    }
    let n = g.id_space();

    struct Side {
        dist: Vec<u32>,
        count: Vec<u64>,
        frontier: Vec<VertexId>,
        radius: u32,
        settled: Vec<VertexId>,
    }
    impl Side {
        fn new(n: usize, origin: VertexId) -> Self {
            let mut dist = vec![INF_DIST; n];
            let mut count = vec![0u64; n];
            dist[origin.index()] = 0;
            count[origin.index()] = 1;
            Side {
                dist,
                count,
                frontier: vec![origin],
                radius: 0,
                settled: vec![origin],
            }
        }

        /// Expands one full level; returns the newly settled vertices.
        fn expand(&mut self, g: &DynamicGraph) -> Result<Vec<VertexId>> {
            let mut next = Vec::new();
            for &u in &self.frontier {
                let du = self.dist[u.index()];
                let cu = self.count[u.index()];
                for &w in g.neighbors(u) {
                    if self.dist[w.index()] == INF_DIST {
                        self.dist[w.index()] = du + 1;
                        self.count[w.index()] = cu;
                        next.push(w);
                    } else if self.dist[w.index()] == du + 1 {
                        self.count[w.index()] = checked_add(self.count[w.index()], cu)?;
                    }
                }
            }
            self.radius += 1;
            self.settled.extend_from_slice(&next);
            self.frontier = next.clone();
            Ok(next)
        }
    }

    let mut from_s = Side::new(n, s);
    let mut from_t = Side::new(n, t);
    let mut best = INF_DIST;
    loop {
        if best <= from_s.radius + from_t.radius {
            break;
        }
        if from_s.frontier.is_empty() && from_t.frontier.is_empty() {
            break;
        }
        let expand_s = !from_s.frontier.is_empty()
            && (from_t.frontier.is_empty() || from_s.frontier.len() <= from_t.frontier.len());
        let (expanded, other) = if expand_s {
            (from_s.expand(g)?, &from_t)
        } else {
            (from_t.expand(g)?, &from_s)
        };
        for v in expanded {
            if other.dist[v.index()] != INF_DIST {
                best = best.min(from_s.dist[v.index()] + from_t.dist[v.index()]);
            }
        }
    }
    if best == INF_DIST {
        return Ok(QueryResult::DISCONNECTED);
    }
    let cut = from_s.radius.min(best);
    let mut total: u64 = 0;
    for &v in &from_s.settled {
        if from_s.dist[v.index()] == cut && from_t.dist[v.index()] == best - cut {
            let product = from_s.count[v.index()]
                .checked_mul(from_t.count[v.index()])
                .ok_or(Error::CountOverflow)?;
            total = checked_add(total, product)?;
        }
    }
    Ok(QueryResult {
        dist: best,
        count: total,
    })
}

/// Global shortest distance from `h` to `v`, paired with the number of
/// globally-shortest `h`-`v` paths that lie entirely within the subgraph of
/// vertices ranked no higher than `h`. The count may be zero while the
/// distance is finite.
pub fn spc_hat(
    g: &DynamicGraph,
    ord: &VertexOrdering,
    h: VertexId,
    v: VertexId,
) -> Result<(u32, u64)> {
    if !g.is_live(v) {
        return Err(Error::DeadVertex(v));
    }
    let global = bfs_spc(g, h)?;
    let hub_rank = ord.rank(h);
    let restricted = bfs_spc_filtered(g, h, |w| ord.rank(w) >= hub_rank)?;
    let d = global.dist[v.index()];
    if d == INF_DIST {
        return Ok((INF_DIST, 0));
    }
    if restricted.dist[v.index()] == d {
        Ok((d, restricted.count[v.index()]))
    } else {
        Ok((d, 0))
    }
}

/// The label set a fresh build must produce, derived purely from
/// [`spc_hat`]: vertex `v` carries `(h, d, c)` exactly when `c > 0`
/// rank-restricted shortest paths of global length `d` exist.
pub fn characterization_labels(
    g: &DynamicGraph,
    ord: &VertexOrdering,
) -> Result<Vec<Option<Vec<LabelEntry>>>> {
    let n = g.id_space();
    let mut labels: Vec<Option<Vec<LabelEntry>>> = vec![None; n];
    for v in g.vertices() {
        labels[v.index()] = Some(Vec::new());
    }
    // One restricted BFS per hub covers all owners at once.
    let mut hubs: Vec<VertexId> = g.vertices().collect();
    hubs.sort_by_key(|&h| ord.rank(h));
    for h in hubs {
        let hub_rank = ord.rank(h);
        let global = bfs_spc(g, h)?;
        let restricted = bfs_spc_filtered(g, h, |w| ord.rank(w) >= hub_rank)?;
        for v in g.vertices() {
            if ord.rank(v) < hub_rank {
                continue;
            }
            let d = global.dist[v.index()];
            if d != INF_DIST && restricted.dist[v.index()] == d && restricted.count[v.index()] > 0
            {
                labels[v.index()]
                    .as_mut()
                    .expect("live vertex")
                    .push(LabelEntry::new(h, d, restricted.count[v.index()]));
            }
        }
    }
    Ok(labels)
}

/// One index/oracle disagreement found by [`validate_index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub s: VertexId,
    pub t: VertexId,
    pub index: QueryResult,
    pub oracle: QueryResult,
}

/// Validation outcome: every mismatch with both values, plus the number of
/// pairs checked.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.mismatches {
            writeln!(
                f,
                "MISMATCH {} {} index={} oracle={}",
                m.s, m.t, m.index, m.oracle
            )?;
        }
        write!(
            f,
            "checked={} mismatches={}",
            self.checked,
            self.mismatches.len()
        )
    }
}

/// How many pairs [`validate_index`] should compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    AllPairs,
    /// `pairs` uniformly random live pairs drawn from the given seed.
    Sampled { pairs: usize, seed: u64 },
}

/// Compares `spc_query` against the counting-BFS oracle over all pairs of
/// live vertices, or a random sample of them. Mismatches are report
/// content, not errors.
pub fn validate_index(
    g: &DynamicGraph,
    idx: &SpcIndex,
    mode: ValidationMode,
) -> Result<ValidationReport> {
    let mut report = ValidationReport {
        checked: 0,
        mismatches: Vec::new(),
    };
    let live: Vec<VertexId> = g.vertices().collect();
    match mode {
        ValidationMode::AllPairs => {
            for &s in &live {
                let truth = bfs_spc(g, s)?;
                for &t in &live {
                    if t < s {
                        continue;
                    }
                    let got = idx.spc_query(s, t)?;
                    let want = truth.query(t);
                    report.checked += 1;
                    if got != want {
                        report.mismatches.push(Mismatch {
                            s,
                            t,
                            index: got,
                            oracle: want,
                        });
                    }
                }
            }
        }
        ValidationMode::Sampled { pairs, seed } => {
            if live.is_empty() {
                return Ok(report);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..pairs {
                let s = live[rng.gen_range(0..live.len())];
                let t = live[rng.gen_range(0..live.len())];
                let got = idx.spc_query(s, t)?;
                let want = bibfs_query(g, s, t)?;
                report.checked += 1;
                if got != want {
                    report.mismatches.push(Mismatch {
                        s,
                        t,
                        index: got,
                        oracle: want,
                    });
                }
            }
        }
    }
    Ok(report)
}
