//! Mutable undirected, unweighted, simple-graph storage.
//!
//! Vertex ids are dense and never reused: deleting a vertex tombstones its
//! id so that label entries referring to it as a hub stay unambiguous for
//! the rest of the session.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Hub ids are packed into a 25-bit field, which bounds the id space.
pub const HUB_ID_BITS: u32 = 25;

/// Maximum number of vertex ids a graph may allocate in one session.
pub const MAX_VERTICES: usize = 1 << HUB_ID_BITS;

/// Identifier of a vertex, dense in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(id: u32) -> Self {
        VertexId(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// The id as a `usize`, for indexing per-vertex arrays.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(id: u32) -> Self {
        VertexId(id)
    }
}

/// Mutable undirected unweighted simple graph with tombstoned deletion.
///
/// Neighbor lists are kept sorted by vertex id, which makes edge tests a
/// binary search and keeps traversal order deterministic.
#[derive(Debug, Clone, Default)]
pub struct DynamicGraph {
    adjacency: Vec<Vec<VertexId>>,
    alive: Vec<bool>,
    edge_count: usize,
    live_count: usize,
}

impl DynamicGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph with `n` live isolated vertices, ids `0..n`.
    pub fn with_vertex_count(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::IdOverflow(HUB_ID_BITS));
        }
        Ok(DynamicGraph {
            adjacency: vec![Vec::new(); n],
            alive: vec![true; n],
            edge_count: 0,
            live_count: n,
        })
    }

    /// Total number of ids ever allocated, live or tombstoned.
    pub fn id_space(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.live_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    fn check_live(&self, v: VertexId) -> Result<()> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(Error::DeadVertex(v))
        }
    }

    /// Iterate over live vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, live)| **live)
            .map(|(i, _)| VertexId(i as u32))
    }

    /// Iterate over edges as `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(move |(u, nbrs)| {
            let u = VertexId(u as u32);
            nbrs.iter().copied().filter(move |&w| u < w).map(move |w| (u, w))
        })
    }

    /// Appends a fresh vertex at the next id. Ids of deleted vertices are
    /// never handed out again.
    pub fn add_vertex(&mut self) -> Result<VertexId> {
        if self.adjacency.len() >= MAX_VERTICES {
            return Err(Error::IdOverflow(HUB_ID_BITS));
        }
        let id = VertexId(self.adjacency.len() as u32);
        self.adjacency.push(Vec::new());
        self.alive.push(true);
        self.live_count += 1;
        Ok(id)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_live(v)?;
        Ok(self.adjacency[v.index()].len())
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.index()]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.is_live(u)
            && self.is_live(v)
            && self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let pos_u = match self.adjacency[u.index()].binary_search(&v) {
            Ok(_) => return Err(Error::EdgeExists(u, v)),
            Err(pos) => pos,
        };
        self.adjacency[u.index()].insert(pos_u, v);
        let pos_v = self.adjacency[v.index()]
            .binary_search(&u)
            .expect_err("adjacency symmetry violated");
        self.adjacency[v.index()].insert(pos_v, u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_live(u)?;
        self.check_live(v)?;
        let pos_u = self.adjacency[u.index()]
            .binary_search(&v)
            .map_err(|_| Error::NoSuchEdge(u, v))?;
        self.adjacency[u.index()].remove(pos_u);
        let pos_v = self.adjacency[v.index()]
            .binary_search(&u)
            .expect("adjacency symmetry violated");
        self.adjacency[v.index()].remove(pos_v);
        self.edge_count -= 1;
        Ok(())
    }

    /// All edges touching `v`, as `(v, neighbor)` pairs.
    pub fn incident_edges(&self, v: VertexId) -> Result<Vec<(VertexId, VertexId)>> {
        self.check_live(v)?;
        Ok(self.adjacency[v.index()].iter().map(|&w| (v, w)).collect())
    }

    /// Tombstones an isolated vertex. Its id is never reused.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        self.check_live(v)?;
        assert!(
            self.adjacency[v.index()].is_empty(),
            "remove_vertex requires an isolated vertex"
        );
        self.alive[v.index()] = false;
        self.live_count -= 1;
        Ok(())
    }

    /// Checks adjacency symmetry, simplicity, and the edge-count identity by
    /// full scan. Test support; not called on any hot path.
    pub fn check_consistency(&self) -> Result<()> {
        let mut half_degrees = 0usize;
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            let u = VertexId(u as u32);
            if !self.is_live(u) {
                if !nbrs.is_empty() {
                    return Err(Error::InvalidIndex(format!(
                        "dead vertex {u} has neighbors"
                    )));
                }
                continue;
            }
            half_degrees += nbrs.len();
            let mut prev: Option<VertexId> = None;
            for &w in nbrs {
                if w == u {
                    return Err(Error::SelfLoop(u));
                }
                if prev == Some(w) {
                    return Err(Error::EdgeExists(u, w));
                }
                if let Some(p) = prev {
                    if w < p {
                        return Err(Error::InvalidIndex(format!(
                            "neighbors of {u} not sorted"
                        )));
                    }
                }
                if !self.has_edge(w, u) {
                    return Err(Error::InvalidIndex(format!(
                        "asymmetric edge ({u},{w})"
                    )));
                }
                prev = Some(w);
            }
        }
        if half_degrees != 2 * self.edge_count {
            return Err(Error::InvalidIndex(format!(
                "edge count {} does not match degree sum {}",
                self.edge_count, half_degrees
            )));
        }
        Ok(())
    }
}

/// Parses the edge-list text format: one `u v` pair per line, decimal ids
/// separated by whitespace, `#` lines ignored. Vertex count is the largest
/// id mentioned plus one. Duplicate and self-loop lines are rejected with
/// their line number.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<DynamicGraph> {
    let mut edges: Vec<(usize, VertexId, VertexId)> = Vec::new();
    let mut max_id: Option<u32> = None;
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse_id = |tok: Option<&str>| -> Result<u32> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "expected two vertex ids".into(),
            })?;
            let id: u64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad vertex id {tok:?}"),
            })?;
            if id >= MAX_VERTICES as u64 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("vertex id {id} exceeds the {HUB_ID_BITS}-bit id space"),
                });
            }
            Ok(id as u32)
        };
        let u = parse_id(it.next())?;
        let v = parse_id(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "trailing tokens after edge".into(),
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((lineno, VertexId(u), VertexId(v)));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    let mut g = DynamicGraph::with_vertex_count(n)?;
    for (lineno, u, v) in edges {
        g.add_edge(u, v).map_err(|e| match e {
            Error::SelfLoop(_) => Error::Parse {
                line: lineno,
                msg: format!("self-loop ({u},{v})"),
            },
            Error::EdgeExists(_, _) => Error::Parse {
                line: lineno,
                msg: format!("duplicate edge ({u},{v})"),
            },
            other => other,
        })?;
    }
    Ok(g)
}

/// Writes the edge-list text format, one `u v` line per edge with `u < v`,
/// ascending. Isolated vertices beyond the largest edge endpoint are not
/// representable in this format.
pub fn write_edge_list<W: Write>(g: &DynamicGraph, mut writer: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    Ok(())
}
