//! Vertex orderings: the total order that drives every pruning rule.
//!
//! Rank 0 is the highest rank. A vertex `v` outranks `u` exactly when
//! `rank(v) < rank(u)`.

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, VertexId};

/// A frozen total order over vertex ids.
///
/// The order is fixed when the index is built; vertices created afterwards
/// are appended at the lowest rank. Tombstoned vertices keep their slot so
/// that ranks of the survivors never shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    rank_of: Vec<u32>,
    vertex_at: Vec<VertexId>,
}

impl VertexOrdering {
    /// Builds an ordering from an explicit permutation, highest rank first.
    pub fn from_permutation(perm: &[VertexId]) -> Result<Self> {
        let n = perm.len();
        let mut rank_of = vec![u32::MAX; n];
        for (rank, &v) in perm.iter().enumerate() {
            let slot = rank_of.get_mut(v.index()).ok_or_else(|| {
                Error::InvalidOrdering(format!("vertex {v} out of range for n={n}"))
            })?;
            if *slot != u32::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {v} listed twice")));
            }
            *slot = rank as u32;
        }
        Ok(VertexOrdering {
            rank_of,
            vertex_at: perm.to_vec(),
        })
    }

    /// Identity ordering: vertex id equals rank.
    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            rank_of: (0..n as u32).collect(),
            vertex_at: (0..n as u32).map(VertexId::new).collect(),
        }
    }

    /// Degree-based ordering: non-increasing degree, ties broken by
    /// ascending vertex id. Tombstoned vertices sort last.
    pub fn by_degree(g: &DynamicGraph) -> Self {
        let mut perm: Vec<VertexId> = (0..g.id_space() as u32).map(VertexId::new).collect();
        perm.sort_by_key(|&v| {
            let deg = if g.is_live(v) { g.neighbors(v).len() } else { 0 };
            (std::cmp::Reverse(deg), v)
        });
        Self::from_permutation(&perm).expect("permutation built from 0..n")
    }

    pub fn len(&self) -> usize {
        self.vertex_at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_at.is_empty()
    }

    pub fn rank(&self, v: VertexId) -> u32 {
        self.rank_of[v.index()]
    }

    pub fn vertex_at(&self, rank: u32) -> VertexId {
        self.vertex_at[rank as usize]
    }

    /// True when `u` is ranked at least as high as `v`, the order relation
    /// written `u <= v` on paper.
    pub fn outranks_or_is(&self, u: VertexId, v: VertexId) -> bool {
        self.rank(u) <= self.rank(v)
    }

    /// Appends a fresh vertex at the lowest rank. The id must be the next
    /// unassigned one.
    pub fn append(&mut self, v: VertexId) {
        assert_eq!(v.index(), self.rank_of.len(), "ordering append out of step");
        self.rank_of.push(self.vertex_at.len() as u32);
        self.vertex_at.push(v);
    }

    /// Ranks in highest-to-lowest order.
    pub fn ranks_descending(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_at.iter().copied()
    }
}
