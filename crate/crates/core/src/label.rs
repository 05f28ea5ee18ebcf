//! Label entries and their 64-bit packed form.

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Bit widths of the packed layout: hub in bits 63..39, distance in bits
/// 38..29, count in bits 28..0.
pub const HUB_BITS: u32 = 25;
pub const DIST_BITS: u32 = 10;
pub const COUNT_BITS: u32 = 29;

pub const MAX_PACKED_HUB: u64 = (1 << HUB_BITS) - 1;
pub const MAX_PACKED_DIST: u64 = (1 << DIST_BITS) - 1;
pub const MAX_PACKED_COUNT: u64 = (1 << COUNT_BITS) - 1;

const DIST_SHIFT: u32 = COUNT_BITS;
const HUB_SHIFT: u32 = COUNT_BITS + DIST_BITS;

/// One index atom: hub vertex, hop distance to it, and the number of
/// shortest paths on which the hub is the highest-ranked vertex.
///
/// Counts are kept at full 64-bit width in memory; the 29-bit bound applies
/// only when an entry is packed for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelEntry {
    pub hub: VertexId,
    pub dist: u32,
    pub count: u64,
}

impl LabelEntry {
    pub fn new(hub: VertexId, dist: u32, count: u64) -> Self {
        LabelEntry { hub, dist, count }
    }
}

/// Packs an entry into one little-endian-serializable 64-bit word.
/// Out-of-range fields are a hard error; saturating would corrupt counts.
pub fn pack_entry(e: &LabelEntry) -> Result<u64> {
    pack_entry_bounded(e, MAX_PACKED_COUNT)
}

/// `pack_entry` with a caller-supplied count ceiling (never above the
/// 29-bit field width).
pub fn pack_entry_bounded(e: &LabelEntry, max_count: u64) -> Result<u64> {
    debug_assert!(max_count <= MAX_PACKED_COUNT);
    let hub = e.hub.id() as u64;
    if hub > MAX_PACKED_HUB {
        return Err(Error::PackOverflow {
            field: "hub",
            value: hub,
            max: MAX_PACKED_HUB,
        });
    }
    if e.dist as u64 > MAX_PACKED_DIST {
        return Err(Error::PackOverflow {
            field: "dist",
            value: e.dist as u64,
            max: MAX_PACKED_DIST,
        });
    }
    if e.count > max_count {
        return Err(Error::PackOverflow {
            field: "count",
            value: e.count,
            max: max_count,
        });
    }
    Ok((hub << HUB_SHIFT) | ((e.dist as u64) << DIST_SHIFT) | e.count)
}

pub fn unpack_entry(word: u64) -> LabelEntry {
    LabelEntry {
        hub: VertexId::new((word >> HUB_SHIFT) as u32),
        dist: ((word >> DIST_SHIFT) & MAX_PACKED_DIST) as u32,
        count: word & MAX_PACKED_COUNT,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_matches_the_documented_layout() {
        let w = pack_entry(&LabelEntry::new(VertexId::new(0), 0, 1)).unwrap();
        assert_eq!(w, 0x0000_0000_0000_0001);
        let w = pack_entry(&LabelEntry::new(VertexId::new(3), 2, 5)).unwrap();
        assert_eq!(w, 3 * (1u64 << 39) + 2 * (1u64 << 29) + 5);
    }

    #[test]
    fn out_of_range_fields_name_the_field() {
        let err = pack_entry(&LabelEntry::new(VertexId::new(0), 1024, 1)).unwrap_err();
        assert!(err.to_string().starts_with("pack overflow: dist"), "{err}");
        let err = pack_entry(&LabelEntry::new(VertexId::new(1 << 25), 0, 1)).unwrap_err();
        assert!(err.to_string().starts_with("pack overflow: hub"), "{err}");
        let err = pack_entry(&LabelEntry::new(VertexId::new(0), 0, 1 << 29)).unwrap_err();
        assert!(err.to_string().starts_with("pack overflow: count"), "{err}");
        let err = pack_entry_bounded(&LabelEntry::new(VertexId::new(0), 0, 32), 31).unwrap_err();
        assert!(err.to_string().starts_with("pack overflow: count"), "{err}");
    }
}
