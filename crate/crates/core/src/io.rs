//! Binary index file format.
//!
//! Layout, all integers little-endian: magic `DSPC`, one format-version
//! byte, the id-space size as 8 bytes, then for each vertex in id order a
//! 4-byte entry count followed by that many packed 64-bit label words in
//! hub-rank-descending order. A zero entry count marks a tombstoned id.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::MAX_VERTICES;
use crate::index::SpcIndex;
use crate::label::{pack_entry_bounded, unpack_entry, LabelEntry, MAX_PACKED_COUNT};
use crate::order::VertexOrdering;

pub const MAGIC: [u8; 4] = *b"DSPC";
pub const FORMAT_VERSION: u8 = 1;
pub const HEADER_BYTES: usize = 13;

/// Writes the index. Any entry outside the packable field ranges aborts
/// with the offending field named.
pub fn save<W: Write>(idx: &SpcIndex, sink: W) -> Result<()> {
    save_bounded(idx, sink, MAX_PACKED_COUNT)
}

/// `save` with a tightened count ceiling (still at most the 29-bit field).
pub fn save_bounded<W: Write>(idx: &SpcIndex, mut sink: W, max_count: u64) -> Result<()> {
    sink.write_all(&MAGIC)?;
    sink.write_all(&[FORMAT_VERSION])?;
    sink.write_all(&(idx.id_space() as u64).to_le_bytes())?;
    for v in 0..idx.id_space() as u32 {
        let v = crate::graph::VertexId::new(v);
        if !idx.is_live(v) {
            sink.write_all(&0u32.to_le_bytes())?;
            continue;
        }
        let labels = idx.labels(v);
        let count = u32::try_from(labels.len())
            .map_err(|_| Error::InvalidIndex(format!("label set of {v} too large to store")))?;
        sink.write_all(&count.to_le_bytes())?;
        for e in labels {
            sink.write_all(&pack_entry_bounded(e, max_count)?.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_exact_or_eof<R: Read>(source: &mut R, buf: &mut [u8]) -> Result<()> {
    source.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::UnexpectedEnd
        } else {
            Error::Io(e)
        }
    })
}

/// Reads an index back and re-validates every structural invariant against
/// the supplied ordering. The file format does not embed the ordering, so
/// the caller must provide the one the index was built under.
pub fn load<R: Read>(mut source: R, ordering: VertexOrdering) -> Result<SpcIndex> {
    let mut magic = [0u8; 4];
    read_exact_or_eof(&mut source, &mut magic)?;
    if magic != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut version = [0u8; 1];
    read_exact_or_eof(&mut source, &mut version)?;
    if version[0] != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version[0]));
    }
    let mut n_bytes = [0u8; 8];
    read_exact_or_eof(&mut source, &mut n_bytes)?;
    let n = u64::from_le_bytes(n_bytes);
    if n > MAX_VERTICES as u64 {
        return Err(Error::InvalidIndex(format!(
            "id space {n} exceeds the addressable range"
        )));
    }
    let n = n as usize;
    if ordering.len() != n {
        return Err(Error::InvalidIndex(format!(
            "ordering covers {} ids, index file has {n}",
            ordering.len()
        )));
    }
    let mut labels: Vec<Option<Vec<LabelEntry>>> = Vec::with_capacity(n);
    let mut count_bytes = [0u8; 4];
    let mut word = [0u8; 8];
    for _ in 0..n {
        read_exact_or_eof(&mut source, &mut count_bytes)?;
        let count = u32::from_le_bytes(count_bytes) as usize;
        if count == 0 {
            labels.push(None);
            continue;
        }
        let mut entries = Vec::with_capacity(count.min(1 << 20));
        for _ in 0..count {
            read_exact_or_eof(&mut source, &mut word)?;
            entries.push(unpack_entry(u64::from_le_bytes(word)));
        }
        labels.push(Some(entries));
    }
    let idx = SpcIndex::from_parts(labels, ordering);
    idx.check_invariants()?;
    Ok(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::VertexId;

    #[test]
    fn save_load_save_is_byte_identical() {
        let idx = fixtures::example_index();
        let mut first = Vec::new();
        save(&idx, &mut first).unwrap();
        let reloaded = load(&first[..], fixtures::example_ordering()).unwrap();
        let mut second = Vec::new();
        save(&reloaded, &mut second).unwrap();
        assert_eq!(first, second);
        // 50 packed entries, 12 per-vertex counts, 13 header bytes.
        assert_eq!(first.len(), 13 + 12 * 4 + 50 * 8);
        assert_eq!(idx.byte_size(), first.len());
    }

    #[test]
    fn tombstones_round_trip() {
        let mut idx = fixtures::example_index();
        idx.remove_vertex(VertexId::new(7)).unwrap();
        let mut buf = Vec::new();
        save(&idx, &mut buf).unwrap();
        let back = load(&buf[..], fixtures::example_ordering()).unwrap();
        assert!(!back.is_live(VertexId::new(7)));
        assert_eq!(back.entry_count(), idx.entry_count());
    }

    #[test]
    fn loader_rejects_garbage() {
        let err = load(&b"NOPE"[..], fixtures::example_ordering()).unwrap_err();
        assert!(matches!(err, Error::BadMagic));

        let idx = fixtures::example_index();
        let mut buf = Vec::new();
        save(&idx, &mut buf).unwrap();

        let err = load(&buf[..buf.len() - 3], fixtures::example_ordering()).unwrap_err();
        assert!(matches!(err, Error::UnexpectedEnd));
        assert_eq!(err.to_string(), "unexpected end of index file");

        let mut wrong_version = buf.clone();
        wrong_version[4] = 9;
        let err = load(&wrong_version[..], fixtures::example_ordering()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedVersion(9)));

        // Flipping a count byte to zero breaks the self-label invariant.
        let mut corrupt = buf.clone();
        let first_word = HEADER_BYTES + 4;
        corrupt[first_word] = 0;
        let err = load(&corrupt[..], fixtures::example_ordering()).unwrap_err();
        assert!(matches!(err, Error::InvalidIndex(_)), "{err}");
    }

    #[test]
    fn save_surfaces_pack_overflow() {
        let mut idx = fixtures::example_index();
        idx.upsert_label(
            VertexId::new(9),
            crate::label::LabelEntry::new(VertexId::new(0), 4, 1 << 30),
        );
        let err = save(&idx, Vec::new()).unwrap_err();
        assert!(err.to_string().starts_with("pack overflow: count"), "{err}");
    }
}
