//! On-disk index format.
//!
//! ```text
//! magic    b"FSPX"
//! version  u8            (currently 1)
//! length   u64 LE        payload byte count
//! payload  length bytes
//! checksum u32 LE        CRC-32 (IEEE) of payload
//! ```
//!
//! Payload, all integers little-endian, strings as u32 byte length + UTF-8:
//!
//! ```text
//! u32 field count, field names
//! u32 doc count, external doc ids
//! per field: doc-count u32 field lengths
//! u32 term count, then per term in lexicographic order:
//!   term, u32 df,
//!   per field: u32 posting count,
//!     per posting: u32 doc, u32 position count, positions u32...
//! ```

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Index, Posting, TermPostings};

const MAGIC: &[u8; 4] = b"FSPX";
const VERSION: u8 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("not an index file (bad magic bytes)")]
    BadMagic,
    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u8),
    #[error("index file is truncated")]
    Truncated,
    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("corrupt index: {0}")]
    Corrupt(String),
}

pub fn save_index(index: &Index, path: impl AsRef<Path>) -> Result<(), FormatError> {
    let mut out = BufWriter::new(File::create(path)?);
    write_index(index, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn load_index(path: impl AsRef<Path>) -> Result<Index, FormatError> {
    read_index(BufReader::new(File::open(path)?))
}

pub fn write_index<W: Write>(index: &Index, mut out: W) -> Result<(), FormatError> {
    let payload = encode_payload(index);
    out.write_all(MAGIC)?;
    out.write_all(&[VERSION])?;
    out.write_all(&(payload.len() as u64).to_le_bytes())?;
    out.write_all(&payload)?;
    out.write_all(&crc32fast::hash(&payload).to_le_bytes())?;
    Ok(())
}

pub fn read_index<R: Read>(mut input: R) -> Result<Index, FormatError> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;

    if bytes.len() < MAGIC.len() {
        return Err(if MAGIC.starts_with(&bytes) {
            FormatError::Truncated
        } else {
            FormatError::BadMagic
        });
    }
    if &bytes[..4] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let mut cur = Cursor { bytes: &bytes[4..] };
    let version = cur.u8()?;
    if version != VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    let len = usize::try_from(cur.u64()?).map_err(|_| FormatError::Truncated)?;
    let payload = cur.take(len)?;
    let stored = u32::from_le_bytes(cur.take(4)?.try_into().unwrap());
    if !cur.bytes.is_empty() {
        return Err(FormatError::Corrupt("trailing bytes after checksum".into()));
    }
    let computed = crc32fast::hash(payload);
    if stored != computed {
        return Err(FormatError::ChecksumMismatch { stored, computed });
    }
    decode_payload(payload)
}

fn encode_payload(index: &Index) -> Vec<u8> {
    let mut buf = Vec::new();
    let put_u32 = |buf: &mut Vec<u8>, v: u32| buf.extend_from_slice(&v.to_le_bytes());
    let put_str = |buf: &mut Vec<u8>, s: &str| {
        buf.extend_from_slice(&(s.len() as u32).to_le_bytes());
        buf.extend_from_slice(s.as_bytes());
    };

    put_u32(&mut buf, index.schema.len() as u32);
    for name in &index.schema {
        put_str(&mut buf, name);
    }
    put_u32(&mut buf, index.doc_ids.len() as u32);
    for id in &index.doc_ids {
        put_str(&mut buf, id);
    }
    for lens in &index.stats.field_lens {
        for &len in lens {
            put_u32(&mut buf, len);
        }
    }
    put_u32(&mut buf, index.terms.len() as u32);
    for (term, postings) in &index.terms {
        put_str(&mut buf, term);
        put_u32(&mut buf, postings.df);
        for list in &postings.by_field {
            put_u32(&mut buf, list.len() as u32);
            for posting in list {
                put_u32(&mut buf, posting.doc);
                put_u32(&mut buf, posting.positions.len() as u32);
                for &p in &posting.positions {
                    put_u32(&mut buf, p);
                }
            }
        }
    }
    buf
}

fn decode_payload(payload: &[u8]) -> Result<Index, FormatError> {
    let mut cur = Cursor { bytes: payload };

    let num_fields = cur.u32()? as usize;
    let schema = (0..num_fields)
        .map(|_| cur.string())
        .collect::<Result<Vec<_>, _>>()?;
    let num_docs = cur.u32()?;
    let doc_ids = (0..num_docs)
        .map(|_| cur.string())
        .collect::<Result<Vec<_>, _>>()?;
    let mut field_lens: Vec<Vec<u32>> = Vec::with_capacity(num_fields);
    for _ in 0..num_fields {
        let lens = (0..num_docs)
            .map(|_| cur.u32())
            .collect::<Result<Vec<_>, _>>()?;
        field_lens.push(lens);
    }

    let num_terms = cur.u32()?;
    let mut terms = BTreeMap::new();
    for _ in 0..num_terms {
        let term = cur.string()?;
        let df = cur.u32()?;
        if df == 0 || df > num_docs {
            return Err(corrupt(format!(
                "df {df} of {term:?} outside 1..={num_docs}"
            )));
        }
        let mut by_field = Vec::with_capacity(num_fields);
        for lens in &field_lens {
            let count = cur.u32()?;
            let mut list: Vec<Posting> = Vec::with_capacity(count.min(num_docs) as usize);
            for _ in 0..count {
                let doc = cur.u32()?;
                if doc >= num_docs || list.last().is_some_and(|p| p.doc >= doc) {
                    return Err(corrupt(format!("bad posting order for {term:?}")));
                }
                let n = cur.u32()?;
                let positions = (0..n).map(|_| cur.u32()).collect::<Result<Vec<_>, _>>()?;
                let field_len = lens[doc as usize];
                let ascending = positions.windows(2).all(|w| w[0] < w[1]);
                if positions.is_empty()
                    || !ascending
                    || positions.last().is_some_and(|&p| p >= field_len)
                {
                    return Err(corrupt(format!("bad positions for {term:?}")));
                }
                list.push(Posting { doc, positions });
            }
            by_field.push(list);
        }
        if terms
            .insert(term.clone(), TermPostings::from_parts(df, by_field))
            .is_some()
        {
            return Err(corrupt(format!("term {term:?} stored twice")));
        }
    }
    if !cur.bytes.is_empty() {
        return Err(corrupt("unread payload bytes".into()));
    }
    Ok(Index::from_parts(schema, doc_ids, field_lens, terms))
}

fn corrupt(msg: String) -> FormatError {
    FormatError::Corrupt(msg)
}

struct Cursor<'a> {
    bytes: &'a [u8],
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], FormatError> {
        if self.bytes.len() < n {
            return Err(FormatError::Truncated);
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, FormatError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String, FormatError> {
        let len = self.u32()? as usize;
        let raw = self.take(len)?;
        String::from_utf8(raw.to_vec()).map_err(|_| corrupt("invalid UTF-8 string".into()))
    }
}
