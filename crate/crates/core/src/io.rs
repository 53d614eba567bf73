//! On-disk formats.
//!
//! Suffix array and document array files share a 24-byte header:
//!
//! ```text
//! offset  size  field
//!      0     4  magic: "DSAK" (suffix array) or "DDAK" (document array)
//!      4     1  version (1)
//!      5     1  cell width in bytes (4 or 8; always 4 for DDAK)
//!      6     2  reserved, zero
//!      8     8  N, little-endian
//!     16     8  d, little-endian
//! ```
//!
//! followed by `N` little-endian cells. Suffix array cells are 0-based text
//! positions; document array cells are 1-based document ids.
//!
//! Collections are read as line-delimited text, FASTA, or a raw concatenation
//! already using 0x00/0x01 as markers.

use crate::da::DocumentArray;
use crate::sa::SuffixArray;
use crate::text::ConcatText;
use crate::{Error, Index, Result, Width};

pub const SA_MAGIC: &[u8; 4] = b"DSAK";
pub const DA_MAGIC: &[u8; 4] = b"DDAK";
pub const FORMAT_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub magic: [u8; 4],
    pub version: u8,
    pub width: Width,
    pub n: u64,
    pub d: u64,
}

impl Header {
    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.magic);
        out.push(self.version);
        out.push(self.width.bytes() as u8);
        out.extend_from_slice(&[0, 0]);
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&self.d.to_le_bytes());
    }

    fn decode(bytes: &[u8], magic: &[u8; 4]) -> Result<Header> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!(
                "file of {} bytes is shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if &bytes[..4] != magic {
            return Err(Error::Format(format!(
                "bad magic {:?}, expected {:?}",
                String::from_utf8_lossy(&bytes[..4]),
                String::from_utf8_lossy(magic)
            )));
        }
        let version = bytes[4];
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let width = Width::from_bytes(bytes[5])
            .ok_or_else(|| Error::Format(format!("invalid cell width {}", bytes[5])))?;
        let n = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let d = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
        Ok(Header {
            magic: *magic,
            version,
            width,
            n,
            d,
        })
    }

    fn expect_body(&self, bytes: &[u8]) -> Result<()> {
        let expected = HEADER_LEN as u64 + self.n * self.width.bytes() as u64;
        if bytes.len() as u64 != expected {
            return Err(Error::Format(format!(
                "expected {expected} bytes for N={} at {}-byte cells, found {}",
                self.n,
                self.width.bytes(),
                bytes.len()
            )));
        }
        Ok(())
    }
}

/// A suffix array of either cell width, as read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnySuffixArray {
    W32(SuffixArray<u32>),
    W64(SuffixArray<u64>),
}

impl AnySuffixArray {
    pub fn len(&self) -> usize {
        match self {
            AnySuffixArray::W32(sa) => sa.len(),
            AnySuffixArray::W64(sa) => sa.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn width(&self) -> Width {
        match self {
            AnySuffixArray::W32(_) => Width::W32,
            AnySuffixArray::W64(_) => Width::W64,
        }
    }
}

pub fn encode_sa<I: Index>(sa: &SuffixArray<I>, d: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + sa.len() * I::WIDTH.bytes());
    Header {
        magic: *SA_MAGIC,
        version: FORMAT_VERSION,
        width: I::WIDTH,
        n: sa.len() as u64,
        d: d as u64,
    }
    .encode(&mut out);
    for &v in sa.as_slice() {
        v.write_le(&mut out);
    }
    out
}

/// Parses a suffix array file. Cells are checked to be in range but not to
/// form a permutation.
pub fn decode_sa(bytes: &[u8]) -> Result<(Header, AnySuffixArray)> {
    let header = Header::decode(bytes, SA_MAGIC)?;
    header.expect_body(bytes)?;
    let body = &bytes[HEADER_LEN..];
    let sa = match header.width {
        Width::W32 => AnySuffixArray::W32(SuffixArray::from_vec_unchecked(cells(body, header.n)?)),
        Width::W64 => AnySuffixArray::W64(SuffixArray::from_vec_unchecked(cells(body, header.n)?)),
    };
    Ok((header, sa))
}

fn cells<I: Index>(body: &[u8], n: u64) -> Result<Vec<I>> {
    let w = I::WIDTH.bytes();
    let v: Vec<I> = body.chunks_exact(w).map(I::read_le).collect();
    if let Some(bad) = v.iter().find(|x| x.to_usize() as u64 >= n) {
        return Err(Error::Format(format!("cell value {bad:?} out of range for N={n}")));
    }
    Ok(v)
}

pub fn encode_da(da: &DocumentArray, d: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + da.len() * 4);
    Header {
        magic: *DA_MAGIC,
        version: FORMAT_VERSION,
        width: Width::W32,
        n: da.len() as u64,
        d: d as u64,
    }
    .encode(&mut out);
    for &v in da.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_da(bytes: &[u8]) -> Result<(Header, DocumentArray)> {
    let header = Header::decode(bytes, DA_MAGIC)?;
    if header.width != Width::W32 {
        return Err(Error::Format("document array cells must be 4 bytes".into()));
    }
    header.expect_body(bytes)?;
    let entries = bytes[HEADER_LEN..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok((header, DocumentArray::from_vec(entries)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// One document per line, line feeds stripped.
    Lines,
    /// One document per record; headers dropped, newlines stripped.
    Fasta,
    /// Pre-built concatenation with 0x00/0x01 markers.
    Raw,
}

/// Splits on `\n`. A trailing line feed does not start an extra document.
pub fn parse_lines(bytes: &[u8]) -> Vec<&[u8]> {
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    if bytes.is_empty() {
        return Vec::new();
    }
    body.split(|&b| b == b'\n').collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub header: String,
    /// 1-based line of the header.
    pub line: usize,
    pub seq: Vec<u8>,
}

pub fn parse_fasta(bytes: &[u8]) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<FastaRecord> = Vec::new();
    for (k, line) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if let Some(h) = line.strip_prefix(b">") {
            records.push(FastaRecord {
                header: String::from_utf8_lossy(h).trim().to_string(),
                line: k + 1,
                seq: Vec::new(),
            });
        } else if !line.is_empty() {
            match records.last_mut() {
                Some(r) => r.seq.extend_from_slice(line),
                None => {
                    return Err(Error::Format(format!(
                        "line {}: sequence data before the first '>' header",
                        k + 1
                    )))
                }
            }
        }
    }
    Ok(records)
}

/// Reads a collection in `format`. Reserved-byte errors name the offending
/// line (lines format) or record (FASTA).
pub fn load_collection(bytes: Vec<u8>, format: InputFormat) -> Result<ConcatText> {
    match format {
        InputFormat::Raw => ConcatText::from_raw(bytes),
        InputFormat::Lines => ConcatText::build(&parse_lines(&bytes)).map_err(|e| match e {
            Error::ReservedByteInDocument { doc, offset, byte } => Error::Format(format!(
                "line {doc}, column {}: reserved byte {byte:#04x} in document",
                offset + 1
            )),
            e => e,
        }),
        InputFormat::Fasta => {
            let records = parse_fasta(&bytes)?;
            let seqs: Vec<&[u8]> = records.iter().map(|r| r.seq.as_slice()).collect();
            ConcatText::build(&seqs).map_err(|e| match e {
                Error::ReservedByteInDocument { doc, offset, byte } => {
                    let r = &records[doc - 1];
                    Error::Format(format!(
                        "record {doc} ('{}', line {}), residue {}: reserved byte {byte:#04x}",
                        r.header,
                        r.line,
                        offset + 1
                    ))
                }
                e => e,
            })
        }
    }
}
